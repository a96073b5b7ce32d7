# оценка записывается в кратчайшем представлении, которое читается обратно без потерь
def format_score(score: float) -> str:
    return repr(float(score))
