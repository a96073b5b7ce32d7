import logging
from typing import Dict, List, Sequence

import pandas as pd

from domains.params import FusionParams
from domains.qrels import QrelSet
from domains.run import Run
from exceptions import UsageError
from utils.metric_util import ndcg_at_k

logger = logging.getLogger(__name__)

FUSED_SCORE_DIGITS = 12


# min-max нормализация внутри каждого запроса; при max = min все оценки равны 0
def normalize_scores(scores: Dict[str, float]) -> Dict[str, float]:
    if not scores:
        return {}
    min_score = min(scores.values())
    max_score = max(scores.values())
    score_range = max_score - min_score
    if score_range == 0:
        return {doc_id: 0.0 for doc_id in scores}
    return {doc_id: (score - min_score) / score_range for doc_id, score in scores.items()}


def minmax_normalize(run: Run) -> Run:
    return Run({query_id: normalize_scores(run.scores(query_id)).items() for query_id in run.query_ids()},
               tag=run.tag)


# S = alpha * a' + (1 - alpha) * b'; документ, отсутствующий в одном из run, получает там 0
# округление убирает разницу в последнем разряде между весами alpha и 1 - (1 - alpha)
def interpolate(run_a: Run, run_b: Run, alpha: float, tag: str = "interpolated") -> Run:
    alpha = FusionParams(alpha).alpha
    entries = {}
    for query_id in sorted(set(run_a.query_ids()) | set(run_b.query_ids())):
        scores_a = normalize_scores(run_a.scores(query_id))
        scores_b = normalize_scores(run_b.scores(query_id))
        doc_ids = set(scores_a) | set(scores_b)
        entries[query_id] = [
            (doc_id, round(alpha * scores_a.get(doc_id, 0.0) + (1 - alpha) * scores_b.get(doc_id, 0.0),
                           FUSED_SCORE_DIGITS))
            for doc_id in doc_ids
        ]
    return Run(entries, tag=tag)


def truncate(run: Run, k: int) -> Run:
    if k < 1:
        raise UsageError(f"k должен быть >= 1: {k}")
    return Run({query_id: run.ranked(query_id)[:k] for query_id in run.query_ids()}, tag=run.tag)


# таблица (alpha, ndcg) для построения графика зависимости от alpha
def sweep_alpha(
        run_a: Run,
        run_b: Run,
        alphas: Sequence[float],
        qrels: QrelSet,
        k: int
) -> pd.DataFrame:
    rows: List[Dict[str, float]] = []
    for alpha in alphas:
        report = ndcg_at_k(interpolate(run_a, run_b, alpha), qrels, k)
        logger.info("alpha %s: nDCG@%s = %s", alpha, k, report.mean)
        rows.append({"alpha": float(alpha), "ndcg": report.mean})
    return pd.DataFrame(rows, columns=["alpha", "ndcg"])
