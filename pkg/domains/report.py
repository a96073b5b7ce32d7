from typing import Dict, List, Set

import pandas as pd

from exceptions import DataError


class EvalReport(object):
    def __init__(self, per_query: Dict[str, float], k: int, tag: str = ""):
        if not per_query:
            raise DataError("нет запросов для оценки")
        for query_id, value in per_query.items():
            if not 0 <= value <= 1 + 1e-12:
                raise DataError(f"значение метрики вне [0, 1] у запроса {query_id}: {value}")
        self.per_query = dict(per_query)
        self.k = k
        self.tag = tag
        self.evaluated_query_count = len(per_query)
        self.mean = sum(self.per_query.values()) / self.evaluated_query_count

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [{"query_id": query_id, "ndcg": self.per_query[query_id]} for query_id in sorted(self.per_query)],
            columns=["query_id", "ndcg"])

    def __iter__(self) -> Dict:
        yield "tag", self.tag
        yield "k", self.k
        yield "mean", self.mean
        yield "evaluated_query_count", self.evaluated_query_count
        yield "per_query", self.per_query

    def __str__(self) -> str:
        return "EvalReport{tag=%s, nDCG@%s=%.4f, queries=%s}" % (self.tag, self.k, self.mean,
                                                               self.evaluated_query_count)

    def __repr__(self) -> str:
        return self.__str__()


class SigResult(object):
    def __init__(
            self,
            t_statistic: float,
            p_value: float,
            df: int,
            corrected_p: float = None,
            degenerate: bool = False
    ):
        self.t_statistic = t_statistic
        self.p_value = p_value
        self.df = df
        self.corrected_p = p_value if corrected_p is None else corrected_p
        self.degenerate = degenerate

    def corrected(self, factor: int):
        return SigResult(self.t_statistic, self.p_value, self.df,
                         corrected_p=min(1.0, self.p_value * factor), degenerate=self.degenerate)

    def __iter__(self) -> Dict:
        yield "t_statistic", self.t_statistic
        yield "p_value", self.p_value
        yield "df", self.df
        yield "corrected_p", self.corrected_p
        yield "degenerate", self.degenerate

    def __str__(self) -> str:
        return "SigResult{t=%s, p=%s, df=%s, corrected_p=%s, degenerate=%s}" % (
            self.t_statistic, self.p_value, self.df, self.corrected_p, self.degenerate)

    def __repr__(self) -> str:
        return self.__str__()


class SignificanceMatrix(object):
    def __init__(
            self,
            names: List[str],
            reports: List[EvalReport],
            marks: Dict[str, Set[str]],
            results: Dict[tuple, SigResult],
            alpha_level: float,
            correction: str
    ):
        self.names = names
        self.labels = [chr(ord("a") + position) for position in range(len(names))]
        self.reports = reports
        self.marks = marks
        self.results = results
        self.alpha_level = alpha_level
        self.correction = correction

    def __str__(self) -> str:
        return "SignificanceMatrix{runs=%s, correction=%s}" % (len(self.names), self.correction)

    def __repr__(self) -> str:
        return self.__str__()
