import math
from typing import Iterable

from domains.qrels import QrelSet
from domains.report import EvalReport
from domains.run import Run
from exceptions import UsageError, DataError


# экспоненциальный выигрыш 2^rel - 1 и дисконт log2(i + 1), как в trec_eval
def dcg(grades: Iterable[int]) -> float:
    return math.fsum((2 ** grade - 1) / math.log2(rank + 1) for rank, grade in enumerate(grades, start=1))


def query_ndcg(ranked_doc_ids: Iterable[str], judgments: dict, k: int) -> float:
    gains = [judgments.get(doc_id, 0) for doc_id in list(ranked_doc_ids)[:k]]
    ideal = sorted(judgments.values(), reverse=True)[:k]
    idcg = dcg(ideal)
    if idcg == 0:
        return 0.0
    return dcg(gains) / idcg


# оцениваются запросы из run, у которых есть хотя бы одна положительная оценка
def ndcg_at_k(run: Run, qrels: QrelSet, k: int = 10) -> EvalReport:
    if k < 1:
        raise UsageError(f"k должен быть >= 1: {k}")
    judgments_by_query = qrels.by_query()
    per_query = {}
    for query_id in run.query_ids():
        judgments = judgments_by_query.get(query_id, {})
        if not any(grade > 0 for grade in judgments.values()):
            continue
        per_query[query_id] = query_ndcg(run.doc_ids(query_id), judgments, k)
    if not per_query:
        raise DataError(f"нет запросов для оценки в run {run.tag}: нет общих запросов с положительными оценками")
    return EvalReport(per_query, k=k, tag=run.tag)
