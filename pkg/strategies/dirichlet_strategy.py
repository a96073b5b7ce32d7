import math
from typing import List

from domains.index import InvertedIndex
from domains.params import DirichletParams
from strategies.retrieval_strategy import RetrievalStrategy


# классическая модель правдоподобия запроса со сглаживанием Дирихле
class DirichletStrategy(RetrievalStrategy):
    name = "dirichlet"

    def __init__(self, index: InvertedIndex, params: DirichletParams = None):
        super().__init__(index)
        self.params = params or DirichletParams()

    def score(self, query_terms: List[str], doc_id: str) -> float:
        dl = self.index.document_length(doc_id)
        mu = self.params.mu
        score = 0.0
        for term in query_terms:
            cf = self.index.cf.get(term, 0)
            # термины вне словаря коллекции пропускаются
            if cf == 0:
                continue
            tf = self.index.tf(term, doc_id)
            score += math.log((tf + mu * cf / self.index.total_terms) / (dl + mu))
        return score


def dirichlet_qlm_score(index: InvertedIndex, params: DirichletParams, query_terms: List[str], doc_id: str) -> float:
    return DirichletStrategy(index, params).score(query_terms, doc_id)


def dirichlet_search(index: InvertedIndex, params: DirichletParams, query: str, k: int):
    return DirichletStrategy(index, params).search(query, k)
