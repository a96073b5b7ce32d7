import math
from typing import Iterable, List

from domains.index import InvertedIndex
from domains.params import Bm25Params
from strategies.retrieval_strategy import RetrievalStrategy


# BM25 в варианте Lucene: idf всегда неотрицательный
class Bm25Strategy(RetrievalStrategy):
    name = "bm25"

    def __init__(self, index: InvertedIndex, params: Bm25Params = None):
        super().__init__(index)
        self.params = params or Bm25Params()

    def idf(self, term: str) -> float:
        df = self.index.df.get(term, 0)
        return math.log(1 + (self.index.N - df + 0.5) / (df + 0.5))

    def score(self, query_terms: List[str], doc_id: str) -> float:
        dl = self.index.document_length(doc_id)
        k1, b = self.params.k1, self.params.b
        norm = k1 * (1 - b + b * dl / self.index.avgdl)
        score = 0.0
        for term in query_terms:
            tf = self.index.tf(term, doc_id)
            if tf == 0:
                continue
            score += self.idf(term) * tf / (tf + norm)
        return score

    # положительную оценку получают только документы хотя бы с одним термином запроса
    def candidates(self, query_terms: List[str]) -> Iterable[str]:
        doc_ids = set()
        for term in set(query_terms):
            doc_ids.update(doc_id for doc_id, _ in self.index.postings.get(term, []))
        return sorted(doc_ids)

    def keep(self, score: float) -> bool:
        return score > 0


def bm25_score(index: InvertedIndex, params: Bm25Params, query_terms: List[str], doc_id: str) -> float:
    return Bm25Strategy(index, params).score(query_terms, doc_id)


def bm25_search(index: InvertedIndex, params: Bm25Params, query: str, k: int):
    return Bm25Strategy(index, params).search(query, k)
