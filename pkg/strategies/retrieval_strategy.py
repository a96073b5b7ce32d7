import logging
from abc import ABC, abstractmethod
from typing import Dict, Iterable, List

from domains.document import Query
from domains.index import InvertedIndex
from domains.run import Run, ScoredDoc, sort_entries
from exceptions import UsageError

logger = logging.getLogger(__name__)


# базовая стратегия первого этапа: оценка документа и поиск top-k
class RetrievalStrategy(ABC):
    name = "retrieval"

    def __init__(self, index: InvertedIndex):
        self.index = index

    @abstractmethod
    def score(self, query_terms: List[str], doc_id: str) -> float:
        pass

    # документы, которые могут попасть в выдачу
    def candidates(self, query_terms: List[str]) -> Iterable[str]:
        return self.index.doc_ids()

    def keep(self, score: float) -> bool:
        return True

    def search(self, query: str, k: int) -> List[ScoredDoc]:
        if k < 1:
            raise UsageError(f"k должен быть >= 1: {k}")
        query_terms = self.index.analyzer.analyze(query)
        scored = []
        for doc_id in self.candidates(query_terms):
            score = self.score(query_terms, doc_id)
            if self.keep(score):
                scored.append((doc_id, score))
        return sort_entries(scored)[:k]

    def search_all(self, queries: Iterable[Query], k: int) -> Run:
        entries: Dict[str, List[ScoredDoc]] = {}
        for query in queries:
            ranked = self.search(query.text, k)
            # запрос без найденных документов в run не попадает, как и в TREC файле
            if ranked:
                entries[query.id] = ranked
            else:
                logger.warning("%s: по запросу %s документы не найдены", self.name, query.id)
        logger.info("%s: обработано запросов %s, глубина %s", self.name, len(entries), k)
        return Run(entries, tag=self.name)
