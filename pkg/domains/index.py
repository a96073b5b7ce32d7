from typing import Dict, List, Tuple

from domains.analyzer import Analyzer
from exceptions import DataError

Posting = Tuple[str, int]


class InvertedIndex(object):
    def __init__(
            self,
            postings: Dict[str, List[Posting]],
            doc_len: Dict[str, int],
            analyzer: Analyzer
    ):
        if len(doc_len) == 0:
            raise DataError("индекс без документов")
        self.postings = postings
        self.doc_len = doc_len
        self.analyzer = analyzer

        self.N = len(doc_len)
        self.total_terms = sum(doc_len.values())
        self.avgdl = self.total_terms / self.N
        self.cf: Dict[str, int] = {term: sum(tf for _, tf in plist) for term, plist in postings.items()}
        self.df: Dict[str, int] = {term: len(plist) for term, plist in postings.items()}
        # прямой доступ tf(t, d) при оценке документа
        self._tf: Dict[str, Dict[str, int]] = {term: dict(plist) for term, plist in postings.items()}

    def tf(self, term: str, doc_id: str) -> int:
        return self._tf.get(term, {}).get(doc_id, 0)

    def document_length(self, doc_id: str) -> int:
        if doc_id not in self.doc_len:
            raise DataError(f"документ {doc_id} отсутствует в индексе")
        return self.doc_len[doc_id]

    def doc_ids(self) -> List[str]:
        return sorted(self.doc_len)

    def __iter__(self) -> Dict:
        yield "analyzer", dict(self.analyzer)
        yield "doc_len", self.doc_len
        yield "postings", {term: [[doc_id, tf] for doc_id, tf in plist] for term, plist in self.postings.items()}

    def __str__(self) -> str:
        return "InvertedIndex{N=%s, terms=%s, avgdl=%s}" % (self.N, len(self.postings), self.avgdl)

    def __repr__(self) -> str:
        return self.__str__()

    @staticmethod
    def from_dict(index_dict: Dict):
        try:
            postings = {term: [(str(doc_id), int(tf)) for doc_id, tf in plist]
                        for term, plist in index_dict["postings"].items()}
            doc_len = {str(doc_id): int(length) for doc_id, length in index_dict["doc_len"].items()}
            analyzer = Analyzer.from_dict(index_dict.get("analyzer", {}))
        except (KeyError, TypeError, ValueError) as ex:
            raise DataError(f"некорректная структура индекса: {ex}")
        return InvertedIndex(postings=postings, doc_len=doc_len, analyzer=analyzer)
