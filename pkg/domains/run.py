import math
from typing import Dict, Iterable, List, Tuple

from exceptions import DataError

ScoredDoc = Tuple[str, float]


# порядок внутри запроса: оценка по убыванию, при равенстве - doc id по возрастанию
def sort_key(entry: ScoredDoc):
    doc_id, score = entry
    return -score, doc_id


def sort_entries(entries: Iterable[ScoredDoc]) -> List[ScoredDoc]:
    return sorted(((doc_id, float(score)) for doc_id, score in entries), key=sort_key)


class Run(object):
    def __init__(
            self,
            entries: Dict[str, Iterable[ScoredDoc]] = None,
            tag: str = "run"
    ):
        self.tag = tag
        self.entries: Dict[str, List[ScoredDoc]] = {}
        for query_id, ranked in (entries or {}).items():
            self.set_query(query_id, ranked)

    def set_query(self, query_id: str, ranked: Iterable[ScoredDoc]):
        ranked = sort_entries(ranked)
        seen = set()
        for doc_id, score in ranked:
            if doc_id in seen:
                raise DataError(f"документ {doc_id} повторяется в запросе {query_id}")
            if math.isnan(score):
                raise DataError(f"оценка NaN у документа {doc_id} в запросе {query_id}")
            seen.add(doc_id)
        self.entries[query_id] = ranked

    def query_ids(self) -> List[str]:
        return sorted(self.entries)

    def ranked(self, query_id: str) -> List[ScoredDoc]:
        return self.entries.get(query_id, [])

    def doc_ids(self, query_id: str) -> List[str]:
        return [doc_id for doc_id, _ in self.ranked(query_id)]

    def scores(self, query_id: str) -> Dict[str, float]:
        return dict(self.ranked(query_id))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Dict:
        yield "tag", self.tag
        yield "entries", {query_id: list(ranked) for query_id, ranked in self.entries.items()}

    def __eq__(self, other) -> bool:
        return isinstance(other, Run) and self.tag == other.tag and self.entries == other.entries

    def __str__(self) -> str:
        return "Run{tag=%s, queries=%s}" % (self.tag, len(self.entries))

    def __repr__(self) -> str:
        return self.__str__()
