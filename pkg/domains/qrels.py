from typing import Dict, Iterator, Tuple

from exceptions import DataError


class QrelSet(object):
    def __init__(self, judgments: Dict[Tuple[str, str], int] = None):
        self.judgments: Dict[Tuple[str, str], int] = {}
        for (query_id, doc_id), grade in (judgments or {}).items():
            self.set(query_id, doc_id, grade)

    def set(self, query_id: str, doc_id: str, grade: int):
        if not isinstance(grade, int) or grade < 0:
            raise DataError(f"оценка релевантности должна быть неотрицательным целым: ({query_id}, {doc_id}) -> {grade}")
        self.judgments[(query_id, doc_id)] = grade

    def get(self, query_id: str, doc_id: str) -> int:
        return self.judgments.get((query_id, doc_id), 0)

    def __contains__(self, key: Tuple[str, str]) -> bool:
        return key in self.judgments

    def by_query(self) -> Dict[str, Dict[str, int]]:
        grouped: Dict[str, Dict[str, int]] = {}
        for (query_id, doc_id), grade in self.judgments.items():
            grouped.setdefault(query_id, {})[doc_id] = grade
        return grouped

    def __len__(self) -> int:
        return len(self.judgments)

    def __iter__(self) -> Iterator[Tuple[str, str, int]]:
        for (query_id, doc_id), grade in self.judgments.items():
            yield query_id, doc_id, grade

    def __str__(self) -> str:
        return "QrelSet{size=%s}" % len(self.judgments)

    def __repr__(self) -> str:
        return self.__str__()
