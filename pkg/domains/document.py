from typing import Dict

from exceptions import DataError
from utils.parse_util import get_str_value


class Document(object):
    def __init__(
            self,
            id: str,
            body: str,
            title: str = ""
    ):
        if not id:
            raise DataError("пустой идентификатор документа")
        self.id = id
        self.title = title
        self.body = body

    # текст для индексации: заголовок + " " + тело
    @property
    def index_text(self) -> str:
        return f"{self.title} {self.body}"

    def __iter__(self) -> Dict:
        yield "_id", self.id
        yield "title", self.title
        yield "text", self.body

    def __eq__(self, other) -> bool:
        return isinstance(other, Document) and dict(self) == dict(other)

    def __str__(self) -> str:
        return "Document{id=%s, title=%s, body=%s}" % (self.id, self.title, self.body[:50])

    def __repr__(self) -> str:
        return self.__str__()

    @staticmethod
    def from_dict(document_dict: Dict):
        if "text" not in document_dict:
            raise DataError("отсутствует поле text")
        return Document(
            id=get_str_value(document_dict, "_id"),
            title=get_str_value(document_dict, "title"),
            body=get_str_value(document_dict, "text")
        )


class Query(object):
    def __init__(
            self,
            id: str,
            text: str
    ):
        if not id:
            raise DataError("пустой идентификатор запроса")
        if not text or not text.strip():
            raise DataError(f"пустой текст запроса {id}")
        self.id = id
        self.text = text

    def __iter__(self) -> Dict:
        yield "_id", self.id
        yield "text", self.text

    def __eq__(self, other) -> bool:
        return isinstance(other, Query) and dict(self) == dict(other)

    def __str__(self) -> str:
        return "Query{id=%s, text=%s}" % (self.id, self.text)

    def __repr__(self) -> str:
        return self.__str__()

    @staticmethod
    def from_dict(query_dict: Dict):
        return Query(
            id=get_str_value(query_dict, "_id"),
            text=get_str_value(query_dict, "text")
        )
