import hashlib
from typing import Dict, List, Optional, Tuple

from exceptions import DataError
from utils.parse_util import get_str_value

DOC_PLACEHOLDER = "{doc}"
FEWSHOT_SIZE = 3


class PromptTemplate(object):
    def __init__(
            self,
            body: str,
            system_prefix: str = "",
            suffix: str = ""
    ):
        count = body.count(DOC_PLACEHOLDER)
        if count != 1:
            raise DataError(f"тело промпта должно содержать {DOC_PLACEHOLDER} ровно один раз, найдено {count}")
        self.system_prefix = system_prefix
        self.body = body
        self.suffix = suffix

    def fill(self, doc_text: str) -> str:
        return self.body.replace(DOC_PLACEHOLDER, doc_text)

    # отпечаток шаблона для ключа кэша провайдера
    def fingerprint(self, mode: str = "zero-shot") -> str:
        digest = hashlib.sha256()
        for part in (mode, self.system_prefix, self.body, self.suffix):
            digest.update(part.encode("utf-8"))
            digest.update(b"\0")
        return digest.hexdigest()[:16]

    def __iter__(self) -> Dict:
        yield "system_prefix", self.system_prefix
        yield "body", self.body
        yield "suffix", self.suffix

    def __eq__(self, other) -> bool:
        return isinstance(other, PromptTemplate) and dict(self) == dict(other)

    def __str__(self) -> str:
        return "PromptTemplate{system_prefix=%r, body=%r, suffix=%r}" % (self.system_prefix, self.body, self.suffix)

    def __repr__(self) -> str:
        return self.__str__()

    @staticmethod
    def from_dict(template_dict: Dict):
        return PromptTemplate(
            system_prefix=get_str_value(template_dict, "system_prefix"),
            body=get_str_value(template_dict, "body"),
            suffix=get_str_value(template_dict, "suffix")
        )


class FewShotExample(object):
    def __init__(
            self,
            document: str,
            good_question: str,
            bad_question: str
    ):
        for name, value in (("document", document), ("good_question", good_question),
                            ("bad_question", bad_question)):
            if not value or not value.strip():
                raise DataError(f"пустое поле {name} в примере few-shot")
        self.document = document
        self.good_question = good_question
        self.bad_question = bad_question

    def __iter__(self) -> Dict:
        yield "document", self.document
        yield "good_question", self.good_question
        yield "bad_question", self.bad_question

    def __eq__(self, other) -> bool:
        return isinstance(other, FewShotExample) and dict(self) == dict(other)

    def __str__(self) -> str:
        return "FewShotExample{good_question=%s, bad_question=%s}" % (self.good_question, self.bad_question)

    def __repr__(self) -> str:
        return self.__str__()

    @staticmethod
    def from_dict(example_dict: Dict):
        return FewShotExample(
            document=get_str_value(example_dict, "document"),
            good_question=get_str_value(example_dict, "good_question"),
            bad_question=get_str_value(example_dict, "bad_question")
        )


def validate_fewshot(triples: List[FewShotExample]):
    if len(triples) != FEWSHOT_SIZE:
        raise DataError(f"few-shot блок должен содержать {FEWSHOT_SIZE} примера, найдено {len(triples)}")


CatalogKey = Tuple[str, str]


class PromptCatalog(object):
    def __init__(self):
        self.entries: Dict[CatalogKey, PromptTemplate] = {}
        self.fewshot: Dict[CatalogKey, List[FewShotExample]] = {}

    def add(
            self,
            model_family: str,
            dataset: str,
            template: PromptTemplate,
            fewshot: Optional[List[FewShotExample]] = None
    ):
        key = (model_family, dataset)
        if key in self.entries:
            raise DataError(f"повторяющийся ключ каталога промптов: {key}")
        self.entries[key] = template
        if fewshot is not None:
            validate_fewshot(fewshot)
            self.fewshot[key] = list(fewshot)

    def template(self, model_family: str, dataset: str) -> PromptTemplate:
        key = (model_family, dataset)
        if key not in self.entries:
            raise DataError(f"в каталоге нет промпта для {key}")
        return self.entries[key]

    def fewshot_examples(self, model_family: str, dataset: str) -> List[FewShotExample]:
        key = (model_family, dataset)
        if key not in self.fewshot:
            raise DataError(f"в каталоге нет few-shot примеров для {key}")
        return self.fewshot[key]

    def keys(self) -> List[CatalogKey]:
        return list(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, PromptCatalog) and self.entries == other.entries and self.fewshot == other.fewshot

    def __str__(self) -> str:
        return "PromptCatalog{entries=%s, fewshot=%s}" % (len(self.entries), len(self.fewshot))

    def __repr__(self) -> str:
        return self.__str__()
