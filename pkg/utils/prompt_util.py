import logging
from typing import List

from domains.document import Document
from domains.prompt import PromptTemplate, FewShotExample, validate_fewshot
from exceptions import UsageError

logger = logging.getLogger(__name__)

GOOD_QUESTION_LABEL = "\nGood question:"
BAD_QUESTION_LABEL = "\nBad question:"


# обрезка по границе пробела, если она есть в пределах лимита; хвостовые пробелы отбрасываются
def truncate_text(text: str, max_chars: int) -> str:
    if len(text) <= max_chars:
        return text
    cut = text[:max_chars]
    if not text[max_chars].isspace():
        boundary = max(cut.rfind(" "), cut.rfind("\n"), cut.rfind("\t"))
        if boundary > 0:
            cut = cut[:boundary]
    cut = cut.rstrip()
    logger.debug("текст документа обрезан с %s до %s символов", len(text), len(cut))
    return cut


def document_text(doc: Document, doc_max_chars: int) -> str:
    if doc_max_chars < 1:
        raise UsageError(f"doc_max_chars должен быть >= 1: {doc_max_chars}")
    text = f"{doc.title}\n{doc.body}" if doc.title else doc.body
    return truncate_text(text, doc_max_chars)


def render_prompt(template: PromptTemplate, doc: Document, doc_max_chars: int) -> str:
    return template.system_prefix + template.fill(document_text(doc, doc_max_chars)) + template.suffix


# блок GBQ: три примера (документ, хороший вопрос, плохой вопрос), затем целевой документ
def render_fewshot(
        template: PromptTemplate,
        triples: List[FewShotExample],
        doc: Document,
        doc_max_chars: int
) -> str:
    validate_fewshot(triples)
    parts = [template.system_prefix]
    for triple in triples:
        parts.append(template.fill(triple.document))
        parts.append(f"{GOOD_QUESTION_LABEL} {triple.good_question}")
        parts.append(f"{BAD_QUESTION_LABEL} {triple.bad_question}\n\n")
    parts.append(template.fill(document_text(doc, doc_max_chars)))
    parts.append(GOOD_QUESTION_LABEL)
    return "".join(parts)
