import json
import logging
from collections import Counter
from typing import Dict, Iterable, List

from constants import INDEX_FORMAT_VERSION
from domains.analyzer import Analyzer
from domains.document import Document
from domains.index import InvertedIndex, Posting
from exceptions import DataError
from services.corpus_service import check_exists
from utils.file_util import atomic_write

logger = logging.getLogger(__name__)


def build_index(docs: Iterable[Document], analyzer: Analyzer) -> InvertedIndex:
    postings: Dict[str, List[Posting]] = {}
    doc_len: Dict[str, int] = {}
    for doc in docs:
        if doc.id in doc_len:
            raise DataError(f"повторяющийся документ {doc.id}")
        tokens = analyzer.analyze(doc.index_text)
        doc_len[doc.id] = len(tokens)
        for term, tf in Counter(tokens).items():
            postings.setdefault(term, []).append((doc.id, tf))

    if len(doc_len) == 0:
        raise DataError("пустая коллекция документов")

    index = InvertedIndex(postings=postings, doc_len=doc_len, analyzer=analyzer)
    logger.info("построен индекс: %s", index)
    return index


def save_index(index: InvertedIndex, path: str):
    index_dict = {"format_version": INDEX_FORMAT_VERSION}
    index_dict.update(dict(index))
    atomic_write(path, json.dumps(index_dict, ensure_ascii=False, sort_keys=True))
    logger.info("индекс сохранен: %s", path)


def load_index(path: str) -> InvertedIndex:
    check_exists(path)
    with open(path, encoding="utf-8") as file:
        try:
            index_dict = json.load(file)
        except json.JSONDecodeError as ex:
            raise DataError(f"{path}: некорректный файл индекса: {ex.msg}")
    version = index_dict.get("format_version") if isinstance(index_dict, dict) else None
    if version != INDEX_FORMAT_VERSION:
        raise DataError(f"{path}: неподдерживаемая версия формата индекса {version}")
    index = InvertedIndex.from_dict(index_dict)
    logger.info("индекс загружен: %s", index)
    return index
