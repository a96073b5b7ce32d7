import csv
import json
import logging
from os.path import exists
from typing import Callable, Dict, List, TypeVar

import pandas as pd

from constants import RUN_COLUMNS_COUNT, RUN_Q0, QRELS_HEADER
from domains.document import Document, Query
from domains.qrels import QrelSet
from domains.run import Run
from exceptions import DataError
from utils.file_util import atomic_write
from utils.format_util import format_score
from utils.parse_util import parse_score, parse_grade

logger = logging.getLogger(__name__)

T = TypeVar("T")


def check_exists(path: str):
    if not exists(path):
        raise DataError(f"файл не найден: {path}")


# чтение JSON-lines, каждая непустая строка - один объект
def read_jsonl(path: str, from_dict: Callable[[Dict], T]) -> List[T]:
    check_exists(path)
    records: List[T] = []
    seen_ids = set()
    with open(path, encoding="utf-8") as file:
        for line_number, line in enumerate(file, start=1):
            if not line.strip():
                continue
            try:
                record_dict = json.loads(line)
            except json.JSONDecodeError as ex:
                raise DataError(f"{path}:{line_number}: некорректный JSON: {ex.msg}")
            if not isinstance(record_dict, dict):
                raise DataError(f"{path}:{line_number}: ожидается JSON-объект")
            try:
                record = from_dict(record_dict)
            except DataError as ex:
                raise DataError(f"{path}:{line_number}: {ex}")
            if record.id in seen_ids:
                raise DataError(f"{path}:{line_number}: повторяющийся _id {record.id}")
            seen_ids.add(record.id)
            records.append(record)
    return records


def load_corpus(path: str) -> List[Document]:
    documents = read_jsonl(path, Document.from_dict)
    logger.info("загружено документов: %s из %s", len(documents), path)
    return documents


def load_queries(path: str) -> List[Query]:
    queries = read_jsonl(path, Query.from_dict)
    logger.info("загружено запросов: %s из %s", len(queries), path)
    return queries


def load_qrels(path: str) -> QrelSet:
    check_exists(path)
    try:
        df = pd.read_csv(path, sep="\t", header=None, dtype=str, keep_default_na=False,
                         skip_blank_lines=True, quoting=csv.QUOTE_NONE)
    except pd.errors.EmptyDataError:
        return QrelSet()
    except pd.errors.ParserError as ex:
        raise DataError(f"{path}: некорректный формат qrels: {ex}")

    if df.shape[1] != 3:
        raise DataError(f"{path}: ожидается 3 колонки query-id, corpus-id, score, найдено {df.shape[1]}")

    qrels = QrelSet()
    for position, row in enumerate(df.itertuples(index=False)):
        query_id, doc_id, grade = (str(value).strip() for value in row)
        # заголовок BEIR пропускается
        if position == 0 and (query_id, doc_id, grade) == QRELS_HEADER:
            continue
        try:
            grade = parse_grade(grade)
        except DataError as ex:
            raise DataError(f"{path}:{position + 1}: {ex}")
        if (query_id, doc_id) in qrels:
            logger.warning("повторная оценка (%s, %s) в %s:%s, используется последняя",
                           query_id, doc_id, path, position + 1)
        qrels.set(query_id, doc_id, grade)
    logger.info("загружено оценок релевантности: %s из %s", len(qrels), path)
    return qrels


def read_run(path: str) -> Run:
    check_exists(path)
    entries: Dict[str, Dict[str, float]] = {}
    tag = None
    with open(path, encoding="utf-8") as file:
        for line_number, line in enumerate(file, start=1):
            if not line.strip():
                continue
            columns = line.split()
            if len(columns) != RUN_COLUMNS_COUNT:
                raise DataError(f"{path}:{line_number}: ожидается {RUN_COLUMNS_COUNT} колонок, найдено {len(columns)}")
            query_id, _, doc_id, _, score, line_tag = columns
            try:
                score = parse_score(score)
            except DataError as ex:
                raise DataError(f"{path}:{line_number}: {ex}")
            if tag is None:
                tag = line_tag
            ranked = entries.setdefault(query_id, {})
            if doc_id in ranked:
                raise DataError(f"{path}:{line_number}: документ {doc_id} повторяется в запросе {query_id}")
            ranked[doc_id] = score
    return Run({query_id: ranked.items() for query_id, ranked in entries.items()}, tag=tag or "run")


def run_to_text(run: Run) -> str:
    lines = []
    for query_id in run.query_ids():
        for rank, (doc_id, score) in enumerate(run.ranked(query_id), start=1):
            lines.append(f"{query_id} {RUN_Q0} {doc_id} {rank} {format_score(score)} {run.tag}\n")
    return "".join(lines)


def write_run(run: Run, path: str):
    atomic_write(path, run_to_text(run))
    logger.info("записан run %s: запросов %s -> %s", run.tag, len(run), path)
