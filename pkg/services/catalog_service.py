import json
import logging
from typing import Dict, List

from domains.prompt import PromptCatalog, PromptTemplate, FewShotExample
from exceptions import DataError
from services.corpus_service import check_exists
from utils.file_util import atomic_write
from utils.parse_util import get_str_value

logger = logging.getLogger(__name__)


def parse_catalog(catalog_data) -> PromptCatalog:
    # допускается как список записей, так и объект {"entries": [...]}
    entries = catalog_data.get("entries") if isinstance(catalog_data, dict) else catalog_data
    if not isinstance(entries, list):
        raise DataError("каталог промптов должен содержать список entries")

    catalog = PromptCatalog()
    for position, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise DataError(f"запись каталога #{position} не является объектом")
        model_family = get_str_value(entry, "model_family")
        dataset = get_str_value(entry, "dataset")
        if not model_family or not dataset:
            raise DataError(f"запись каталога #{position}: не заданы model_family и dataset")
        try:
            template = PromptTemplate.from_dict(entry)
            fewshot = None
            if entry.get("fewshot") is not None:
                fewshot = [FewShotExample.from_dict(example) for example in entry["fewshot"]]
            catalog.add(model_family, dataset, template, fewshot)
        except DataError as ex:
            raise DataError(f"запись каталога ({model_family}, {dataset}): {ex}")
    return catalog


def load_catalog(path: str) -> PromptCatalog:
    check_exists(path)
    with open(path, encoding="utf-8") as file:
        try:
            catalog_data = json.load(file)
        except json.JSONDecodeError as ex:
            raise DataError(f"{path}: некорректный JSON каталога: {ex.msg}")
    catalog = parse_catalog(catalog_data)
    logger.info("загружен каталог промптов %s: %s", path, catalog)
    return catalog


def catalog_to_dict(catalog: PromptCatalog) -> Dict[str, List[Dict]]:
    entries = []
    for (model_family, dataset), template in catalog.entries.items():
        entry = {"model_family": model_family, "dataset": dataset}
        entry.update(dict(template))
        if (model_family, dataset) in catalog.fewshot:
            entry["fewshot"] = [dict(example) for example in catalog.fewshot[(model_family, dataset)]]
        entries.append(entry)
    return {"entries": entries}


def save_catalog(catalog: PromptCatalog, path: str):
    atomic_write(path, json.dumps(catalog_to_dict(catalog), ensure_ascii=False, indent=2) + "\n")
