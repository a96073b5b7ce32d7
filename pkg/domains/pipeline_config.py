import json
from os.path import exists
from typing import Dict, List, Optional

from constants import DEFAULT_CATALOG_PATH
from domains.analyzer import Analyzer
from domains.params import Bm25Params, DirichletParams, validate_alpha
from exceptions import UsageError
import settings

RETRIEVAL_MODELS = ("bm25", "dirichlet")
PROVIDERS = ("remote", "completions", "bigram", "constant")

# значения по умолчанию берутся из settings.py
DEFAULTS = {
    "corpus": None,
    "queries": None,
    "qrels": None,
    "hybrid_run": None,
    "output_dir": "output",
    "catalog": DEFAULT_CATALOG_PATH,
    "model_family": "llama",
    "dataset": "trecc",
    "retrieval_model": "bm25",
    "k1": settings.BM25_K1,
    "b": settings.BM25_B,
    "mu": settings.DIRICHLET_MU,
    "lowercase": settings.ANALYZER_LOWERCASE,
    "stemmer": settings.ANALYZER_STEMMER,
    "stopwords": settings.ANALYZER_STOPWORDS,
    "provider": "remote",
    "endpoint": settings.ENDPOINT,
    "api_token": settings.API_TOKEN,
    "model": "",
    "attempts": settings.PROVIDER_ATTEMPTS,
    "backoff": settings.PROVIDER_BACKOFF,
    "timeout": settings.PROVIDER_TIMEOUT,
    "max_in_flight": settings.MAX_IN_FLIGHT,
    "error_policy": settings.ERROR_POLICY,
    "logprob_floor": settings.LOGPROB_FLOOR,
    "depth": settings.CANDIDATE_DEPTH,
    "rerank_alpha": settings.RERANK_ALPHA,
    "hybrid_alpha": settings.HYBRID_ALPHA,
    "fewshot": False,
    "doc_max_chars": settings.DOC_MAX_CHARS,
    "eval_k": settings.EVAL_K,
    "significance_level": settings.SIGNIFICANCE_LEVEL,
    "correction": settings.CORRECTION,
}


class PipelineConfig(object):
    def __init__(self, **values):
        unknown = set(values) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"неизвестные параметры конфигурации: {sorted(unknown)}")
        for key, default in DEFAULTS.items():
            value = values.get(key)
            setattr(self, key, default if value is None else value)

    @property
    def analyzer(self) -> Analyzer:
        return Analyzer(lowercase=self.lowercase, stopwords=self.stopwords, stemmer=self.stemmer)

    @property
    def bm25_params(self) -> Bm25Params:
        return Bm25Params(k1=float(self.k1), b=float(self.b))

    @property
    def dirichlet_params(self) -> DirichletParams:
        return DirichletParams(mu=float(self.mu))

    def validate(self, required: List[str] = ()):
        for key in required:
            path = getattr(self, key)
            if not path:
                raise UsageError(f"не задан путь {key}")
            if not exists(path):
                raise UsageError(f"путь {key} не существует: {path}")
        if self.hybrid_run and not exists(self.hybrid_run):
            raise UsageError(f"путь hybrid_run не существует: {self.hybrid_run}")
        validate_alpha(self.rerank_alpha)
        validate_alpha(self.hybrid_alpha)
        if self.retrieval_model not in RETRIEVAL_MODELS:
            raise UsageError(f"неизвестная модель первого этапа {self.retrieval_model}, допустимо: {RETRIEVAL_MODELS}")
        if self.provider not in PROVIDERS:
            raise UsageError(f"неизвестный провайдер {self.provider}, допустимо: {PROVIDERS}")
        if int(self.depth) < 1 or int(self.eval_k) < 1 or int(self.doc_max_chars) < 1:
            raise UsageError("depth, eval_k и doc_max_chars должны быть >= 1")
        return self

    def __iter__(self) -> Dict:
        for key in DEFAULTS:
            if key == "api_token":
                continue
            yield key, getattr(self, key)

    def __str__(self) -> str:
        return "PipelineConfig{%s}" % ", ".join(f"{key}={value}" for key, value in self)

    def __repr__(self) -> str:
        return self.__str__()

    @staticmethod
    def from_dict(config_dict: Dict):
        return PipelineConfig(**config_dict)

    # флаги командной строки имеют приоритет над файлом конфигурации
    @staticmethod
    def from_sources(path: Optional[str] = None, overrides: Optional[Dict] = None):
        config_dict = {}
        if path:
            if not exists(path):
                raise UsageError(f"файл конфигурации не найден: {path}")
            with open(path, encoding="utf-8") as file:
                try:
                    config_dict = json.load(file)
                except json.JSONDecodeError as ex:
                    raise UsageError(f"{path}: некорректный JSON конфигурации: {ex.msg}")
            if not isinstance(config_dict, dict):
                raise UsageError(f"{path}: конфигурация должна быть JSON-объектом")
        for key, value in (overrides or {}).items():
            if value is not None:
                config_dict[key] = value
        return PipelineConfig.from_dict(config_dict)
