import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from domains.document import Document, Query
from domains.likelihood import LikelihoodRequest
from domains.prompt import PromptTemplate, FewShotExample, validate_fewshot
from domains.run import Run, ScoredDoc, sort_entries
from exceptions import DataError, ProviderError, UsageError
from services.likelihood_service import LikelihoodService, score_query_likelihood
from settings import DOC_MAX_CHARS, MAX_IN_FLIGHT, ERROR_POLICY, LOGPROB_FLOOR
from utils.prompt_util import render_prompt, render_fewshot

logger = logging.getLogger(__name__)

ERROR_POLICIES = ("fail", "floor")

CacheKey = Tuple[str, str, str]


# переранжирование кандидатов по правдоподобию запроса, оцененному провайдером
class RerankService:
    def __init__(
            self,
            provider: LikelihoodService,
            template: PromptTemplate,
            doc_lookup: Mapping[str, Document],
            doc_max_chars: int = DOC_MAX_CHARS,
            fewshot: Optional[List[FewShotExample]] = None,
            max_in_flight: int = MAX_IN_FLIGHT,
            error_policy: str = ERROR_POLICY,
            floor: float = LOGPROB_FLOOR
    ):
        if error_policy not in ERROR_POLICIES:
            raise UsageError(f"неизвестная политика ошибок {error_policy}, допустимо: {ERROR_POLICIES}")
        if max_in_flight < 1:
            raise UsageError(f"max_in_flight должен быть >= 1: {max_in_flight}")
        if fewshot is not None:
            validate_fewshot(fewshot)

        self.provider = provider
        self.template = template
        self.doc_lookup = doc_lookup
        self.doc_max_chars = doc_max_chars
        self.fewshot = fewshot
        self.max_in_flight = max_in_flight
        self.error_policy = error_policy
        self.floor = floor

        self.template_fingerprint = template.fingerprint("few-shot" if fewshot else "zero-shot")
        self.cache: Dict[CacheKey, float] = {}
        self.request_count = 0
        self.cache_hits = 0
        self._lock = threading.Lock()
        # общий пул потоков для всех запросов run
        self._executor: Optional[ThreadPoolExecutor] = None

    def render(self, doc: Document) -> str:
        if self.fewshot:
            return render_fewshot(self.template, self.fewshot, doc, self.doc_max_chars)
        return render_prompt(self.template, doc, self.doc_max_chars)

    def score_document(self, query: Query, doc_id: str) -> float:
        key = (self.template_fingerprint, doc_id, query.id)
        with self._lock:
            if key in self.cache:
                self.cache_hits += 1
                return self.cache[key]
            self.request_count += 1

        prompt = self.render(self.doc_lookup[doc_id])
        logger.debug("промпт для запроса %s, документ %s: %r", query.id, doc_id, prompt)
        try:
            result = self.provider.loglikelihood(LikelihoodRequest.build(prompt, query.text))
            score = score_query_likelihood(result)
        except ProviderError as ex:
            if self.error_policy == "fail":
                raise
            logger.warning("ошибка провайдера на документе %s запроса %s, оценка %s: %s",
                           doc_id, query.id, self.floor, ex)
            score = self.floor

        with self._lock:
            self.cache[key] = score
        return score

    @property
    def executor(self) -> ThreadPoolExecutor:
        with self._lock:
            if self._executor is None:
                self._executor = ThreadPoolExecutor(max_workers=self.max_in_flight, thread_name_prefix="rerank")
            return self._executor

    def rerank(self, query: Query, candidates: Iterable[ScoredDoc]) -> List[ScoredDoc]:
        doc_ids = [doc_id for doc_id, _ in candidates]
        missing = [doc_id for doc_id in doc_ids if doc_id not in self.doc_lookup]
        if missing:
            raise DataError(f"кандидаты запроса {query.id} отсутствуют в корпусе: {missing[:5]}")

        if self.max_in_flight == 1:
            scores = [self.score_document(query, doc_id) for doc_id in doc_ids]
        else:
            scores = list(self.executor.map(lambda doc_id: self.score_document(query, doc_id), doc_ids))
        # порядок результата не зависит от порядка выполнения запросов
        return sort_entries(zip(doc_ids, scores))

    def rerank_run(self, run: Run, queries: Iterable[Query], tag: str = "qlm") -> Run:
        query_by_id = {query.id: query for query in queries}
        reranked = Run(tag=tag)
        for query_id in run.query_ids():
            if query_id not in query_by_id:
                raise DataError(f"запрос {query_id} из run отсутствует в файле запросов")
            requests_before, hits_before = self.request_count, self.cache_hits
            reranked.set_query(query_id, self.rerank(query_by_id[query_id], run.ranked(query_id)))
            logger.info("запрос %s: запросов к провайдеру %s, попаданий в кэш %s",
                        query_id, self.request_count - requests_before, self.cache_hits - hits_before)
        logger.info("переранжирование %s завершено: запросов к провайдеру %s, попаданий в кэш %s (%s)",
                    tag, self.request_count, self.cache_hits, self.hit_rate_text())
        return reranked

    def shutdown(self) -> None:
        with self._lock:
            executor, self._executor = self._executor, None
        if executor is not None:
            executor.shutdown(wait=True)

    # освобождает пул потоков и соединения провайдера
    def close(self) -> None:
        self.shutdown()
        self.provider.close()

    def hit_rate_text(self) -> str:
        total = self.request_count + self.cache_hits
        if total == 0:
            return "0.0%"
        return f"{100.0 * self.cache_hits / total:.1f}%"


def rerank(
        provider: LikelihoodService,
        template: PromptTemplate,
        query: Query,
        candidates: Iterable[ScoredDoc],
        doc_lookup: Mapping[str, Document],
        doc_max_chars: int = DOC_MAX_CHARS
) -> Run:
    service = RerankService(provider, template, doc_lookup, doc_max_chars)
    try:
        return Run({query.id: service.rerank(query, candidates)}, tag="qlm")
    finally:
        service.shutdown()
