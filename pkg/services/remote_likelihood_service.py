# coding=utf-8
import logging
import threading
from typing import Dict, List

import requests
from requests.adapters import HTTPAdapter
from urllib3.util.retry import Retry

from constants import LOGLIKELIHOOD_PATH, COMPLETIONS_PATH, RETRY_STATUS_CODES, APP_NAME
from domains.likelihood import LikelihoodRequest, LikelihoodResult
from exceptions import ProviderError, ProtocolError, UsageError, DataError
from services.likelihood_service import LikelihoodService, floor_logprobs
from settings import PROVIDER_ATTEMPTS, PROVIDER_BACKOFF, PROVIDER_TIMEOUT, LOGPROB_FLOOR

logger = logging.getLogger(__name__)


# клиент протокола POST /v1/loglikelihood:
# запрос {"context", "continuation"}, ответ {"tokens", "logprobs"}
class RemoteLikelihoodService(LikelihoodService):
    name = "remote"
    path = LOGLIKELIHOOD_PATH

    def __init__(
            self,
            endpoint: str,
            api_token: str = "",
            attempts: int = PROVIDER_ATTEMPTS,
            backoff: float = PROVIDER_BACKOFF,
            timeout: float = PROVIDER_TIMEOUT,
            floor: float = LOGPROB_FLOOR
    ):
        if not endpoint:
            raise UsageError("не задан адрес провайдера: укажите --endpoint или переменную QLM_ENDPOINT")
        if attempts < 1:
            raise UsageError(f"количество попыток должно быть >= 1: {attempts}")
        self.url = endpoint.rstrip("/") + self.path
        self.api_token = api_token
        self.attempts = attempts
        self.backoff = backoff
        self.timeout = timeout
        self.floor = floor
        # requests.Session не гарантирует потокобезопасность - своя сессия на поток
        self._local = threading.local()
        self._sessions: List[requests.Session] = []
        self._lock = threading.Lock()

    def create_session(self) -> requests.Session:
        retries = self.attempts - 1
        retry = Retry(
            total=retries,
            connect=retries,
            read=retries,
            status=retries,
            status_forcelist=RETRY_STATUS_CODES,
            allowed_methods=frozenset(["POST"]),
            backoff_factor=self.backoff,
            raise_on_status=False
        )
        session = requests.Session()
        session.mount("http://", HTTPAdapter(max_retries=retry))
        session.mount("https://", HTTPAdapter(max_retries=retry))
        session.headers["User-Agent"] = APP_NAME
        if self.api_token:
            session.headers["Authorization"] = f"Bearer {self.api_token}"
        return session

    @property
    def session(self) -> requests.Session:
        session = getattr(self._local, "session", None)
        if session is None:
            session = self.create_session()
            self._local.session = session
            with self._lock:
                self._sessions.append(session)
        return session

    def payload(self, request: LikelihoodRequest) -> Dict:
        return dict(request)

    def decode(self, request: LikelihoodRequest, body: Dict) -> LikelihoodResult:
        tokens = body.get("tokens")
        logprobs = body.get("logprobs")
        if not isinstance(tokens, list) or not isinstance(logprobs, list):
            raise ProtocolError(f"в ответе провайдера нет списков tokens и logprobs: {body}")
        return self.build_result(tokens, logprobs)

    def build_result(self, tokens: List, logprobs: List) -> LikelihoodResult:
        if len(tokens) != len(logprobs):
            raise ProtocolError(f"число токенов {len(tokens)} не совпадает с числом logprobs {len(logprobs)}")
        if len(tokens) == 0:
            raise ProtocolError("провайдер вернул пустой список токенов")
        try:
            values = [None if value is None else float(value) for value in logprobs]
            return LikelihoodResult([str(token) for token in tokens], floor_logprobs(values, self.floor))
        except (TypeError, ValueError, DataError) as ex:
            raise ProtocolError(f"некорректные logprobs в ответе провайдера: {ex}")

    def loglikelihood(self, request: LikelihoodRequest) -> LikelihoodResult:
        try:
            response = self.session.post(self.url, json=self.payload(request), timeout=self.timeout)
        except requests.exceptions.RequestException as ex:
            raise ProviderError(f"провайдер {self.url} недоступен после {self.attempts} попыток: {ex}")

        if response.status_code != 200:
            raise ProviderError(f"провайдер {self.url} ответил {response.status_code}: {response.text[:200]}")
        try:
            body = response.json()
        except ValueError:
            raise ProtocolError(f"ответ провайдера не является JSON: {response.text[:200]}")
        if not isinstance(body, dict):
            raise ProtocolError(f"ответ провайдера не является JSON-объектом: {body}")
        return self.decode(request, body)

    def close(self):
        with self._lock:
            for session in self._sessions:
                session.close()
            self._sessions.clear()


# адаптер для completions API с echo и logprobs:
# весь текст отправляется как prompt, берутся токены начиная с длины контекста
class CompletionLikelihoodService(RemoteLikelihoodService):
    name = "completions"
    path = COMPLETIONS_PATH

    def __init__(self, endpoint: str, model: str = "", **kwargs):
        super().__init__(endpoint, **kwargs)
        self.model = model

    def payload(self, request: LikelihoodRequest) -> Dict:
        payload = {
            "prompt": request.context + request.continuation,
            "max_tokens": 0,
            "echo": True,
            "logprobs": 0,
            "temperature": 0
        }
        if self.model:
            payload["model"] = self.model
        return payload

    def decode(self, request: LikelihoodRequest, body: Dict) -> LikelihoodResult:
        try:
            logprobs = body["choices"][0]["logprobs"]
            tokens = logprobs["tokens"]
            token_logprobs = logprobs["token_logprobs"]
            offsets = logprobs["text_offset"]
        except (KeyError, IndexError, TypeError):
            raise ProtocolError(f"в ответе completions нет logprobs: {str(body)[:200]}")
        if not (len(tokens) == len(token_logprobs) == len(offsets)):
            raise ProtocolError("длины tokens, token_logprobs и text_offset не совпадают")

        boundary = len(request.context)
        selected = [index for index, offset in enumerate(offsets) if offset >= boundary]
        return self.build_result([tokens[index] for index in selected],
                                 [token_logprobs[index] for index in selected])
