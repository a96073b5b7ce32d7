import logging
import math
from abc import ABC, abstractmethod
from typing import List, Optional

from domains.likelihood import LikelihoodRequest, LikelihoodResult
from exceptions import DataError
from settings import LOGPROB_FLOOR, CONSTANT_LOGPROB

logger = logging.getLogger(__name__)


# S_QLM: среднее logprob токенов запроса
def score_query_likelihood(result: LikelihoodResult) -> float:
    if len(result) == 0:
        raise DataError("пустой список токенов запроса")
    return math.fsum(result.logprobs) / len(result.logprobs)


# -inf, NaN и отсутствующие значения заменяются минимальным logprob
def floor_logprobs(logprobs: List[Optional[float]], floor: float = LOGPROB_FLOOR) -> List[float]:
    floored = []
    for logprob in logprobs:
        if logprob is None or math.isnan(logprob) or logprob < floor:
            logger.warning("logprob %s заменен на %s", logprob, floor)
            floored.append(floor)
        else:
            floored.append(logprob)
    return floored


# провайдер правдоподобия: по контексту и продолжению возвращает logprob токенов продолжения
class LikelihoodService(ABC):
    name = "provider"

    @abstractmethod
    def loglikelihood(self, request: LikelihoodRequest) -> LikelihoodResult:
        pass

    def close(self):
        pass


# постоянный logprob для каждого токена, разбиение по пробелам
class ConstantLikelihoodService(LikelihoodService):
    name = "constant"

    def __init__(self, logprob: float = CONSTANT_LOGPROB):
        self.logprob = logprob

    def loglikelihood(self, request: LikelihoodRequest) -> LikelihoodResult:
        tokens = request.continuation.split()
        return LikelihoodResult(tokens, [self.logprob] * len(tokens))
