import math
from typing import Dict, List

from exceptions import DataError


class LikelihoodRequest(object):
    def __init__(self, context: str, continuation: str):
        if not continuation or not continuation.strip():
            raise DataError("пустое продолжение в запросе правдоподобия")
        self.context = context
        self.continuation = continuation

    # между промптом и запросом ставится один пробел, если промпт не заканчивается пробельным символом
    @staticmethod
    def build(context: str, query_text: str):
        if context and not context[-1].isspace():
            return LikelihoodRequest(context, " " + query_text)
        return LikelihoodRequest(context, query_text)

    def __iter__(self) -> Dict:
        yield "context", self.context
        yield "continuation", self.continuation

    def __str__(self) -> str:
        return "LikelihoodRequest{context=...%r, continuation=%r}" % (self.context[-40:], self.continuation)

    def __repr__(self) -> str:
        return self.__str__()


class LikelihoodResult(object):
    def __init__(self, tokens: List[str], logprobs: List[float]):
        if len(tokens) != len(logprobs):
            raise DataError(f"число токенов {len(tokens)} не совпадает с числом logprobs {len(logprobs)}")
        for logprob in logprobs:
            if not math.isfinite(logprob) or logprob > 0:
                raise DataError(f"logprob должен быть конечным и <= 0: {logprob}")
        self.tokens = list(tokens)
        self.logprobs = [float(logprob) for logprob in logprobs]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Dict:
        yield "tokens", self.tokens
        yield "logprobs", self.logprobs

    def __eq__(self, other) -> bool:
        return isinstance(other, LikelihoodResult) and dict(self) == dict(other)

    def __str__(self) -> str:
        return "LikelihoodResult{tokens=%s, logprobs=%s}" % (self.tokens, self.logprobs)

    def __repr__(self) -> str:
        return self.__str__()
