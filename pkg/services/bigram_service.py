import logging
from collections import Counter
from typing import Iterable

from domains.analyzer import Analyzer
from domains.likelihood import LikelihoodRequest, LikelihoodResult
from domains.reference_lm import ReferenceLm, UNK
from exceptions import DataError
from services.likelihood_service import LikelihoodService

logger = logging.getLogger(__name__)

# слова: нижний регистр, разделители - пробелы и пунктуация
word_analyzer = Analyzer()


def bigram_train(texts: Iterable[str]) -> ReferenceLm:
    unigram_counts = Counter()
    bigram_counts = Counter()
    for text in texts:
        tokens = word_analyzer.analyze(text)
        if not tokens:
            continue
        unigram_counts.update(tokens)
        bigram_counts.update(zip(tokens, tokens[1:]))
        # за последним словом текста следует UNK, поэтому c(w) = sum_v c(w, v)
        bigram_counts[(tokens[-1], UNK)] += 1

    if not unigram_counts:
        raise DataError("пустой корпус для обучения биграммной модели")

    lm = ReferenceLm(
        vocabulary=frozenset(unigram_counts),
        unigram_counts=dict(unigram_counts),
        bigram_counts=dict(bigram_counts)
    )
    logger.info("обучена биграммная модель: %s", lm)
    return lm


def bigram_loglikelihood(lm: ReferenceLm, request: LikelihoodRequest) -> LikelihoodResult:
    tokens = word_analyzer.analyze(request.continuation)
    if not tokens:
        raise DataError(f"продолжение не содержит слов: {request.continuation!r}")
    context_tokens = word_analyzer.analyze(request.context)
    previous = context_tokens[-1] if context_tokens else None

    logprobs = []
    for token in tokens:
        logprobs.append(lm.logprob(previous, token))
        previous = token
    return LikelihoodResult(tokens, logprobs)


class BigramLikelihoodService(LikelihoodService):
    name = "bigram"

    def __init__(self, lm: ReferenceLm):
        self.lm = lm

    def loglikelihood(self, request: LikelihoodRequest) -> LikelihoodResult:
        return bigram_loglikelihood(self.lm, request)
