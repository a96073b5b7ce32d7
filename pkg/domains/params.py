import math
from typing import Dict

from exceptions import UsageError
from settings import BM25_K1, BM25_B, DIRICHLET_MU, RERANK_ALPHA


class Bm25Params(object):
    def __init__(self, k1: float = BM25_K1, b: float = BM25_B):
        if not k1 > 0:
            raise UsageError(f"k1 должен быть > 0: {k1}")
        if not 0 <= b <= 1:
            raise UsageError(f"b должен быть в [0, 1]: {b}")
        self.k1 = k1
        self.b = b

    def __iter__(self) -> Dict:
        yield "k1", self.k1
        yield "b", self.b

    def __str__(self) -> str:
        return "Bm25Params{k1=%s, b=%s}" % (self.k1, self.b)

    def __repr__(self) -> str:
        return self.__str__()


class DirichletParams(object):
    def __init__(self, mu: float = DIRICHLET_MU):
        if not (mu > 0 and math.isfinite(mu)):
            raise UsageError(f"mu должен быть конечным и > 0: {mu}")
        self.mu = mu

    def __iter__(self) -> Dict:
        yield "mu", self.mu

    def __str__(self) -> str:
        return "DirichletParams{mu=%s}" % self.mu

    def __repr__(self) -> str:
        return self.__str__()


class FusionParams(object):
    # единственная поддерживаемая нормализация
    normalization = "minmax"

    def __init__(self, alpha: float = RERANK_ALPHA):
        validate_alpha(alpha)
        self.alpha = alpha

    def __iter__(self) -> Dict:
        yield "alpha", self.alpha
        yield "normalization", self.normalization

    def __str__(self) -> str:
        return "FusionParams{alpha=%s, normalization=%s}" % (self.alpha, self.normalization)

    def __repr__(self) -> str:
        return self.__str__()


def validate_alpha(alpha: float):
    if not 0 <= alpha <= 1:
        raise UsageError(f"alpha должен быть в [0, 1]: {alpha}")
