import math
from typing import Dict, FrozenSet, Optional, Tuple

# общий символ для неизвестных слов и конца обучающего текста
UNK = "<unk>"


# биграммная модель со сглаживанием add-one:
# P(v|w) = (c(w,v) + 1) / (c(w) + V + 1), v из словаря или UNK
class ReferenceLm(object):
    def __init__(
            self,
            vocabulary: FrozenSet[str],
            unigram_counts: Dict[str, int],
            bigram_counts: Dict[Tuple[str, str], int]
    ):
        self.vocabulary = vocabulary
        self.unigram_counts = unigram_counts
        self.bigram_counts = bigram_counts

    @property
    def vocabulary_size(self) -> int:
        return len(self.vocabulary)

    def normalize(self, token: Optional[str]) -> str:
        if token is None or token not in self.vocabulary:
            return UNK
        return token

    def probability(self, previous: Optional[str], token: str) -> float:
        previous = self.normalize(previous)
        token = self.normalize(token)
        context_count = self.unigram_counts.get(previous, 0)
        pair_count = self.bigram_counts.get((previous, token), 0)
        return (pair_count + 1) / (context_count + self.vocabulary_size + 1)

    def logprob(self, previous: Optional[str], token: str) -> float:
        return math.log(self.probability(previous, token))

    def __str__(self) -> str:
        return "ReferenceLm{V=%s, bigrams=%s}" % (self.vocabulary_size, len(self.bigram_counts))

    def __repr__(self) -> str:
        return self.__str__()
