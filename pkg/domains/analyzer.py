import re
from typing import Dict, Iterable, List, Optional

from nltk.stem import PorterStemmer

# последовательность букв и цифр; все остальное - разделитель
TOKEN_PATTERN = re.compile(r"[^\W_]+", re.UNICODE)


class Analyzer(object):
    def __init__(
            self,
            lowercase: bool = True,
            stopwords: Optional[Iterable[str]] = None,
            stemmer: bool = False
    ):
        self.lowercase = lowercase
        self.stopwords = frozenset(stopwords or [])
        self.stemmer = stemmer
        self._stemmer = PorterStemmer() if stemmer else None

    def analyze(self, text: str) -> List[str]:
        if not text:
            return []
        if self.lowercase:
            text = text.lower()
        tokens = [token for token in TOKEN_PATTERN.findall(text) if token not in self.stopwords]
        if self._stemmer is not None:
            tokens = [self._stemmer.stem(token) for token in tokens]
        return tokens

    def __iter__(self) -> Dict:
        yield "lowercase", self.lowercase
        yield "stopwords", sorted(self.stopwords)
        yield "stemmer", self.stemmer

    def __eq__(self, other) -> bool:
        return isinstance(other, Analyzer) and dict(self) == dict(other)

    def __str__(self) -> str:
        return "Analyzer{lowercase=%s, stopwords=%s, stemmer=%s}" % (
            self.lowercase, len(self.stopwords), self.stemmer)

    def __repr__(self) -> str:
        return self.__str__()

    @staticmethod
    def from_dict(analyzer_dict: Dict):
        return Analyzer(
            lowercase=bool(analyzer_dict.get("lowercase", True)),
            stopwords=analyzer_dict.get("stopwords") or [],
            stemmer=bool(analyzer_dict.get("stemmer", False))
        )
