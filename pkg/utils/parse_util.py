import math
from typing import Dict

from exceptions import DataError


def get_str_value(dictionary: Dict, key: str, default: str = "") -> str:
    value = dictionary.get(key)
    if value is None:
        return default
    if not isinstance(value, str):
        raise DataError(f"поле '{key}' должно быть строкой: {value!r}")
    return value


def parse_score(value: str) -> float:
    try:
        score = float(value)
    except ValueError:
        raise DataError(f"оценка не является числом: {value!r}")
    if math.isnan(score):
        raise DataError(f"оценка не является числом: {value!r}")
    return score


def parse_grade(value: str) -> int:
    try:
        grade = int(value)
    except ValueError:
        raise DataError(f"оценка релевантности не является целым числом: {value!r}")
    if grade < 0:
        raise DataError(f"отрицательная оценка релевантности: {grade}")
    return grade
