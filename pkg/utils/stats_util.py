import math
from typing import Dict

import numpy as np
from scipy import stats

from domains.report import SigResult
from exceptions import DataError

ZERO_VARIANCE_TOLERANCE = 1e-12


# двусторонний парный t-тест Стьюдента по общим запросам
def paired_ttest(a: Dict[str, float], b: Dict[str, float]) -> SigResult:
    query_ids = sorted(set(a) & set(b))
    n = len(query_ids)
    if n < 2:
        raise DataError(f"для t-теста нужно не менее 2 общих запросов, найдено {n}")

    values_a = np.array([a[query_id] for query_id in query_ids], dtype=float)
    values_b = np.array([b[query_id] for query_id in query_ids], dtype=float)
    differences = values_a - values_b
    mean = float(np.mean(differences))
    sd = float(np.std(differences, ddof=1))

    # разности, совпадающие с точностью до округления, считаются постоянными
    if sd <= ZERO_VARIANCE_TOLERANCE * max(1.0, abs(mean)):
        # нулевая дисперсия: при нулевом среднем t=0, p=1; иначе p=0 и признак вырожденности
        if abs(mean) <= ZERO_VARIANCE_TOLERANCE:
            return SigResult(t_statistic=0.0, p_value=1.0, df=n - 1)
        return SigResult(t_statistic=math.copysign(math.inf, mean), p_value=0.0, df=n - 1, degenerate=True)

    t_statistic, p_value = stats.ttest_rel(values_a, values_b)
    return SigResult(t_statistic=float(t_statistic), p_value=float(min(1.0, max(0.0, p_value))), df=n - 1)
