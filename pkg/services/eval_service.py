import logging
from typing import Dict, List, Optional, Set, Tuple

import pandas as pd

from domains.qrels import QrelSet
from domains.report import EvalReport, SignificanceMatrix, SigResult
from domains.run import Run
from exceptions import UsageError
from settings import EVAL_K, SIGNIFICANCE_LEVEL, CORRECTION
from utils.metric_util import ndcg_at_k
from utils.stats_util import paired_ttest

logger = logging.getLogger(__name__)

CORRECTIONS = ("none", "bonferroni")
MAX_RUNS = 26

NamedRun = Tuple[str, Run]


def significance_matrix(
        runs: List[NamedRun],
        qrels: QrelSet,
        k: int = EVAL_K,
        alpha_level: float = SIGNIFICANCE_LEVEL,
        correction: str = CORRECTION
) -> SignificanceMatrix:
    if len(runs) < 2:
        raise UsageError(f"для матрицы значимости нужно не менее 2 run, передано {len(runs)}")
    if len(runs) > MAX_RUNS:
        raise UsageError(f"матрица значимости поддерживает до {MAX_RUNS} run")
    if correction not in CORRECTIONS:
        raise UsageError(f"неизвестная поправка {correction}, допустимо: {CORRECTIONS}")
    names = [name for name, _ in runs]
    if len(set(names)) != len(names):
        raise UsageError(f"имена run должны быть уникальны: {names}")

    reports = [ndcg_at_k(run, qrels, k) for _, run in runs]
    # число сравнений в строке матрицы
    factor = len(runs) - 1 if correction == "bonferroni" else 1

    marks: Dict[str, Set[str]] = {name: set() for name in names}
    results: Dict[tuple, SigResult] = {}
    labels = [chr(ord("a") + position) for position in range(len(runs))]
    for x, (name_x, report_x) in enumerate(zip(names, reports)):
        for y, (name_y, report_y) in enumerate(zip(names, reports)):
            if x == y:
                continue
            result = paired_ttest(report_x.per_query, report_y.per_query).corrected(factor)
            results[(name_x, name_y)] = result
            if report_x.mean > report_y.mean and result.corrected_p <= alpha_level:
                marks[name_x].add(labels[y])

    matrix = SignificanceMatrix(names, reports, marks, results, alpha_level, correction)
    logger.info("построена матрица значимости: %s", matrix)
    return matrix


def render_significance_matrix(matrix: SignificanceMatrix) -> str:
    k = matrix.reports[0].k
    rows = []
    for label, name, report in zip(matrix.labels, matrix.names, matrix.reports):
        superscript = "".join(sorted(matrix.marks[name]))
        value = f"{report.mean * 100:.1f}"
        rows.append({"#": label, "Model": name, f"nDCG@{k}": f"{value}^{superscript}" if superscript else value})
    table = pd.DataFrame(rows, columns=["#", "Model", f"nDCG@{k}"]).to_string(index=False)
    header = (f"# paired two-tailed t-test, p <= {matrix.alpha_level}, correction: {matrix.correction}\n"
              f"# superscripts: labels of runs significantly outperformed\n")
    return header + table + "\n"


def render_eval_report(report: EvalReport) -> str:
    frame = report.to_frame()
    lines = frame.to_csv(sep="\t", index=False, float_format="%.6f", lineterminator="\n")
    summary = (f"# run: {report.tag}\n"
               f"# nDCG@{report.k}: {report.mean:.6f}\n"
               f"# evaluated queries: {report.evaluated_query_count}\n")
    return lines + summary


# сравнение с run без интерполяции: стрелка вверх/вниз по среднему значению
def render_comparison(reports: List[EvalReport], baseline: Optional[EvalReport] = None) -> str:
    rows = []
    for report in reports:
        marker = ""
        if baseline is not None and report is not baseline:
            if report.mean > baseline.mean:
                marker = "↑"
            elif report.mean < baseline.mean:
                marker = "↓"
        rows.append({"run": report.tag, f"nDCG@{report.k}": f"{report.mean * 100:.1f}{marker}",
                     "queries": report.evaluated_query_count})
    return pd.DataFrame(rows, columns=list(rows[0])).to_string(index=False) + "\n"
