import math
import random
import unittest

from scipy import stats

from domains.qrels import QrelSet
from domains.run import Run
from exceptions import DataError, UsageError
from services.eval_service import significance_matrix, render_significance_matrix
from utils.stats_util import paired_ttest


def as_dict(values):
    return {f"q{i}": value for i, value in enumerate(values)}


# релевантный документ на позиции rank: nDCG@10 = 1 / log2(rank + 1)
def run_with_ranks(ranks, tag):
    entries = {}
    for position, rank in enumerate(ranks):
        fillers = [(f"x{i}", 100.0 - i) for i in range(rank - 1)]
        entries[f"q{position}"] = fillers + [("rel", 100.0 - rank)]
    return Run(entries, tag=tag)


def qrels_for(count):
    return QrelSet({(f"q{i}", "rel"): 1 for i in range(count)})


class TestPairedTTest(unittest.TestCase):
    def test_worked_example(self):
        result = paired_ttest(as_dict([0.5, 0.6, 0.7]), as_dict([0.4, 0.6, 0.65]))

        self.assertAlmostEqual(result.t_statistic, math.sqrt(3), places=9)
        self.assertEqual(result.df, 2)
        self.assertAlmostEqual(result.p_value, 0.22540, places=5)

    def test_identical(self):
        values = as_dict([0.1, 0.5, 0.9, 0.3])

        result = paired_ttest(values, dict(values))

        self.assertEqual(result.t_statistic, 0.0)
        self.assertEqual(result.p_value, 1.0)
        self.assertFalse(result.degenerate)

    def test_constant_difference(self):
        result = paired_ttest(as_dict([0.2, 0.3, 0.4, 0.5, 0.6]), as_dict([0.1, 0.2, 0.3, 0.4, 0.5]))

        self.assertEqual(result.p_value, 0.0)
        self.assertTrue(result.degenerate)
        self.assertEqual(result.t_statistic, math.inf)

    def test_antisymmetry(self):
        generator = random.Random(13)
        for _ in range(100):
            a = as_dict([generator.random() for _ in range(10)])
            b = as_dict([generator.random() for _ in range(10)])
            forward, backward = paired_ttest(a, b), paired_ttest(b, a)
            self.assertAlmostEqual(forward.t_statistic, -backward.t_statistic, places=12)
            self.assertAlmostEqual(forward.p_value, backward.p_value, places=12)
            self.assertTrue(0 <= forward.p_value <= 1)

    def test_matches_reference(self):
        generator = random.Random(14)
        a = [generator.random() for _ in range(25)]
        b = [value + generator.gauss(0.05, 0.1) for value in a]
        reference = stats.ttest_rel(a, b)

        result = paired_ttest(as_dict(a), as_dict(b))

        self.assertAlmostEqual(result.t_statistic, float(reference.statistic), places=10)
        self.assertAlmostEqual(result.p_value, float(reference.pvalue), places=10)

    def test_only_shared_queries(self):
        result = paired_ttest({"q1": 0.5, "q2": 0.6, "q3": 0.7, "q9": 0.0},
                              {"q1": 0.4, "q2": 0.6, "q3": 0.65, "q8": 1.0})

        self.assertEqual(result.df, 2)

    def test_too_few_queries(self):
        with self.assertRaises(DataError):
            paired_ttest({"q1": 0.5}, {"q1": 0.4})

    def test_correction_cap(self):
        result = paired_ttest(as_dict([0.5, 0.6, 0.7]), as_dict([0.4, 0.6, 0.65]))

        corrected = result.corrected(5)

        self.assertEqual(corrected.corrected_p, 1.0)
        self.assertGreaterEqual(corrected.corrected_p, corrected.p_value)


class TestSignificanceMatrix(unittest.TestCase):
    def test_identical_runs(self):
        ranks = [1, 2, 3, 1, 4, 2, 1, 5, 2, 3]
        runs = [("bm25", run_with_ranks(ranks, "bm25")), ("copy", run_with_ranks(ranks, "copy"))]

        matrix = significance_matrix(runs, qrels_for(10))

        self.assertEqual(matrix.marks, {"bm25": set(), "copy": set()})

    def test_better_run_marked(self):
        better = run_with_ranks([1] * 10, "qlm")
        worse = run_with_ranks([2, 3, 4, 2, 3, 4, 2, 3, 4, 2], "bm25")

        matrix = significance_matrix([("bm25", worse), ("qlm", better)], qrels_for(10), correction="none")

        self.assertEqual(matrix.marks["qlm"], {"a"})
        self.assertEqual(matrix.marks["bm25"], set())
        self.assertLessEqual(matrix.results[("qlm", "bm25")].p_value, 0.05)

    def test_bonferroni(self):
        ranks = [[1, 2, 1, 3, 1, 2, 4, 1, 2, 1], [2, 1, 3, 1, 2, 2, 1, 4, 1, 3], [1, 1, 2, 2, 3, 1, 2, 1, 3, 2]]
        runs = [(f"r{index}", run_with_ranks(value, f"r{index}")) for index, value in enumerate(ranks)]

        matrix = significance_matrix(runs, qrels_for(10), correction="bonferroni")

        for result in matrix.results.values():
            self.assertAlmostEqual(result.corrected_p, min(1.0, 2 * result.p_value), places=12)

    def test_render(self):
        better = run_with_ranks([1] * 10, "qlm")
        worse = run_with_ranks([2, 3, 4, 2, 3, 4, 2, 3, 4, 2], "bm25")

        text = render_significance_matrix(significance_matrix([("bm25", worse), ("qlm", better)], qrels_for(10)))

        self.assertIn("bonferroni", text)
        self.assertIn("100.0^a", text)

    def test_single_run(self):
        with self.assertRaises(UsageError):
            significance_matrix([("bm25", run_with_ranks([1, 2], "bm25"))], qrels_for(2))

    def test_unknown_correction(self):
        runs = [("a", run_with_ranks([1, 2], "a")), ("b", run_with_ranks([2, 1], "b"))]

        with self.assertRaises(UsageError):
            significance_matrix(runs, qrels_for(2), correction="holm")


if __name__ == "__main__":
    unittest.main()
