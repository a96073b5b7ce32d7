import itertools
import math
import random
import unittest

from domains.qrels import QrelSet
from domains.run import Run
from exceptions import DataError, UsageError
from services.eval_service import render_eval_report
from utils.metric_util import ndcg_at_k, dcg


# IDCG перебором всех порядков оцененных документов
def brute_force_ndcg(ranked_doc_ids, judgments, k):
    def gain(grades):
        return sum((2 ** grade - 1) / math.log2(rank + 2) for rank, grade in enumerate(grades[:k]))

    orders = itertools.permutations(judgments.values(), min(k, len(judgments)))
    ideal = max(gain(list(order)) for order in orders)
    if ideal == 0:
        return 0.0
    return gain([judgments.get(doc_id, 0) for doc_id in ranked_doc_ids]) / ideal


class TestNdcg(unittest.TestCase):
    def test_ideal(self):
        report = ndcg_at_k(Run({"q1": [("dA", 1.0), ("dX", 0.5)]}), QrelSet({("q1", "dA"): 1}))

        self.assertEqual(report.per_query, {"q1": 1.0})

    def test_second_position(self):
        report = ndcg_at_k(Run({"q1": [("dX", 1.0), ("dA", 0.5)]}), QrelSet({("q1", "dA"): 1}))

        self.assertAlmostEqual(report.mean, 1 / math.log2(3), places=12)
        self.assertAlmostEqual(report.mean, 0.63093, places=5)

    def test_graded(self):
        qrels = QrelSet({("q1", "dA"): 2, ("q1", "dB"): 1})

        report = ndcg_at_k(Run({"q1": [("dB", 2.0), ("dA", 1.0)]}), qrels)

        self.assertAlmostEqual(dcg([1, 2]), 2.89279, places=5)
        self.assertAlmostEqual(dcg([2, 1]), 3.63093, places=5)
        self.assertAlmostEqual(report.mean, 0.79671, places=5)

    def test_queries_without_positive_judgments_excluded(self):
        run = Run({"q1": [("dA", 1.0)], "q2": [("dB", 1.0)], "q3": [("dC", 1.0)]})
        qrels = QrelSet({("q1", "dA"): 1, ("q2", "dB"): 0})

        report = ndcg_at_k(run, qrels)

        self.assertEqual(report.evaluated_query_count, 1)
        self.assertEqual(set(report.per_query), {"q1"})

    def test_no_evaluable_queries(self):
        with self.assertRaises(DataError):
            ndcg_at_k(Run({"q1": [("dA", 1.0)]}), QrelSet({("q2", "dA"): 1}))

    def test_zero_k(self):
        with self.assertRaises(UsageError):
            ndcg_at_k(Run({"q1": [("dA", 1.0)]}), QrelSet({("q1", "dA"): 1}), k=0)

    def test_perfect_ranking(self):
        generator = random.Random(9)
        for _ in range(50):
            judgments = {f"d{i}": generator.randint(0, 3) for i in range(generator.randint(1, 12))}
            judgments["d0"] = max(1, judgments["d0"])
            ordered = sorted(judgments, key=lambda doc_id: -judgments[doc_id])
            run = Run({"q1": [(doc_id, float(len(ordered) - rank)) for rank, doc_id in enumerate(ordered)]})
            qrels = QrelSet({("q1", doc_id): grade for doc_id, grade in judgments.items()})
            for k in (1, 5, 10):
                self.assertAlmostEqual(ndcg_at_k(run, qrels, k).mean, 1.0, places=12)

    def test_unjudged_tail_permutation(self):
        generator = random.Random(10)
        head = [("dA", 10.0), ("dX", 9.0), ("dB", 8.0)]
        qrels = QrelSet({("q1", "dA"): 1, ("q1", "dB"): 2})
        expected = ndcg_at_k(Run({"q1": head}), qrels, 3).mean
        for _ in range(20):
            tail_ids = [f"t{i}" for i in range(10)]
            generator.shuffle(tail_ids)
            tail = [(doc_id, 5.0 - position * 0.1) for position, doc_id in enumerate(tail_ids)]
            self.assertEqual(ndcg_at_k(Run({"q1": head + tail}), qrels, 3).mean, expected)

    def test_oracle_equivalence(self):
        generator = random.Random(12)
        for _ in range(500):
            judged = generator.randint(1, 8)
            judgments = {f"j{i}": generator.randint(0, 3) for i in range(judged)}
            judgments["j0"] = max(1, judgments["j0"])
            candidates = list(judgments) + [f"u{i}" for i in range(generator.randint(0, 6))]
            generator.shuffle(candidates)
            ranked = candidates[:generator.randint(1, len(candidates))]
            run = Run({"q1": [(doc_id, float(-rank)) for rank, doc_id in enumerate(ranked)]})
            qrels = QrelSet({("q1", doc_id): grade for doc_id, grade in judgments.items()})
            k = generator.choice([1, 3, 5, 10])

            actual = ndcg_at_k(run, qrels, k).mean

            self.assertAlmostEqual(actual, brute_force_ndcg(ranked, judgments, k), delta=1e-9)
            self.assertTrue(0 <= actual <= 1)

    def test_render_report(self):
        run = Run({"q1": [("dA", 1.0)], "q2": [("dX", 1.0), ("dB", 0.5)]}, tag="bm25")
        qrels = QrelSet({("q1", "dA"): 1, ("q2", "dB"): 1})

        text = render_eval_report(ndcg_at_k(run, qrels))

        lines = text.splitlines()
        self.assertEqual(lines[0], "query_id\tndcg")
        self.assertEqual(lines[1], "q1\t1.000000")
        self.assertEqual(lines[2], "q2\t0.630930")
        self.assertIn("# run: bm25", lines)


if __name__ == "__main__":
    unittest.main()
