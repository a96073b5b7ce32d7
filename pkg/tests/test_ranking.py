import math
import random
import unittest

from domains.analyzer import Analyzer
from domains.document import Document, Query
from domains.params import Bm25Params, DirichletParams
from exceptions import DataError, UsageError
from services.index_service import build_index
from strategies.bm25_strategy import Bm25Strategy, bm25_score, bm25_search
from strategies.dirichlet_strategy import DirichletStrategy, dirichlet_qlm_score, dirichlet_search

WORDS = ["a", "b", "c", "d", "e", "f", "g"]


def toy_index():
    return build_index([Document("d1", "a b a"), Document("d2", "b c"), Document("d3", "c c c")], Analyzer())


def random_corpus(generator, size):
    return [Document(f"d{i}", " ".join(generator.choice(WORDS) for _ in range(generator.randint(1, 12))))
            for i in range(size)]


# независимый подсчет BM25 прямо по текстам документов
def brute_force_bm25(documents, query_terms, k1, b):
    tokens = {doc.id: Analyzer().analyze(doc.index_text) for doc in documents}
    n = len(documents)
    avgdl = sum(len(value) for value in tokens.values()) / n
    scores = {}
    for doc_id, doc_tokens in tokens.items():
        score = 0.0
        for term in query_terms:
            df = sum(1 for value in tokens.values() if term in value)
            tf = doc_tokens.count(term)
            if tf:
                idf = math.log(1 + (n - df + 0.5) / (df + 0.5))
                score += idf * tf / (tf + k1 * (1 - b + b * len(doc_tokens) / avgdl))
        scores[doc_id] = score
    return scores


class TestBm25(unittest.TestCase):
    def test_toy_score(self):
        index = toy_index()

        score = bm25_score(index, Bm25Params(0.9, 0.4), ["a"], "d1")

        self.assertAlmostEqual(score, math.log(8 / 3) * 2 / 2.945, places=12)
        self.assertAlmostEqual(score, 0.66611, places=4)

    def test_absent_term(self):
        index = toy_index()

        for doc_id in ("d1", "d2", "d3"):
            self.assertEqual(bm25_score(index, Bm25Params(), ["z"], doc_id), 0)

    def test_zero_tf(self):
        self.assertEqual(bm25_score(toy_index(), Bm25Params(), ["a"], "d3"), 0)

    def test_unknown_document(self):
        with self.assertRaises(DataError):
            bm25_score(toy_index(), Bm25Params(), ["a"], "d9")

    def test_search_only_positive(self):
        ranked = bm25_search(toy_index(), Bm25Params(), "a", 10)

        self.assertEqual([doc_id for doc_id, _ in ranked], ["d1"])
        self.assertAlmostEqual(ranked[0][1], 0.66611, places=4)

    def test_search_argmax(self):
        index = toy_index()
        oracle = brute_force_bm25([Document("d1", "a b a"), Document("d2", "b c"), Document("d3", "c c c")],
                                  ["c"], 0.9, 0.4)
        expected = max(("d2", "d3"), key=lambda doc_id: (oracle[doc_id], -int(doc_id[1:])))

        ranked = bm25_search(index, Bm25Params(), "c", 1)

        self.assertEqual(len(ranked), 1)
        self.assertEqual(ranked[0][0], expected)

    def test_search_rejects_zero_k(self):
        with self.assertRaises(UsageError):
            bm25_search(toy_index(), Bm25Params(), "a", 0)

    def test_invalid_params(self):
        with self.assertRaises(UsageError):
            Bm25Params(k1=0)
        with self.assertRaises(UsageError):
            Bm25Params(b=1.5)

    def test_oracle_equivalence(self):
        generator = random.Random(42)
        for _ in range(30):
            documents = random_corpus(generator, generator.randint(1, 50))
            index = build_index(documents, Analyzer())
            query_terms = [generator.choice(WORDS + ["zz"]) for _ in range(generator.randint(1, 4))]
            oracle = brute_force_bm25(documents, query_terms, 0.9, 0.4)
            expected = sorted(((doc_id, score) for doc_id, score in oracle.items() if score > 0),
                              key=lambda entry: (-entry[1], entry[0]))

            ranked = Bm25Strategy(index).search(" ".join(query_terms), len(documents))

            self.assertEqual([doc_id for doc_id, _ in ranked], [doc_id for doc_id, _ in expected])
            for (_, actual), (_, reference) in zip(ranked, expected):
                self.assertAlmostEqual(actual, reference, places=9)

    def test_monotone_in_term_frequency(self):
        previous = 0.0
        for tf in range(1, 8):
            documents = [Document("d1", " ".join(["a"] * tf + ["x"] * (8 - tf))), Document("d2", "b c d e")]
            score = bm25_score(build_index(documents, Analyzer()), Bm25Params(), ["a"], "d1")
            self.assertGreaterEqual(score, previous)
            previous = score


class TestDirichlet(unittest.TestCase):
    def test_toy_score(self):
        score = dirichlet_qlm_score(toy_index(), DirichletParams(10), ["a"], "d1")

        self.assertAlmostEqual(score, math.log(4.5 / 13), places=12)
        self.assertAlmostEqual(score, -1.06087, places=5)

    def test_oov_skipped(self):
        for doc_id in ("d1", "d2", "d3"):
            self.assertEqual(dirichlet_qlm_score(toy_index(), DirichletParams(10), ["z"], doc_id), 0)

    def test_repeated_term(self):
        score = dirichlet_qlm_score(toy_index(), DirichletParams(10), ["a", "a"], "d1")

        self.assertAlmostEqual(score, -2.12174, places=5)

    def test_additivity(self):
        index = toy_index()
        params = DirichletParams(10)
        for doc_id in ("d1", "d2", "d3"):
            joined = dirichlet_qlm_score(index, params, ["a", "c", "b"], doc_id)
            parts = dirichlet_qlm_score(index, params, ["a"], doc_id) + dirichlet_qlm_score(index, params, ["c", "b"],
                                                                                           doc_id)
            self.assertAlmostEqual(joined, parts, places=12)

    def test_search_ranks_matching_document_first(self):
        ranked = dirichlet_search(toy_index(), DirichletParams(10), "a", 3)

        self.assertEqual(ranked[0][0], "d1")
        self.assertEqual(len(ranked), 3)

    def test_search_all_oov(self):
        ranked = dirichlet_search(toy_index(), DirichletParams(10), "zz yy", 3)

        self.assertEqual(ranked, [("d1", 0.0), ("d2", 0.0), ("d3", 0.0)])

    def test_search_rejects_zero_k(self):
        with self.assertRaises(UsageError):
            dirichlet_search(toy_index(), DirichletParams(), "a", 0)

    def test_invalid_mu(self):
        with self.assertRaises(UsageError):
            DirichletParams(mu=0)
        with self.assertRaises(UsageError):
            DirichletParams(mu=float("inf"))

    def test_search_all_skips_queries_without_hits(self):
        strategy = Bm25Strategy(toy_index())

        run = strategy.search_all([Query("q1", "a"), Query("q2", "zz")], 10)

        self.assertEqual(run.query_ids(), ["q1"])
        self.assertEqual(run.tag, "bm25")

    def test_dirichlet_run_tag(self):
        run = DirichletStrategy(toy_index(), DirichletParams(10)).search_all([Query("q1", "a")], 2)

        self.assertEqual(run.tag, "dirichlet")
        self.assertEqual(run.doc_ids("q1")[0], "d1")


if __name__ == "__main__":
    unittest.main()
