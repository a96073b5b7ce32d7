import math
import random
import threading
import time
import unittest

from domains.document import Document, Query
from domains.likelihood import LikelihoodRequest, LikelihoodResult
from domains.prompt import PromptTemplate, FewShotExample
from domains.run import Run
from exceptions import DataError, ProviderError
from services.bigram_service import bigram_train, BigramLikelihoodService
from services.likelihood_service import LikelihoodService, ConstantLikelihoodService
from services.rerank_service import RerankService, rerank
from tests.test_likelihood import brute_force_loglikelihood
from utils.prompt_util import render_prompt

TEMPLATE = PromptTemplate("Document: {doc}")


# оценка задается словарем по тексту документа; запросы учитываются
class TableLikelihoodService(LikelihoodService):
    def __init__(self, scores, delay=False):
        self.scores = scores
        self.delay = delay
        self.calls = 0
        self.lock = threading.Lock()

    def loglikelihood(self, request: LikelihoodRequest) -> LikelihoodResult:
        with self.lock:
            self.calls += 1
        if self.delay:
            time.sleep(random.random() / 200)
        body = request.context[len("Document: "):]
        return LikelihoodResult(["q"], [self.scores[body]])


class FailingLikelihoodService(LikelihoodService):
    def __init__(self, failing_body):
        self.failing_body = failing_body

    def loglikelihood(self, request: LikelihoodRequest) -> LikelihoodResult:
        if request.context.endswith(self.failing_body):
            raise ProviderError("провайдер недоступен")
        return LikelihoodResult(["q"], [-1.0])


def documents(count):
    return {f"d{i}": Document(f"d{i}", f"text{i}") for i in range(count)}


class TestRerank(unittest.TestCase):
    def test_sort_by_score(self):
        provider = TableLikelihoodService({"text0": -2.0, "text1": -1.0})
        for candidates in ([("d0", 5.0), ("d1", 1.0)], [("d1", 1.0), ("d0", 5.0)]):
            run = rerank(provider, TEMPLATE, Query("q1", "x"), candidates, documents(2), 4000)
            self.assertEqual(run.ranked("q1"), [("d1", -1.0), ("d0", -2.0)])

    def test_uniform_provider_falls_back_to_doc_id_order(self):
        candidates = [("d3", 9.0), ("d1", 8.0), ("d2", 7.0), ("d0", 1.0)]

        run = rerank(ConstantLikelihoodService(-math.log(10)), TEMPLATE, Query("q1", "some long query"), candidates,
                     documents(4), 4000)

        self.assertEqual(run.doc_ids("q1"), ["d0", "d1", "d2", "d3"])

    def test_permutation(self):
        generator = random.Random(11)
        lookup = documents(30)
        provider = TableLikelihoodService({doc.body: -generator.random() * 5 for doc in lookup.values()})
        candidates = [(doc_id, generator.random()) for doc_id in generator.sample(sorted(lookup), 12)]

        run = rerank(provider, TEMPLATE, Query("q1", "x"), candidates, lookup, 4000)

        self.assertEqual(sorted(run.doc_ids("q1")), sorted(doc_id for doc_id, _ in candidates))

    def test_scheduling_determinism(self):
        generator = random.Random(5)
        lookup = documents(40)
        scores = {doc.body: -round(generator.random() * 3, 1) for doc in lookup.values()}
        candidates = [(doc_id, 0.0) for doc_id in lookup]
        query = Query("q1", "x")

        sequential = RerankService(TableLikelihoodService(scores), TEMPLATE, lookup, max_in_flight=1)
        concurrent = RerankService(TableLikelihoodService(scores, delay=True), TEMPLATE, lookup, max_in_flight=8)

        self.assertEqual(sequential.rerank(query, candidates), concurrent.rerank(query, candidates))

    def test_cache(self):
        provider = TableLikelihoodService({"text0": -1.0, "text1": -2.0})
        service = RerankService(provider, TEMPLATE, documents(2))
        run = Run({"q1": [("d0", 1.0), ("d1", 0.5)]})
        queries = [Query("q1", "x")]

        first = service.rerank_run(run, queries)
        second = service.rerank_run(run, queries)

        self.assertEqual(first, second)
        self.assertEqual(provider.calls, 2)
        self.assertEqual(service.request_count, 2)
        self.assertEqual(service.cache_hits, 2)
        self.assertEqual(service.hit_rate_text(), "50.0%")

    def test_missing_document(self):
        service = RerankService(ConstantLikelihoodService(), TEMPLATE, documents(1))

        with self.assertRaises(DataError):
            service.rerank(Query("q1", "x"), [("d0", 1.0), ("d7", 0.5)])

    def test_missing_query(self):
        service = RerankService(ConstantLikelihoodService(), TEMPLATE, documents(1))

        with self.assertRaises(DataError):
            service.rerank_run(Run({"q9": [("d0", 1.0)]}), [Query("q1", "x")])

    def test_fail_policy(self):
        service = RerankService(FailingLikelihoodService("text1"), TEMPLATE, documents(2))

        with self.assertRaises(ProviderError):
            service.rerank(Query("q1", "x"), [("d0", 1.0), ("d1", 0.5)])

    def test_floor_policy(self):
        service = RerankService(FailingLikelihoodService("text1"), TEMPLATE, documents(2), error_policy="floor",
                                floor=-100.0)

        with self.assertLogs("services.rerank_service", level="WARNING"):
            ranked = service.rerank(Query("q1", "x"), [("d0", 1.0), ("d1", 0.5)])

        self.assertEqual(ranked, [("d0", -1.0), ("d1", -100.0)])

    def test_bigram_ranking_matches_chain_rule(self):
        generator = random.Random(8)
        vocabulary = [f"w{i}" for i in range(20)]
        for _ in range(50):
            lookup = {}
            for i in range(generator.randint(1, 10)):
                body = " ".join(generator.choice(vocabulary) for _ in range(generator.randint(1, 12)))
                lookup[f"d{i}"] = Document(f"d{i}", body)
            texts = [doc.body for doc in lookup.values()]
            query = Query("q1", " ".join(generator.choice(vocabulary + ["x0", "x1"])
                                         for _ in range(generator.randint(1, 5))))
            provider = BigramLikelihoodService(bigram_train(texts))

            run = rerank(provider, TEMPLATE, query, [(doc_id, 0.0) for doc_id in lookup], lookup, 4000)

            expected = {}
            for doc_id, doc in lookup.items():
                logprobs = brute_force_loglikelihood(texts, render_prompt(TEMPLATE, doc, 4000), " " + query.text)
                expected[doc_id] = math.fsum(logprobs) / len(logprobs)
            order = sorted(expected, key=lambda doc_id: (-expected[doc_id], doc_id))
            self.assertEqual(run.doc_ids("q1"), order)
            for doc_id, score in run.ranked("q1"):
                self.assertAlmostEqual(score, expected[doc_id], places=12)

    def test_fewshot_prompt_logged(self):
        triples = [FewShotExample("x", "good", "bad")] * 3
        service = RerankService(ConstantLikelihoodService(), TEMPLATE, documents(1), fewshot=triples)

        with self.assertLogs("services.rerank_service", level="DEBUG") as logs:
            service.rerank(Query("q1", "x"), [("d0", 1.0)])

        self.assertTrue(any("Bad question:" in line for line in logs.output))


if __name__ == "__main__":
    unittest.main()
