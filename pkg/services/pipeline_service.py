import logging
import os
import shutil
import tempfile
from typing import Dict, List, Optional, Sequence

import pandas as pd

from constants import FIRST_STAGE_RUN_FILE, RERANKED_RUN_FILE, FUSED_RUN_FILE, REPORT_FILE
from domains.document import Document
from domains.index import InvertedIndex
from domains.pipeline_config import PipelineConfig
from domains.report import EvalReport, SignificanceMatrix
from domains.run import Run
from services.bigram_service import bigram_train, BigramLikelihoodService
from services.catalog_service import load_catalog
from services.corpus_service import load_corpus, load_queries, load_qrels, read_run, write_run
from services.eval_service import significance_matrix, render_significance_matrix, render_comparison
from services.index_service import build_index, save_index, load_index
from services.likelihood_service import LikelihoodService, ConstantLikelihoodService
from services.remote_likelihood_service import RemoteLikelihoodService, CompletionLikelihoodService
from services.rerank_service import RerankService
from strategies.bm25_strategy import Bm25Strategy
from strategies.dirichlet_strategy import DirichletStrategy
from strategies.retrieval_strategy import RetrievalStrategy
from utils.file_util import atomic_write, promote_files, remove_files
from utils.fusion_util import interpolate, truncate, sweep_alpha
from utils.metric_util import ndcg_at_k

logger = logging.getLogger(__name__)

FUSED_TAG = "fused"
DOWNSTREAM_FILES = (RERANKED_RUN_FILE, FUSED_RUN_FILE, REPORT_FILE)
HYBRID_TAG = "hybrid"


def build_strategy(index: InvertedIndex, config: PipelineConfig) -> RetrievalStrategy:
    if config.retrieval_model == "dirichlet":
        return DirichletStrategy(index, config.dirichlet_params)
    return Bm25Strategy(index, config.bm25_params)


def build_provider(config: PipelineConfig, documents: List[Document]) -> LikelihoodService:
    if config.provider == "bigram":
        return BigramLikelihoodService(bigram_train(f"{doc.title} {doc.body}" for doc in documents))
    if config.provider == "constant":
        return ConstantLikelihoodService()
    options = dict(
        api_token=config.api_token,
        attempts=int(config.attempts),
        backoff=float(config.backoff),
        timeout=float(config.timeout),
        floor=float(config.logprob_floor)
    )
    if config.provider == "completions":
        return CompletionLikelihoodService(config.endpoint, model=config.model, **options)
    return RemoteLikelihoodService(config.endpoint, **options)


def build_rerank_service(
        config: PipelineConfig,
        documents: List[Document],
        provider: Optional[LikelihoodService] = None
) -> RerankService:
    catalog = load_catalog(config.catalog)
    template = catalog.template(config.model_family, config.dataset)
    fewshot = catalog.fewshot_examples(config.model_family, config.dataset) if config.fewshot else None
    logger.info("промпт (%s, %s), few-shot: %s", config.model_family, config.dataset, bool(fewshot))
    return RerankService(
        provider=provider or build_provider(config, documents),
        template=template,
        doc_lookup={doc.id: doc for doc in documents},
        doc_max_chars=int(config.doc_max_chars),
        fewshot=fewshot,
        max_in_flight=int(config.max_in_flight),
        error_policy=config.error_policy,
        floor=float(config.logprob_floor)
    )


def rerank_tag(config: PipelineConfig) -> str:
    return f"qlm-{config.model_family}{'-fewshot' if config.fewshot else ''}"


# region команды: каждая - преобразование файлов в файлы
def index_corpus(config: PipelineConfig, index_path: str) -> InvertedIndex:
    index = build_index(load_corpus(config.corpus), config.analyzer)
    save_index(index, index_path)
    return index


def search(config: PipelineConfig, index_path: str, output_path: str, k: int) -> Run:
    strategy = build_strategy(load_index(index_path), config)
    run = strategy.search_all(load_queries(config.queries), k)
    write_run(run, output_path)
    return run


def rerank(config: PipelineConfig, run_path: str, output_path: str,
           provider: Optional[LikelihoodService] = None) -> Run:
    documents = load_corpus(config.corpus)
    service = build_rerank_service(config, documents, provider)
    try:
        candidates = truncate(read_run(run_path), int(config.depth))
        run = service.rerank_run(candidates, load_queries(config.queries), tag=rerank_tag(config))
    finally:
        service.close()
    write_run(run, output_path)
    return run


def fuse(run_a_path: str, run_b_path: str, alpha: float, output_path: str,
         k: Optional[int] = None, tag: str = FUSED_TAG) -> Run:
    run = interpolate(read_run(run_a_path), read_run(run_b_path), alpha, tag=tag)
    if k is not None:
        run = truncate(run, k)
    write_run(run, output_path)
    return run


def evaluate(run_path: str, qrels_path: str, k: int) -> EvalReport:
    report = ndcg_at_k(read_run(run_path), load_qrels(qrels_path), k)
    logger.info("%s", report)
    return report


# имя run в матрице - его tag, при совпадении - имя файла
def named_runs(run_paths: Sequence[str]) -> List[tuple]:
    runs = [read_run(path) for path in run_paths]
    tags = [run.tag for run in runs]
    if len(set(tags)) == len(tags):
        return list(zip(tags, runs))
    return [(os.path.splitext(os.path.basename(path))[0], run) for path, run in zip(run_paths, runs)]


def sigtest(run_paths: Sequence[str], qrels_path: str, k: int, level: float, correction: str) -> SignificanceMatrix:
    return significance_matrix(named_runs(run_paths), load_qrels(qrels_path), k, level, correction)


def sweep(run_a_path: str, run_b_path: str, qrels_path: str, alphas: Sequence[float], k: int) -> pd.DataFrame:
    return sweep_alpha(read_run(run_a_path), read_run(run_b_path), alphas, load_qrels(qrels_path), k)


def sweep_to_text(table: pd.DataFrame) -> str:
    return table.to_csv(sep="\t", index=False, float_format="%.6f", lineterminator="\n")
# endregion команды


# полный пайплайн: первый этап -> (гибрид) -> переранжирование -> интерполяция -> оценка
class PipelineService:
    def __init__(self, config: PipelineConfig, provider: Optional[LikelihoodService] = None):
        self.config = config.validate(["corpus", "queries", "qrels", "catalog"])
        self.provider = provider

    def output_path(self, file_name: str) -> str:
        return os.path.join(self.config.output_dir, file_name)

    # результаты собираются в промежуточном каталоге и переносятся вместе;
    # при ошибке переносится только первый этап, устаревшие результаты прошлого запуска удаляются
    def run(self) -> Dict[str, str]:
        output_dir = self.config.output_dir
        os.makedirs(output_dir, exist_ok=True)
        staging_dir = tempfile.mkdtemp(prefix=".staging-", dir=output_dir)
        try:
            self.run_stages(staging_dir)
        except BaseException:
            if promote_files(staging_dir, output_dir, [FIRST_STAGE_RUN_FILE]):
                remove_files(output_dir, DOWNSTREAM_FILES)
                logger.warning("пайплайн прерван, в %s сохранен только первый этап", output_dir)
            raise
        else:
            promote_files(staging_dir, output_dir, (FIRST_STAGE_RUN_FILE,) + DOWNSTREAM_FILES)
        finally:
            shutil.rmtree(staging_dir, ignore_errors=True)
        logger.info("пайплайн завершен, результаты в %s", output_dir)

        return {
            "first_stage": self.output_path(FIRST_STAGE_RUN_FILE),
            "reranked": self.output_path(RERANKED_RUN_FILE),
            "fused": self.output_path(FUSED_RUN_FILE),
            "report": self.output_path(REPORT_FILE),
        }

    def run_stages(self, staging_dir: str) -> None:
        config = self.config
        documents = load_corpus(config.corpus)
        queries = load_queries(config.queries)
        qrels = load_qrels(config.qrels)
        depth = int(config.depth)

        index = build_index(documents, config.analyzer)
        first_stage = build_strategy(index, config).search_all(queries, depth)
        if config.hybrid_run:
            external = read_run(config.hybrid_run)
            first_stage = truncate(interpolate(first_stage, external, float(config.hybrid_alpha), tag=HYBRID_TAG),
                                   depth)
        # первый этап сохраняется до обращения к провайдеру
        write_run(first_stage, os.path.join(staging_dir, FIRST_STAGE_RUN_FILE))

        service = build_rerank_service(config, documents, self.provider)
        try:
            reranked = service.rerank_run(first_stage, queries, tag=rerank_tag(config))
        finally:
            service.close()
        write_run(reranked, os.path.join(staging_dir, RERANKED_RUN_FILE))

        fused = interpolate(first_stage, reranked, float(config.rerank_alpha), tag=FUSED_TAG)
        write_run(fused, os.path.join(staging_dir, FUSED_RUN_FILE))

        k = int(config.eval_k)
        runs = [(run.tag, run) for run in (first_stage, reranked, fused)]
        reports = [ndcg_at_k(run, qrels, k) for _, run in runs]
        matrix = significance_matrix(runs, qrels, k, float(config.significance_level), config.correction)
        report_text = (render_comparison(reports, baseline=reports[1]) + "\n"
                       + render_significance_matrix(matrix))
        atomic_write(os.path.join(staging_dir, REPORT_FILE), report_text)
