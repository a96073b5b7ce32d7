import argparse
import logging
import sys
from typing import List, Optional

from constants import EXIT_OK, EXIT_USAGE_ERROR, EXIT_DATA_ERROR
from domains.pipeline_config import PipelineConfig, RETRIEVAL_MODELS, PROVIDERS
from exceptions import ToolkitError, UsageError
from services.eval_service import render_eval_report, render_significance_matrix, CORRECTIONS
from services.pipeline_service import index_corpus, search, rerank, fuse, evaluate, sigtest, sweep, \
    sweep_to_text, PipelineService
from settings import LOG_DIR, SWEEP_ALPHAS
from utils.file_util import atomic_write
from utils.logger import init_logging

logger = logging.getLogger(__name__)


# вывод результата в файл (атомарно) или в stdout
def emit(text: str, output_path: Optional[str]):
    if output_path:
        atomic_write(output_path, text)
        logger.info("результат записан: %s", output_path)
    else:
        sys.stdout.write(text)


def add_analyzer_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--lowercase", dest="lowercase", action="store_const", const=True)
    parser.add_argument("--no-lowercase", dest="lowercase", action="store_const", const=False)
    parser.add_argument("--stemmer", dest="stemmer", action="store_const", const=True,
                        help="стемминг Портера (nltk)")


def add_retrieval_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--model", dest="retrieval_model", choices=RETRIEVAL_MODELS)
    parser.add_argument("--k1", type=float)
    parser.add_argument("--b", type=float)
    parser.add_argument("--mu", type=float)


def add_provider_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--catalog", help="JSON каталог промптов")
    parser.add_argument("--model-family", dest="model_family")
    parser.add_argument("--dataset")
    parser.add_argument("--fewshot", action="store_const", const=True, help="few-shot промпт (GBQ)")
    parser.add_argument("--provider", choices=PROVIDERS)
    parser.add_argument("--endpoint", help="адрес провайдера, по умолчанию QLM_ENDPOINT")
    parser.add_argument("--api-token", dest="api_token", help="токен провайдера, по умолчанию QLM_API_TOKEN")
    parser.add_argument("--llm-model", dest="model", help="имя модели для completions API")
    parser.add_argument("--attempts", type=int)
    parser.add_argument("--backoff", type=float)
    parser.add_argument("--timeout", type=float)
    parser.add_argument("--max-in-flight", dest="max_in_flight", type=int)
    parser.add_argument("--error-policy", dest="error_policy", choices=("fail", "floor"))
    parser.add_argument("--doc-max-chars", dest="doc_max_chars", type=int)
    parser.add_argument("--depth", type=int, help="количество переранжируемых кандидатов")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlm_ranker",
        description="Zero-shot переранжирование по правдоподобию запроса")
    parser.add_argument("--config", help="JSON файл конфигурации; флаги имеют приоритет")
    parser.add_argument("--log-dir", dest="log_dir", default=LOG_DIR)
    parser.add_argument("--verbose", action="store_true", help="DEBUG логирование, включая промпты")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    command = commands.add_parser("index", help="построение инвертированного индекса")
    command.add_argument("--corpus")
    command.add_argument("--output", required=True, help="файл индекса")
    add_analyzer_arguments(command)

    command = commands.add_parser("search", help="первый этап: BM25 или Дирихле")
    command.add_argument("--index", required=True)
    command.add_argument("--queries")
    command.add_argument("--k", type=int, default=None)
    command.add_argument("--output", required=True)
    add_retrieval_arguments(command)

    command = commands.add_parser("rerank", help="переранжирование по правдоподобию запроса")
    command.add_argument("--run", required=True)
    command.add_argument("--corpus")
    command.add_argument("--queries")
    command.add_argument("--output", required=True)
    add_provider_arguments(command)

    command = commands.add_parser("fuse", help="интерполяция двух run")
    command.add_argument("run_a")
    command.add_argument("run_b")
    command.add_argument("--alpha", type=float)
    command.add_argument("--k", type=int, default=None)
    command.add_argument("--tag", default="fused")
    command.add_argument("--output", required=True)

    command = commands.add_parser("eval", help="nDCG@k по запросам")
    command.add_argument("--run", required=True)
    command.add_argument("--qrels")
    command.add_argument("--k", type=int, default=None)
    command.add_argument("--output")

    command = commands.add_parser("sigtest", help="матрица значимости (парный t-тест)")
    command.add_argument("runs", nargs="+")
    command.add_argument("--qrels")
    command.add_argument("--k", type=int, default=None)
    command.add_argument("--level", type=float)
    command.add_argument("--correction", choices=CORRECTIONS)
    command.add_argument("--output")

    command = commands.add_parser("sweep", help="nDCG@k в зависимости от alpha")
    command.add_argument("run_a")
    command.add_argument("run_b")
    command.add_argument("--qrels")
    command.add_argument("--alphas", type=float, nargs="+")
    command.add_argument("--k", type=int, default=None)
    command.add_argument("--output")

    command = commands.add_parser("pipeline", help="полный пайплайн по файлу конфигурации")
    command.add_argument("--corpus")
    command.add_argument("--queries")
    command.add_argument("--qrels")
    command.add_argument("--hybrid-run", dest="hybrid_run", help="внешний run для гибридного первого этапа")
    command.add_argument("--output-dir", dest="output_dir")
    command.add_argument("--rerank-alpha", dest="rerank_alpha", type=float)
    command.add_argument("--hybrid-alpha", dest="hybrid_alpha", type=float)
    command.add_argument("--eval-k", dest="eval_k", type=int)
    add_analyzer_arguments(command)
    add_retrieval_arguments(command)
    add_provider_arguments(command)

    return parser


# аргументы, не относящиеся к PipelineConfig
COMMAND_ARGUMENTS = ("config", "log_dir", "verbose", "command", "output", "index", "run", "run_a", "run_b",
                     "runs", "k", "alpha", "tag", "alphas", "level")


def load_config(args: argparse.Namespace) -> PipelineConfig:
    overrides = {key: value for key, value in vars(args).items() if key not in COMMAND_ARGUMENTS}
    config = PipelineConfig.from_sources(args.config, overrides)
    logger.debug("конфигурация: %s", config)
    return config


def run_command(args: argparse.Namespace):
    config = load_config(args)

    if args.command == "index":
        index_corpus(config.validate(["corpus"]), args.output)
    elif args.command == "search":
        config.validate(["queries"])
        search(config, args.index, args.output, args.k or int(config.depth))
    elif args.command == "rerank":
        rerank(config.validate(["corpus", "queries", "catalog"]), args.run, args.output)
    elif args.command == "fuse":
        alpha = config.rerank_alpha if args.alpha is None else args.alpha
        fuse(args.run_a, args.run_b, alpha, args.output, k=args.k, tag=args.tag)
    elif args.command == "eval":
        config.validate(["qrels"])
        report = evaluate(args.run, config.qrels, args.k or int(config.eval_k))
        emit(render_eval_report(report), args.output)
    elif args.command == "sigtest":
        config.validate(["qrels"])
        level = config.significance_level if args.level is None else args.level
        matrix = sigtest(args.runs, config.qrels, args.k or int(config.eval_k), level, config.correction)
        emit(render_significance_matrix(matrix), args.output)
    elif args.command == "sweep":
        config.validate(["qrels"])
        table = sweep(args.run_a, args.run_b, config.qrels, args.alphas or SWEEP_ALPHAS,
                      args.k or int(config.eval_k))
        emit(sweep_to_text(table), args.output)
    elif args.command == "pipeline":
        PipelineService(config).run()
    else:
        raise UsageError(f"неизвестная команда {args.command}")


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as ex:
        # argparse завершает процесс с кодом 2, ошибкам использования соответствует код 1
        return EXIT_OK if ex.code in (0, None) else EXIT_USAGE_ERROR
    init_logging(args.log_dir or None, logging.DEBUG if args.verbose else logging.INFO)
    try:
        run_command(args)
    except ToolkitError as ex:
        logger.error(ex)
        return ex.exit_code
    except Exception as ex:
        logger.exception(ex)
        return EXIT_DATA_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
