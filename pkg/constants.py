import os

APP_NAME = "qlm-ranker"

# версия формата файла индекса
INDEX_FORMAT_VERSION = 1

# протокол провайдера правдоподобия
LOGLIKELIHOOD_PATH = "/v1/loglikelihood"
COMPLETIONS_PATH = "/v1/completions"
RETRY_STATUS_CODES = (429, 500, 502, 503, 504)

# колонки TREC run файла: qid Q0 docid rank score tag
RUN_COLUMNS_COUNT = 6
RUN_Q0 = "Q0"

QRELS_HEADER = ("query-id", "corpus-id", "score")

# коды завершения CLI
EXIT_OK = 0
EXIT_USAGE_ERROR = 1
EXIT_DATA_ERROR = 2
EXIT_PROVIDER_ERROR = 3

# имена файлов пайплайна
FIRST_STAGE_RUN_FILE = "first_stage.run"
RERANKED_RUN_FILE = "reranked.run"
FUSED_RUN_FILE = "fused.run"
REPORT_FILE = "report.txt"

DEFAULT_CATALOG_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "catalogs", "default_catalog.json")
