import os

# region общие настройки
# адрес провайдера правдоподобия, например http://localhost:8000
# флаги командной строки имеют приоритет
ENDPOINT = os.environ.get("QLM_ENDPOINT", "")

# токен авторизации провайдера (передается в заголовке Authorization: Bearer)
API_TOKEN = os.environ.get("QLM_API_TOKEN", "")

# каталог для файлов логов; пустая строка - только вывод в консоль
LOG_DIR = os.environ.get("QLM_LOG_DIR", "")
# endregion общие настройки

# region первый этап
# параметры BM25 (вариант Lucene)
BM25_K1 = 0.9
BM25_B = 0.4

# параметр сглаживания Дирихле
DIRICHLET_MU = 1000.0

# глубина кандидатов для переранжирования (Top100)
CANDIDATE_DEPTH = 100

# настройки анализатора
ANALYZER_LOWERCASE = True
ANALYZER_STEMMER = False
ANALYZER_STOPWORDS = []
# endregion первый этап

# region переранжирование
# максимальная длина документа в символах при подстановке в промпт
DOC_MAX_CHARS = 4000

# минимальное значение logprob, которым заменяются -inf и NaN
LOGPROB_FLOOR = -100.0

# количество попыток запроса к провайдеру и множитель экспоненциальной задержки
PROVIDER_ATTEMPTS = 3
PROVIDER_BACKOFF = 0.5
PROVIDER_TIMEOUT = 60

# количество одновременных запросов к провайдеру
MAX_IN_FLIGHT = 8

# при ошибке провайдера: "fail" - прервать запрос, "floor" - поставить документу LOGPROB_FLOOR
ERROR_POLICY = "fail"

# logprob постоянного провайдера: -ln(10)
CONSTANT_LOGPROB = -2.302585092994046
# endregion переранжирование

# region интерполяция
# вес BM25 при интерполяции с оценкой QLM
RERANK_ALPHA = 0.2

# вес BM25 при гибридном первом этапе (BM25 + внешний run)
HYBRID_ALPHA = 0.5

SWEEP_ALPHAS = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
# endregion интерполяция

# region оценка
EVAL_K = 10
SIGNIFICANCE_LEVEL = 0.05

# поправка на множественные сравнения: "none" или "bonferroni"
CORRECTION = "bonferroni"
# endregion оценка
