from constants import EXIT_USAGE_ERROR, EXIT_DATA_ERROR, EXIT_PROVIDER_ERROR


class ToolkitError(Exception):
    exit_code = EXIT_DATA_ERROR


# неверные аргументы или конфигурация
class UsageError(ToolkitError):
    exit_code = EXIT_USAGE_ERROR


# некорректные входные файлы и нарушения инвариантов
class DataError(ToolkitError):
    exit_code = EXIT_DATA_ERROR


# сбой транспорта после всех повторов
class ProviderError(ToolkitError):
    exit_code = EXIT_PROVIDER_ERROR


# некорректный ответ провайдера
class ProtocolError(ProviderError):
    pass
