import os
import tempfile
from typing import Iterable, List


# запись во временный файл рядом с целевым и атомарная замена,
# прерванный запуск не оставляет обрезанных файлов
def atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, temp_path = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as file:
            file.write(text)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise


# перенос готовых файлов из промежуточного каталога; возвращает перенесенные имена
def promote_files(staging_dir: str, target_dir: str, file_names: Iterable[str]) -> List[str]:
    promoted = []
    for file_name in file_names:
        staged_path = os.path.join(staging_dir, file_name)
        if os.path.exists(staged_path):
            os.replace(staged_path, os.path.join(target_dir, file_name))
            promoted.append(file_name)
    return promoted


def remove_files(directory: str, file_names: Iterable[str]) -> None:
    for file_name in file_names:
        path = os.path.join(directory, file_name)
        if os.path.exists(path):
            os.remove(path)
