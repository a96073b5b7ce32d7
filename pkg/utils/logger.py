import logging
import os
from datetime import datetime
from typing import Optional


def init_logging(log_dir: Optional[str] = None, level: int = logging.INFO):
    format = "%(asctime)s %(levelname)s --- (%(filename)s).%(funcName)s(%(lineno)d):\t %(message)s"
    handlers = [logging.StreamHandler()]
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        date = datetime.now().strftime("%Y-%m-%d")
        log_file_path = os.path.join(log_dir, f"log-{date}.log")
        handlers.append(logging.FileHandler(log_file_path, encoding="utf-8"))
    logging.basicConfig(
        format=format,
        level=level,
        handlers=handlers,
        force=True)
