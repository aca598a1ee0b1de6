# In file: skernel/__init__.py

import logging
import sys
from types import SimpleNamespace

from config import Config
from skernel.extensions import celery_app, logger

__version__ = "0.3.0"


def create_app(config_class=Config):
    """ Application Factory: configures logging and the Celery app, returns both with the config. """
    # --- 1. Logging to stderr; stdout stays reserved for reports ---
    level = getattr(logging, str(config_class.SKERNEL_LOG_LEVEL).upper(), logging.WARNING)
    logger.setLevel(level)
    if not any(getattr(h, "_skernel", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
        handler._skernel = True
        logger.addHandler(handler)
    logger.propagate = False

    # --- 2. Configure the Celery App ---
    celery_app.config_from_object(config_class, namespace='CELERY')

    # --- 3. Register task modules ---
    from skernel.tasks import task_chain, task_simpset, task_simpab, task_hconstr  # noqa: F401

    return SimpleNamespace(config=config_class, celery=celery_app, logger=logger)
