# skernel/extensions.py
import logging

from celery import Celery

# Single Celery instance; configuration is loaded in create_app()
celery_app = Celery("skernel")

# Package logger; handlers are attached in create_app()
logger = logging.getLogger("skernel")
logger.addHandler(logging.NullHandler())
