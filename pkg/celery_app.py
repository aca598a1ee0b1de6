# In file: celery_app.py

from dotenv import load_dotenv

# Ensure the .env file is loaded early for Celery CLI
load_dotenv()

# Import the application factory from the package
from skernel import create_app

app = create_app()

# --- IMPORTANT ---
# The Celery CLI looks for a top-level variable named 'celery'.
celery = app.celery

# Explicitly import all task modules so the worker knows them
from skernel.tasks import (  # noqa: E402,F401
    task_chain,
    task_simpset,
    task_simpab,
    task_hconstr,
)
