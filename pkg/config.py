import os
from dotenv import load_dotenv

# Load the .env file before any os.environ.get() below
load_dotenv()


class Config:
    """
    Base configuration class. Loads settings from environment variables.
    """
    # --- Engine ---
    SKERNEL_THREADS = int(os.environ.get('SKERNEL_THREADS', '0') or 0)
    SKERNEL_LOG_LEVEL = os.environ.get('SKERNEL_LOG_LEVEL', 'WARNING')
    SKERNEL_DEFAULT_DIM = int(os.environ.get('SKERNEL_DEFAULT_DIM', '4'))
    SKERNEL_DEFAULT_RANGE = int(os.environ.get('SKERNEL_DEFAULT_RANGE', '3'))

    # Instance counts per suite property; "medium" only ever grows the counts.
    SKERNEL_SUITE_SIZES = {
        "small": {
            "snf": 1000,
            "tower": 100,
            "complexes": 20,
            "dold_kan": 50,
            "bar": 25,
            "ez": 25,
            "horns": 200,
            "spaces": 12,
            "wrap": 25,
        },
        "medium": {
            "snf": 3000,
            "tower": 300,
            "complexes": 60,
            "dold_kan": 150,
            "bar": 75,
            "ez": 50,
            "horns": 600,
            "spaces": 36,
            "wrap": 60,
        },
    }

    # --- Celery Configuration ---
    # Without a broker the suite tasks run eagerly in-process.
    CELERY_BROKER_URL = os.environ.get('CELERY_BROKER_URL', 'memory://')
    CELERY_RESULT_BACKEND = os.environ.get('CELERY_RESULT_BACKEND', 'cache+memory://')
    CELERY_TASK_ALWAYS_EAGER = os.environ.get('CELERY_TASK_ALWAYS_EAGER', 'true').lower() in ('1', 'true', 'yes')
    CELERY_TASK_EAGER_PROPAGATES = True

    CELERY_ACCEPT_CONTENT = ['json']
    CELERY_TASK_SERIALIZER = 'json'
    CELERY_RESULT_SERIALIZER = 'json'
    CELERY_TASK_TRACK_STARTED = True
    CELERY_BROKER_CONNECTION_RETRY_ON_STARTUP = True


class TestConfig(Config):
    SKERNEL_THREADS = 0
    SKERNEL_LOG_LEVEL = 'DEBUG'
    CELERY_TASK_ALWAYS_EAGER = True
