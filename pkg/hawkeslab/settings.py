"""
Django settings for the hawkeslab project.

The project carries no web surface: Django supplies the settings layer,
logging configuration and the management-command CLI, and Django REST
Framework serializers validate configuration and file payloads.

Every tunable reads from the environment first (optionally populated from
a `.env` file), then falls back to the literal default shown here.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / ".env")

SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "hawkeslab-local-cli-only")

DEBUG = os.environ.get("DJANGO_DEBUG", "false").lower() == "true"

ALLOWED_HOSTS: list[str] = []


# Application definition

INSTALLED_APPS = [
    # Third-party apps
    "rest_framework",
    # Local apps
    "apps.hawkes",
    "apps.simulation",
    "apps.optimization",
    "apps.superposition",
    "apps.pipeline",
    "apps.recsys",
    "apps.dataio",
]

# No persistence layer: every artifact is a file (JSONL / JSON / CSV).
DATABASES: dict = {}

TIME_ZONE = "UTC"

USE_TZ = True


# ==============================
# Logging
# ==============================
HAWKES_LOG_LEVEL = os.environ.get("HAWKES_LOG_LEVEL", "INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "plain",
            "stream": "ext://sys.stderr",
        },
    },
    "loggers": {
        "apps": {
            "handlers": ["console"],
            "level": HAWKES_LOG_LEVEL,
            "propagate": False,
        },
        "hawkeslab": {
            "handlers": ["console"],
            "level": HAWKES_LOG_LEVEL,
            "propagate": False,
        },
    },
}


# ==============================
# Kernel basis defaults
# ==============================
HAWKES_KERNEL = {
    "kind": os.environ.get("HAWKES_KERNEL_KIND", "exponential"),
    "decay": float(os.environ.get("HAWKES_KERNEL_DECAY", 1.0)),
}


# ==============================
# Optimizer defaults (OptConfig)
# ==============================
HAWKES_OPT = {
    "batch_size": int(os.environ.get("HAWKES_BATCH_SIZE", 64)),
    "history_cap": int(os.environ.get("HAWKES_HISTORY_CAP", 50)),
    "lambda0": float(os.environ.get("HAWKES_LAMBDA0", 1e-3)),
    "learning_rate": float(os.environ.get("HAWKES_LEARNING_RATE", 0.01)),
    "decay": os.environ.get("HAWKES_LR_DECAY", "false").lower() == "true",
    "epochs": int(os.environ.get("HAWKES_EPOCHS", 50)),
    "tol": float(os.environ.get("HAWKES_TOL", 1e-4)),
    "seed": int(os.environ.get("HAWKES_SEED", 0)),
    "holdout": float(os.environ.get("HAWKES_MONITOR_HOLDOUT", 0.0)),
}

# Size of the fixed event subsample the per-epoch NLL is monitored on.
HAWKES_MONITOR_EVENTS = int(os.environ.get("HAWKES_MONITOR_EVENTS", 2000))


# ==============================
# Superposition pipeline defaults (PipelineConfig)
# ==============================
HAWKES_PIPELINE = {
    "K": int(os.environ.get("HAWKES_SUPERPOSE_K", 2)),
    "outer_rounds": int(os.environ.get("HAWKES_OUTER_ROUNDS", 5)),
    "round_tol": float(os.environ.get("HAWKES_ROUND_TOL", 1e-3)),
    "stage_epochs": int(os.environ.get("HAWKES_STAGE_EPOCHS", 1)),
}


# ==============================
# Synthetic protocol defaults (SimConfig)
# ==============================
HAWKES_SIM = {
    "C": 20,
    "M": 100,
    "L": 1,
    "horizon": 50.0,
    "rho": 0.7,
    "max_events": 100,
}


# ==============================
# Output formats
# ==============================
HAWKES_CHECKPOINT_SCHEMA_VERSION = 1

# Wall-clock values (epoch seconds, checkpoint timestamps) break byte-identical
# reruns, so they are written to files only when explicitly requested.
HAWKES_WALLCLOCK_IN_OUTPUTS = (
    os.environ.get("HAWKES_WALLCLOCK_IN_OUTPUTS", "false").lower() == "true"
)
