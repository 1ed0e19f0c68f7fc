"""Environment-driven service configuration and app assembly."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from ..role_classifier import load_role_classifier
from ..sequence_labeler import load_sequence_labeler
from .analysis import AnalysisPipeline
from .app import create_app
from .storage import SessionStore

ENV_STORAGE_ROOT = "EF_STORAGE_ROOT"
ENV_SEQ_CHECKPOINT = "EF_SEQ_CHECKPOINT"
ENV_CLS_CHECKPOINT = "EF_CLS_CHECKPOINT"
ENV_FETCH_TIMEOUT = "EF_FETCH_TIMEOUT"
ENV_WEBAPP_DIST = "EF_WEBAPP_DIST"


@dataclass
class ServiceConfig:
    storage_root: Path
    seq_checkpoint: Path
    cls_checkpoint: Path
    fetch_timeout: float = 10.0
    webapp_dist: Path | None = None

    @staticmethod
    def from_env() -> "ServiceConfig":
        missing = [
            name
            for name in (ENV_STORAGE_ROOT, ENV_SEQ_CHECKPOINT, ENV_CLS_CHECKPOINT)
            if not os.environ.get(name)
        ]
        if missing:
            raise RuntimeError(f"missing environment variables: {missing}")
        webapp = os.environ.get(ENV_WEBAPP_DIST)
        return ServiceConfig(
            storage_root=Path(os.environ[ENV_STORAGE_ROOT]),
            seq_checkpoint=Path(os.environ[ENV_SEQ_CHECKPOINT]),
            cls_checkpoint=Path(os.environ[ENV_CLS_CHECKPOINT]),
            fetch_timeout=float(os.environ.get(ENV_FETCH_TIMEOUT, "10.0")),
            webapp_dist=Path(webapp) if webapp else None,
        )


def app_from_config(config: ServiceConfig):
    pipeline = AnalysisPipeline(
        tagger=load_sequence_labeler(config.seq_checkpoint),
        classifier=load_role_classifier(config.cls_checkpoint),
    )
    return create_app(
        pipeline,
        SessionStore(config.storage_root),
        fetch_timeout=config.fetch_timeout,
        webapp_dist=config.webapp_dist,
    )


def app_from_env():
    return app_from_config(ServiceConfig.from_env())
