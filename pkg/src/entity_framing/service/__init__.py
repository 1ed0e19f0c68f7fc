"""HTTP analysis service and persistence for the analyst workflows."""

from .analysis import (
    AnalysisPipeline,
    AnnotatedEntity,
    MAX_COMPARE_ARTICLES,
    aggregate_graph,
    annotations_view,
    compare_view,
    search_articles,
    sentence_index,
    sentence_ordinal,
    sentences_for_label,
    timeline_view,
)
from .app import IngestRequest, create_app, default_fetcher
from .config import ServiceConfig, app_from_config, app_from_env
from .html_text import html_to_text
from .storage import SessionInfo, SessionStore, StoredArticle

__all__ = [
    "AnalysisPipeline",
    "AnnotatedEntity",
    "MAX_COMPARE_ARTICLES",
    "aggregate_graph",
    "annotations_view",
    "compare_view",
    "search_articles",
    "sentence_index",
    "sentence_ordinal",
    "sentences_for_label",
    "timeline_view",
    "IngestRequest",
    "create_app",
    "default_fetcher",
    "ServiceConfig",
    "app_from_config",
    "app_from_env",
    "html_to_text",
    "SessionInfo",
    "SessionStore",
    "StoredArticle",
]
