"""HTTP+JSON analysis service for the analyst workflows."""

from __future__ import annotations

from pathlib import Path
from typing import Callable

from fastapi import FastAPI, HTTPException, Query
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ..corpus import ArticleDocument, CorpusError
from ..taxonomy import TaxonomyError, taxonomy_as_dict
from .analysis import (
    AnalysisPipeline,
    MAX_COMPARE_ARTICLES,
    aggregate_graph,
    annotations_view,
    compare_view,
    search_articles,
    sentences_for_label,
    timeline_view,
)
from .html_text import html_to_text
from .storage import SessionStore

Fetcher = Callable[[str, float], str]


def default_fetcher(url: str, timeout: float) -> str:
    import requests

    response = requests.get(url, timeout=timeout)
    response.raise_for_status()
    return response.text


class IngestRequest(BaseModel):
    filename: str
    text: str | None = None
    url: str | None = None


def _files_param(files: str | None) -> list[str] | None:
    """None = all session articles; an explicit empty string = empty selection."""
    if files is None:
        return None
    return [f for f in files.split(",") if f]


def create_app(
    pipeline: AnalysisPipeline,
    store: SessionStore,
    fetcher: Fetcher = default_fetcher,
    fetch_timeout: float = 10.0,
    webapp_dist: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="entity-framing analysis service")

    def _load(session_id: str, files: str | None):
        try:
            return store.load_articles(session_id, _files_param(files))
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.get("/taxonomy")
    def taxonomy() -> dict:
        return taxonomy_as_dict()

    @app.post("/sessions", status_code=201)
    def create_session() -> dict:
        info = store.create_session()
        return {"id": info.id, "created_at": info.created_at}

    @app.post("/sessions/{session_id}/articles", status_code=201)
    def ingest(session_id: str, request: IngestRequest) -> dict:
        if not request.filename.strip():
            raise HTTPException(status_code=400, detail="empty filename")
        if (request.text is None) == (request.url is None):
            raise HTTPException(
                status_code=400, detail="provide exactly one of text or url"
            )
        text = request.text
        if request.url is not None:
            try:
                text = html_to_text(fetcher(request.url, fetch_timeout))
            except Exception as exc:
                raise HTTPException(
                    status_code=502, detail=f"could not fetch url: {exc}"
                ) from exc
        if text is None or not text.strip():
            raise HTTPException(status_code=400, detail="empty article text")
        try:
            doc = ArticleDocument(id=request.filename, text=text)
        except CorpusError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        try:
            store._session_dir(session_id)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        entities, sentences = pipeline.analyze(doc)
        article = store.store_article(
            session_id, request.filename, doc, entities, sentences
        )
        return annotations_view(article)

    @app.get("/sessions/{session_id}/articles")
    def list_articles(session_id: str) -> list[dict]:
        try:
            return store.list_articles(session_id)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc

    @app.get("/sessions/{session_id}/articles/{filename}/annotations")
    def annotations(
        session_id: str,
        filename: str,
        min_confidence: float = Query(default=0.0),
        hide_repeats: bool = Query(default=False),
    ) -> dict:
        try:
            article = store.load_article(session_id, filename)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return annotations_view(article, min_confidence, hide_repeats)

    @app.get("/sessions/{session_id}/sentences")
    def sentences(
        session_id: str, label: str, files: str | None = Query(default=None)
    ) -> list[dict]:
        articles = _load(session_id, files)
        try:
            return sentences_for_label(articles, label)
        except TaxonomyError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.get("/sessions/{session_id}/search")
    def search(
        session_id: str, q: str, files: str | None = Query(default=None)
    ) -> list[dict]:
        names = _files_param(files)
        if names is not None and not names:
            raise HTTPException(status_code=400, detail="no articles selected")
        articles = _load(session_id, files)
        if not articles:
            raise HTTPException(status_code=400, detail="no articles selected")
        try:
            return search_articles(articles, q)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.get("/sessions/{session_id}/graph")
    def graph(session_id: str, files: str | None = Query(default=None)) -> dict:
        return aggregate_graph(_load(session_id, files))

    @app.get("/sessions/{session_id}/timeline")
    def timeline(session_id: str, file: str, entity: str) -> list[dict]:
        try:
            article = store.load_article(session_id, file)
            return timeline_view(article, entity)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.get("/sessions/{session_id}/compare")
    def compare(session_id: str, files: str) -> dict:
        names = _files_param(files) or []
        if not (1 <= len(names) <= MAX_COMPARE_ARTICLES):
            raise HTTPException(
                status_code=400,
                detail=f"compare accepts 1 to {MAX_COMPARE_ARTICLES} articles",
            )
        return compare_view(_load(session_id, files))

    if webapp_dist is not None and Path(webapp_dist).is_dir():
        app.mount("/", StaticFiles(directory=webapp_dist, html=True), name="webapp")

    return app
