"""Session-scoped persistence: one directory per session, one text file plus
one analysis JSON per article. The JSON write is the atomic commit point."""

from __future__ import annotations

import json
import os
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from ..corpus import ArticleDocument
from .analysis import AnnotatedEntity


@dataclass(frozen=True)
class SessionInfo:
    id: str
    created_at: str


@dataclass
class StoredArticle:
    filename: str
    document: ArticleDocument
    entities: list[AnnotatedEntity]
    sentences: list[tuple[int, int]]
    created_at: str = ""


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


def _timestamp_suffix() -> str:
    return datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S%f")


def _sanitize(name: str) -> str:
    cleaned = "".join(c if c.isalnum() or c in "-_." else "_" for c in name)
    return cleaned.strip("._") or "article"


class SessionStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    # ---- sessions ----------------------------------------------------------

    def create_session(self) -> SessionInfo:
        session_id = "session_" + uuid.uuid4().hex[:8]
        info = SessionInfo(id=session_id, created_at=_utc_now())
        directory = self.root / session_id
        directory.mkdir()
        (directory / "meta.json").write_text(
            json.dumps({"id": info.id, "created_at": info.created_at})
        )
        return info

    def _session_dir(self, session_id: str) -> Path:
        directory = self.root / session_id
        if not (directory / "meta.json").exists():
            raise KeyError(f"unknown session {session_id!r}")
        return directory

    # ---- articles ----------------------------------------------------------

    def store_article(
        self,
        session_id: str,
        base_name: str,
        doc: ArticleDocument,
        entities: Sequence[AnnotatedEntity],
        sentences: Sequence[tuple[int, int]],
    ) -> StoredArticle:
        directory = self._session_dir(session_id)
        base = _sanitize(base_name)
        filename = f"{base}_{_timestamp_suffix()}"
        counter = 0
        while (directory / f"{filename}.json").exists():
            counter += 1
            filename = f"{base}_{_timestamp_suffix()}_{counter}"
        article = StoredArticle(
            filename=filename,
            document=ArticleDocument(
                id=filename,
                text=doc.text,
                language=doc.language,
                domain_tag=doc.domain_tag,
            ),
            entities=list(entities),
            sentences=[tuple(s) for s in sentences],
            created_at=_utc_now(),
        )
        (directory / f"{filename}.txt").write_text(doc.text, encoding="utf-8")
        payload = {
            "filename": filename,
            "created_at": article.created_at,
            "document": {
                "language": article.document.language,
                "domain_tag": article.document.domain_tag,
            },
            "sentences": [list(s) for s in article.sentences],
            "entities": [e.as_payload() for e in article.entities],
        }
        # Commit point: the article exists once the JSON is in place.
        tmp = directory / f".{filename}.json.tmp"
        tmp.write_text(json.dumps(payload, ensure_ascii=False, indent=2))
        os.replace(tmp, directory / f"{filename}.json")
        return article

    def list_articles(self, session_id: str) -> list[dict]:
        directory = self._session_dir(session_id)
        items = []
        for path in sorted(directory.glob("*.json")):
            if path.name == "meta.json":
                continue
            payload = json.loads(path.read_text())
            items.append(
                {
                    "filename": payload["filename"],
                    "created_at": payload["created_at"],
                    "language": payload["document"]["language"],
                    "n_entities": len(payload["entities"]),
                }
            )
        items.sort(key=lambda it: it["created_at"])
        return items

    def load_article(self, session_id: str, filename: str) -> StoredArticle:
        directory = self._session_dir(session_id)
        json_path = directory / f"{filename}.json"
        txt_path = directory / f"{filename}.txt"
        if not json_path.exists() or not txt_path.exists():
            raise KeyError(f"unknown article {filename!r} in {session_id}")
        payload = json.loads(json_path.read_text())
        doc = ArticleDocument(
            id=filename,
            text=txt_path.read_text(encoding="utf-8"),
            language=payload["document"]["language"],
            domain_tag=payload["document"].get("domain_tag", ""),
        )
        return StoredArticle(
            filename=filename,
            document=doc,
            entities=[AnnotatedEntity.from_payload(e) for e in payload["entities"]],
            sentences=[tuple(s) for s in payload["sentences"]],
            created_at=payload["created_at"],
        )

    def load_articles(
        self, session_id: str, filenames: Sequence[str] | None = None
    ) -> list[StoredArticle]:
        if filenames is None:
            filenames = [it["filename"] for it in self.list_articles(session_id)]
        return [self.load_article(session_id, name) for name in filenames]
