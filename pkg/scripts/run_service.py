"""Run the analysis service. Checkpoints and storage come from flags or the
EF_* environment variables."""

import argparse
import os
from pathlib import Path

import uvicorn

from entity_framing.service import ServiceConfig, app_from_config
from entity_framing.service.config import (
    ENV_CLS_CHECKPOINT,
    ENV_SEQ_CHECKPOINT,
    ENV_STORAGE_ROOT,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--storage", type=Path, default=os.environ.get(ENV_STORAGE_ROOT))
    parser.add_argument("--seq", type=Path, default=os.environ.get(ENV_SEQ_CHECKPOINT))
    parser.add_argument("--cls", type=Path, default=os.environ.get(ENV_CLS_CHECKPOINT))
    parser.add_argument("--webapp-dist", type=Path, default=None)
    parser.add_argument("--fetch-timeout", type=float, default=10.0)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args()

    if not (args.storage and args.seq and args.cls):
        parser.error("--storage, --seq and --cls (or the EF_* env vars) are required")
    config = ServiceConfig(
        storage_root=args.storage,
        seq_checkpoint=args.seq,
        cls_checkpoint=args.cls,
        fetch_timeout=args.fetch_timeout,
        webapp_dist=args.webapp_dist,
    )
    uvicorn.run(app_from_config(config), host=args.host, port=args.port)


if __name__ == "__main__":
    main()
