"""Command-line entry points: evaluation, taxonomy export, and the service."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import LabeledSpan, read_annotation_rows, read_prediction_rows
from .evaluation import build_report, format_report
from .taxonomy import taxonomy_as_dict


def _group_by_article(rows):
    grouped: dict[str, list] = {}
    for row in rows:
        grouped.setdefault(row.article_id, []).append(row)
    return grouped


def cmd_evaluate(args: argparse.Namespace) -> int:
    gold_rows = read_annotation_rows(args.gold)
    pred_rows = read_prediction_rows(args.pred)

    gold_by_doc = _group_by_article(gold_rows)
    pred_by_doc: dict[str, list] = {}
    for ann, confidence in pred_rows:
        pred_by_doc.setdefault(ann.article_id, []).append((ann, confidence))

    doc_ids = sorted(set(gold_by_doc) | set(pred_by_doc))
    gold_docs, span_docs, fine_docs = [], [], []
    any_fine = False
    for doc_id in doc_ids:
        gold_docs.append(gold_by_doc.get(doc_id, []))
        spans, fines = [], []
        for ann, confidence in pred_by_doc.get(doc_id, []):
            spans.append(
                LabeledSpan(
                    start=ann.start,
                    end=ann.end,
                    text=ann.mention,
                    main_role=ann.main_role,
                    confidence=max(0.0, min(1.0, confidence)),
                )
            )
            fines.append(ann.fine_roles)
            any_fine = any_fine or bool(ann.fine_roles)
        span_docs.append(spans)
        fine_docs.append(fines)

    report = build_report(
        span_docs,
        fine_docs if any_fine else None,
        gold_docs,
        baselines_seed=args.seed if args.baselines else None,
    )
    if args.report:
        report.save(args.report)
    print(format_report(report))
    return 0


def cmd_export_taxonomy(args: argparse.Namespace) -> int:
    payload = json.dumps(taxonomy_as_dict(), indent=2)
    if args.out:
        Path(args.out).write_text(payload)
    else:
        print(payload)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app_from_env

    uvicorn.run(app_from_env(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entity-framing",
        description="Narrative-role tagging: evaluation, taxonomy export, service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser(
        "evaluate", help="score a prediction TSV against a gold TSV"
    )
    p_eval.add_argument("--pred", required=True, help="prediction TSV")
    p_eval.add_argument("--gold", required=True, help="gold annotation TSV")
    p_eval.add_argument("--report", help="write the report JSON here")
    p_eval.add_argument(
        "--baselines", action="store_true", help="also score chance baselines"
    )
    p_eval.add_argument("--seed", type=int, default=42)
    p_eval.set_defaults(func=cmd_evaluate)

    p_tax = sub.add_parser("export-taxonomy", help="dump the taxonomy JSON")
    p_tax.add_argument("--out", help="output path (stdout when omitted)")
    p_tax.set_defaults(func=cmd_export_taxonomy)

    p_serve = sub.add_parser("serve", help="run the analysis service (env-configured)")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
