"""Run both trained stages over a directory of articles; write span
predictions as TSV (with confidence) and classified mentions as JSON records."""

import argparse
import json
from pathlib import Path

from entity_framing.corpus import GoldAnnotation, write_annotations_tsv
from entity_framing.corpus import ArticleDocument
from entity_framing.role_classifier import (
    classify_span,
    load_role_classifier,
    prediction_record,
)
from entity_framing.sequence_labeler import label_article, load_sequence_labeler


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("articles_dir", type=Path)
    parser.add_argument("seq_checkpoint", type=Path)
    parser.add_argument("cls_checkpoint", type=Path)
    parser.add_argument("--pred-tsv", type=Path, default=Path("predictions.tsv"))
    parser.add_argument("--pred-json", type=Path, default=Path("predictions.json"))
    args = parser.parse_args()

    tagger = load_sequence_labeler(args.seq_checkpoint)
    classifier = load_role_classifier(args.cls_checkpoint)

    rows, confidences, records = [], [], []
    for txt in sorted(args.articles_dir.glob("*.txt")):
        doc = ArticleDocument(id=txt.name, text=txt.read_text(encoding="utf-8"))
        for span in label_article(doc, tagger):
            fine = classify_span(doc, span, classifier)
            rows.append(
                GoldAnnotation(
                    article_id=doc.id,
                    mention=span.text,
                    start=span.start,
                    end=span.end,
                    main_role=span.main_role,
                    fine_roles=fine.role_set(),
                )
            )
            confidences.append(span.confidence)
            records.append(prediction_record(doc.id, span, fine))
    write_annotations_tsv(rows, args.pred_tsv, confidences=confidences)
    args.pred_json.write_text(json.dumps(records, indent=2))
    print(f"{len(rows)} mentions -> {args.pred_tsv}, {args.pred_json}")


if __name__ == "__main__":
    main()
