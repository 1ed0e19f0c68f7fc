"""Produce the Propagated (and optionally Unknown) training variants:
augmented TSV in the corpus format plus a JSON augmentation log."""

import argparse
import json
from pathlib import Path

from entity_framing.augmentation import (
    AugmentationLog,
    add_unknown,
    capitalized_entity_spans,
    propagate_labels,
)
from entity_framing.corpus import load_dataset, write_annotations_tsv


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("articles_dir", type=Path)
    parser.add_argument("annotations_tsv", type=Path)
    parser.add_argument("out_tsv", type=Path)
    parser.add_argument(
        "--variant", choices=["propagated", "unknown"], default="propagated"
    )
    parser.add_argument("--log", type=Path, help="augmentation log JSON path")
    args = parser.parse_args()

    dataset = load_dataset(args.articles_dir, args.annotations_tsv)
    log = AugmentationLog()
    augmented = []
    for doc, anns in dataset:
        out = propagate_labels(doc, anns, log)
        if args.variant == "unknown":
            out = add_unknown(doc, out, capitalized_entity_spans(doc.text), log)
        augmented.extend(out)
    write_annotations_tsv(augmented, args.out_tsv)
    log_path = args.log or args.out_tsv.with_suffix(".log.json")
    log_path.write_text(json.dumps(log.as_dict(), indent=2))
    print(
        f"{args.variant}: {sum(len(a) for _, a in dataset)} gold -> "
        f"{len(augmented)} annotations ({log.added_propagated} propagated, "
        f"{log.added_unknown} unknown, {log.skipped_ambiguous} ambiguous skipped)"
    )


if __name__ == "__main__":
    main()
