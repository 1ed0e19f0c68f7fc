"""Write a synthetic labeled corpus in the dataset layout (articles/ + TSV)."""

import argparse
from pathlib import Path

from entity_framing.corpus import write_annotations_tsv
from entity_framing.synthetic import make_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out_dir", type=Path)
    parser.add_argument("--articles", type=int, default=20)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    articles_dir = args.out_dir / "articles"
    articles_dir.mkdir(parents=True, exist_ok=True)
    corpus = make_corpus(args.articles, seed=args.seed)
    annotations = []
    for doc, anns in corpus:
        (articles_dir / doc.id).write_text(doc.text, encoding="utf-8")
        annotations.extend(anns)
    write_annotations_tsv(annotations, args.out_dir / "gold.tsv")
    print(f"wrote {len(corpus)} articles, {len(annotations)} annotations "
          f"to {args.out_dir}")


if __name__ == "__main__":
    main()
