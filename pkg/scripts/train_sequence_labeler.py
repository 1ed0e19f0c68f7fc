"""Train the stage-1 CRF tagger on a dataset directory and save a checkpoint."""

import argparse
import json
from pathlib import Path

from entity_framing.corpus import ConversionReport, load_dataset, to_bio, tokenize
from entity_framing.sequence_labeler import (
    HashTokenEncoder,
    SeqTrainConfig,
    save_sequence_labeler,
    train_sequence_labeler,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("articles_dir", type=Path)
    parser.add_argument("annotations_tsv", type=Path)
    parser.add_argument("checkpoint_dir", type=Path)
    parser.add_argument("--dev-fraction", type=float, default=0.2)
    parser.add_argument("--epochs", type=int, default=30)
    parser.add_argument("--lr", type=float, default=5e-3)
    parser.add_argument("--hidden", type=int, default=96)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    dataset = load_dataset(args.articles_dir, args.annotations_tsv)
    n_dev = max(1, int(len(dataset) * args.dev_fraction)) if len(dataset) > 1 else 0
    dev, train = dataset[:n_dev], dataset[n_dev:]

    # Persist the BIO conversion audit beside the dataset.
    report = ConversionReport()
    for doc, anns in dataset:
        to_bio(doc, anns, tokenize(doc.text), report)
    report.save(args.annotations_tsv.with_suffix(".conversion.json"))

    config = SeqTrainConfig(
        epochs=args.epochs, peak_lr=args.lr, hidden_size=args.hidden, seed=args.seed
    )
    model, train_report = train_sequence_labeler(
        train, HashTokenEncoder(seed=args.seed), config, dev_data=dev or None
    )
    save_sequence_labeler(model, args.checkpoint_dir)
    (args.checkpoint_dir / "training_report.json").write_text(
        json.dumps(train_report.as_dict(), indent=2)
    )
    best = train_report.best_epoch
    dev_f1 = train_report.epochs[best]["dev_f1"] if best is not None else None
    print(f"saved {args.checkpoint_dir} (best epoch {best}, dev F1 {dev_f1})")


if __name__ == "__main__":
    main()
