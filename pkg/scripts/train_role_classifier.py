"""Train the stage-2 fine-role classifier from gold spans and save a checkpoint."""

import argparse
import json
from pathlib import Path

from entity_framing.corpus import load_dataset
from entity_framing.role_classifier import (
    ClsTrainConfig,
    HashTextEncoder,
    instance_from_annotation,
    save_role_classifier,
    train_role_classifier,
)
from entity_framing.taxonomy import MainRole


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("articles_dir", type=Path)
    parser.add_argument("annotations_tsv", type=Path)
    parser.add_argument("checkpoint_dir", type=Path)
    parser.add_argument("--dev-fraction", type=float, default=0.1)
    parser.add_argument("--epochs", type=int, default=80)
    parser.add_argument("--lr", type=float, default=5e-3)
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--patience", type=int, default=10)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    instances = []
    for doc, anns in load_dataset(args.articles_dir, args.annotations_tsv):
        for ann in anns:
            if ann.main_role is MainRole.UNKNOWN:
                continue
            instances.append(instance_from_annotation(doc, ann))
    n_dev = max(1, int(len(instances) * args.dev_fraction)) if len(instances) > 1 else 0
    dev, train = instances[:n_dev], instances[n_dev:]

    config = ClsTrainConfig(
        epochs=args.epochs,
        peak_lr=args.lr,
        batch_size=args.batch_size,
        early_stopping_patience=args.patience,
        seed=args.seed,
    )
    model, report = train_role_classifier(
        train, HashTextEncoder(seed=args.seed), config, dev_instances=dev or None
    )
    save_role_classifier(model, args.checkpoint_dir)
    (args.checkpoint_dir / "training_report.json").write_text(
        json.dumps(report.as_dict(), indent=2)
    )
    print(
        f"saved {args.checkpoint_dir} "
        f"(best epoch {report.best_epoch}, early stop {report.stopped_early})"
    )


if __name__ == "__main__":
    main()
