"""Shared fixtures: synthetic data and session-scoped overfit models.

The toy models train once per session (seconds) and back both the
acceptance overfit gates and the service tests.
"""

import pytest

from entity_framing.role_classifier import (
    ClsTrainConfig,
    HashTextEncoder,
    train_role_classifier,
)
from entity_framing.sequence_labeler import (
    HashTokenEncoder,
    SeqTrainConfig,
    train_sequence_labeler,
)
from entity_framing.service import AnalysisPipeline
from entity_framing.synthetic import make_corpus, make_instances

# Toy-scale hyperparameters: the config-default learning rates target large
# transformer fine-tuning; the hash-feature heads need a larger step size.
SEQ_OVERFIT_CONFIG = SeqTrainConfig(
    epochs=30, peak_lr=5e-3, batch_size=2, hidden_size=96, seed=0
)
CLS_OVERFIT_CONFIG = ClsTrainConfig(
    epochs=80,
    peak_lr=5e-3,
    batch_size=32,
    early_stopping_patience=25,
    seed=42,
    hidden_size=128,
)


@pytest.fixture(scope="session")
def synthetic_corpus():
    return make_corpus(20, seed=7)


@pytest.fixture(scope="session")
def synthetic_instances():
    return make_instances(200, seed=11)


@pytest.fixture(scope="session")
def overfit_tagger(synthetic_corpus):
    model, report = train_sequence_labeler(
        synthetic_corpus, HashTokenEncoder(seed=0), SEQ_OVERFIT_CONFIG
    )
    model._training_report = report
    return model


@pytest.fixture(scope="session")
def overfit_classifier(synthetic_instances):
    model, report = train_role_classifier(
        synthetic_instances, HashTextEncoder(seed=1), CLS_OVERFIT_CONFIG
    )
    model._training_report = report
    return model


@pytest.fixture(scope="session")
def pipeline(overfit_tagger, overfit_classifier):
    return AnalysisPipeline(tagger=overfit_tagger, classifier=overfit_classifier)
