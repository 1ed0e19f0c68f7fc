import json

from entity_framing.cli import main
from entity_framing.corpus import write_annotations_tsv
from entity_framing.synthetic import make_corpus


def flatten(corpus):
    return [a for _, anns in corpus for a in anns]


def test_evaluate_perfect_predictions(tmp_path, capsys):
    corpus = make_corpus(4, seed=5)
    gold = flatten(corpus)
    gold_tsv = tmp_path / "gold.tsv"
    pred_tsv = tmp_path / "pred.tsv"
    report_json = tmp_path / "report.json"
    write_annotations_tsv(gold, gold_tsv)
    write_annotations_tsv(gold, pred_tsv, confidences=[0.9] * len(gold))

    code = main([
        "evaluate", "--pred", str(pred_tsv), "--gold", str(gold_tsv),
        "--report", str(report_json), "--baselines", "--seed", "42",
    ])
    assert code == 0
    payload = json.loads(report_json.read_text())
    assert payload["exact_match_accuracy"] == 1.0
    assert payload["span_metrics"]["micro"]["f1"] == 1.0
    assert payload["classifier"]["metrics"]["exact_match_accuracy"] == 1.0
    assert set(payload["baselines"]) == {"random", "top_k", "freq_weighted"}
    out = capsys.readouterr().out
    assert "span metrics" in out and "classifier" in out


def test_evaluate_no_predictions(tmp_path):
    corpus = make_corpus(2, seed=6)
    gold_tsv = tmp_path / "gold.tsv"
    pred_tsv = tmp_path / "pred.tsv"
    write_annotations_tsv(flatten(corpus), gold_tsv)
    pred_tsv.write_text("")
    report_json = tmp_path / "report.json"
    code = main([
        "evaluate", "--pred", str(pred_tsv), "--gold", str(gold_tsv),
        "--report", str(report_json),
    ])
    assert code == 0
    payload = json.loads(report_json.read_text())
    assert payload["exact_match_accuracy"] == 0.0
    assert payload["classifier"] is None


def test_export_taxonomy(tmp_path):
    out = tmp_path / "taxonomy.json"
    assert main(["export-taxonomy", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert len(payload["Protagonist"]) == 6
