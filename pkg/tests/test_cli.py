import json

import pytest

from bnbpe.cli import main


@pytest.fixture(scope="module")
def corpus_file(tmp_path_factory, sample_corpus):
    p = tmp_path_factory.mktemp("cli") / "sample.txt"
    p.write_text("\n".join(t.content for t in sample_corpus[:400]) + "\n", encoding="utf-8")
    return p


@pytest.fixture(scope="module")
def model_file(corpus_file):
    out = corpus_file.parent / "m.model"
    assert main(["train", "--corpus", str(corpus_file), "--vocab-size", "800", "--out", str(out)]) == 0
    return out


def test_train_writes_model_and_manifest(model_file):
    assert model_file.exists()
    manifest = json.loads(model_file.with_name(model_file.name + ".manifest.json").read_text("utf-8"))
    assert manifest["subcommand"] == "train" and manifest["config"]["vocab_size"] == 800


@pytest.mark.parametrize("ids", [False, True])
def test_encode_decode_round_trip(tmp_path, corpus_file, model_file, ids):
    enc = tmp_path / "enc.txt"
    dec = tmp_path / "dec.txt"
    args = ["encode", "--model", str(model_file), "--in", str(corpus_file), "--out", str(enc)]
    assert main(args + (["--ids"] if ids else [])) == 0
    assert main(["decode", "--model", str(model_file), "--in", str(enc), "--out", str(dec)]) == 0
    assert dec.read_text("utf-8") == corpus_file.read_text("utf-8")


def test_normalize(tmp_path, capsys):
    src = tmp_path / "raw.txt"
    src.write_text("আমি   ২০২৪ সালে AI বই পড়ি।\n<b>বাংলা</b>\n", encoding="utf-8")
    assert main(["normalize", "--in", str(src)]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "বাংলা"


def test_graphemes(tmp_path, capsys):
    src = tmp_path / "g.txt"
    src.write_text("গর্বিত\n", encoding="utf-8")
    assert main(["graphemes", "--in", str(src)]) == 0
    assert capsys.readouterr().out.split() == ["গ", "র্বি", "ত"]


def test_split_and_eval(tmp_path, capsys):
    src = tmp_path / "c.jsonl"
    lines = []
    for label, words in (("a", "কলম খাতা বই"), ("b", "মাঠ বল খেলা")):
        for i in range(30):
            lines.append(json.dumps({"text": f"{words} {words.split()[i % 3]}", "label": label}, ensure_ascii=False))
    src.write_text("\n".join(lines) + "\n", encoding="utf-8")
    out = tmp_path / "splits"
    assert main(["split", "--in", str(src), "--out-dir", str(out)]) == 0
    assert json.loads((out / "split.json").read_text())["counts"]["train"] == {"a": 21, "b": 21}
    report = tmp_path / "r.json"
    assert main(["eval", "--corpus", str(out), "--tokenizer", "whitespace", "--grid", "1", "--report", str(report)]) == 0
    r = json.loads(report.read_text("utf-8"))
    assert r["selected_C"] == 1.0 and r["macro_f1"] == 1.0


def test_bench(tmp_path, corpus_file, model_file):
    report = tmp_path / "bench.json"
    args = [
        "bench", "--corpus", str(corpus_file), "--tokenizers", "whitespace,bengali",
        "--models", str(model_file), "--report", str(report), "--warmup", "10", "--repeats", "1",
    ]
    assert main(args) == 0
    rows = json.loads(report.read_text("utf-8"))["rows"]
    assert [r["tokenizer"] for r in rows] == ["whitespace", "bengali"]


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["train", "--bogus"])
    assert e.value.code == 2


def test_missing_input_exits_1(tmp_path, capsys):
    assert main(["encode", "--model", str(tmp_path / "none.model"), "--in", str(tmp_path / "x")]) == 1
    assert "error" in capsys.readouterr().err


def test_corrupt_model_exits_1(tmp_path, corpus_file):
    bad = tmp_path / "bad.model"
    bad.write_text("#bnbpe-model\nformat_version: 1\n", encoding="utf-8")
    assert main(["encode", "--model", str(bad), "--in", str(corpus_file)]) == 1
