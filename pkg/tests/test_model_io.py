import random

import pytest

from bnbpe.bpe import ConstraintProfile, train
from bnbpe.errors import CorruptFile, VersionMismatch
from bnbpe.model_io import dumps, load_model, loads, save_model


@pytest.fixture(scope="module")
def toy():
    return train(["কলম কলম কলা"], 100, ConstraintProfile.generic())


def test_save_load_save_identical(tmp_path, bengali_model):
    a = tmp_path / "a.model"
    b = tmp_path / "b.model"
    save_model(bengali_model, a)
    save_model(load_model(a), b)
    assert a.read_bytes() == b.read_bytes()


def test_toy_merges_section(toy):
    text = dumps(toy)
    section = text.split("[merges]\n", 1)[1].splitlines()
    assert section == ["ক\tল", "কল\tম"]
    again = loads(text)
    assert [(m.left, m.right, m.rank) for m in again.merges] == [("ক", "ল", 0), ("কল", "ম", 1)]


def test_loaded_model_encodes_identically(bengali_model, sample_corpus):
    again = loads(dumps(bengali_model))
    assert again.config_fingerprint == bengali_model.config_fingerprint
    assert again.vocab == bengali_model.vocab
    for t in random.Random(0).sample(sample_corpus, 100):
        assert again.encode(t).tokens == bengali_model.encode(t).tokens


def test_truncated_merges_corrupt(bengali_model):
    text = dumps(bengali_model)
    lines = text.splitlines(keepends=True)
    with pytest.raises(CorruptFile):
        loads("".join(lines[:-10]))


def test_truncated_mid_line_corrupt(toy):
    text = dumps(toy)
    with pytest.raises(CorruptFile):
        loads(text[: len(text) - 3])


def test_future_version(toy):
    text = dumps(toy).replace("format_version: 1", "format_version: 2")
    with pytest.raises(VersionMismatch):
        loads(text)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda s: s.replace("#bnbpe-model", "#other"),
        lambda s: s.replace("mode: generic", "mode: nonsense"),
        lambda s: s.replace("ক\tল", "ক\tখ"),
        lambda s: s.replace("[vocab]", "[vocab]\n[vocab]"),
        lambda s: "",
    ],
)
def test_corruptions(toy, mutate):
    with pytest.raises(CorruptFile):
        loads(mutate(dumps(toy)))


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_model(tmp_path / "nope.model")
