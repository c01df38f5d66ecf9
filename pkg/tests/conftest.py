from importlib import resources

import pytest

from bnbpe.bpe import ConstraintProfile, train
from bnbpe.normalizer import as_normalized


def _sample_lines():
    text = resources.files("bnbpe").joinpath("data/sample_corpus.txt").read_text("utf-8")
    return [as_normalized(line) for line in text.splitlines() if line]


@pytest.fixture(scope="session")
def sample_corpus():
    return _sample_lines()


@pytest.fixture(scope="session")
def bengali_model(sample_corpus):
    return train(sample_corpus, 8000, ConstraintProfile.bengali())


@pytest.fixture(scope="session")
def generic_model(sample_corpus):
    return train(sample_corpus, 8000, ConstraintProfile.generic())


@pytest.fixture(scope="session")
def small_model(sample_corpus):
    return train(sample_corpus, 600, ConstraintProfile.bengali())


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.VERDICTS):
            terminalreporter.write_line(line)
