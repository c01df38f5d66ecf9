import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnbpe import kernels
from bnbpe.bpe import (
    UNK_ID,
    BpeModel,
    ConstraintProfile,
    MergeRule,
    TokenSequence,
    decode,
    is_merge_allowed,
    pretokenize,
    train,
)
from bnbpe.errors import EmptyCorpus, FingerprintMismatch, TargetTooSmall
from bnbpe.grapheme import graphemes, starts_with_mark
from bnbpe.normalizer import NormalizationConfig, clean

from .oracles import rank_scan_encode

GENERIC = ConstraintProfile.generic()
BENGALI = ConstraintProfile.bengali()


@pytest.fixture(scope="module")
def toy():
    return train(["কলম কলম কলা"], 100, GENERIC)


class TestPretokenize:
    @pytest.mark.parametrize(
        "text,units",
        [
            ("বাংলা ভাষা", ["বাংলা", "ভাষা"]),
            ("গর্বিত।", ["গর্বিত", "।"]),
            ("", []),
            ("(ক),খ", ["(", "ক", ")", ",", "খ"]),
        ],
    )
    def test_examples(self, text, units):
        assert pretokenize(text) == units


class TestConstraints:
    def test_suffix_blocked_word_final(self):
        assert not is_merge_allowed("ভাষী", "রা", word_final=True, profile=BENGALI)

    def test_mid_word_allowed(self):
        assert is_merge_allowed("ভা", "ষা", word_final=False, profile=BENGALI)

    def test_generic_ignores_lexicon(self):
        assert is_merge_allowed("ভাষী", "রা", word_final=True, profile=GENERIC)

    def test_suffix_not_final_allowed(self):
        assert is_merge_allowed("ভাষী", "রা", word_final=False, profile=BENGALI)

    def test_suffix_chains_allowed(self):
        assert "গুলো" in BENGALI.suffix_lexicon and "কে" in BENGALI.suffix_lexicon
        assert is_merge_allowed("গুলো", "কে", word_final=True, profile=BENGALI)

    def test_mark_never_left(self):
        for profile in (GENERIC, BENGALI):
            assert not is_merge_allowed("ি", "ক", profile=profile)

    def test_cross_word(self):
        assert not is_merge_allowed("ক", "খ", crosses_word=True)

    def test_profile_validation(self):
        with pytest.raises(ValueError):
            ConstraintProfile("other")
        with pytest.raises(ValueError):
            ConstraintProfile("generic", block_cross_word=False)


class TestTrain:
    def test_toy_merge_order(self, toy):
        assert [(m.left, m.right) for m in toy.merges] == [("ক", "ল"), ("কল", "ম")]
        assert [m.frequency_at_merge for m in toy.merges] == [2, 2]

    def test_single_grapheme_word(self):
        m = train(["ক"], 10, GENERIC)
        assert m.merges == () and m.alphabet == ("ক",)
        assert len(m) == 3

    def test_deterministic(self, sample_corpus):
        a = train(sample_corpus[:300], 500, BENGALI)
        b = train(sample_corpus[:300], 500, BENGALI)
        assert a.merges == b.merges and a.vocab == b.vocab

    def test_threads_do_not_matter(self, sample_corpus):
        a = train(sample_corpus[:300], 500, BENGALI, threads=1)
        b = train(sample_corpus[:300], 500, BENGALI, threads=4)
        assert a.merges == b.merges

    def test_errors(self):
        with pytest.raises(EmptyCorpus):
            train(["", " "], 100)
        with pytest.raises(TargetTooSmall):
            train(["কলম"], 2)

    def test_vocab_accounting(self, bengali_model, small_model):
        for m in (bengali_model, small_model):
            assert len(m) == len(m.alphabet) + len(m.merges) + 2
            assert len(m.alphabet) + len(m.merges) <= m.target_vocab_size
        assert len(small_model.alphabet) + len(small_model.merges) == 600

    def test_ids_layout(self, bengali_model):
        m = bengali_model
        assert m.id_to_surface[:2] == ["<unk>", "<pad>"]
        assert list(m.alphabet) == sorted(m.alphabet)
        for r in m.merges:
            assert m.vocab[r.surface] == m.merge_base + r.rank

    def test_no_merge_starts_with_mark(self, bengali_model, generic_model):
        for m in (bengali_model, generic_model):
            assert not any(starts_with_mark(r.left) for r in m.merges)

    def test_merge_frequencies(self, bengali_model):
        freqs = [r.frequency_at_merge for r in bengali_model.merges]
        assert freqs[0] == max(freqs)
        assert min(freqs) >= 2


class TestEncode:
    def test_toy_examples(self, toy):
        assert toy.encode("কলমা").surfaces == ["কল", "মা"]
        assert toy.encode("কলম").surfaces == ["কলম"]

    def test_unknown_grapheme(self, toy):
        seq = toy.encode("ঔ")
        assert seq.tokens == [("ঔ", UNK_ID)]
        assert toy.encode("কলমা").ids[1] == UNK_ID

    def test_empty(self, toy):
        assert toy.encode("").tokens == []

    def test_table1_sentence(self, bengali_model, generic_model):
        t = clean("বাংলা ভাষাভাষীরা গর্বিত।")
        b = bengali_model.encode(t)
        assert b.surfaces[-1] == "।"
        assert b.words()[1][-1][0] == "রা"
        assert decode(b) == t.content
        assert decode(generic_model.encode(t)) == t.content

    def test_fingerprint_mismatch(self, toy):
        other = clean("কলম", NormalizationConfig(strip_numerals=False))
        with pytest.raises(FingerprintMismatch):
            toy.encode(other)

    def test_word_boundaries(self, toy):
        seq = toy.encode("কলম কলা।")
        assert seq.word_boundaries == [0, 1]
        assert [[s for s, _ in w] for w in seq.words()] == [["কলম"], ["ক", "লা", "।"]]
        assert decode(seq) == "কলম কলা।"

    def test_decode_example(self):
        seq = TokenSequence([("কল", 5), ("মা", 6), ("।", 7)], [0, 2])
        assert decode(seq) == "কলমা ।"
        assert decode(TokenSequence()) == ""

    def test_matches_oracle(self, bengali_model, generic_model, sample_corpus):
        rng = random.Random(3)
        words = sorted({u for t in sample_corpus for u in pretokenize(t)})
        for model in (bengali_model, generic_model):
            pairs = [(r.left, r.right) for r in model.merges]
            for w in rng.sample(words, 60):
                expect = rank_scan_encode(graphemes(w), pairs, model.vocab, model.constraint_profile)
                assert list(model.encode_unit(w)) == expect, w

    def test_truncated_model_is_coarser_monotone(self, bengali_model, sample_corpus):
        lines = sample_corpus[:200]
        counts = []
        for k in (0, 100, 400, len(bengali_model.merges)):
            m = bengali_model.truncated(k)
            counts.append(sum(len(m.encode(t)) for t in lines))
        assert counts == sorted(counts, reverse=True)

    def test_no_token_starts_with_mark(self, bengali_model, sample_corpus):
        for t in sample_corpus[:500]:
            assert not any(starts_with_mark(s) for s in bengali_model.encode(t).surfaces)

    @settings(max_examples=300, deadline=None)
    @given(st.text(alphabet=st.characters(min_codepoint=0x0980, max_codepoint=0x09FF) | st.sampled_from(" ।,"), max_size=40))
    def test_round_trip_fuzz(self, small_model, s):
        t = clean(s)
        assert decode(small_model.encode(t)) == t.content

    @pytest.mark.skipif(len(kernels.backends()) < 2, reason="compiled kernels not built")
    def test_merge_backends_agree(self, bengali_model, sample_corpus):
        m = bengali_model
        pairs = {(m.vocab[r.left] << 32) | m.vocab[r.right]: r.rank for r in m.merges}
        tables = [cls(pairs, m.flags, m.merge_base, True) for _, cls in kernels.backends().values()]
        for t in sample_corpus[:300]:
            for u in pretokenize(t):
                ids = [m.vocab.get(g, UNK_ID) for g in graphemes(u)]
                assert tables[0].apply(ids) == tables[1].apply(ids)


def test_manual_model_rejects_duplicate_surface():
    with pytest.raises(ValueError):
        BpeModel(["ক", "কক"], [MergeRule("ক", "ক", 0)], 10, GENERIC)
