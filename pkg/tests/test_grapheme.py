import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnbpe import kernels
from bnbpe.grapheme import (
    CLASS_TABLE,
    CodepointClass,
    _classify_wide,
    classify_codepoint,
    graphemes,
    segment_graphemes,
    starts_with_mark,
)
from bnbpe.normalizer import clean

C = CodepointClass
bengali_text = st.text(
    alphabet=st.one_of(
        st.characters(min_codepoint=0x0980, max_codepoint=0x09FF),
        st.sampled_from(list(" ।,‌‍")),
    ),
    max_size=40,
)


@pytest.mark.parametrize(
    "cp,cls",
    [
        (0x09CD, C.VIRAMA),
        (0x09BF, C.DEPENDENT_VOWEL_SIGN),
        (0x0020, C.SPACE),
        (0x0995, C.CONSONANT),
        (0x0985, C.INDEPENDENT_VOWEL),
        (0x09BC, C.NUKTA),
        (0x0981, C.MODIFIER),
        (0x200D, C.JOINER),
        (0x0964, C.PUNCTUATION),
        (0x0041, C.OTHER),
        (0x09E6, C.OTHER),
        (0x1F600, C.OTHER),
    ],
)
def test_classify(cp, cls):
    assert classify_codepoint(cp) is cls


@pytest.mark.parametrize(
    "text,expected",
    [
        ("গর্বিত", ["গ", "র্বি", "ত"]),
        ("ভাষী", ["ভা", "ষী"]),
        ("এ", ["এ"]),
        ("", []),
        ("বাংলা ভাষা", ["বাং", "লা", " ", "ভা", "ষা"]),
        ("স্ত্রী", ["স্ত্রী"]),
        ("ক্‍ষ", ["ক্‍ষ"]),
    ],
)
def test_segment_examples(text, expected):
    assert graphemes(text) == expected


def test_degenerate_leading_kar():
    out = segment_graphemes("িক")
    assert [g.surface for g in out] == ["ি", "ক"]
    assert out[0].degenerate and not out[1].degenerate


def test_degenerate_trailing_virama():
    out = segment_graphemes("ক্")
    assert [(g.surface, g.degenerate) for g in out] == [("ক্", True)]


def test_double_kar_glued_as_degenerate():
    out = segment_graphemes("কিি")
    assert [(g.surface, g.degenerate) for g in out] == [("কিি", True)]


def test_starts_with_mark():
    assert starts_with_mark("ি")
    assert starts_with_mark("্ক")
    assert not starts_with_mark("কি")
    assert not starts_with_mark("")


@settings(max_examples=500)
@given(bengali_text)
def test_lossless_and_well_formed(s):
    t = clean(s)
    clusters = segment_graphemes(t)
    assert "".join(g.surface for g in clusters) == t.content
    for g in clusters:
        assert g.surface
        if not g.degenerate:
            assert not starts_with_mark(g.surface)


@settings(max_examples=300)
@given(st.text(max_size=50))
def test_total_on_arbitrary_input(s):
    assert "".join(graphemes(s)) == s
    assert graphemes(s) == graphemes(s)


@pytest.mark.skipif(len(kernels.backends()) < 2, reason="compiled kernels not built")
@settings(max_examples=300)
@given(st.text(max_size=50) | bengali_text)
def test_backends_agree(s):
    results = [seg(s, CLASS_TABLE, _classify_wide) for seg, _ in kernels.backends().values()]
    assert results[0] == results[1]
