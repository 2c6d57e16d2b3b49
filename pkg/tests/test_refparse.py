import re

import pytest
from hypothesis import given, strategies as st

from refrank.errors import NoCitationsFound, NoReferenceSection
from refrank.ingest import NormalizedText, SourceDocument, extract_text
from refrank.refparse import (
    StopWords,
    extract_author_tokens,
    header_authors,
    is_valid_author_name,
    isolate_reference_section,
    normalize_citation,
    parse_citations,
    split_citations,
)

from conftest import DATASETS, fixture_text

# hand-counted entries in each fixture reference list
CITATION_COUNTS = {"dataset1": 16, "dataset2": 22, "dataset3": 19}


def parsed(name):
    return parse_citations(extract_text(SourceDocument(fixture_text(name))))


class TestIsolate:
    def test_upper_marker(self):
        sec = isolate_reference_section(NormalizedText.from_string("body…\nREFERENCES\n[1] X"))
        assert sec.raw == "[1] X"
        assert sec.marker_used == "upper"

    def test_sentence_marker_fallback(self):
        sec = isolate_reference_section("body…\nReferences\n[1] X")
        assert sec.raw == "[1] X"
        assert sec.marker_used == "sentence"

    def test_missing_marker(self):
        with pytest.raises(NoReferenceSection):
            isolate_reference_section("no marker anywhere")

    def test_last_occurrence_wins(self):
        sec = isolate_reference_section("REFERENCES\nearly\nmore text\nREFERENCES\n[1] late")
        assert sec.raw == "[1] late"

    def test_word_in_prose_is_not_a_marker(self):
        text = "see the References of [3] for details\nReferences\n[1] A"
        assert isolate_reference_section(text).raw == "[1] A"

    def test_upper_preferred_over_later_sentence_case(self):
        sec = isolate_reference_section("REFERENCES\n[1] A\nReferences\n[1] B")
        assert sec.marker_used == "upper"
        assert sec.raw.startswith("[1] A")


class TestSplit:
    def test_two_labels(self):
        cs = split_citations("[1] A, “T1,” 2015 [2] B, “T2,” 2016")
        assert [c.index for c in cs] == [1, 2]
        assert cs[0].raw == "A, “T1,” 2015"

    def test_numbered_fallback(self):
        cs = split_citations("1. A, “T,” J.")
        assert len(cs) == 1
        assert cs[0].raw == "A, “T,” J."

    def test_numbered_fallback_multiline(self):
        raw = "1. A, “T,” J.\n   continued 2011.\n2. B, “U,” K.\n"
        cs = split_citations(raw)
        assert [c.raw for c in cs] == ["A, “T,” J.\n   continued 2011.", "B, “U,” K."]

    def test_no_labels(self):
        with pytest.raises(NoCitationsFound):
            split_citations("just prose, no labels")

    def test_out_of_sequence_brackets_are_content(self):
        cs = split_citations("[1] A, “see [3],” X [2] B, “T,” Y")
        assert len(cs) == 2
        assert "[3]" in cs[0].raw

    @pytest.mark.parametrize("name", DATASETS)
    def test_fixture_counts(self, name):
        cs = parsed(name)
        assert len(cs) == CITATION_COUNTS[name]
        assert [c.index for c in cs] == list(range(1, len(cs) + 1))


class TestNormalize:
    def test_rule(self):
        assert normalize_citation("A. B,\n “Title 2015,” Vol. 3") == "A. B, “Title ,” Vol."

    def test_empty(self):
        assert normalize_citation("") == ""

    @pytest.mark.parametrize("name", DATASETS)
    def test_fixture_digit_free(self, name):
        for c in parsed(name):
            assert not re.search(r"[0-9\r\n]", c.normalized)

    @given(st.text())
    def test_idempotent(self, s):
        once = normalize_citation(s)
        assert normalize_citation(once) == once

    @given(st.text())
    def test_output_class(self, s):
        assert not re.search(r"[\r\n]|\d", normalize_citation(s))


class TestAuthorTokens:
    def test_two_authors(self):
        assert extract_author_tokens("R. Heat, S. Sum, “Some Title,” IEEE Trans.") == ["R. Heat", "S. Sum"]

    def test_title_only(self):
        assert extract_author_tokens("“Title only,” IEEE") == []

    def test_single_author(self):
        assert extract_author_tokens("C. Fischione, “Paper,” Proc.") == ["C. Fischione"]

    def test_straight_quote_title(self):
        assert extract_author_tokens('A. B, "Paper, with comma," Proc.') == ["A. B"]

    def test_and_and_et_al_stripped(self):
        assert extract_author_tokens("A. One, B. Two, and C. Three, “T,” J.") == ["A. One", "B. Two", "C. Three"]
        assert extract_author_tokens("A. One and B. Two, “T,” J.") == ["A. One", "B. Two"]
        assert extract_author_tokens("A. One et al., “T,” J.") == ["A. One"]

    def test_and_inside_names_untouched(self):
        assert extract_author_tokens("R. D'Andrea, A. Anand, “T,” J.") == ["R. D'Andrea", "A. Anand"]

    def test_unquoted_book(self):
        toks = extract_author_tokens(normalize_citation(
            "C. M. Bishop, Pattern Recognition and Machine Learning. New York, NY, USA: Springer-Verlag, 2006."
        ))
        assert toks == ["C. M. Bishop"]

    @given(st.lists(st.text(alphabet="ABCdef. “\"", max_size=12), max_size=8))
    def test_prefix_ordered_subset(self, parts):
        text = normalize_citation(",".join(parts))
        toks = extract_author_tokens(text)
        # every token is a valid name; tokens appear in order in the text
        pos = 0
        for t in toks:
            assert is_valid_author_name(t)
            found = text.find(t, pos)
            assert found >= 0
            pos = found + len(t)


class TestValidity:
    @pytest.mark.parametrize("token,ok", [
        ("“High-Performance", False),
        ('"Quoted', False),
        ("IEEE Transactions", False),
        ("A. Lendasse", True),
        ("", False),
        ("Vol", False),
        ("pp", False),
        ("In", False),
        ("R2-D2", False),
        ("x" * 61, False),
        ("A. " + "x" * 57, True),
        (".", False),
        ("A. Volkov", True),
        ("K. Chappell", True),
        ("J. Lin", True),
    ])
    def test_cases(self, token, ok):
        assert is_valid_author_name(token) is ok

    def test_custom_stopwords(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("# custom\nLendasse\n\n")
        sw = StopWords.from_file(path)
        assert not is_valid_author_name("A. Lendasse", sw)
        assert is_valid_author_name("IEEE", sw)

    def test_multiword_stopword(self):
        sw = StopWords(["New York"])
        assert sw.matches("Springer, New  York")
        assert not sw.matches("A. York")


def test_every_fixture_token_valid():
    for name in DATASETS:
        for c in parsed(name):
            assert all(is_valid_author_name(t) for t in c.author_tokens)


def test_header_authors():
    text = extract_text(SourceDocument(fixture_text("dataset2")))
    assert header_authors(text) == ["B. Kehoe", "S. Patil", "P. Abbeel", "K. Goldberg"]


def test_header_authors_none():
    assert header_authors("A Title\n\nAbstract—text") == []
