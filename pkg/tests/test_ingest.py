"""Corpus and count-file ingestion."""

import pytest

from cpdist.errors import EmptyInputError, ParameterError, ParseError
from cpdist.ingest import CorpusConfig, read_counts, tokens, word_counts, write_counts


class TestWordCounts:
    def test_basic_frequency_of_frequencies(self):
        assert word_counts("the cat the").as_dict() == {1: 1, 2: 1}
        assert word_counts("a a a").as_dict() == {3: 1}

    def test_case_folding_and_whitespace_idempotent(self):
        reference = word_counts("the cat the")
        assert word_counts("The   CAT\n\tthe").as_dict() == reference.as_dict()

    def test_lowercase_disabled(self):
        assert word_counts("The the", CorpusConfig(lowercase=False)).as_dict() == {1: 2}

    def test_min_count_filters_rare_words(self):
        assert word_counts("a b a b c", CorpusConfig(min_count=2)).as_dict() == {2: 2}

    def test_streaming_lines(self):
        with_stream = word_counts(iter(["one two\n", "two three\n"]))
        assert with_stream.as_dict() == {1: 2, 2: 1}

    def test_tokens_are_alphabetic_runs(self):
        assert list(tokens("don't stop-me 3x now!")) == ["don", "t", "stop", "me", "x", "now"]
        assert list(tokens("café naïve café")) == ["café", "naïve", "café"]
        assert list(tokens("under_score 12 €")) == ["under", "score"]

    def test_empty_input_rejected(self):
        for text in ("", "123 456 --- _ 9"):
            with pytest.raises(EmptyInputError):
                word_counts(text)

    def test_min_count_validation(self):
        with pytest.raises(ParameterError):
            CorpusConfig(min_count=0)


class TestCountsFiles:
    def test_read_basic(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("1,5\n2,3\n")
        assert read_counts(path).as_dict() == {1: 5, 2: 3}

    def test_read_merges_duplicates(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("2,1\n2,2\n")
        assert read_counts(path).as_dict() == {2: 3}

    def test_header_and_blank_lines_tolerated(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("value,count\n1,4\n\n3,2\n")
        assert read_counts(path).as_dict() == {1: 4, 3: 2}

    def test_round_trip_identity(self, tmp_path):
        src = tmp_path / "a.csv"
        dst = tmp_path / "b.csv"
        src.write_text("7,2\n1,9\n7,1\n")
        data = read_counts(src)
        write_counts(data, dst)
        assert read_counts(dst).as_dict() == data.as_dict()
        assert dst.read_text() == "value,count\n1,9\n7,3\n"

    def test_zero_value_is_domain_error(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("0,4\n")
        with pytest.raises(ParameterError, match="value must be >= 1"):
            read_counts(path)

    def test_zero_count_is_domain_error(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("3,0\n")
        with pytest.raises(ParameterError, match="count must be >= 1"):
            read_counts(path)

    @pytest.mark.parametrize("line,lineno", [("1,2,3", 1), ("x,4", 1), ("badline", 2)])
    def test_malformed_line_carries_line_number(self, tmp_path, line, lineno):
        path = tmp_path / "c.csv"
        prefix = "5,1\n" if lineno == 2 else ""
        path.write_text(prefix + line + "\n")
        with pytest.raises(ParseError) as info:
            read_counts(path)
        assert info.value.line == lineno
        assert f"line {lineno}" in str(info.value)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("value,count\n")
        with pytest.raises(EmptyInputError):
            read_counts(path)
