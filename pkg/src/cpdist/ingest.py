"""Build frequency datasets from raw text corpora and from count files.

A text corpus is reduced to word-frequency data in two steps: count how
often each distinct word occurs, then count how many words share each
occurrence count.  The resulting dataset (frequency value -> number of
words with that frequency) is what the fitting routines consume.

Count files are plain CSV with ``value,count`` records; reading and
writing round-trip exactly.
"""

import csv
import re
from collections import Counter
from dataclasses import dataclass

from .errors import EmptyInputError, ParameterError, ParseError
from .estimate import FrequencyDataset

# maximal runs of alphabetic characters; digits, underscores and
# punctuation terminate a token
_TOKEN = re.compile(r"[^\W\d_]+")


@dataclass(frozen=True)
class CorpusConfig:
    """Tokenization knobs for `word_counts`.

    ``lowercase`` folds case before counting, so "The" and "the" are one
    word.  ``min_count`` drops words occurring fewer than that many times
    before the frequency-of-frequencies step.
    """

    lowercase: bool = True
    min_count: int = 1

    def __post_init__(self):
        if int(self.min_count) < 1 or self.min_count != int(self.min_count):
            raise ParameterError(f"min_count must be a positive integer, got {self.min_count!r}")


def tokens(text, config=CorpusConfig()):
    """Yield tokens from a string or an iterable of lines."""
    chunks = (text,) if isinstance(text, str) else text
    for chunk in chunks:
        if config.lowercase:
            chunk = chunk.casefold()
        yield from _TOKEN.findall(chunk)


def word_counts(text, config=CorpusConfig()):
    """Frequency-of-frequencies dataset for a corpus.

    ``text`` may be a string or any iterable of strings (an open text file
    streams line by line).  Each distinct word contributes one observation:
    the number of times it occurs.

    >>> word_counts("the cat the").as_dict()
    {1: 1, 2: 1}
    """
    per_word = Counter(tokens(text, config))
    freq_of_freq = Counter(c for c in per_word.values() if c >= config.min_count)
    if not freq_of_freq:
        raise EmptyInputError("no tokens found in the input text")
    return FrequencyDataset.from_pairs(sorted(freq_of_freq.items()))


def _parse_int(field, what, lineno):
    try:
        return int(field.strip())
    except ValueError:
        raise ParseError(f"{what} {field.strip()!r} is not an integer", line=lineno) from None


def read_counts(path):
    """Read a ``value,count`` CSV into a dataset, merging duplicate values.

    A single leading ``value,count`` header row is tolerated.  Malformed
    rows raise `ParseError` with their line number; values below 1 violate
    the support of X and raise `ParameterError`.
    """
    pairs = []
    with open(path, newline="", encoding="utf-8") as stream:
        for lineno, row in enumerate(csv.reader(stream), start=1):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if lineno == 1 and [f.strip().casefold() for f in row] == ["value", "count"]:
                continue
            if len(row) != 2:
                raise ParseError(f"expected 2 fields, got {len(row)}", line=lineno)
            value = _parse_int(row[0], "value", lineno)
            count = _parse_int(row[1], "count", lineno)
            if value < 1:
                raise ParameterError(f"line {lineno}: value must be >= 1, got {value}")
            if count < 1:
                raise ParameterError(f"line {lineno}: count must be >= 1, got {count}")
            pairs.append((value, count))
    if not pairs:
        raise EmptyInputError(f"no count records found in {path}")
    return FrequencyDataset.from_pairs(pairs)


def write_counts(data, path):
    """Write a dataset as ``value,count`` CSV; inverse of `read_counts`."""
    with open(path, "w", newline="", encoding="utf-8") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["value", "count"])
        for value, count in zip(data.values, data.counts):
            writer.writerow([int(value), int(count)])
