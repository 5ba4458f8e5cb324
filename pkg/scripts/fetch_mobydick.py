#!/usr/bin/env python3
"""Download the public-domain Moby Dick text for the word-frequency example.

Fetches the Project Gutenberg plain-text edition (eBook #2701), strips the
Gutenberg license boilerplate outside the ``*** START/END OF ... ***``
markers, and writes the body to data/mobydick.txt (or the path given as the
first argument).  Run it once on a machine with network access; the test
suite and the README examples look for the file at data/mobydick.txt or at
$CPDIST_MOBYDICK.
"""

import sys
import urllib.request
from pathlib import Path

URL = "https://www.gutenberg.org/files/2701/2701-0.txt"


def strip_boilerplate(text):
    lines = text.splitlines(keepends=True)
    start = 0
    end = len(lines)
    for i, line in enumerate(lines):
        if line.startswith("*** START OF"):
            start = i + 1
        elif line.startswith("*** END OF"):
            end = i
            break
    return "".join(lines[start:end])


def main():
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data/mobydick.txt")
    print(f"fetching {URL} ...", file=sys.stderr)
    with urllib.request.urlopen(URL) as response:
        raw = response.read().decode("utf-8")
    body = strip_boilerplate(raw)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(body, encoding="utf-8")
    print(f"wrote {len(body)} characters to {target}", file=sys.stderr)


if __name__ == "__main__":
    main()
