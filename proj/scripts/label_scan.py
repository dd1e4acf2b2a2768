#!/usr/bin/env python3
"""Count MISC label values in a CoNLL-U file with a plain text scan.

Independent of the relabel library on purpose: golden TSVs for the test
suite are produced by this script, never by the code under test.

Usage: label_scan.py KEY FILE [FILE...]  > golden.tsv
"""
import sys
from collections import Counter


def scan(key, path):
    counts = Counter()
    prefix = key + "="
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n").rstrip("\r")
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                continue
            if "-" in cols[0]:  # multiword range: not a node
                continue
            for item in cols[9].split("|"):
                if item.startswith(prefix):
                    counts[item[len(prefix):]] += 1
    return counts


def main(argv):
    if len(argv) < 3:
        sys.stderr.write(__doc__)
        return 2
    key = argv[1]
    counts = Counter()
    for path in argv[2:]:
        counts.update(scan(key, path))
    sys.stdout.write("label\tcount\n")
    for label, n in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])):
        sys.stdout.write(f"{label}\t{n}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
