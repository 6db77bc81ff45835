#!/usr/bin/env python3
# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds data/lexicon.tsv from the VADER lexicon (MIT licensed).

Single alphabetic entries with |mean valence| >= 1.9 are kept and bucketed to
{-2,-1,+1,+2} (|v| >= 2.5 maps to 2). A small travel-domain supplement is
appended afterwards and wins over VADER entries.

Usage: build_lexicon.py path/to/vader_lexicon.txt > data/lexicon.tsv
"""

import re
import sys

THRESHOLD = 1.9
STRONG = 2.5

SUPPLEMENT = {
    "crowded": -1, "overcrowded": -2, "overpriced": -2, "expensive": -1,
    "pricey": -1, "touristy": -1, "queue": -1, "queues": -1, "filthy": -2,
    "pushy": -2, "hassle": -1, "hassled": -2, "scammed": -2, "ripoff": -2,
    "overrated": -2, "underwhelming": -1, "unsafe": -2, "smelly": -1,
    "exhausting": -1, "sweltering": -1, "dirty": -1, "rude": -2,
    "stunning": 2, "spectacular": 2, "majestic": 2, "magnificent": 2,
    "breathtaking": 2, "unforgettable": 2, "worth": 1, "worthwhile": 1,
    "clean": 1, "helpful": 1, "knowledgeable": 1, "informative": 1,
    "impressive": 1, "picturesque": 2, "serene": 1, "peaceful": 1,
    "affordable": 1, "cheap": 1, "reasonable": 1, "recommend": 1,
    "recommended": 1, "friendly": 1, "must": 1, "gorgeous": 2,
    "incredible": 2, "spotless": 1, "efficient": 1, "organised": 1,
    "organized": 1, "comfortable": 1, "convenient": 1,
}

NEGATIONS = [
    "not", "no", "never", "none", "nobody", "nothing", "neither", "nor",
    "cannot", "cant", "dont", "doesnt", "didnt", "isnt", "wasnt", "arent",
    "werent", "wont", "wouldnt", "shouldnt", "couldnt", "hardly", "without",
]


def main():
    entries = {}
    with open(sys.argv[1], encoding="utf-8") as f:
        for line in f:
            word, mean = line.split("\t")[:2]
            if not re.fullmatch(r"[a-z]+", word):
                continue
            value = float(mean)
            if abs(value) < THRESHOLD:
                continue
            magnitude = 2 if abs(value) >= STRONG else 1
            entries[word] = magnitude if value > 0 else -magnitude
    entries.update(SUPPLEMENT)
    for word in NEGATIONS:
        entries.pop(word, None)
    out = sys.stdout
    out.write("# word<TAB>valence in {-2,-1,+1,+2}\n")
    out.write("# Derived from the VADER sentiment lexicon (MIT License,\n")
    out.write("# C.J. Hutto) plus a travel-domain supplement; see\n")
    out.write("# tools/data/build_lexicon.py.\n")
    for word in sorted(entries):
        out.write(f"{word}\t{entries[word]:+d}\n")
    out.write("[negations]\n")
    for word in NEGATIONS:
        out.write(word + "\n")


if __name__ == "__main__":
    main()
