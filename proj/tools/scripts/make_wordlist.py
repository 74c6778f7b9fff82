#!/usr/bin/env python3
"""Regenerates data/french_words.tsv from the wordfreq package.

Usage: python3 tools/scripts/make_wordlist.py > data/french_words.tsv
"""
import re
import sys

from wordfreq import top_n_list, word_frequency

SIZE = 1500
# Words used as worked examples; appended when they fall outside the top list.
REQUIRED = ["salut", "bonjour", "toujours", "devant", "indépendance", "cause",
            "trop", "beaucoup", "quoi", "comment", "demain", "café", "merci"]
LETTERS = re.compile(r"^[a-zàâäçéèêëîïôöùûüÿœ]+$")


def count(word):
    return max(1, round(word_frequency(word, "fr") * 1e7))


def main():
    words = []
    for w in top_n_list("fr", 20000):
        if len(words) == SIZE:
            break
        if len(w) >= 2 and LETTERS.match(w) and "œ" not in w:
            words.append(w)
    for w in REQUIRED:
        if w not in words:
            words.append(w)
    out = sys.stdout
    out.write("# French word frequencies (occurrences per 10M tokens), from wordfreq (CC BY-SA 4.0)\n")
    for w in words:
        out.write(f"{w}\t{count(w)}\n")


if __name__ == "__main__":
    main()
