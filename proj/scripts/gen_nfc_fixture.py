#!/usr/bin/env python3
"""Emit tests/fixtures/nfc_cases.json: input/NFC pairs from unicodedata."""

import json
import random
import sys
import unicodedata

DIRECTED = [
    "",
    "plain ascii",
    "café",            # precomposed
    "café",           # decomposed
    "é́",        # double acute: second is blocked
    "ẹ́",        # dot-below (ccc 220) then acute (ccc 230)
    "ẹ́",        # same marks, other order; must normalize equal
    "q̣̇",        # marks on a letter with no precomposition
    "q̣̇",
    "ḍ̇",         # d-dot-above + dot-below
    "ḍ̇",
    "가",               # Hangul GA, already composed
    "가",         # L+V jamo -> GA
    "각",   # L+V+T -> GAK
    "각",         # LV syllable + T jamo
    "ᄀ가",   # L L V: only the second pair composes
    "ᆨ가",   # stray T first
    "क़",               # composition exclusion (QA): stays decomposed? no:
                            # NFC(U+0958) = U+0915 U+093C
    "क़",
    "Ω",               # OHM SIGN, singleton -> GREEK OMEGA
    "Å",               # ANGSTROM -> A WITH RING
    "Å",
    "Å",
    "ﬁ",               # LATIN SMALL LIGATURE FI: compat only, NFC-stable
    "́",               # defective: mark with no starter
    "́̀e",
    "̈́",               # GREEK DIALYTIKA TONOS: two-mark decomposition
    "ḯ",
    "אָּ",   # hebrew alef qamats dagesh (ccc 18, 21)
    "אָּ",
    "ぱ",               # PA (composed)
    "ぱ",         # HA + semivoiced mark
    "が",         # KA + voiced mark -> GA
    "ṩ",               # s with dot below and dot above
    "ṩ",
    "ṩ",
    "İ",               # I with dot above (no decomposition)
    "é̖̀",   # composed base, more marks, ccc 230 then 220
    "ཷ",               # exclusion with multi-char compat? canonical: NFC keeps decomposed
    "ཱི",         # tibetan vowel signs (ccc 129, 130)
    "ཱི",
    "x\U0001d165\U0001d16e",  # astral musical symbols
    "\U0001d15e",           # exclusion: stays decomposed in NFC
    "ئ",               # arabic yeh with hamza
    "ئ",
    "ٔي",
    "안녕하세요",
    "한글",
    "mixed 각 and café text",
    "",               # DEL stays raw
    "tab\tand\nnewline",
]

CODEPOOL = (
    list(range(0x61, 0x7B))
    + [0x300, 0x301, 0x302, 0x308, 0x30A, 0x316, 0x323, 0x331, 0x342]
    + [0x5B8, 0x5BC, 0x654, 0x93C, 0xF71, 0xF72]
    + list(range(0x1100, 0x1113))
    + list(range(0x1161, 0x1176))
    + list(range(0x11A8, 0x11C3))
    + [0xAC00, 0xAC01, 0xD7A3, 0xE9, 0xC5, 0x2126, 0x212B, 0x958, 0x3071, 0x304B, 0x3099]
    + [0x1D15E, 0x1D165, 0x1F600]
)


def main():
    rng = random.Random(20260819)
    cases = [{"input": s, "nfc": unicodedata.normalize("NFC", s)} for s in DIRECTED]
    for _ in range(240):
        n = rng.randint(1, 10)
        s = "".join(chr(rng.choice(CODEPOOL)) for _ in range(n))
        cases.append({"input": s, "nfc": unicodedata.normalize("NFC", s)})
    json.dump(cases, sys.stdout, ensure_ascii=False, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
