#!/usr/bin/env python3
"""Generate NFC normalization tables from Python's unicodedata.

Emits include/apnft/detail/nfc_tables.inc containing:
  - full canonical decompositions (Hangul excluded, handled algorithmically)
  - nonzero canonical combining classes
  - primary composition pairs (exclusions filtered)

Run from the repository root:  python3 scripts/gen_unicode_tables.py
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_S_BASE = 0xAC00
HANGUL_S_COUNT = 11172


def is_hangul_syllable(cp: int) -> bool:
    return HANGUL_S_BASE <= cp < HANGUL_S_BASE + HANGUL_S_COUNT


def main() -> None:
    decomp = []  # (cp, [expanded codepoints])
    ccc = []     # (cp, class)
    comp = []    # (a, b, composed)

    for cp in range(MAX_CP):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        ch = chr(cp)

        k = unicodedata.combining(ch)
        if k != 0:
            ccc.append((cp, k))

        if is_hangul_syllable(cp):
            continue

        raw = unicodedata.decomposition(ch)
        if raw and not raw.startswith("<"):
            expanded = [ord(c) for c in unicodedata.normalize("NFD", ch)]
            if expanded != [cp]:
                decomp.append((cp, expanded))
            parts = [int(p, 16) for p in raw.split()]
            if (
                len(parts) == 2
                and unicodedata.combining(chr(parts[0])) == 0
                and unicodedata.normalize("NFC", unicodedata.normalize("NFD", ch)) == ch
            ):
                comp.append((parts[0], parts[1], cp))

    pool = []
    index = []  # (cp, offset, len)
    for cp, expansion in decomp:
        index.append((cp, len(pool), len(expansion)))
        pool.extend(expansion)

    comp.sort(key=lambda t: (t[0], t[1]))

    out = sys.stdout
    out.write("// Generated by scripts/gen_unicode_tables.py (unicodedata %s). Do not edit.\n"
              % unicodedata.unidata_version)
    out.write("// clang-format off\n")

    out.write("inline constexpr std::uint32_t kDecompPool[] = {\n")
    for i in range(0, len(pool), 12):
        out.write("  " + ",".join("0x%X" % v for v in pool[i:i + 12]) + ",\n")
    out.write("};\n\n")

    out.write("struct DecompEntry { std::uint32_t cp; std::uint32_t offset; std::uint32_t len; };\n")
    out.write("inline constexpr DecompEntry kDecomp[] = {\n")
    for cp, off, ln in index:
        out.write("  {0x%X,%d,%d},\n" % (cp, off, ln))
    out.write("};\n\n")

    out.write("struct CccEntry { std::uint32_t cp; std::uint8_t ccc; };\n")
    out.write("inline constexpr CccEntry kCcc[] = {\n")
    for cp, k in ccc:
        out.write("  {0x%X,%d},\n" % (cp, k))
    out.write("};\n\n")

    out.write("struct CompEntry { std::uint32_t first; std::uint32_t second; std::uint32_t composed; };\n")
    out.write("inline constexpr CompEntry kComp[] = {\n")
    for a, b, c in comp:
        out.write("  {0x%X,0x%X,0x%X},\n" % (a, b, c))
    out.write("};\n")
    out.write("// clang-format on\n")

    sys.stderr.write(
        "decomp entries: %d, pool: %d, ccc: %d, comp pairs: %d\n"
        % (len(index), len(pool), len(ccc), len(comp))
    )


if __name__ == "__main__":
    main()
