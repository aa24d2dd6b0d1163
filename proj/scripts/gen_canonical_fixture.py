#!/usr/bin/env python3
"""Emit tests/fixtures/canonical_cases.json: value/canon/sha256 triples."""

import json
import sys

from canonical_oracle import canon, canon_sha256

HUMAN_ONE_CONTENT = {
    "image": "https://nft.human-one.xyz/Ukraine_22b55e18faae73ad86ce32cd.png",
    "animation_url": "https://nft.human-one.xyz/Ukraine_22b55e18faae73ad86ce32cd.mp4",
    "external_url": "https://human-one.xyz",
    "description": "millions of voices suddenly cried in terror and were suddenly silenced.",
    "name": "HUMAN ONE",
    "background_color": "000000",
    "days_journeyed": 150,
    "location": "broken future",
    "attributes": [{"trait_type": "Location", "value": "broken future"}],
}

CASES = [
    None,
    True,
    False,
    0,
    -1,
    150,
    2**53,
    2**63 - 1,
    -(2**63),
    2**64 - 1,
    "",
    "plain",
    'quote " backslash \\ slash /',
    "ctrl \x00\x01\x1f and del \x7f",
    "tab\tlf\ncr\rbs\bff\f",
    "café vs café",
    "가 가 \U0001f600",
    [],
    {},
    [1, "two", None, [3, {"k": False}]],
    {"z": 1, "a": 2, "m": {"y": [], "x": {}}},
    {"café": "decomposed key", "zzz": 1},
    {"é-suffix": 1, "e-prefix": 2, "~tilde": 3, "Z": 4, "a": 5},
    {"nested": {"deep": {"deeper": {"deepest": [0, -0, 1]}}}},
    {"unicode values": ["Ω", "Å", "क़", "ẋ̣"]},
    HUMAN_ONE_CONTENT,
]


def main():
    out = [{"value": v, "canon": canon(v), "sha256": canon_sha256(v)} for v in CASES]
    json.dump(out, sys.stdout, ensure_ascii=False, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
