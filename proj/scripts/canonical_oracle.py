#!/usr/bin/env python3
"""Reference canonical-JSON serializer used to pin test fixtures.

Independent of the C++ implementation: normalization comes from Python's
unicodedata, ordering and escaping from json.dumps. The C++ serializer must
reproduce these bytes exactly.
"""

import hashlib
import json
import unicodedata


def _normalize(value):
    if isinstance(value, str):
        return unicodedata.normalize("NFC", value)
    if isinstance(value, dict):
        out = {}
        for k, v in value.items():
            nk = unicodedata.normalize("NFC", k)
            if nk in out:
                raise ValueError(f"keys collide after NFC: {nk!r}")
            out[nk] = _normalize(v)
        return out
    if isinstance(value, list):
        return [_normalize(v) for v in value]
    if isinstance(value, float):
        raise ValueError("floats have no canonical form")
    return value


def canon(value) -> str:
    return json.dumps(_normalize(value), sort_keys=True,
                      separators=(",", ":"), ensure_ascii=False)


def canon_sha256(value) -> str:
    return hashlib.sha256(canon(value).encode("utf-8")).hexdigest()
