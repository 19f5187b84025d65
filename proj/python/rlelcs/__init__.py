"""Longest common substring of run-length encoded strings.

Strings are passed in the RLE text format, e.g. ``"a:3,b:1,c:3,d:2"``.
"""

import json

from ._core import (
    DynArray,
    InternalError,
    NotFoundError,
    ParameterError,
    ParseError,
    ReductionError,
    ResourceError,
    brute_lcs,
    brute_lrs,
    decode,
    decoded_length,
    encode,
    gadget_dl,
    gadget_el,
    pad_interleave,
    parity_via_dl,
    parity_via_el,
    runs,
)
from . import _core


def solve(a, b, mode="fullset", anchors="exhaustive", seed=1, d_min=8):
    """Returns {"result": ... or None, "ledger": {...}}."""
    return json.loads(_core.solve_json(a, b, mode, anchors, seed, d_min))


def solve_lrs(a, mode="fullset", anchors="exhaustive", seed=1, d_min=8):
    return json.loads(_core.solve_lrs_json(a, mode, anchors, seed, d_min))


__all__ = [
    "DynArray",
    "InternalError",
    "NotFoundError",
    "ParameterError",
    "ParseError",
    "ReductionError",
    "ResourceError",
    "brute_lcs",
    "brute_lrs",
    "decode",
    "decoded_length",
    "encode",
    "gadget_dl",
    "gadget_el",
    "pad_interleave",
    "parity_via_dl",
    "parity_via_el",
    "runs",
    "solve",
    "solve_lrs",
]
