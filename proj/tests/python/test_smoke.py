import random

import pytest

import rlelcs


def test_encode_decode():
    assert rlelcs.encode(b"aaabcccdd") == "a:3,b:1,c:3,d:2"
    assert rlelcs.encode(b"") == ""
    assert rlelcs.decode("a:3,b:1,c:3,d:2") == b"aaabcccdd"
    assert rlelcs.runs("a:2,b:1") == [(ord("a"), 2), (ord("b"), 1)]
    with pytest.raises(ValueError):
        rlelcs.decode("a:0")


def test_worked_example():
    a = rlelcs.encode(b"abcdbbbbccccc")
    b = rlelcs.encode(b"abcd@bbbbcc")
    out = rlelcs.solve(a, b)
    assert out["result"]["d_tilde"] == 6
    start = out["result"]["decoded_start_A"]
    assert b"abcdbbbbccccc"[start - 1 : start + 5] == b"bbbbcc"
    assert rlelcs.brute_lcs(a, b)["length"] == 6


def test_disjoint_and_costonly():
    assert rlelcs.solve("a:2", "b:2")["result"] is None
    out = rlelcs.solve("a:2,b:3,c:1", "d:1,b:3,c:2", mode="costonly")
    assert out["result"] is None
    assert out["ledger"]["charged_cost"] > 0


def test_random_pairs_match_brute_force():
    rng = random.Random(5)
    for _ in range(30):
        a = rlelcs.encode(bytes(rng.choice(b"abc") for _ in range(rng.randint(1, 30))))
        b = rlelcs.encode(bytes(rng.choice(b"abc") for _ in range(rng.randint(1, 30))))
        res = rlelcs.solve(a, b)["result"]
        assert (res["d_tilde"] if res else 0) == rlelcs.brute_lcs(a, b)["length"]


def test_lrs():
    assert rlelcs.solve_lrs(rlelcs.encode(b"abcabc"))["result"]["d_tilde"] == 3
    assert rlelcs.brute_lrs("a:4")["length"] == 3


def test_reductions():
    assert rlelcs.gadget_dl("101") == "a:3,b:2,a:3"
    assert rlelcs.gadget_el("10", 5, "@") == "a:4,b:2,@:1,c:5"
    assert rlelcs.parity_via_dl("111")["parity"] == 1
    assert rlelcs.parity_via_el("10")["parity"] == 1
    assert rlelcs.pad_interleave("a:1,b:1") == "a:1,@:1,b:1,@:1"


def test_dyn_array():
    d = rlelcs.DynArray()
    d.insert(1, 5, 9)
    d.insert(2, 7, 3)
    assert d.range_min(1, 2) == 3
    assert d.locate(7) == 2
    d.erase(1)
    assert d.index(1) == (7, 3)
    assert len(d) == 1
