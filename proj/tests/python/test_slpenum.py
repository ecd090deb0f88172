import itertools

import pytest

import slpenum

SAMPLE = "a(ba(a))bcb(c(ab))"


def test_compress_round_trip():
    g = slpenum.Fslp.compress(SAMPLE)
    assert g.decompress() == SAMPLE
    assert g.stats()["n"] == 10
    assert slpenum.Fslp.parse(g.to_text()) == g


def test_select_b():
    g = slpenum.Fslp.compress(SAMPLE)
    idx = slpenum.Index(g, slpenum.select_label_query("b"))
    assert list(idx.enumerate()) == [[1, 4, 6, 9]]
    assert idx.select() == [[1, 4, 6, 9]]


def test_enumerate_matches_oracle():
    q = slpenum.select_one_query()
    for term in ["a", "ab", SAMPLE, "a(b(c(d)))e"]:
        idx = slpenum.Index(slpenum.Fslp.compress(term), q)
        got = sorted(idx.enumerate())
        assert got == slpenum.brute_select(q, term)


def test_limit_and_instrumentation():
    idx = slpenum.Index(slpenum.Fslp.compress("a" * 64), slpenum.select_one_query())
    stream = idx.enumerate(limit=5)
    answers = []
    for a in stream:
        answers.append(a)
        assert stream.last_steps <= 10
        assert stream.witness_size <= 4 * len(a) - 2
    assert len(answers) == 5


def test_relabel_keeps_open_streams():
    g = slpenum.Fslp.compress(SAMPLE)
    idx = slpenum.Index(g, slpenum.select_label_query("b"))
    old = idx.enumerate()
    root, added = idx.relabel(None, 0, "b")
    assert added <= g.stats()["height"] + 1
    assert list(old) == [[1, 4, 6, 9]]
    assert list(idx.enumerate(root)) == [[0, 1, 4, 6, 9]]
    assert idx.fslp.decompress(root) == "b(ba(a))bcb(c(ab))"


def test_big_preorder_numbers():
    text = "fslp v1\nnode 0 leaf a\n" + "".join(
        f"node {i} hc {i - 1} {i - 1}\n" for i in range(1, 101)
    ) + "root 100\n"
    g = slpenum.Fslp.parse(text)
    assert g.stats()["n"] == 2**100
    assert g.preorder_to_path(100, 2**100 - 1) == "r" * 100
    idx = slpenum.Index(g, slpenum.select_one_query())
    first = next(iter(idx.enumerate()))
    assert len(first) == 1 and 0 <= first[0] < 2**100


def test_nsta_accepts():
    q = slpenum.select_label_query("b")
    assert q.accepts(SAMPLE, [1, 4, 6, 9])
    assert not q.accepts(SAMPLE, [1])
    for k in range(3):
        for s in itertools.combinations(range(4), k):
            assert q.accepts("abab", list(s)) == (list(s) == [1, 3])


def test_errors():
    with pytest.raises(slpenum.ParseError):
        slpenum.Fslp.parse("nonsense")
    with pytest.raises(ValueError):
        slpenum.Fslp.compress("a(")
    g = slpenum.Fslp.parse("fslp v1\nnode 0 leafctx a\nnode 1 leaf b\nnode 2 vc 0 1\nroot 2\n")
    idx = slpenum.Index(g, slpenum.select_one_query())
    with pytest.raises(slpenum.InvalidInput):
        idx.enumerate(0)
    with pytest.raises(slpenum.InvalidInput):
        idx.relabel(2, 5, "c")
    with pytest.raises(slpenum.InvalidInput):
        idx.enumerate(9)
