from collections import Counter

import pytest
from scipy.special import comb

from dehncube.common.errors import ConsistencyError, InputError
from dehncube.common.lists import popcount
from dehncube.topology.cube import (Merge, Split, TwistSequence, adjacent_cobordism, braid_to_twists,
                                    build_cube, check_edges, resolve_twist, vertices_frame)
from dehncube.topology.tangle import (CUPCAP, IDENTITY, BraidWord, parse_braid_word, parse_plat,
                                      standard_plat)


def traced_circles(kinds, twists, strands, plat):
    """Walk the closed diagram arc by arc and count the loops."""
    n, levels = strands, len(kinds)
    link = {}

    def join(p, q):
        link.setdefault(p, []).append(q)
        link.setdefault(q, []).append(p)

    for a, b in plat.cups:
        join((0, a - 1), (0, b - 1))
    for a, b in plat.caps:
        join((levels, a - 1), (levels, b - 1))
    for level, (kind, (k, _)) in enumerate(zip(kinds, twists)):
        for p in range(n):
            if kind == IDENTITY or p not in (k - 1, k):
                join((level, p), (level + 1, p))
        if kind == CUPCAP:
            join((level, k - 1), (level, k))
            join((level + 1, k - 1), (level + 1, k))

    seen, loops = set(), 0
    for start in link:
        if start in seen:
            continue
        loops += 1
        stack = [start]
        while stack:
            p = stack.pop()
            if p in seen:
                continue
            seen.add(p)
            stack.extend(link[p])
    return loops


def test_braid_to_twists_negates_signs():
    ts = braid_to_twists(parse_braid_word("s1 s2^-1 s3^-1", 4))
    assert ts.twists == ((1, -1), (2, 1), (3, 1))
    assert ts.n_minus == 1
    assert braid_to_twists(parse_braid_word("s1", 4), negate=False).twists == ((1, 1),)


@pytest.mark.parametrize('eta, bit, kind', [
    (1, 0, CUPCAP),
    (1, 1, IDENTITY),
    (-1, 0, IDENTITY),
    (-1, 1, CUPCAP),
])
def test_resolve_twist(eta, bit, kind):
    assert resolve_twist(eta, bit, swap=False) == kind
    assert resolve_twist(eta, 1 - bit, swap=True) == kind


@pytest.mark.parametrize('word, strands, plat', [
    ("s2 s2 s2", 4, "standard"),
    ("s1 s2^-1 s3 s2", 4, "standard"),
    ("s2 s2", 4, "1-4,2-3"),
    ("s2 s1^-1 s3", 4, "1-2,3-4/1-4,2-3"),
    ("s3 s2 s4^-1 s1 s5", 6, "standard"),
])
def test_circle_counts_match_arc_tracing(word, strands, plat):
    b = parse_braid_word(word, strands)
    p = parse_plat(plat, strands)
    ts = braid_to_twists(b)
    cube = build_cube(ts, strands, p)
    for v in cube.vertices():
        kinds = [resolve_twist(eta, v >> i & 1) for i, (_, eta) in enumerate(ts.twists)]
        assert cube.circles(v) == traced_circles(kinds, ts.twists, strands, p)


def test_trefoil_cube_shape():
    ts = braid_to_twists(parse_braid_word("s2 s2 s2", 4))
    cube = build_cube(ts, 4, standard_plat(4))
    assert cube.n == 3
    assert len(list(cube.vertices())) == 8
    assert len(list(cube.edges())) == 12
    # j cup-caps close into j circles, none into two
    assert sorted(cube.circles(v) for v in cube.vertices()) == [1, 1, 1, 2, 2, 2, 2, 3]
    assert sum(2 ** cube.circles(v) for v in cube.vertices()) == 30
    check_edges(cube)


def test_vertex_addressing_and_weights():
    ts = braid_to_twists(parse_braid_word("s1 s2^-1 s3", 4))
    cube = build_cube(ts, 4, standard_plat(4))
    assert cube.as_vertex("100") == 1
    assert cube.as_vertex((0, 0, 1)) == 4
    assert cube.bitstring(6) == "011"
    assert cube.circles("100") == cube.circles(1)
    for v in cube.vertices():
        assert cube.weight(v) == popcount(v) - ts.n_minus
    with pytest.raises(ValueError):
        cube.as_vertex("10")
    with pytest.raises(ValueError):
        cube.as_vertex(8)


def test_edges_are_merges_or_splits():
    ts = braid_to_twists(parse_braid_word("s2 s1^-1 s2 s3", 4))
    cube = build_cube(ts, 4, standard_plat(4))
    for source, target in cube.edges():
        edge = cube.edge(source, target)
        delta = cube.circles(target) - cube.circles(source)
        assert abs(delta) == 1
        assert isinstance(edge, Merge if delta == -1 else Split)
        assert len(edge.untouched) == cube.circles(source) - (2 if delta == -1 else 1)


def test_adjacent_cobordism_rejects_non_edges():
    ts = braid_to_twists(parse_braid_word("s2 s2", 4))
    cube = build_cube(ts, 4, standard_plat(4))
    with pytest.raises(ValueError):
        adjacent_cobordism(cube, "00", "11")
    with pytest.raises(ValueError):
        adjacent_cobordism(cube, "10", "00")
    with pytest.raises(ValueError):
        adjacent_cobordism(cube, "00", "00")


def test_single_twist_edge_types():
    split_cube = build_cube(TwistSequence(((2, 1),)), 4, standard_plat(4))
    assert isinstance(split_cube.edge(0, 1), Split)
    merge_cube = build_cube(TwistSequence(((2, -1),)), 4, standard_plat(4))
    assert isinstance(merge_cube.edge(0, 1), Merge)


def test_build_cube_input_errors():
    with pytest.raises(InputError):
        build_cube(TwistSequence(((4, 1),)), 4, standard_plat(4))
    with pytest.raises(InputError):
        build_cube(TwistSequence(((1, 1),)), 6, standard_plat(4))
    with pytest.raises(InputError):
        build_cube(TwistSequence(((4, 1),)), 6, standard_plat(6), aux_unknot=True)
    with pytest.raises(InputError):
        build_cube(TwistSequence(()), 6, parse_plat("1-2,3-6,4-5", 6), aux_unknot=True)


def test_check_edges_reports_witness():
    ts = braid_to_twists(parse_braid_word("s2", 4))
    cube = build_cube(ts, 4, standard_plat(4))
    cube._diagrams[1].labels = cube._diagrams[0].labels
    cube._edges.clear()
    with pytest.raises(ConsistencyError) as info:
        check_edges(cube)
    assert info.value.witness


def test_vertices_frame():
    ts = braid_to_twists(parse_braid_word("s2 s2 s2", 4))
    cube = build_cube(ts, 4, standard_plat(4))
    df = vertices_frame(cube)
    assert list(df.columns) == ["vertex", "size", "weight", "circles"]
    assert len(df) == 8
    assert df["vertex"].iloc[0] == "000"
    assert df["size"].is_monotonic_increasing


def _swap_bits(v, i):
    lo, hi = v >> i & 1, v >> (i + 1) & 1
    return v & ~(3 << i) | hi << i | lo << (i + 1)


@pytest.mark.parametrize('word, strands', [
    ("s1 s3", 4),
    ("s2 s1^-1 s3 s2", 4),
    ("s2 s4^-1 s1 s5", 6),
    ("s1 s3 s5^-1 s2 s4", 6),
])
def test_far_letters_commute(word, strands):
    b = parse_braid_word(word, strands)
    cube = build_cube(braid_to_twists(b), strands, standard_plat(strands))
    swapped = 0
    for i in range(len(b) - 1):
        (k, _), (k2, _) = b.letters[i], b.letters[i + 1]
        if abs(k - k2) < 2:
            continue
        letters = b.letters[:i] + (b.letters[i + 1], b.letters[i]) + b.letters[i + 2:]
        other = build_cube(braid_to_twists(BraidWord(strands, letters)), strands, standard_plat(strands))
        assert Counter(other.circles(v) for v in other.vertices()) == \
            Counter(cube.circles(v) for v in cube.vertices())
        for v in cube.vertices():
            assert other.circles(_swap_bits(v, i)) == cube.circles(v)
        swapped += 1
    assert swapped


@pytest.mark.parametrize('word, strands', [
    ("", 2),
    ("s2 s2 s2", 4),
    ("s1 s2^-1 s3 s2^-1", 4),
    ("s2^-1 s4^-1 s3 s1^-1 s5", 6),
])
def test_weight_counts_are_binomial(word, strands):
    ts = braid_to_twists(parse_braid_word(word, strands))
    cube = build_cube(ts, strands, standard_plat(strands))
    counts = Counter(cube.weight(v) for v in cube.vertices())
    n = cube.n
    assert counts == {w: comb(n, w + ts.n_minus, exact=True) for w in range(-ts.n_minus, n - ts.n_minus + 1)}
