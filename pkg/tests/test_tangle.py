import pytest

from dehncube.common.errors import BraidWordError, InputError, PlatError
from dehncube.topology.tangle import (CUPCAP, IDENTITY, BraidWord, FlatTangle, PlatClosure,
                                      close_plat, compose, elementary_tangle, is_planar, mirror,
                                      parse_braid_word, parse_plat, standard_plat,
                                      with_auxiliary_strands, writhe)


def test_parse_braid_word():
    b = parse_braid_word("s1 s2^-1  s3", 4)
    assert b.letters == ((1, 1), (2, -1), (3, 1))
    assert len(b) == 3
    assert str(b) == "s1 s2^-1 s3"
    assert parse_braid_word("", 2).letters == ()


@pytest.mark.parametrize('text, strands, token', [
    ("s1 t2", 4, "t2"),
    ("s0", 4, "s0"),
    ("s4", 4, "s4"),
    ("s1^2", 4, "s1^2"),
    ("s1^-1^-1", 4, "s1^-1^-1"),
])
def test_parse_braid_word_names_bad_token(text, strands, token):
    with pytest.raises(BraidWordError, match=token.replace("^", r"\^")):
        parse_braid_word(text, strands)


@pytest.mark.parametrize('strands', [0, 3, 5])
def test_odd_strand_count_rejected(strands):
    with pytest.raises(InputError):
        parse_braid_word("", strands)


def test_braid_word_validates_letters():
    with pytest.raises(BraidWordError):
        BraidWord(4, ((4, 1),))
    with pytest.raises(BraidWordError):
        BraidWord(4, ((1, 2),))


def test_mirror_is_an_involution():
    b = parse_braid_word("s1 s2^-1 s3 s3", 4)
    m = mirror(b)
    assert m.letters == ((3, -1), (3, -1), (2, 1), (1, -1))
    assert mirror(m) == b
    assert writhe(b) == 2
    assert writhe(m) == -2


@pytest.mark.parametrize('partner, bottom, top, planar', [
    ((1, 0, 3, 2), 4, 0, True),
    ((3, 2, 1, 0), 4, 0, True),
    ((2, 3, 0, 1), 4, 0, False),
    ((2, 3, 0, 1), 2, 2, True),
    ((3, 2, 1, 0), 2, 2, False),
    ((), 0, 0, True),
])
def test_is_planar(partner, bottom, top, planar):
    assert is_planar(partner, bottom, top) == planar


def test_flat_tangle_rejects_bad_pairings():
    with pytest.raises(ValueError, match="planar"):
        FlatTangle.from_pairs(4, 0, [(0, 2), (1, 3)])
    with pytest.raises(ValueError, match="matching"):
        FlatTangle(2, 0, (0, 1))


def test_elementary_tangles():
    ident = elementary_tangle(IDENTITY, 4)
    assert ident.pairs() == [(0, 4), (1, 5), (2, 6), (3, 7)]
    cc = elementary_tangle(CUPCAP, 4, 2)
    assert cc.pairs() == [(0, 4), (1, 2), (3, 7), (5, 6)]
    with pytest.raises(ValueError):
        elementary_tangle(CUPCAP, 4, 4)
    with pytest.raises(ValueError):
        elementary_tangle("braid", 4)


def test_compose_counts_interface_loops():
    cc = elementary_tangle(CUPCAP, 2, 1)
    twice = compose(cc, cc)
    assert twice.circles == 1
    assert twice.pairs() == cc.pairs()
    ident = elementary_tangle(IDENTITY, 4)
    assert compose(ident, elementary_tangle(CUPCAP, 4, 3)) == elementary_tangle(CUPCAP, 4, 3)
    with pytest.raises(ValueError):
        compose(ident, elementary_tangle(IDENTITY, 2))


@pytest.mark.parametrize('kinds, circles', [
    ([], 2),
    ([(CUPCAP, 2)], 1),
    ([(CUPCAP, 1)], 3),
    ([(CUPCAP, 2), (CUPCAP, 2)], 2),
    ([(CUPCAP, 2), (IDENTITY, None), (CUPCAP, 2)], 2),
    ([(CUPCAP, 1), (CUPCAP, 3)], 4),
])
def test_close_standard_plat(kinds, circles):
    t = elementary_tangle(IDENTITY, 4)
    for kind, k in kinds:
        t = compose(t, elementary_tangle(kind, 4, k))
    closed = close_plat(t, standard_plat(4))
    assert closed.is_closed
    assert closed.circles == circles


def test_plat_closure_parsing():
    assert parse_plat("standard", 4) == standard_plat(4)
    assert parse_plat(None, 4).is_standard
    nested = parse_plat("1-4, 3-2", 4)
    assert nested.cups == nested.caps == ((1, 4), (2, 3))
    assert str(nested) == "1-4,2-3"
    mixed = parse_plat("1-2,3-4/1-4,2-3", 4)
    assert mixed.cups == ((1, 2), (3, 4))
    assert mixed.caps == ((1, 4), (2, 3))
    assert str(mixed) == "1-2,3-4/1-4,2-3"
    assert str(standard_plat(6)) == "standard"


@pytest.mark.parametrize('text', ["1-3,2-4", "1-2", "1-2,2-3", "1-2,3-x", "1-2/3-4/1-4"])
def test_bad_plats(text):
    with pytest.raises(PlatError):
        parse_plat(text, 4)


def test_nested_plat_closes_identity_into_two_circles():
    plat = parse_plat("1-4,2-3", 4)
    assert close_plat(elementary_tangle(IDENTITY, 4), plat).circles == 2
    mixed = parse_plat("1-2,3-4/1-4,2-3", 4)
    assert close_plat(elementary_tangle(IDENTITY, 4), mixed).circles == 1


def test_with_auxiliary_strands():
    b = parse_braid_word("s2 s2 s2", 4)
    aux, plat = with_auxiliary_strands(b, standard_plat(4))
    assert aux.strands == 6
    assert aux.letters == b.letters
    assert plat == standard_plat(6)
    assert isinstance(plat, PlatClosure)


def _matchings(points):
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for i, q in enumerate(rest):
        for m in _matchings(rest[:i] + rest[i + 1:]):
            yield [(first, q)] + m


def flat_tangles(bottom, top):
    """Every crossingless matching with ``bottom`` and ``top`` boundary points."""
    for pairs in _matchings(list(range(bottom + top))):
        partner = [0] * (bottom + top)
        for p, q in pairs:
            partner[p], partner[q] = q, p
        if is_planar(partner, bottom, top):
            yield FlatTangle(bottom, top, tuple(partner))


def small_tangles(max_points=6):
    by_shape = {}
    for n in range(0, max_points + 1, 2):
        for bottom in range(n + 1):
            by_shape[bottom, n - bottom] = list(flat_tangles(bottom, n - bottom))
    return by_shape


def walked_loops(lower, upper):
    """Closed loops at the shared edge, found by walking arcs alternately below and above it."""
    lb, m = lower.bottom, lower.top
    seen, loops = set(), 0
    for start in range(m):
        if start in seen:
            continue
        walk, point, below, closed = [start], start, True, True
        while True:
            if below:
                q = lower.partner[lb + point]
                if q < lb:
                    closed = False
                    break
                point = q - lb
            else:
                q = upper.partner[point]
                if q >= m:
                    closed = False
                    break
                point = q
            below = not below
            if point == start:
                break
            walk.append(point)
        if closed:
            loops += 1
            seen.update(walk)
    return loops


def test_flat_tangle_counts():
    shapes = small_tangles()
    # Catalan numbers
    assert [len(shapes[n, 0]) for n in (0, 2, 4, 6)] == [1, 1, 2, 5]
    assert len(shapes[3, 3]) == 5


def test_compose_is_associative_on_small_tangles():
    shapes = small_tangles()
    triples = 0
    for (a_bottom, a_top), lowers in shapes.items():
        for (b_bottom, b_top), middles in shapes.items():
            if b_bottom != a_top:
                continue
            for (c_bottom, c_top), uppers in shapes.items():
                if c_bottom != b_top:
                    continue
                for a in lowers:
                    for b in middles:
                        ab = compose(a, b)
                        for c in uppers:
                            assert compose(ab, c) == compose(a, compose(b, c))
                            triples += 1
    assert triples > 1000


def test_compose_stays_planar_and_counts_loops_like_a_walk():
    shapes = small_tangles()
    for (bottom, top), lowers in shapes.items():
        for (mid, above), uppers in shapes.items():
            if mid != top:
                continue
            for lower in lowers:
                for upper in uppers:
                    t = compose(lower, upper)
                    assert (t.bottom, t.top) == (bottom, above)
                    assert is_planar(t.partner, t.bottom, t.top)
                    assert t.circles == walked_loops(lower, upper)


def test_loop_count_on_random_stacks(np_random):
    strands = 8
    for _ in range(40):
        pieces = []
        for _ in range(2):
            t = elementary_tangle(IDENTITY, strands)
            for _ in range(int(np_random.integers(1, 6))):
                k = int(np_random.integers(1, strands))
                kind = CUPCAP if np_random.random() < 0.7 else IDENTITY
                t = compose(t, elementary_tangle(kind, strands, k))
            pieces.append(FlatTangle(t.bottom, t.top, t.partner))
        lower, upper = pieces
        assert compose(lower, upper).circles == walked_loops(lower, upper)
