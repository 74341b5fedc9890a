"""End-to-end checks on known links and small random suites.
"""
import pytest

from dehncube import conventions
from dehncube.algebra.tqft import check_faces, check_frobenius
from dehncube.cli.selftest import check_engine, check_word, random_word, run_selftest
from dehncube.invariants.checks import alternating_words, collapse_table
from dehncube.pipeline import run_pipeline
from dehncube.topology.cube import check_edges


def test_golden_e2_totals(golden):
    word, strands, e2, det = golden
    result = run_pipeline(word, strands)
    assert result.pages.total(2) == e2
    assert e2 == 2 * det


def test_golden_doubles_with_aux_unknot(golden):
    word, strands, e2, _ = golden
    assert run_pipeline(word, strands, aux_unknot=True).pages.total(2) == 2 * e2


def test_golden_e1_totals():
    assert run_pipeline("s2 s2 s2", 4).pages.total(1) == 30
    assert run_pipeline("s2 s2", 4).pages.total(1) == 12


def test_conventions_are_frozen():
    assert conventions.validate_conventions() == []
    assert conventions.as_dict() == {
        "apply_theorem_mirror": True,
        "negate_twist_signs": True,
        "swap_resolutions": False,
    }


def test_stabilised_trefoil_has_the_same_e2():
    assert run_pipeline("s2 s2 s2 s4", 6).pages.total(2) == 6


@pytest.mark.parametrize('strands, max_crossings', [(4, 4), (6, 2)])
def test_alternating_plats_collapse(strands, max_crossings):
    df = collapse_table(alternating_words(strands, max_crossings))
    connected = df[~df["split"]]
    assert len(connected) > 0
    assert connected["equal"].all(), connected[~connected["equal"]]
    assert (df.loc[df["split"], "det"] == 0).all()


def test_random_structural_suite(np_random):
    for _ in range(12):
        strands = int(np_random.choice([2, 4, 6]))
        b = random_word(np_random, strands, int(np_random.integers(0, 6)))
        assert check_word(b, np_random) == []


def test_random_engine_suite(np_random):
    for _ in range(12):
        strands = int(np_random.choice([4, 6]))
        b = random_word(np_random, strands, int(np_random.integers(1, 6)))
        result = run_pipeline(b, max_page=1)
        check_edges(result.cube)
        assert check_faces(result.cube) is None
        assert check_engine(result.filtered, np_random) == []


def test_selftest_table():
    assert check_frobenius() == []
    table = run_selftest(seed=5, count=4)
    assert list(table["check"]) == ["frobenius", "conventions", "structural", "engine"]
    assert table["failures"].sum() == 0


def random_alternating_words(rng, strands, crossings, count):
    """Random words whose standard plat diagram alternates: odd generators negative, even positive."""
    words = []
    for _ in range(count):
        ks = rng.integers(1, strands, size=crossings)
        words.append((" ".join(f"s{k}" if k % 2 == 0 else f"s{k}^-1" for k in ks), strands))
    return words


@pytest.mark.slow
def test_alternating_collapse_up_to_twelve_crossings(np_random):
    words = alternating_words(4, 4) + alternating_words(6, 2)
    for crossings, count in [(6, 8), (8, 4), (10, 2), (12, 1)]:
        words += random_alternating_words(np_random, 4, crossings, count)
        words += random_alternating_words(np_random, 6, crossings, count)
    df = collapse_table(words)
    assert df["crossings"].max() == 12
    connected = df[~df["split"]]
    assert connected["equal"].all(), connected[~connected["equal"]]


@pytest.mark.slow
def test_structural_suite_full_size(np_random):
    failures = []
    for _ in range(200):
        strands = int(np_random.choice([2, 4, 6, 8]))
        b = random_word(np_random, strands, int(np_random.integers(0, 9)))
        failures += check_word(b, np_random)
    assert failures == []


@pytest.mark.slow
def test_engine_suite_full_size(np_random):
    checked = 0
    while checked < 100:
        strands = int(np_random.choice([4, 6]))
        b = random_word(np_random, strands, int(np_random.integers(2, 7)))
        fc = run_pipeline(b, max_page=1).filtered
        if len(fc.weight_values) < 3:
            continue
        assert check_engine(fc, np_random) == []
        checked += 1
