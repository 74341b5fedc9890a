"""Convention ledger.

Three conventions combine into the crossing-to-resolution rule: the mirror
taken when a braid is read as a composition of twists, the sign flip between
braid generators and Dehn twists, and the rule choosing which resolution sits
at bit 0. Over GF(2), ungraded, only their composite is observable, and only
through per-weight dimensions. The setting below was checked against the
golden unknot, Hopf link, trefoil and figure-eight values with
:func:`validate_conventions` and is frozen; ``SWAP_RESOLUTIONS`` is the single
global switch to flip if that check ever fails.
"""
APPLY_THEOREM_MIRROR = True
NEGATE_TWIST_SIGNS = True
SWAP_RESOLUTIONS = False

REPORT_SCHEMA_VERSION = 1

# (word, strands, E_2 total, determinant)
GOLDEN = (
    ("", 2, 2, 1),
    ("s2 s2", 4, 4, 2),
    ("s2 s2 s2", 4, 6, 3),
    ("s2 s2 s1^-1 s2", 4, 10, 5),
)


def as_dict():
    return {
        "apply_theorem_mirror": APPLY_THEOREM_MIRROR,
        "negate_twist_signs": NEGATE_TWIST_SIGNS,
        "swap_resolutions": SWAP_RESOLUTIONS,
    }


def validate_conventions():
    """Recompute the golden E_2 totals under the frozen setting.

    :return: list of ``(word, strands, expected, computed)`` for the cases that failed
    """
    from dehncube.pipeline import run_pipeline

    failures = []
    for word, strands, expected, _ in GOLDEN:
        computed = run_pipeline(word, strands).pages.total(2)
        if computed != expected:
            failures.append((word, strands, expected, computed))
    return failures
