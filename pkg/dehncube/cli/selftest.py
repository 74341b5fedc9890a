"""Randomised structural checks run by ``dehncube --selftest``.
"""
import logging

import numpy as np
import pandas as pd
from tqdm import tqdm

from dehncube import conventions
from dehncube.algebra.tqft import check_faces, check_frobenius
from dehncube.common.errors import ConsistencyError
from dehncube.pipeline import run_pipeline
from dehncube.spectral.cancellation import pages_by_cancellation
from dehncube.spectral.specseq import (compute_pages, random_higher_block, total_homology_dim,
                                       verify_d_squared)
from dehncube.topology.cube import check_edges
from dehncube.topology.tangle import BraidWord

logger = logging.getLogger(__name__)

# dense cancellation is cubic in the dimension; larger complexes skip it
ORACLE_DIM = 400


def random_word(rng, strands, length):
    """A uniformly random braid word with ``length`` letters."""
    ks = rng.integers(1, strands, size=length)
    signs = rng.choice([-1, 1], size=length)
    return BraidWord(strands, tuple((int(k), int(s)) for k, s in zip(ks, signs)))


def insert_cancelling_pair(b, rng):
    """Insert ``s_k s_k^-1`` at a random position."""
    k = int(rng.integers(1, b.strands))
    at = int(rng.integers(0, len(b) + 1))
    letters = b.letters[:at] + ((k, 1), (k, -1)) + b.letters[at:]
    return BraidWord(b.strands, letters)


def check_word(b, rng):
    """Structural checks on one word; returns a list of failure descriptions."""
    failures = []
    result = run_pipeline(b, max_page=2)
    check_edges(result.cube)
    face = check_faces(result.cube, result.complex)
    if face is not None:
        failures.append(f"{b}: non-commuting face {face}")
    total = result.pages.total(2)
    mirrored = run_pipeline(b, mirror=True, max_page=2).pages.total(2)
    if mirrored != total:
        failures.append(f"{b}: mirror changes the E_2 total ({total} vs {mirrored})")
    longer = insert_cancelling_pair(b, rng)
    if run_pipeline(longer, max_page=2).pages.total(2) != total:
        failures.append(f"{b}: inserting a cancelling pair changes the E_2 total ({longer})")
    return failures


def check_engine(fc, rng):
    """Inject a random weight-2 block and check the pages against two oracles.

    The cancellation oracle only runs up to ``ORACLE_DIM`` generators.
    """
    failures = []
    weights = fc.weight_values
    if len(weights) < 3:
        return failures
    w = int(rng.choice(weights[:-2]))
    fc = fc.with_component(2, random_higher_block(fc, w, rng))
    if not verify_d_squared(fc).passed:
        return [f"injected block at weight {w} breaks D^2 = 0"]
    pages = compute_pages(fc)
    if pages.total(pages.last_page) != total_homology_dim(fc):
        failures.append(f"limit page total differs from the homology of D (weight {w})")
    for r in range(1, pages.last_page):
        if any(pages.dims[r + 1][v] > pages.dims[r][v] for v in pages.dims[r]):
            failures.append(f"page {r + 1} grows somewhere (weight {w})")
    if fc.dim <= ORACLE_DIM and pages_by_cancellation(fc) != pages.dims:
        failures.append(f"cancellation disagrees with the subspace formula (weight {w})")
    return failures


def run_selftest(seed=0, count=20, max_strands=6, max_length=6, verbose=False):
    """Run every self-check.

    :param seed: seed of the random words and blocks
    :param count: number of random words
    :param max_strands: largest (even) strand count
    :param max_length: longest word
    :param verbose: show a progress bar
    :return: DataFrame with one row per check group, columns ``check``, ``runs``, ``failures``
    """
    rng = np.random.default_rng(seed)
    rows = []

    frob = check_frobenius()
    rows.append(("frobenius", 1, frob))
    conv = [f"{w or '(empty)'} on {s}: expected {e}, got {c}"
            for w, s, e, c in conventions.validate_conventions()]
    rows.append(("conventions", len(conventions.GOLDEN), conv))

    structural, engine = [], []
    for _ in tqdm(range(count), desc="selftest", disable=not verbose):
        strands = int(rng.choice(np.arange(2, max_strands + 1, 2)))
        b = random_word(rng, strands, int(rng.integers(0, max_length + 1)))
        try:
            structural += check_word(b, rng)
            engine += check_engine(run_pipeline(b, max_page=1).filtered, rng)
        except ConsistencyError as e:
            structural.append(f"{b}: {e} {e.witness}")
    rows.append(("structural", count, structural))
    rows.append(("engine", count, engine))
    for name, _, failures in rows:
        for f in failures:
            logger.warning("%s: %s", name, f)
    return pd.DataFrame([(n, runs, len(f)) for n, runs, f in rows],
                        columns=["check", "runs", "failures"])
