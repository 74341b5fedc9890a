"""Cross-checks of the E_2 page against independent knot data.
"""
from dataclasses import dataclass

import pandas as pd

from dehncube.common.lists import flatten_list
from dehncube.common.pandas import apply_chunkwise
from dehncube.invariants.goeritz import goeritz
from dehncube.pipeline import resolve_inputs, run_pipeline


@dataclass
class DoublingResult:
    plain: int
    with_aux: int

    @property
    def passed(self):
        return self.with_aux == 2 * self.plain


def aux_doubling_check(b, plat=None, strands=None, mirror=False):
    """Compare the E_2 total with and without the two auxiliary strands.

    A split unknot tensors the homology with a two dimensional space, so the
    auxiliary run must give exactly twice the plain one.

    :param b: a :class:`~dehncube.topology.tangle.BraidWord`, or word text together with ``strands``
    :return: a :class:`DoublingResult`
    """
    plain = run_pipeline(b, strands, plat=plat, mirror=mirror, max_page=2).pages.total(2)
    with_aux = run_pipeline(b, strands, plat=plat, mirror=mirror, aux_unknot=True,
                            max_page=2).pages.total(2)
    return DoublingResult(plain, with_aux)


def _collapse_rows(chunk):
    rows = []
    for word, strands, plat in chunk:
        b, p = resolve_inputs(word, strands, plat)
        g = goeritz(b, p)
        e2 = run_pipeline(b, None, plat=p, max_page=2).pages.total(2)
        rows.append([str(b), b.strands, str(p), len(b), g.determinant, g.split, e2])
    return pd.DataFrame(rows, columns=["word", "strands", "plat", "crossings", "det", "split", "e2_total"])


def collapse_table(words, items_per_chunk=25, verbose=False):
    """Tabulate ``E_2`` totals against ``2 * det`` for a list of plat words.

    Equality is what collapse at ``E_2`` for a link with ``2 * det`` dimensional
    limit looks like; the table only records where it happens.

    :param words: iterable of ``(word, strands)`` or ``(word, strands, plat)``
    :param items_per_chunk: words per progress step
    :param verbose: show a progress bar
    """
    items = [tuple(w) + (None,) * (3 - len(w)) for w in words]
    df = apply_chunkwise(items, _collapse_rows, items_per_chunk=items_per_chunk, verbose=verbose)
    if df.empty:
        return df
    df["twice_det"] = 2 * df["det"]
    df["equal"] = df["e2_total"] == df["twice_det"]
    return df


def alternating_words(strands, max_crossings, limit=None):
    """Alternating plat words on ``strands`` strands: odd generators carry one
    sign and even generators the other, which makes the standard plat diagram
    alternating.

    :return: list of ``(word, strands)``, shortest first
    """
    gens = list(range(1, strands))
    words = [[]]
    frontier = [[]]
    for _ in range(max_crossings):
        frontier = flatten_list([[w + [k] for k in gens] for w in frontier])
        words += frontier
        if limit is not None and len(words) >= limit:
            break
    words = words[:limit] if limit is not None else words
    text = [" ".join(f"s{k}" if k % 2 == 0 else f"s{k}^-1" for k in w) for w in words]
    return [(t, strands) for t in text]
