"""Link determinant of a plat diagram from its Goeritz matrix.

The plane regions of a plat diagram are pieces of the gaps between adjacent
strands: gap ``j`` (between strands ``j`` and ``j+1``) is cut into segments by the
crossings ``s_j``, its lowest segment closes off under the innermost enclosing
cup and its highest segment under the innermost enclosing cap. Gaps with no
enclosing cup (or cap) run into the unbounded region. Odd gaps are shaded;
the unbounded region never is, so every shaded region is a gap segment.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import sympy

from dehncube.common.graphs import graph_components

logger = logging.getLogger(__name__)


@dataclass
class GoeritzData:
    """Shaded regions (``(gap, segment)`` representatives), the integer Goeritz
    matrix over them and the absolute value of its reduced determinant.

    ``split`` marks a disconnected diagram, whose determinant is 0.
    """
    regions: Tuple[Tuple[int, int], ...]
    matrix: np.ndarray
    determinant: int
    split: bool
    components: int


def _diagram_edges(b, plat, tie_crossings):
    n, top = b.strands, len(b.letters)
    edges = [(a - 1, c - 1) for a, c in plat.cups]
    edges += [(top * n + a - 1, top * n + c - 1) for a, c in plat.caps]
    for level, (k, _) in enumerate(b.letters):
        lo, hi = level * n, (level + 1) * n
        edges += [(lo + p, hi + p) for p in range(n) if p not in (k - 1, k)]
        edges += [(lo + k - 1, hi + k), (lo + k, hi + k - 1)]
        if tie_crossings:
            edges.append((lo + k - 1, lo + k))
    return (top + 1) * n, edges


def link_components(b, plat):
    """Number of components of the plat closure of ``b``."""
    n_nodes, edges = _diagram_edges(b, plat, tie_crossings=False)
    n_comp, _ = graph_components(n_nodes, edges)
    return int(n_comp)


def _innermost(pairs, gap):
    enclosing = [(c - a, a) for a, c in pairs if a <= gap < c]
    return min(enclosing) if enclosing else None


def _regions(b, plat):
    n = b.strands
    counts = [0] * n
    for k, _ in b.letters:
        counts[k] += 1
    nodes = {}
    for gap in range(1, n):
        for seg in range(counts[gap] + 1):
            nodes[(gap, seg)] = len(nodes)
    outer = len(nodes)
    edges = [(outer, outer)]
    for gap in range(1, n):
        for pairs, at_top in ((plat.cups, False), (plat.caps, True)):
            here = nodes[(gap, counts[gap] if at_top else 0)]
            enclosing = _innermost(pairs, gap)
            if enclosing is None:
                edges.append((here, outer))
                continue
            # the first gap inside the innermost pair stands for its region
            anchor = enclosing[1]
            edges.append((here, nodes[(anchor, counts[anchor] if at_top else 0)]))
    _, labels = graph_components(outer + 1, edges)
    return nodes, labels


def goeritz(b, plat):
    """Goeritz matrix and determinant of the plat closure of ``b``.

    A crossing ``s_k^e`` touches two shaded regions: gap ``k`` just below and just
    above it when ``k`` is odd, gaps ``k-1`` and ``k+1`` beside it when ``k`` is even.
    Its Goeritz sign is ``e`` for odd ``k`` and ``-e`` for even ``k``.

    :param b: a :class:`~dehncube.topology.tangle.BraidWord`
    :param plat: a :class:`~dehncube.topology.tangle.PlatClosure` on the same strands
    """
    if plat.strands != b.strands:
        raise ValueError(f"Plat on {plat.strands} strands used with a word on {b.strands} strands")
    n = b.strands
    nodes, labels = _regions(b, plat)
    shaded = sorted({int(labels[i]) for (gap, _), i in nodes.items() if gap % 2})
    index = {lab: i for i, lab in enumerate(shaded)}
    reps = {}
    for (gap, seg), i in sorted(nodes.items()):
        if gap % 2:
            reps.setdefault(int(labels[i]), (gap, seg))

    g = np.zeros((len(shaded), len(shaded)), dtype=np.int64)
    seen = [0] * n
    for k, eps in b.letters:
        if k % 2:
            ends = ((k, seen[k]), (k, seen[k] + 1))
            eta = eps
        else:
            ends = ((k - 1, seen[k - 1]), (k + 1, seen[k + 1]))
            eta = -eps
        seen[k] += 1
        i, j = (index[int(labels[nodes[e]])] for e in ends)
        if i != j:
            g[i, j] -= eta
            g[j, i] -= eta
    g[np.diag_indices_from(g)] = -g.sum(axis=1)

    n_nodes, edges = _diagram_edges(b, plat, tie_crossings=True)
    pieces, _ = graph_components(n_nodes, edges)
    split = pieces > 1
    if split or len(shaded) <= 1:
        det = 0 if split else 1
    else:
        det = abs(int(sympy.Matrix(g[1:, 1:].tolist()).det(method="bareiss")))
    logger.debug("goeritz matrix on %d shaded regions, det %d", len(shaded), det)
    return GoeritzData(tuple(reps[lab] for lab in shaded), g, det, bool(split),
                       link_components(b, plat))


def determinant(b, plat):
    """``|det|`` of the Goeritz matrix; 0 for a split diagram."""
    return goeritz(b, plat).determinant
