"""The resolution hypercube of a composition of twists.

Every braid letter becomes a signed twist; every vertex ``I`` of ``{0,1}^N``
picks a resolution per twist, giving a closed crossingless diagram whose
circles are counted. Vertices are stored as integers whose bit ``i`` is the
resolution of letter ``i`` (reading order).
"""
import logging
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from dehncube import conventions
from dehncube.common.errors import ConsistencyError, InputError
from dehncube.common.graphs import graph_components
from dehncube.common.lists import bitstring_to_vertex, popcount, vertex_to_bitstring
from dehncube.topology.tangle import CUPCAP, IDENTITY, close_plat, compose, elementary_tangle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwistSequence:
    """Signed twists ``(k, eta)`` in word order; ``n_minus`` counts ``eta = -1``."""
    twists: Tuple[Tuple[int, int], ...]
    n_minus: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "n_minus", sum(1 for _, eta in self.twists if eta == -1))

    def __len__(self):
        return len(self.twists)


def braid_to_twists(b, negate=None):
    """Letter ``(k, eps)`` becomes a twist along curve ``k`` with sign ``-eps``.

    Positive braid generators and positive Dehn twists have opposite conventions.

    :param b: a :class:`~dehncube.topology.tangle.BraidWord`
    :param negate: override of ``conventions.NEGATE_TWIST_SIGNS``
    """
    if negate is None:
        negate = conventions.NEGATE_TWIST_SIGNS
    factor = -1 if negate else 1
    return TwistSequence(tuple((k, factor * eps) for k, eps in b.letters))


def resolve_twist(eta, bit, swap=None):
    """Elementary tangle kind for a twist of sign ``eta`` at resolution ``bit``.

    A positive twist resolves to the cup-cap tangle at bit 0 and to the identity
    at bit 1; a negative twist the other way round.
    """
    if swap is None:
        swap = conventions.SWAP_RESOLUTIONS
    if swap:
        bit = 1 - bit
    if eta == 1:
        return CUPCAP if bit == 0 else IDENTITY
    return IDENTITY if bit == 0 else CUPCAP


@dataclass(frozen=True)
class Merge:
    """Circles ``a`` and ``b`` of the source fuse into circle ``c`` of the target."""
    a: int
    b: int
    c: int
    untouched: Tuple[int, ...]


@dataclass(frozen=True)
class Split:
    """Circle ``c`` of the source splits into circles ``a`` and ``b`` of the target."""
    c: int
    a: int
    b: int
    untouched: Tuple[int, ...]


class VertexDiagram:
    """Closed diagram at one vertex.

    ``point_label[p]`` is the label of the circle through arc endpoint ``p``
    (endpoint ``level * strands + position``); a circle is labelled by its least
    endpoint.
    """

    def __init__(self, vertex, point_label):
        self.vertex = vertex
        self.point_label = point_label
        self.labels = tuple(sorted(set(int(x) for x in point_label)))

    @property
    def circles(self):
        return len(self.labels)


def _trace_circles(kinds, twists, strands, plat):
    n = strands
    top = len(kinds) * n
    edges = [(a - 1, b - 1) for a, b in plat.cups]
    edges += [(top + a - 1, top + b - 1) for a, b in plat.caps]
    for level, (kind, (k, _)) in enumerate(zip(kinds, twists)):
        lo, hi = level * n, (level + 1) * n
        if kind == IDENTITY:
            edges += [(lo + p, hi + p) for p in range(n)]
        else:
            edges += [(lo + p, hi + p) for p in range(n) if p not in (k - 1, k)]
            edges += [(lo + k - 1, lo + k), (hi + k - 1, hi + k)]
    n_points = top + n
    n_comp, labels = graph_components(n_points, edges)
    least = np.full(n_comp, n_points, dtype=np.int64)
    np.minimum.at(least, labels, np.arange(n_points))
    return n_comp, least[labels]


class ResolutionCube:
    """The ``2^N`` closed diagrams of a twist sequence, with merge/split edges.

    Build with :func:`build_cube`.
    """

    def __init__(self, twists, strands, plat, diagrams, aux_unknot=False):
        self.twists = twists
        self.strands = strands
        self.plat = plat
        self.aux_unknot = aux_unknot
        self._diagrams = diagrams
        self._edges = {}

    @property
    def n(self):
        return len(self.twists)

    def as_vertex(self, vertex):
        """Accept an integer, a 0/1 string or a 0/1 sequence in letter order."""
        if isinstance(vertex, str):
            if len(vertex) != self.n:
                raise ValueError(f"Vertex '{vertex}' does not have {self.n} bits")
            return bitstring_to_vertex(vertex)
        if isinstance(vertex, (tuple, list)):
            return self.as_vertex("".join(str(int(b)) for b in vertex))
        vertex = int(vertex)
        if not 0 <= vertex < 2 ** self.n:
            raise ValueError(f"Vertex {vertex} is outside the {self.n}-cube")
        return vertex

    def vertices(self):
        return range(2 ** self.n)

    def vertex(self, vertex):
        return self._diagrams[self.as_vertex(vertex)]

    def circles(self, vertex):
        return self.vertex(vertex).circles

    def weight(self, vertex):
        return popcount(self.as_vertex(vertex)) - self.twists.n_minus

    def bitstring(self, vertex):
        return vertex_to_bitstring(self.as_vertex(vertex), self.n)

    def edges(self):
        """Adjacent pairs ``(I, J)`` with ``I < J``."""
        for v in self.vertices():
            for i in range(self.n):
                if not v >> i & 1:
                    yield v, v | 1 << i

    def edge(self, source, target):
        key = (self.as_vertex(source), self.as_vertex(target))
        if key not in self._edges:
            self._edges[key] = adjacent_cobordism(self, *key)
        return self._edges[key]


def build_cube(ts, strands, plat, aux_unknot=False, verbose=False):
    """Resolve every twist both ways and record the closed diagram at each vertex.

    :param ts: the :class:`TwistSequence`
    :param strands: strand count, including the two auxiliary strands if ``aux_unknot``
    :param plat: the :class:`~dehncube.topology.tangle.PlatClosure`
    :param aux_unknot: the last two strands form a split unknot that no twist touches
    :param verbose: show a progress bar over vertices
    :raises InputError: on a twist index out of range or a malformed auxiliary pair
    :raises ConsistencyError: if the composite does not close up consistently
    """
    if plat.strands != strands:
        raise InputError(f"Plat on {plat.strands} strands used with {strands} strands")
    limit = strands - 3 if aux_unknot else strands - 1
    for k, _ in ts.twists:
        if not 1 <= k <= limit:
            raise InputError(f"Twist along curve {k} is out of range for {strands} strands"
                             + (" with auxiliary strands" if aux_unknot else ""))
    if aux_unknot:
        pair = (strands - 1, strands)
        if pair not in plat.cups or pair not in plat.caps:
            raise InputError("Auxiliary strands must be paired with each other at both ends")

    # prefix tangles, one layer per letter; bit i of a prefix key is letter i
    layer = {0: elementary_tangle(IDENTITY, strands)}
    for i, (k, eta) in enumerate(ts.twists):
        pieces = [elementary_tangle(resolve_twist(eta, bit), strands, k) for bit in (0, 1)]
        layer = {v | bit << i: compose(t, pieces[bit]) for v, t in layer.items() for bit in (0, 1)}

    diagrams = {}
    for v in tqdm(range(2 ** len(ts)), desc="vertices", disable=not verbose):
        kinds = [resolve_twist(eta, v >> i & 1) for i, (_, eta) in enumerate(ts.twists)]
        closed = close_plat(layer[v], plat)
        n_comp, point_label = _trace_circles(kinds, ts.twists, strands, plat)
        if not closed.is_closed or closed.circles != n_comp:
            raise ConsistencyError(
                "Traced circles disagree with the composed tangle",
                {"vertex": vertex_to_bitstring(v, len(ts)), "composed": closed.circles,
                 "traced": int(n_comp)})
        diagrams[v] = VertexDiagram(v, point_label)
    logger.debug("built cube with %d vertices on %d strands", len(diagrams), strands)
    return ResolutionCube(ts, strands, plat, diagrams, aux_unknot)


def adjacent_cobordism(cube, source, target):
    """The elementary cobordism on the edge ``source -> target``.

    :return: :class:`Merge` or :class:`Split`; circles away from the changed twist
        keep their labels and are listed in ``untouched``
    :raises ValueError: if the vertices are not adjacent with ``source < target``
    """
    i_v, j_v = cube.as_vertex(source), cube.as_vertex(target)
    diff = i_v ^ j_v
    if diff == 0 or diff & (diff - 1) or not j_v & diff:
        raise ValueError(
            f"Vertices {cube.bitstring(i_v)} and {cube.bitstring(j_v)} are not an edge of the cube")
    level = diff.bit_length() - 1
    k = cube.twists.twists[level][0]
    n = cube.strands
    points = [level * n + k - 1, level * n + k, (level + 1) * n + k - 1, (level + 1) * n + k]
    src, tgt = cube.vertex(i_v), cube.vertex(j_v)
    touched_src = sorted({int(src.point_label[p]) for p in points})
    touched_tgt = sorted({int(tgt.point_label[p]) for p in points})
    untouched = sorted(set(src.labels) - set(touched_src))
    witness = {"source": cube.bitstring(i_v), "target": cube.bitstring(j_v)}
    if untouched != sorted(set(tgt.labels) - set(touched_tgt)):
        raise ConsistencyError("Untouched circles differ across an edge", witness)
    if len(touched_src) == 2 and len(touched_tgt) == 1:
        return Merge(touched_src[0], touched_src[1], touched_tgt[0], tuple(untouched))
    if len(touched_src) == 1 and len(touched_tgt) == 2:
        return Split(touched_src[0], touched_tgt[0], touched_tgt[1], tuple(untouched))
    raise ConsistencyError("Edge neither merges nor splits circles", witness)


def check_edges(cube):
    """Verify every edge changes the circle count by one, matching its type."""
    for source, target in cube.edges():
        edge = cube.edge(source, target)
        delta = cube.circles(target) - cube.circles(source)
        expected = -1 if isinstance(edge, Merge) else 1
        if delta != expected:
            raise ConsistencyError(
                "Circle count change does not match the edge type",
                {"source": cube.bitstring(source), "target": cube.bitstring(target), "delta": delta})


def vertices_frame(cube):
    """One row per vertex: bitstring, ``|I|``, weight and circle count."""
    rows = [(cube.bitstring(v), popcount(v), cube.weight(v), cube.circles(v))
            for v in cube.vertices()]
    df = pd.DataFrame(rows, columns=["vertex", "size", "weight", "circles"])
    return df.sort_values(["size", "vertex"]).reset_index(drop=True)
