"""Khovanov's Frobenius algebra over GF(2) and the cube chain complex it builds.

``A`` has basis ``1, X`` (indices 0 and 1) with ``X^2 = 0``; merges act by
multiplication and splits by ``1 -> 1(x)X + X(x)1``, ``X -> X(x)X``. No edge
signs are needed over GF(2).
"""
import logging
from collections import Counter
from itertools import product

import numpy as np
from scipy import sparse
from tqdm import tqdm

from dehncube.algebra.f2linalg import F2Matrix, sparse_mod2
from dehncube.common.errors import ConsistencyError
from dehncube.common.lists import popcount
from dehncube.spectral.specseq import FilteredComplex, verify_d_squared
from dehncube.topology.cube import Merge

logger = logging.getLogger(__name__)

ONE, X = 0, 1
BASIS_NAMES = ("1", "X")


def _basis_index(a):
    if isinstance(a, str):
        if a not in BASIS_NAMES:
            raise ValueError(f"'{a}' is not a basis element of A")
        return BASIS_NAMES.index(a)
    return int(a)


def _mod2(terms):
    return frozenset(t for t, count in Counter(terms).items() if count % 2)


class FrobAlgebra:
    """The two-dimensional Frobenius algebra ``A`` over GF(2).

    Algebra elements are frozensets of basis indices (their GF(2) sum); elements
    of ``A (x) A`` are frozensets of index pairs.
    """

    def __init__(self):
        self.mult = np.zeros((2, 2, 2), dtype=np.uint8)
        self.mult[ONE, ONE, ONE] = 1
        self.mult[ONE, X, X] = 1
        self.mult[X, ONE, X] = 1
        self.comult = np.zeros((2, 2, 2), dtype=np.uint8)
        self.comult[ONE, ONE, X] = 1
        self.comult[ONE, X, ONE] = 1
        self.comult[X, X, X] = 1

    def multiply(self, a, b):
        a, b = _basis_index(a), _basis_index(b)
        return frozenset(int(z) for z in np.flatnonzero(self.mult[a, b]))

    def comultiply(self, element):
        """Comultiplication extended linearly; accepts a basis element or a set of them."""
        if isinstance(element, (frozenset, set)):
            terms = [t for a in element for t in self.comultiply(a)]
            return _mod2(terms)
        a = _basis_index(element)
        return frozenset((int(p), int(q)) for p, q in zip(*np.nonzero(self.comult[a])))


A = FrobAlgebra()


def multiply(a, b):
    """Product of two basis elements of ``A`` as a set of basis elements."""
    return A.multiply(a, b)


def comultiply(element):
    """Coproduct of an element of ``A`` as a set of basis pairs."""
    return A.comultiply(element)


def check_frobenius(algebra=A):
    """Exhaustively check the algebra and coalgebra axioms and the Frobenius relation.

    :return: names of the failing identities; empty when everything holds
    """
    basis = (ONE, X)
    failures = []

    def m(a, b):
        return algebra.multiply(a, b)

    for a, b in product(basis, repeat=2):
        if m(a, b) != m(b, a):
            failures.append("commutativity")
        # (m (x) id)(id (x) Delta) and (id (x) m)(Delta (x) id) both equal Delta m
        lhs = _mod2([(z, q) for p, q in algebra.comultiply(b) for z in m(a, p)])
        rhs = _mod2([(p, z) for p, q in algebra.comultiply(a) for z in m(q, b)])
        mid = algebra.comultiply(frozenset(m(a, b)))
        if not lhs == mid == rhs:
            failures.append("frobenius")
    for a, b, c in product(basis, repeat=3):
        left = _mod2([z for y in m(a, b) for z in m(y, c)])
        right = _mod2([z for y in m(b, c) for z in m(a, y)])
        if left != right:
            failures.append("associativity")
    for a in basis:
        if m(ONE, a) != {a}:
            failures.append("unit")
        pairs = algebra.comultiply(a)
        if pairs != frozenset((q, p) for p, q in pairs):
            failures.append("cocommutativity")
        left = _mod2([(p1, p2, q) for p, q in pairs for p1, p2 in algebra.comultiply(p)])
        right = _mod2([(p, q1, q2) for p, q in pairs for q1, q2 in algebra.comultiply(q)])
        if left != right:
            failures.append("coassociativity")
    return sorted(set(failures))


class VertexSpace:
    """``A^{(x) c}`` for the circles of one vertex.

    Basis vectors assign ``1`` or ``X`` to each circle, circles in label order
    with the first circle most significant, ``1`` before ``X``.
    """

    def __init__(self, labels):
        self.labels = tuple(sorted(labels))
        self.position = {label: i for i, label in enumerate(self.labels)}

    @property
    def dim(self):
        return 2 ** len(self.labels)

    def shift(self, label):
        return len(self.labels) - 1 - self.position[label]

    def describe(self, index):
        return "(x)".join(BASIS_NAMES[(index >> self.shift(l)) & 1] for l in self.labels)


def _edge_map_coords(cube, source, target, algebra=A):
    """Row and column indices of the nonzero entries of an edge map."""
    edge = cube.edge(source, target)
    src = VertexSpace(cube.vertex(source).labels)
    tgt = VertexSpace(cube.vertex(target).labels)
    states = np.arange(src.dim, dtype=np.int64)

    def bit(label):
        return (states >> src.shift(label)) & 1

    base = np.zeros_like(states)
    for label in edge.untouched:
        base |= bit(label) << tgt.shift(label)

    rows, cols = [], []
    if isinstance(edge, Merge):
        xa, xb = bit(edge.a), bit(edge.b)
        for z in (ONE, X):
            hit = algebra.mult[xa, xb, z] == 1
            rows.append(base[hit] | (z << tgt.shift(edge.c)))
            cols.append(states[hit])
    else:
        xc = bit(edge.c)
        for za, zb in product((ONE, X), repeat=2):
            hit = algebra.comult[xc, za, zb] == 1
            rows.append(base[hit] | (za << tgt.shift(edge.a)) | (zb << tgt.shift(edge.b)))
            cols.append(states[hit])
    return np.concatenate(rows), np.concatenate(cols), (tgt.dim, src.dim)


def edge_map_matrix(cube, source, target, algebra=A):
    """Matrix of the edge map from the source vertex space to the target one.

    Multiplication on merged circles, comultiplication on split circles and the
    identity on every other circle.

    :return: :class:`~dehncube.algebra.f2linalg.F2Matrix` of shape ``2^c(J) x 2^c(I)``
    :raises ValueError: if the vertices are not an edge
    """
    rows, cols, shape = _edge_map_coords(cube, source, target, algebra)
    return F2Matrix.from_coords(rows, cols, shape)


class ChainComplexF2:
    """Direct sum of the vertex spaces with the edge-map differential ``d_1``.

    Generators are ordered vertex by vertex (by ``|I|``, then bitstring), each
    vertex block in its :class:`VertexSpace` basis order. ``d1`` is a scipy csr
    matrix with 0/1 entries.
    """

    def __init__(self, cube, order, spaces, d1):
        self.cube = cube
        self.order = order
        self.spaces = spaces
        self.d1 = d1
        self.offsets = {}
        start = 0
        for v in order:
            self.offsets[v] = start
            start += spaces[v].dim
        self.total_dim = start
        self._starts = np.array([self.offsets[v] for v in order], dtype=np.int64)
        self.weights = np.concatenate(
            [np.full(spaces[v].dim, cube.weight(v), dtype=np.int64) for v in order])

    def segment(self, vertex):
        v = self.cube.as_vertex(vertex)
        return slice(self.offsets[v], self.offsets[v] + self.spaces[v].dim)

    def vertex_of(self, generator):
        """Vertex whose block holds a generator index."""
        if not 0 <= generator < self.total_dim:
            raise IndexError(f"Generator {generator} is out of range")
        return self.order[int(np.searchsorted(self._starts, generator, side="right")) - 1]

    def locate(self, generator):
        """Vertex bitstring and basis tensor of a generator index."""
        v = self.vertex_of(generator)
        return self.cube.bitstring(v), self.spaces[v].describe(generator - self.offsets[v])

    def dims_by_weight(self):
        dims = {}
        for v in self.order:
            w = self.cube.weight(v)
            dims[w] = dims.get(w, 0) + self.spaces[v].dim
        return dict(sorted(dims.items()))

    def filtered(self):
        """The :class:`~dehncube.spectral.specseq.FilteredComplex` with ``D = d_1``."""
        segments = {self.cube.bitstring(v): (self.segment(v).start, self.segment(v).stop)
                    for v in self.order}
        return FilteredComplex(self.weights, {1: self.d1}, segments)


def assemble_complex(cube, check=True, verbose=False):
    """Sum the vertex spaces and the edge matrices into one complex.

    Vertex differentials are zero; each vertex is modelled by its homology.

    :param cube: a :class:`~dehncube.topology.cube.ResolutionCube`
    :param check: verify ``d_1^2 = 0``
    :param verbose: show a progress bar over vertices
    :raises ConsistencyError: if some 2-face does not commute
    """
    order = sorted(cube.vertices(), key=lambda v: (popcount(v), cube.bitstring(v)))
    spaces = {v: VertexSpace(cube.vertex(v).labels) for v in order}
    offsets, start = {}, 0
    for v in order:
        offsets[v] = start
        start += spaces[v].dim
    total = start

    rows, cols = [], []
    for target in tqdm(order, desc="edge maps", disable=not verbose):
        for i in range(cube.n):
            if target >> i & 1:
                source = target ^ (1 << i)
                r, c, _ = _edge_map_coords(cube, source, target)
                rows.append(r + offsets[target])
                cols.append(c + offsets[source])
    rows = np.concatenate(rows) if rows else np.zeros(0, dtype=np.int64)
    cols = np.concatenate(cols) if cols else np.zeros(0, dtype=np.int64)
    d1 = sparse_mod2(sparse.coo_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)),
                                       shape=(total, total)))
    cc = ChainComplexF2(cube, order, spaces, d1)
    logger.debug("assembled complex of total dimension %d, %d entries", total, d1.nnz)

    if check:
        result = verify_d_squared(cc.filtered())
        if not result.passed:
            vertex, tensor = cc.locate(result.witness)
            raise ConsistencyError("d_1 does not square to zero",
                                   {"generator": result.witness, "vertex": vertex, "basis": tensor})
    return cc


def check_faces(cube, cc=None):
    """Look for a 2-face whose two composites differ.

    Over GF(2) a face commutes exactly when its block of ``d_1^2`` vanishes, so
    the faces are read off the square of the assembled differential.

    :param cube: a :class:`~dehncube.topology.cube.ResolutionCube`
    :param cc: the complex of ``cube`` if already assembled
    :return: ``None`` if all faces commute, otherwise a witness dict
    """
    if cc is None:
        cc = assemble_complex(cube, check=False)
    d = cc.d1.astype(np.int64)
    rows, cols = sparse_mod2(d @ d).nonzero()
    if not len(rows):
        return None
    v, k = cc.vertex_of(int(cols[0])), cc.vertex_of(int(rows[0]))
    i, j = [b for b in range(cube.n) if (k ^ v) >> b & 1]
    return {"source": cube.bitstring(v), "target": cube.bitstring(k),
            "via": [cube.bitstring(v | 1 << i), cube.bitstring(v | 1 << j)]}
