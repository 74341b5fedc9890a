"""Spectral sequence of a finite weight-filtered complex over GF(2).

Generators carry integer weights; the differential ``D`` is a sum of components
``D_r`` each raising weight by exactly ``r``, so ``F_p`` (span of generators of
weight >= p) is a decreasing filtration. Pages are computed directly from

    E_r^w = (Z_r^w + F_{w+1}) / (B_{r-1}^w + F_{w+1})
    Z_r^w = F_w cap D^{-1} F_{w+r},   B_{r-1}^w = F_w cap D(F_{w-r+1})

with every space handled as a GF(2) subspace. Only the ranks of the page
differentials are meaningful; their entries depend on the chosen echelon
representatives.

Components are held as scipy sparse matrices. The complex is first split into
summands closed under ``D`` (connected components of its nonzero pattern); pages
of a direct sum are direct sums, so each summand is handled on its own packed
blocks and only the weight bands that ``D`` can connect are ever cut out.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import sparse
from tqdm import tqdm

from dehncube.algebra.f2linalg import (F2Matrix, Subspace, kernel_basis, kernel_rows, quotient_dim,
                                       rank, solve_rows, sparse_mod2)
from dehncube.common.errors import ConsistencyError, HigherMapError
from dehncube.common.graphs import graph_components
from dehncube.common.pandas import dims_frame

logger = logging.getLogger(__name__)

# small connected components are packed together up to this many generators
SUMMAND_SIZE = 512


def _shift_violation(weights, r, m):
    rows, cols = m.nonzero()
    bad = np.flatnonzero(weights[rows] - weights[cols] != r)
    if bad.size == 0:
        return None
    return int(rows[bad[0]]), int(cols[bad[0]])


def _split_summands(dim, d):
    if dim == 0:
        return []
    rows, cols = d.nonzero()
    n_comp, labels = graph_components(dim, np.column_stack([rows, cols]))
    order = np.argsort(labels, kind="stable")
    parts = np.split(order, np.searchsorted(labels[order], np.arange(1, n_comp)))
    groups, current, size = [], [], 0
    for part in parts:
        if current and size + len(part) > SUMMAND_SIZE:
            groups.append(np.sort(np.concatenate(current)))
            current, size = [], 0
        current.append(part)
        size += len(part)
    groups.append(np.sort(np.concatenate(current)))
    return groups


class FilteredComplex:
    """Generators with weights and differential components ``D_r``.

    :param weights: integer weight per generator
    :param components: ``{r: matrix}``, each square with columns as sources; scipy
        sparse matrices or :class:`~dehncube.algebra.f2linalg.F2Matrix`
    :param segments: optional ``{vertex bitstring: (start, stop)}`` naming generator blocks
    :raises ValueError: if a component does not raise weight by exactly ``r``
    """

    def __init__(self, weights, components, segments=None):
        self.weights = np.asarray(weights, dtype=np.int64)
        self.segments = dict(segments or {})
        self.components = {}
        for r, m in sorted(components.items()):
            m = sparse_mod2(m.to_sparse() if isinstance(m, F2Matrix) else m)
            if m.shape != (self.dim, self.dim):
                raise ValueError(f"Component D_{r} has shape {m.shape}, expected {(self.dim, self.dim)}")
            if r < 0:
                raise ValueError(f"Component index must be nonnegative, got {r}")
            bad = _shift_violation(self.weights, r, m)
            if bad is not None:
                raise ValueError(
                    f"D_{r} sends generator {bad[1]} (weight {self.weights[bad[1]]}) to generator "
                    f"{bad[0]} (weight {self.weights[bad[0]]})")
            self.components[r] = m
        self._differential = None
        self._summands = None

    @property
    def dim(self):
        return len(self.weights)

    @property
    def differential(self):
        """``D`` as a csr matrix with 0/1 entries."""
        if self._differential is None:
            d = sparse.csr_matrix((self.dim, self.dim), dtype=np.int64)
            for m in self.components.values():
                d = d + m.astype(np.int64)
            self._differential = sparse_mod2(d)
        return self._differential

    @property
    def weight_values(self):
        return sorted(int(w) for w in np.unique(self.weights))

    @property
    def spread(self):
        values = self.weight_values
        return values[-1] - values[0] if values else 0

    @property
    def has_d0(self):
        return 0 in self.components and self.components[0].nnz > 0

    def with_component(self, r, matrix):
        """New complex with ``matrix`` added into ``D_r``."""
        if isinstance(matrix, F2Matrix):
            matrix = matrix.to_sparse()
        components = dict(self.components)
        if r in components:
            matrix = components[r].astype(np.int64) + sparse.csr_matrix(matrix, dtype=np.int64)
        components[r] = matrix
        return FilteredComplex(self.weights, components, self.segments)

    def summands(self):
        """Generator index arrays of a splitting of the complex into subcomplexes.

        Every connected component of the nonzero pattern of ``D`` lies in one
        summand; small components share a summand up to ``SUMMAND_SIZE`` generators.
        """
        if self._summands is None:
            self._summands = _split_summands(self.dim, self.differential)
        return self._summands

    def local_differential(self, gens):
        """Packed ``D`` restricted to the generators ``gens``."""
        d = self.differential
        return F2Matrix.from_sparse(d[gens][:, gens])


@dataclass
class DSquaredResult:
    passed: bool
    witness: Optional[int] = None


def verify_d_squared(fc):
    """Check ``D^2 = 0``; on failure name a generator whose image under ``D^2`` is nonzero."""
    d = fc.differential.astype(np.int64)
    square = sparse_mod2(d @ d)
    if square.nnz:
        return DSquaredResult(False, int(square.nonzero()[1].min()))
    return DSquaredResult(True)


def total_homology_dim(fc):
    return fc.dim - 2 * sum(rank(fc.local_differential(gens)) for gens in fc.summands())


class _Summand:
    """One subcomplex: the weights of its generators and its packed local ``D``."""

    def __init__(self, fc, gens):
        self.weights = fc.weights[gens]
        self.d = fc.local_differential(gens)
        self.has_d0 = fc.has_d0


class _PageEntry:
    """A page entry ``E_r^w`` of one summand.

    ``reps`` are cycle representatives on the local generators ``cols``;
    ``basis`` stacks the boundary basis over the kept cycle projections, all
    restricted to the weight ``w`` generators ``here``.
    """

    def __init__(self, dim, here, cols=None, reps=None, basis=None, n_boundary=0, identity=False):
        self.dim = dim
        self.here = here
        self.cols = cols
        self.reps = reps
        self.basis = basis
        self.n_boundary = n_boundary
        self.identity = identity


def _page_entry(s, r, w):
    wt = s.weights
    here = np.flatnonzero(wt == w)
    if not here.size:
        return _PageEntry(0, here)

    # Z side: only generators of weight w .. w+r-1 can meet the band D must clear
    later = np.flatnonzero((wt > w) & (wt <= w + r - 1))
    band = np.flatnonzero((wt >= w) & (wt <= w + r - 1))
    cols = np.concatenate([later, here])
    m = s.d.submatrix(band, cols)
    identity = m.is_zero()
    # pivots fall on `later` first, so lifts of free `later` columns project to zero
    lifts = kernel_rows(m, start=len(later))
    z_proj = lifts.submatrix(cols=np.arange(len(later), len(cols)))
    z_space = Subspace.full(len(here)) if identity else Subspace.span(z_proj)

    # B side: sources of weight w-r+1 .. w-1, plus weight w when D_0 is present
    low = w - r + 1
    top = w if s.has_d0 else w - 1
    src = np.flatnonzero((wt >= low) & (wt <= top))
    if src.size:
        below = np.flatnonzero((wt >= low) & (wt <= w - 1))
        sources = kernel_basis(s.d.submatrix(below, src)).basis
        b_space = Subspace.span(sources @ s.d.submatrix(here, src).transpose())
    else:
        b_space = Subspace.zero(len(here))

    try:
        dim = quotient_dim(z_space, b_space)
    except ValueError:
        raise ConsistencyError("Boundaries are not cycles on a page", {"page": r, "weight": int(w)})
    if dim == 0:
        return _PageEntry(0, here)
    identity = identity and b_space.dim == 0
    if identity:
        kept = np.arange(len(here))
    else:
        _, kept = b_space.extend(z_proj)
    basis = F2Matrix.vstack([b_space.basis, z_proj.take_rows(kept)], cols=len(here))
    return _PageEntry(dim, here, cols, lifts.take_rows(kept), basis, b_space.dim, identity)


def _page_map(s, src, tgt, r, w):
    if tgt.dim == 0 or src.dim == 0:
        return F2Matrix.zeros(tgt.dim, src.dim)
    images = src.reps @ s.d.submatrix(tgt.here, src.cols).transpose()
    if images.is_zero():
        return F2Matrix.zeros(tgt.dim, src.dim)
    if tgt.identity:
        return images.transpose()
    try:
        coords = solve_rows(tgt.basis, images)
    except ValueError:
        raise ConsistencyError("Page differential leaves the page", {"page": r, "weight": int(w)})
    keep = np.arange(tgt.n_boundary, tgt.n_boundary + tgt.dim)
    return coords.submatrix(cols=keep).transpose()


def _block_diagonal(blocks):
    n_rows = sum(b.rows for b in blocks)
    n_cols = sum(b.cols for b in blocks)
    rows, cols = [], []
    r0 = c0 = 0
    for b in blocks:
        i, j = b.to_sparse().nonzero()
        rows.append(i + r0)
        cols.append(j + c0)
        r0 += b.rows
        c0 += b.cols
    return F2Matrix.from_coords(np.concatenate(rows), np.concatenate(cols), (n_rows, n_cols))


class SpectralPages:
    """Page dimensions ``dims[r][w]`` and page differentials ``d_r : E_r^w -> E_r^{w+r}``.

    Differentials are kept per summand of the complex; :meth:`differential`
    assembles the block-diagonal matrix on demand, :meth:`d_rank` only ranks
    the blocks.

    ``complete`` is true when the pages were computed up to the weight spread
    plus one, after which nothing changes; ``stabilization`` is then the first
    page equal to the limit page.
    """

    def __init__(self, dims, blocks, spread, complete):
        self.dims = dims
        self._blocks = blocks
        self._ranks = {}
        self.spread = spread
        self.complete = complete
        self.last_page = max(dims)
        self.stabilization = None
        if complete:
            limit = dims[self.last_page]
            self.stabilization = min(r for r in dims if dims[r] == limit)

    def page(self, r):
        if r in self.dims:
            return self.dims[r]
        if r > self.last_page and self.complete:
            return self.dims[self.last_page]
        raise ValueError(f"Page {r} was not computed (last page {self.last_page})")

    def total(self, r):
        return sum(self.page(r).values())

    @property
    def e_infinity(self):
        if not self.complete:
            raise ValueError("Pages stop before the limit page")
        return self.dims[self.last_page]

    def differential_keys(self, r):
        """Weights ``w`` for which ``d_r`` out of ``E_r^w`` is recorded."""
        return sorted(self._blocks.get(r, {}))

    def differential(self, r, w):
        """Matrix of ``d_r : E_r^w -> E_r^{w+r}``, or ``None`` if not recorded."""
        blocks = self._blocks.get(r, {}).get(w)
        return None if blocks is None else _block_diagonal(blocks)

    @property
    def differentials(self):
        return {r: {w: self.differential(r, w) for w in self.differential_keys(r)}
                for r in self._blocks}

    def d_rank(self, r, w):
        key = (r, w)
        if key not in self._ranks:
            blocks = self._blocks.get(r, {}).get(w, [])
            self._ranks[key] = sum(rank(b) for b in blocks if not b.is_zero())
        return self._ranks[key]

    def frame(self):
        return pages_frame(self)


def pages_frame(pages):
    """Weights as rows, pages as columns."""
    return dims_frame(pages.dims)


def compute_pages(fc, r_max=None, verbose=False):
    """All pages ``E_1 .. E_{min(r_max, spread+1)}`` with their differentials.

    :param fc: a :class:`FilteredComplex`
    :param r_max: last page to compute; ``None`` runs to the limit page
    :param verbose: show a progress bar over pages
    :raises ConsistencyError: if ``D^2 != 0``
    """
    check = verify_d_squared(fc)
    if not check.passed:
        raise ConsistencyError("D does not square to zero", {"generator": check.witness})
    if r_max is not None and r_max < 1:
        raise ValueError(f"r_max must be at least 1, got {r_max}")
    values = fc.weight_values
    limit = fc.spread + 1
    last = limit if r_max is None else min(limit, r_max)
    summands = [_Summand(fc, gens) for gens in fc.summands()]
    logger.debug("%d generators in %d summands", fc.dim, len(summands))

    empty = _PageEntry(0, np.zeros(0, dtype=np.int64))
    dims, blocks = {}, {}
    for r in tqdm(range(1, last + 1), desc="pages", disable=not verbose):
        dims[r] = dict.fromkeys(values, 0)
        blocks[r] = {}
        for s in summands:
            entries = {int(w): _page_entry(s, r, int(w)) for w in np.unique(s.weights)}
            for w, e in entries.items():
                dims[r][w] += e.dim
            for w in values:
                src, tgt = entries.get(w, empty), entries.get(w + r, empty)
                if w + r not in dims[r] or src.dim + tgt.dim == 0:
                    continue
                blocks[r].setdefault(w, []).append(_page_map(s, src, tgt, r, w))
        blocks[r] = {w: b for w, b in blocks[r].items() if dims[r][w] > 0}
        logger.debug("page %d dims %s", r, dims[r])
    return SpectralPages(dims, blocks, fc.spread, last == limit)


@dataclass
class HigherBlock:
    """One externally supplied block of ``D_r`` from vertex ``source`` to vertex ``target``."""
    r: int
    source: str
    target: str
    matrix: F2Matrix


def load_higher_maps(fc, blocks):
    """Add externally supplied higher components to a cube complex.

    :param fc: complex with ``segments`` naming its vertex blocks
    :param blocks: iterable of :class:`HigherBlock`
    :raises HigherMapError: on unknown vertices, wrong shapes, ``r < 2`` or a weight violation
    :raises ConsistencyError: if the augmented differential does not square to zero
    """
    coords: Dict[int, Tuple[list, list]] = {}
    for block in blocks:
        where = f"block r={block.r} {block.source}->{block.target}"
        if block.r < 2:
            raise HigherMapError(f"{where}: higher maps need r >= 2")
        for name in (block.source, block.target):
            if name not in fc.segments:
                raise HigherMapError(f"{where}: unknown vertex '{name}'")
        s0, s1 = fc.segments[block.source]
        t0, t1 = fc.segments[block.target]
        shift = int(fc.weights[t0] - fc.weights[s0])
        if shift != block.r:
            raise HigherMapError(f"{where}: raises weight by {shift}, not {block.r}")
        if block.matrix.shape != (t1 - t0, s1 - s0):
            raise HigherMapError(
                f"{where}: matrix is {block.matrix.shape}, expected {(t1 - t0, s1 - s0)}")
        i, j = block.matrix.to_sparse().nonzero()
        rows, cols = coords.setdefault(block.r, ([], []))
        rows.append(i + t0)
        cols.append(j + s0)
    out = fc
    for r, (rows, cols) in sorted(coords.items()):
        rows, cols = np.concatenate(rows), np.concatenate(cols)
        added = sparse.coo_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)),
                                  shape=(fc.dim, fc.dim))
        out = out.with_component(r, sparse_mod2(added))
    check = verify_d_squared(out)
    if not check.passed:
        raise ConsistencyError("Higher maps break D^2 = 0", {"generator": check.witness})
    return out


def random_higher_block(fc, weight, rng):
    """A random block from weight ``w`` to ``w+2`` that keeps ``D^2 = 0``.

    The block is ``K^T G L`` with the rows of ``K`` spanning the cycles of
    ``d_1`` at ``w+2`` and the rows of ``L`` annihilating the image of ``d_1`` in
    weight ``w``. Meant for complexes whose differential is ``d_1`` alone.

    :return: a full-size csr matrix to add into ``D_2``
    """
    d1 = fc.components.get(1, sparse.csr_matrix((fc.dim, fc.dim), dtype=np.uint8))
    w = fc.weights
    src, tgt = np.flatnonzero(w == weight), np.flatnonzero(w == weight + 2)
    before, after = np.flatnonzero(w == weight - 1), np.flatnonzero(w == weight + 3)
    k = kernel_basis(F2Matrix.from_sparse(d1[after][:, tgt])).basis
    l = kernel_basis(F2Matrix.from_sparse(d1[src][:, before]).transpose()).basis
    g = F2Matrix.from_dense(rng.integers(0, 2, size=(k.rows, l.rows)))
    i, j = (k.transpose() @ (g @ l)).to_sparse().nonzero()
    return sparse.csr_matrix((np.ones(len(i), dtype=np.uint8), (tgt[i], src[j])),
                             shape=(fc.dim, fc.dim))
