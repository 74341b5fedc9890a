"""Exact linear algebra over the two-element field on bit-packed matrices.

Rows are packed most-significant bit first (column 0 is the high bit of the
first byte, as ``np.packbits`` does by default) and padded with zero bits up to
whole 64-bit words. Row operations XOR ``uint64`` views of the same buffer.

Whole chain complexes are too large to hold packed; they live in scipy sparse
matrices with 0/1 entries and are cut into packed blocks for elimination.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import sparse

logger = logging.getLogger(__name__)


def _row_bytes(cols):
    return max((cols + 63) // 64, 1) * 8


def _bit_column(data, j):
    return (data[:, j >> 3] >> (7 - (j & 7))) & 1


def sparse_mod2(m, shape=None):
    """Canonical csr form of a sparse (or dense) integer matrix reduced mod 2.

    Duplicate entries are summed first, so a COO matrix built from repeated
    coordinates becomes their GF(2) sum.
    """
    s = sparse.csr_matrix(m, shape=shape, dtype=np.int64)
    s.sum_duplicates()
    s.data %= 2
    s.eliminate_zeros()
    return s.astype(np.uint8)


class F2Matrix:
    """A dense ``rows x cols`` matrix over GF(2), one bit per entry.

    :param rows: Number of rows.
    :param cols: Number of columns.
    :param data: Optional packed ``uint8`` buffer of shape ``(rows, row_bytes)``;
        trailing pad bits must be zero. A zero matrix is created if omitted.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        if rows < 0 or cols < 0:
            raise ValueError(f"Negative shape ({rows}, {cols})")
        nbytes = _row_bytes(cols)
        if data is None:
            data = np.zeros((rows, nbytes), dtype=np.uint8)
        elif data.shape != (rows, nbytes) or data.dtype != np.uint8:
            raise ValueError(
                f"Packed buffer of shape {data.shape} does not fit a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.data = np.ascontiguousarray(data)

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def words(self):
        return self.data.view(np.uint64)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, array):
        """Pack a 2-d array of integers (taken mod 2)."""
        a = np.asarray(array)
        if a.ndim != 2:
            raise ValueError(f"Expected a 2-d array, got {a.ndim} dimensions")
        a = (a % 2).astype(np.uint8)
        rows, cols = a.shape
        packed = np.packbits(a, axis=1, bitorder="big") if cols else np.zeros((rows, 0), np.uint8)
        data = np.zeros((rows, _row_bytes(cols)), dtype=np.uint8)
        data[:, :packed.shape[1]] = packed
        return cls(rows, cols, data)

    @classmethod
    def from_coords(cls, rows, cols, shape):
        """Pack entries given by coordinates; repeated coordinates cancel in pairs.

        :param rows: row index per entry
        :param cols: column index per entry
        :param shape: ``(rows, cols)`` of the result
        """
        rows = np.asarray(rows, dtype=np.intp)
        cols = np.asarray(cols, dtype=np.intp)
        data = np.zeros((shape[0], _row_bytes(shape[1])), dtype=np.uint8)
        bits = np.left_shift(1, 7 - (cols & 7)).astype(np.uint8)
        np.bitwise_xor.at(data, (rows, cols >> 3), bits)
        return cls(shape[0], shape[1], data)

    @classmethod
    def from_sparse(cls, m):
        """Pack a scipy sparse matrix, entries taken mod 2."""
        coo = sparse.coo_matrix(m)
        odd = coo.data % 2 == 1
        return cls.from_coords(coo.row[odd], coo.col[odd], coo.shape)

    @classmethod
    def from_bitstrings(cls, rows_text, cols=None):
        """Build from 0/1 strings, one per row; character j is column j.

        :param rows_text: list of strings
        :param cols: column count, needed when ``rows_text`` is empty
        """
        rows_text = list(rows_text)
        if cols is None:
            if not rows_text:
                raise ValueError("Column count is required for an empty row list")
            cols = len(rows_text[0])
        dense = np.zeros((len(rows_text), cols), dtype=np.uint8)
        for i, text in enumerate(rows_text):
            if len(text) != cols or any(ch not in "01" for ch in text):
                raise ValueError(f"Row '{text}' is not a 0/1 string of length {cols}")
            dense[i] = [ch == "1" for ch in text]
        return cls.from_dense(dense)

    @classmethod
    def vstack(cls, mats, cols=None):
        mats = list(mats)
        if cols is None:
            if not mats:
                raise ValueError("Column count is required to stack no matrices")
            cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("Cannot stack matrices with different column counts")
        if not mats:
            return cls(0, cols)
        data = np.concatenate([m.data for m in mats], axis=0)
        return cls(data.shape[0], cols, data)

    def to_dense(self):
        if self.cols == 0:
            return np.zeros((self.rows, 0), dtype=np.uint8)
        return np.unpackbits(self.data, axis=1, count=self.cols, bitorder="big")

    def to_bitstrings(self):
        return ["".join("1" if b else "0" for b in row) for row in self.to_dense()]

    def to_sparse(self):
        rows, cols = np.nonzero(self.to_dense())
        return sparse_mod2(sparse.coo_matrix(
            (np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=self.shape))

    def get(self, i, j):
        return int((self.data[i, j >> 3] >> (7 - (j & 7))) & 1)

    def is_zero(self):
        return not self.data.any()

    def transpose(self):
        return F2Matrix.from_dense(self.to_dense().T)

    def take_rows(self, rows):
        rows = np.asarray(rows, dtype=np.intp)
        return F2Matrix(len(rows), self.cols, self.data[rows].copy())

    def submatrix(self, rows=None, cols=None):
        """Rows and columns selected by index arrays (``None`` keeps all)."""
        data = self.data if rows is None else self.data[np.asarray(rows, dtype=np.intp)]
        dense = F2Matrix(data.shape[0], self.cols, np.ascontiguousarray(data)).to_dense()
        if cols is not None:
            dense = dense[:, np.asarray(cols, dtype=np.intp)]
        return F2Matrix.from_dense(dense)

    def nonzero_columns(self):
        seen = np.bitwise_or.reduce(self.data, axis=0)
        return np.flatnonzero(np.unpackbits(seen, count=self.cols, bitorder="big"))

    def nonzero_rows(self):
        return np.flatnonzero(self.words.any(axis=1))

    def __xor__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch {self.shape} vs {other.shape}")
        return F2Matrix(self.rows, self.cols, self.data ^ other.data)

    __add__ = __xor__

    def __matmul__(self, other):
        return matmul(self, other)

    def __eq__(self, other):
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self.data, other.data)

    __hash__ = None

    def __repr__(self):
        return f"F2Matrix({self.rows}x{self.cols}, nnz={int(self.to_dense().sum())})"


def matmul(a, b):
    """Product over GF(2) by XOR-accumulating packed rows of ``b``.

    :raises ValueError: if ``a.cols != b.rows``
    """
    if a.cols != b.rows:
        raise ValueError(f"Cannot multiply {a.shape} by {b.shape}")
    out = np.zeros((a.rows, b.words.shape[1]), dtype=np.uint64)
    b_words = b.words
    for k in b.nonzero_rows():
        hit = np.flatnonzero(_bit_column(a.data, k))
        if hit.size:
            out[hit] ^= b_words[k]
    return F2Matrix(a.rows, b.cols, out.view(np.uint8))


@dataclass(frozen=True)
class RrefResult:
    echelon: F2Matrix
    rank: int
    pivots: Tuple[int, ...]


def rref(m, n_pivot_cols=None):
    """Reduced row-echelon form over GF(2).

    Pivots are taken leftmost first, and within a column the first eligible row
    is used, so the result is deterministic.

    :param m: the matrix
    :param n_pivot_cols: only search the first ``n_pivot_cols`` columns for
        pivots; row operations still run over the full width
    """
    data = m.data.copy()
    words = data.view(np.uint64)
    limit = m.cols if n_pivot_cols is None else min(n_pivot_cols, m.cols)
    pivots = []
    r = 0
    for j in range(limit):
        if r == m.rows:
            break
        col = _bit_column(data, j)
        below = np.flatnonzero(col[r:])
        if below.size == 0:
            continue
        p = r + below[0]
        if p != r:
            words[[r, p]] = words[[p, r]]
            col[[r, p]] = col[[p, r]]
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            words[hit] ^= words[r]
        pivots.append(j)
        r += 1
    return RrefResult(F2Matrix(m.rows, m.cols, data), r, tuple(pivots))


def rank(m):
    return rref(m).rank


class Subspace:
    """A subspace of GF(2)^ambient held as a reduced echelon basis.

    Use :meth:`span` to build one from arbitrary spanning rows.
    """

    def __init__(self, ambient, basis, pivots):
        if basis.cols != ambient:
            raise ValueError(f"Basis has {basis.cols} columns, ambient dimension is {ambient}")
        self.ambient = ambient
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, rows):
        res = rref(rows)
        return cls(rows.cols, res.echelon.take_rows(range(res.rank)), res.pivots)

    @classmethod
    def zero(cls, ambient):
        return cls(ambient, F2Matrix(0, ambient), ())

    @classmethod
    def full(cls, ambient):
        return cls(ambient, F2Matrix.identity(ambient), range(ambient))

    @property
    def dim(self):
        return self.basis.rows

    def reduce(self, rows):
        """Reduce rows against the basis; the result is zero exactly on members."""
        if rows.cols != self.ambient:
            raise ValueError(f"Rows have {rows.cols} columns, ambient dimension is {self.ambient}")
        data = rows.data.copy()
        words = data.view(np.uint64)
        basis_words = self.basis.words
        for i, j in enumerate(self.pivots):
            hit = np.flatnonzero(_bit_column(data, j))
            if hit.size:
                words[hit] ^= basis_words[i]
        return F2Matrix(rows.rows, rows.cols, data)

    def contains(self, rows):
        return self.reduce(rows).is_zero()

    def extend(self, candidates):
        """Add candidate rows in order, keeping those independent of the basis
        and of the candidates kept before them.

        :return: the enlarged subspace and the indices of the kept candidates
        """
        reduced = self.reduce(candidates)
        # a candidate is kept iff its column of the transpose is a pivot column
        kept = list(rref(reduced.transpose()).pivots)
        if not kept:
            return self, kept
        grown = Subspace.span(F2Matrix.vstack([self.basis, reduced.take_rows(kept)]))
        return grown, kept

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def kernel_rows(m, start=0):
    """Kernel vectors of ``m``, one for each free column at index ``start`` or later.

    The vector of free column ``f`` is 1 at ``f``, 0 at every other free column
    and determined by the echelon form on the pivot columns. Kernel vectors of
    free columns before ``start`` are left out.
    """
    if m.is_zero():
        free = list(range(start, m.cols))
        pivots, echelon = [], None
    else:
        res = rref(m)
        pivots = list(res.pivots)
        taken = set(pivots)
        free = [c for c in range(start, m.cols) if c not in taken]
        echelon = res.echelon.take_rows(range(res.rank))
    k = np.zeros((len(free), m.cols), dtype=np.uint8)
    k[np.arange(len(free)), free] = 1
    if pivots and free:
        k[:, pivots] = echelon.to_dense()[:, free].T
    return F2Matrix.from_dense(k)


def kernel_basis(m):
    """Null space ``{x : m x = 0}`` as a subspace of GF(2)^cols."""
    if m.is_zero():
        return Subspace.full(m.cols)
    return Subspace.span(kernel_rows(m))


def image_basis(m):
    """Column space of ``m`` as a subspace of GF(2)^rows, spanned by the pivot columns."""
    pivots = rref(m).pivots
    if not pivots:
        return Subspace.zero(m.rows)
    return Subspace.span(m.submatrix(cols=list(pivots)).transpose())


def quotient_dim(v, w):
    """``dim V - dim W`` after verifying ``W`` lies inside ``V``.

    :raises ValueError: if the ambient spaces differ or ``W`` is not contained in ``V``
    """
    if v.ambient != w.ambient:
        raise ValueError(f"Ambient dimensions differ: {v.ambient} vs {w.ambient}")
    if not v.contains(w.basis):
        raise ValueError("W is not a subspace of V")
    return v.dim - w.dim


def solve_rows(basis, targets):
    """Coefficients ``X`` with ``X @ basis == targets``.

    :param basis: ``k x n`` matrix with independent rows
    :param targets: ``t x n`` matrix of rows in the span of ``basis``
    :raises ValueError: if some target row is outside the span
    """
    if basis.cols != targets.cols:
        raise ValueError(f"Column mismatch {basis.cols} vs {targets.cols}")
    k = basis.rows
    augmented = F2Matrix.from_dense(
        np.concatenate([basis.to_dense().T, targets.to_dense().T], axis=1))
    res = rref(augmented, n_pivot_cols=k)
    e = res.echelon.to_dense()
    if e[res.rank:, k:].any():
        raise ValueError("Target row is not in the span of the basis")
    x = np.zeros((targets.rows, k), dtype=np.uint8)
    for i, j in enumerate(res.pivots):
        x[:, j] = e[i, k:]
    return F2Matrix.from_dense(x)
