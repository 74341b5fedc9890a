"""Page dimensions by Gaussian elimination of the filtered differential.

An independent route to the same numbers as :func:`~dehncube.spectral.specseq.compute_pages`:
cancel nonzero entries of ``D`` in order of increasing weight gap. A pivot
``D[y, x] = 1`` with gap ``g`` removes ``x`` and ``y`` and adds the zig-zag
``D[:, x] D[y, :]`` to the rest; every new entry has gap at least ``g``. Once
all gaps up to ``r - 1`` are gone, the surviving generators count ``E_r``.
"""
import numpy as np


def _cancel(d, x, y):
    d ^= np.outer(d[:, x], d[y, :])
    d[[x, y], :] = 0
    d[:, [x, y]] = 0


def pages_by_cancellation(fc, r_max=None):
    """Page dimensions ``{r: {w: dim}}`` for ``r = 1 .. min(r_max, spread+1)``.

    Works on a dense copy of the differential, so it suits small complexes.
    """
    d = fc.differential.toarray().astype(np.uint8)
    weights = fc.weights
    alive = np.ones(fc.dim, dtype=bool)
    values = fc.weight_values
    last = fc.spread + 1 if r_max is None else min(fc.spread + 1, r_max)

    pages = {}
    for r in range(1, last + 1):
        gap = r - 1
        while True:
            rows, cols = np.nonzero(d)
            hit = np.flatnonzero(weights[rows] - weights[cols] == gap)
            if hit.size == 0:
                break
            y, x = rows[hit[0]], cols[hit[0]]
            _cancel(d, x, y)
            alive[[x, y]] = False
        pages[r] = {w: int(np.count_nonzero(alive & (weights == w))) for w in values}
    return pages
