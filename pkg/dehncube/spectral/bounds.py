"""Rank upper bounds read off the pages of a spectral sequence.

Every page bounds the limit from above, so ``dim E_inf <= ... <= dim E_2 <= dim E_1``
in total and at every weight. The ``E_1`` total is the cheap bound available
without any higher information; ``E_2`` depends on the chosen presentation and
is reported as such, never as an invariant of the glued manifold.
"""
from dataclasses import dataclass

import numpy as np
import pandas as pd


@dataclass
class BoundsReport:
    """Totals per page, the descending bound chain and a per-weight table.

    :param totals: ``{r: total dimension of E_r}``
    :param chain: ``(label, total)`` from the best computed bound up to ``E_1``
    :param table: weights as rows, one column per page
    :param e1_bound: the ``E_1`` total, available from the cube alone
    :param complete: whether the best bound is the limit page
    """
    totals: dict
    chain: list
    table: pd.DataFrame
    e1_bound: int
    complete: bool

    @property
    def best(self):
        return self.chain[0][1]

    @property
    def holds(self):
        values = [total for _, total in self.chain]
        if any(a > b for a, b in zip(values, values[1:])):
            return False
        return bool((self.table.diff(axis=1).fillna(0) <= 0).all().all())

    def chain_text(self):
        return " <= ".join(str(total) for _, total in self.chain)

    def to_dict(self):
        return {
            "totals": {str(r): int(t) for r, t in self.totals.items()},
            "chain": [{"page": label, "total": int(t)} for label, t in self.chain],
            "e1_bound": int(self.e1_bound),
            "complete": self.complete,
            "holds": self.holds,
        }


def rank_bounds(pages):
    """Bound chain of a :class:`~dehncube.spectral.specseq.SpectralPages`.

    The first link is labelled ``E_inf`` when the pages reached the limit page,
    otherwise it is the last computed page.
    """
    totals = {r: sum(dims.values()) for r, dims in sorted(pages.dims.items())}
    last = pages.last_page
    top_label = "E_inf" if pages.complete else f"E_{last}"
    chain = [(top_label, totals[last])]
    chain += [(f"E_{r}", totals[r]) for r in range(last - 1, 0, -1)]
    if last == 1:
        chain.append(("E_1", totals[1]))
    return BoundsReport(totals, chain, pages.frame(), totals[1], pages.complete)


def compare_presentations(presentations):
    """Tabulate the bounds several presentations give for the same manifold.

    :param presentations: ``{name: SpectralPages}``
    :return: DataFrame indexed by presentation with ``e1_total``, ``e2_total``
        and a ``best`` flag on the smallest ``E_2`` bound
    """
    names = list(presentations)
    e1 = [presentations[n].total(1) for n in names]
    e2 = [presentations[n].total(2) for n in names]
    df = pd.DataFrame({"presentation": names, "e1_total": e1, "e2_total": e2})
    df["best"] = df["e2_total"] == (np.min(e2) if e2 else 0)
    return df.set_index("presentation")
