"""Braid words, plat closures and crossingless (Temperley-Lieb) tangles.

A :class:`FlatTangle` keeps only what the TQFT can see: the pairing of its
boundary points and the number of closed circles it carries. Boundary points
are numbered bottom edge left to right (``0 .. bottom-1``) and then top edge
left to right (``bottom .. bottom+top-1``). Public functions that take strand or
point positions use 1-based numbering.
"""
import re
from dataclasses import dataclass
from typing import Tuple

from dehncube.common.errors import BraidWordError, PlatError
from dehncube.common.graphs import graph_components

IDENTITY = "identity"
CUPCAP = "cupcap"

_TOKEN = re.compile(r"^s(\d+)(\^-1)?$")


@dataclass(frozen=True)
class BraidWord:
    """A braid word on an even number of strands.

    :param strands: number of strands
    :param letters: tuple of ``(k, sign)`` with ``1 <= k <= strands-1`` and sign ``+1`` or ``-1``
    """
    strands: int
    letters: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 2 or self.strands % 2:
            raise BraidWordError(
                f"Plat closure needs a positive even strand count, got {self.strands}")
        for k, sign in self.letters:
            if not 1 <= k <= self.strands - 1:
                raise BraidWordError(
                    f"Generator s{k} is out of range for {self.strands} strands")
            if sign not in (1, -1):
                raise BraidWordError(f"Sign of s{k} must be +1 or -1, got {sign}")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(f"s{k}" if sign > 0 else f"s{k}^-1" for k, sign in self.letters)


def parse_braid_word(text, strands):
    """Parse whitespace separated tokens ``s<k>`` or ``s<k>^-1``.

    :param text: the word, may be empty
    :param strands: number of strands (even)
    :raises BraidWordError: on a malformed token, an index >= strands or an odd strand count
    """
    letters = []
    for token in text.split():
        match = _TOKEN.match(token)
        if match is None:
            raise BraidWordError(f"Malformed braid token '{token}'")
        k = int(match.group(1))
        if not 1 <= k <= strands - 1:
            raise BraidWordError(f"Braid token '{token}' is out of range for {strands} strands")
        letters.append((k, -1 if match.group(2) else 1))
    return BraidWord(strands, tuple(letters))


def mirror(b):
    """Reverse the word and negate every letter (an involution)."""
    return BraidWord(b.strands, tuple((k, -sign) for k, sign in reversed(b.letters)))


def writhe(b):
    return sum(sign for _, sign in b.letters)


def is_planar(partner, bottom, top):
    """Test that a pairing can be drawn without crossings inside the strip.

    The boundary is walked once around (bottom left to right, then top right to
    left); the pairing is planar iff it is a proper bracketing of that cycle.
    """
    order = list(range(bottom)) + list(range(bottom + top - 1, bottom - 1, -1))
    stack = []
    for point in order:
        if stack and stack[-1] == partner[point]:
            stack.pop()
        else:
            stack.append(point)
    return not stack


@dataclass(frozen=True)
class FlatTangle:
    """Crossingless matching of ``bottom + top`` boundary points plus closed circles.

    :param bottom: boundary points on the bottom edge
    :param top: boundary points on the top edge
    :param partner: ``partner[i]`` is the point paired with point ``i``
    :param circles: closed components carried along
    """
    bottom: int
    top: int
    partner: Tuple[int, ...]
    circles: int = 0

    def __post_init__(self):
        n = self.bottom + self.top
        if n % 2:
            raise ValueError(f"Odd number of boundary points ({self.bottom}+{self.top})")
        if len(self.partner) != n or sorted(self.partner) != list(range(n)) or any(
                self.partner[p] == p or self.partner[self.partner[p]] != p for p in range(n)):
            raise ValueError("Boundary pairing is not a perfect matching")
        if not is_planar(self.partner, self.bottom, self.top):
            raise ValueError("Boundary pairing is not planar")
        if self.circles < 0:
            raise ValueError("Negative circle count")

    @property
    def is_closed(self):
        return self.bottom == 0 and self.top == 0

    def pairs(self):
        """Pairs ``(i, j)`` with ``i < j`` in 0-based point numbering."""
        return sorted((p, q) for p, q in enumerate(self.partner) if p < q)

    @classmethod
    def from_pairs(cls, bottom, top, pairs, circles=0):
        partner = [-1] * (bottom + top)
        for p, q in pairs:
            partner[p], partner[q] = q, p
        return cls(bottom, top, tuple(partner), circles)


def elementary_tangle(kind, strands, k=None):
    """The identity tangle or ``cupcap(k)`` on ``strands`` strands.

    ``cupcap(k)`` joins bottom points ``k, k+1`` by a cap-shaped arc and top points
    ``k, k+1`` by a cup-shaped arc (1-based); other strands run straight.

    :raises ValueError: for an unknown kind or ``k`` outside ``1 .. strands-1``
    """
    n = strands
    if kind == IDENTITY:
        return FlatTangle.from_pairs(n, n, [(i, n + i) for i in range(n)])
    if kind != CUPCAP:
        raise ValueError(f"Unknown elementary tangle '{kind}'")
    if k is None or not 1 <= k <= n - 1:
        raise ValueError(f"cupcap({k}) is out of range for {n} strands")
    a, b = k - 1, k
    pairs = [(i, n + i) for i in range(n) if i not in (a, b)]
    pairs += [(a, b), (n + a, n + b)]
    return FlatTangle.from_pairs(n, n, pairs)


def compose(lower, upper):
    """Stack ``upper`` on top of ``lower`` and trace strands through the shared edge.

    :return: the induced pairing of the outer boundary; circles add up, plus one
        for every closed loop formed at the interface
    :raises ValueError: if ``lower.top != upper.bottom``
    """
    if lower.top != upper.bottom:
        raise ValueError(
            f"Cannot stack a tangle with {upper.bottom} bottom points on one with {lower.top} top points")
    lb, m, ut = lower.bottom, lower.top, upper.top
    n_nodes = lb + m + ut
    edges = [(p, q) for p, q in lower.pairs()]
    edges += [(lb + p, lb + q) for p, q in upper.pairs()]
    if n_nodes == 0:
        return FlatTangle(0, 0, (), lower.circles + upper.circles)
    _, labels = graph_components(n_nodes, edges)
    outer = list(range(lb)) + list(range(lb + m, n_nodes))
    ends = {}
    for point in outer:
        ends.setdefault(labels[point], []).append(point)
    loops = len(set(labels[lb:lb + m]) - set(ends))
    remap = {p: (p if p < lb else p - m) for p in outer}
    pairs = [(remap[a], remap[b]) for a, b in ends.values()]
    return FlatTangle.from_pairs(lb, ut, pairs, lower.circles + upper.circles + loops)


@dataclass(frozen=True)
class PlatClosure:
    """Cup pairing of the bottom points and cap pairing of the top points (1-based pairs)."""
    strands: int
    cups: Tuple[Tuple[int, int], ...]
    caps: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for name, pairs in (("cups", self.cups), ("caps", self.caps)):
            points = sorted(p for pair in pairs for p in pair)
            if points != list(range(1, self.strands + 1)):
                raise PlatError(f"Plat {name} {pairs} are not a perfect matching of {self.strands} points")
            partner = [0] * self.strands
            for a, b in pairs:
                partner[a - 1], partner[b - 1] = b - 1, a - 1
            if not is_planar(partner, self.strands, 0):
                raise PlatError(f"Plat {name} {pairs} are not planar")

    @property
    def is_standard(self):
        return self == standard_plat(self.strands)

    def cup_tangle(self):
        return FlatTangle.from_pairs(0, self.strands, [(a - 1, b - 1) for a, b in self.cups])

    def cap_tangle(self):
        return FlatTangle.from_pairs(self.strands, 0, [(a - 1, b - 1) for a, b in self.caps])

    def __str__(self):
        if self.is_standard:
            return "standard"
        cups = ",".join(f"{a}-{b}" for a, b in self.cups)
        caps = ",".join(f"{a}-{b}" for a, b in self.caps)
        return cups if cups == caps else f"{cups}/{caps}"


def standard_plat(strands):
    """Pairs ``(2i-1, 2i)`` on both ends."""
    pairs = tuple((2 * i - 1, 2 * i) for i in range(1, strands // 2 + 1))
    return PlatClosure(strands, pairs, pairs)


def _parse_pairs(text):
    pairs = []
    for item in text.split(","):
        match = re.match(r"^\s*(\d+)\s*-\s*(\d+)\s*$", item)
        if match is None:
            raise PlatError(f"Malformed plat pair '{item}'")
        a, b = sorted((int(match.group(1)), int(match.group(2))))
        pairs.append((a, b))
    return tuple(sorted(pairs))


def parse_plat(text, strands):
    """Parse ``standard``, ``a-b,c-d,...`` (same pairing on both ends) or ``cups/caps``.

    :raises PlatError: on malformed or non-planar pairings
    """
    if text is None or text.strip() == "standard":
        return standard_plat(strands)
    parts = text.split("/")
    if len(parts) > 2:
        raise PlatError(f"Malformed plat '{text}'")
    cups = _parse_pairs(parts[0])
    caps = _parse_pairs(parts[-1])
    return PlatClosure(strands, cups, caps)


def close_plat(t, plat):
    """Close a tangle with the plat cups below and caps above.

    :return: a closed :class:`FlatTangle` that only carries a circle count
    :raises ValueError: on a size mismatch
    """
    if t.bottom != plat.strands or t.top != plat.strands:
        raise ValueError(
            f"Tangle with {t.bottom}/{t.top} endpoints does not fit a plat on {plat.strands} strands")
    return compose(compose(plat.cup_tangle(), t), plat.cap_tangle())


def with_auxiliary_strands(b, plat):
    """Append two unlinked strands with their own plat pair (a split unknot)."""
    n = b.strands
    extra = ((n + 1, n + 2),)
    return (BraidWord(n + 2, b.letters),
            PlatClosure(n + 2, plat.cups + extra, plat.caps + extra))
