"""Root systems of simple type, weights in simple-root coordinates, Weyl group actions.

Weights are stored in alpha-coordinates: ``Weight((a_1, ..., a_r))`` stands for
``a_1 alpha_1 + ... + a_r alpha_r``.  Simple roots are numbered as in Bourbaki /
Humphreys.  All arithmetic is exact (``fractions.Fraction``).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .intlat import inverse, mat_vec

__all__ = [
    "RootSystemError",
    "RootSystemId",
    "RootSystem",
    "Weight",
    "parse_type",
    "build_root_system",
    "simple_reflection",
    "apply_word",
    "dominant_representative",
    "weyl_orbit",
    "POSITIVE_ROOT_COUNTS",
]

DEFAULT_ORBIT_CAP = 10**7


class RootSystemError(ValueError):
    """Invalid root-system input (bad type, rank, index or weight)."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point weights are not accepted")
    return Fraction(x)


@dataclass(frozen=True, order=True)
class Weight:
    """Exact rational vector in the simple-root basis."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(_frac(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @classmethod
    def unit(cls, rank: int, i: int) -> "Weight":
        """The simple root alpha_i (1-based)."""
        return cls(1 if k == i - 1 else 0 for k in range(rank))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, k):
        return self.coords[k]

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "Weight":
        return Weight(-a for a in self.coords)

    def __mul__(self, k) -> "Weight":
        k = _frac(k)
        return Weight(k * a for a in self.coords)

    __rmul__ = __mul__

    def height(self) -> Fraction:
        return sum(self.coords, Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def in_root_lattice(self) -> bool:
        return all(a.denominator == 1 for a in self.coords)

    def __repr__(self):
        return "Weight(%s)" % ", ".join(str(a) for a in self.coords)


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

POSITIVE_ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@dataclass(frozen=True, order=True)
class RootSystemId:
    family: str
    rank: int

    def __post_init__(self):
        fam, n = self.family, self.rank
        if fam not in POSITIVE_ROOT_COUNTS:
            raise RootSystemError(f"unknown family {fam!r}; expected one of A,B,C,D,E,F,G")
        if not isinstance(n, int) or isinstance(n, bool):
            raise RootSystemError(f"rank must be an integer, got {n!r}")
        if fam in _MIN_RANK:
            if n < _MIN_RANK[fam]:
                raise RootSystemError(f"type {fam} needs rank >= {_MIN_RANK[fam]}, got {n}")
        elif n not in _EXCEPTIONAL_RANKS[fam]:
            allowed = ", ".join(str(r) for r in _EXCEPTIONAL_RANKS[fam])
            raise RootSystemError(f"type {fam} exists only in rank {allowed}, got {n}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def parse_type(text: str) -> RootSystemId:
    """Parse ``"E6"``, ``"a3"``, ``"D_5"`` into a :class:`RootSystemId`."""
    s = text.strip().replace("_", "")
    if len(s) < 2 or not s[1:].isdigit():
        raise RootSystemError(f"cannot parse root system type {text!r}; expected e.g. A3 or E6")
    return RootSystemId(s[0].upper(), int(s[1:]))


def _symmetric_form(fam: str, n: int) -> list[list[Fraction]]:
    """Gram matrix (alpha_i, alpha_j) in Bourbaki numbering."""
    h = Fraction(1, 2)
    B = [[Fraction(0)] * n for _ in range(n)]

    def link(i, j, val):
        B[i - 1][j - 1] = B[j - 1][i - 1] = Fraction(val)

    if fam == "A":
        lengths = [2] * n
        edges = [(i, i + 1, -1) for i in range(1, n)]
    elif fam == "B":
        lengths = [2] * (n - 1) + [1]
        edges = [(i, i + 1, -1) for i in range(1, n)]
    elif fam == "C":
        lengths = [1] * (n - 1) + [2]
        edges = [(i, i + 1, -h) for i in range(1, n - 1)] + [(n - 1, n, -1)]
    elif fam == "D":
        lengths = [2] * n
        edges = [(i, i + 1, -1) for i in range(1, n - 1)] + [(n - 2, n, -1)]
    elif fam == "E":
        lengths = [2] * n
        edges = [(1, 3, -1), (2, 4, -1), (3, 4, -1)] + [(i, i + 1, -1) for i in range(4, n)]
    elif fam == "F":
        lengths = [2, 2, 1, 1]
        edges = [(1, 2, -1), (2, 3, -1), (3, 4, -h)]
    else:  # G
        lengths = [2, 6]
        edges = [(1, 2, -3)]
    for i, ln in enumerate(lengths):
        B[i][i] = Fraction(ln)
    for i, j, v in edges:
        link(i, j, v)
    return B


@dataclass(frozen=True)
class RootSystem:
    """Immutable root datum for one simple type.

    ``cartan[i][j] = <alpha_j, alpha_i^vee>`` so that ``<lam, alpha_i^vee>`` is the
    i-th entry of ``cartan @ lam.coords``.
    """

    id: RootSystemId
    cartan: tuple[tuple[int, ...], ...]
    pairing: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[Weight, ...]
    _cartan_inv: tuple[tuple[Fraction, ...], ...] = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return self.id.rank

    @property
    def simple_roots(self) -> tuple[Weight, ...]:
        return tuple(Weight.unit(self.rank, i) for i in range(1, self.rank + 1))

    @property
    def xi(self) -> Weight:
        """Sum of the simple roots."""
        return Weight((1,) * self.rank)

    @property
    def rho(self) -> Weight:
        return Fraction(1, 2) * sum(self.positive_roots, Weight.zero(self.rank))

    def coroot_pairings(self, lam: Weight) -> tuple[Fraction, ...]:
        """``(<lam, alpha_1^vee>, ..., <lam, alpha_r^vee>)`` (fundamental-weight coordinates)."""
        return tuple(mat_vec(self.cartan, lam.coords))

    def inner(self, a: Weight, b: Weight) -> Fraction:
        B = self.pairing
        return sum(
            (a[i] * B[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j]),
            Fraction(0),
        )

    def fundamental_weights(self) -> tuple[Weight, ...]:
        inv = self._cartan_inv
        return tuple(Weight(inv[i][k] for i in range(self.rank)) for k in range(self.rank))

    def from_fundamental(self, coeffs: Sequence) -> Weight:
        return Weight(mat_vec(self._cartan_inv, [_frac(c) for c in coeffs]))

    def in_weight_lattice(self, lam: Weight) -> bool:
        return all(c.denominator == 1 for c in self.coroot_pairings(lam))

    def is_dominant(self, lam: Weight) -> bool:
        return all(c >= 0 for c in self.coroot_pairings(lam))

    def check_weight(self, lam: Weight) -> Weight:
        if not isinstance(lam, Weight):
            lam = Weight(lam)
        if len(lam) != self.rank:
            raise RootSystemError(f"weight has {len(lam)} coordinates, {self.id} has rank {self.rank}")
        return lam


@lru_cache(maxsize=None)
def _build(fam: str, n: int) -> RootSystem:
    B = _symmetric_form(fam, n)
    cartan = tuple(tuple(int(2 * B[i][j] / B[i][i]) for j in range(n)) for i in range(n))
    # root strings: beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0
    simple = [Weight.unit(n, i) for i in range(1, n + 1)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            pair = mat_vec(cartan, beta.coords)
            for i, a in enumerate(simple):
                p = 0
                cur = beta - a
                while cur in roots:
                    p += 1
                    cur = cur - a
                if p - pair[i] > 0:
                    cand = beta + a
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        layer = nxt
    ordered = tuple(sorted(roots, key=lambda w: (w.height(), w.coords)))
    return RootSystem(
        id=RootSystemId(fam, n),
        cartan=cartan,
        pairing=tuple(tuple(r) for r in B),
        positive_roots=ordered,
        _cartan_inv=tuple(tuple(r) for r in inverse(cartan)),
    )


def build_root_system(rid) -> RootSystem:
    """Root system for ``rid`` (a :class:`RootSystemId` or a string such as ``"E6"``)."""
    if isinstance(rid, str):
        rid = parse_type(rid)
    return _build(rid.family, rid.rank)


def simple_reflection(rs: RootSystem, i: int, lam: Weight) -> Weight:
    """``s_i(lam) = lam - <lam, alpha_i^vee> alpha_i`` with 1-based ``i``."""
    if not 1 <= i <= rs.rank:
        raise RootSystemError(f"simple reflection index {i} out of range 1..{rs.rank}")
    row = rs.cartan[i - 1]
    c = sum((row[j] * lam[j] for j in range(rs.rank) if row[j]), Fraction(0))
    if c == 0:
        return lam
    coords = list(lam.coords)
    coords[i - 1] -= c
    return Weight(coords)


def apply_word(rs: RootSystem, word: Sequence[int], lam: Weight) -> Weight:
    """Apply ``s_{w[0]} s_{w[1]} ... s_{w[-1]}`` to ``lam`` (the last letter acts first)."""
    for i in reversed(word):
        lam = simple_reflection(rs, i, lam)
    return lam


def dominant_representative(rs: RootSystem, lam: Weight) -> tuple[Weight, list[int]]:
    """Dominant element of ``W lam`` and a word ``w`` with ``apply_word(w, dom) == lam``.

    Greedy: reflect in the smallest ``i`` with ``<lam, alpha_i^vee> < 0`` until dominant.
    """
    lam = rs.check_weight(lam)
    word: list[int] = []
    cur = lam
    while True:
        pairs = rs.coroot_pairings(cur)
        neg = next((k for k, c in enumerate(pairs) if c < 0), None)
        if neg is None:
            return cur, word
        cur = simple_reflection(rs, neg + 1, cur)
        word.append(neg + 1)


def weyl_orbit(rs: RootSystem, lam: Weight, cap: int = DEFAULT_ORBIT_CAP) -> set[Weight]:
    """The orbit ``W lam`` by breadth-first closure under simple reflections."""
    lam = rs.check_weight(lam)
    seen = {lam}
    queue = deque([lam])
    while queue:
        cur = queue.popleft()
        for i in range(1, rs.rank + 1):
            nxt = simple_reflection(rs, i, cur)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise RootSystemError(f"Weyl orbit exceeds the cap of {cap} elements")
                queue.append(nxt)
    return seen
