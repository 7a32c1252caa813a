"""Fiber groups Z(J) of V -> V_ad over the torus orbit of the face tau_J.

Three independent computations:

* ``z_group_lattice``: (tau_J^perp cap P) / (tau_J^perp cap Q) by lattice algebra;
* ``z_group_cosets``: the subgroup of P/Q of cosets whose lambda_R vanishes on J;
* ``z_group_table``: the closed-form case list for the classical types and E6, E7.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable

from .cosets import CosetTable, InvariantViolation, enumerate_cosets
from .intlat import FiniteAbelianGroup, lattice_basis, lattice_subspace_intersection, quotient_group
from .rootsys import RootSystem, RootSystemError

__all__ = [
    "FaceSpec",
    "FiberReport",
    "FiberDisagreement",
    "face_spec",
    "weight_lattice_group",
    "z_group_lattice",
    "z_group_cosets",
    "z_group_table",
    "fiber_report",
    "nonempty_subsets",
]


class FiberDisagreement(InvariantViolation):
    pass


@dataclass(frozen=True)
class FaceSpec:
    J: frozenset[int]

    def __str__(self):
        return "{" + ",".join(str(j) for j in sorted(self.J)) + "}"


def face_spec(rs: RootSystem, J: Iterable[int]) -> FaceSpec:
    J = frozenset(int(j) for j in J)
    bad = sorted(j for j in J if not 1 <= j <= rs.rank)
    if bad:
        raise RootSystemError(f"J contains indices outside 1..{rs.rank}: {bad}")
    return FaceSpec(J)


def nonempty_subsets(rank: int):
    for k in range(1, rank + 1):
        for c in itertools.combinations(range(1, rank + 1), k):
            yield frozenset(c)


@dataclass(frozen=True)
class FiberReport:
    J: FaceSpec
    group_lattice: FiniteAbelianGroup
    group_cosets: FiniteAbelianGroup
    group_table: FiniteAbelianGroup | None
    agree: bool
    orbit_closure_isomorphism: bool  # V(tau_J) -> V_ad(tau_J) is an isomorphism


def _as_face(rs, J) -> FaceSpec:
    return J if isinstance(J, FaceSpec) else face_spec(rs, J)


def weight_lattice_group(rs: RootSystem) -> FiniteAbelianGroup:
    """P/Q."""
    P = [list(w.coords) for w in rs.fundamental_weights()]
    Q = [[Fraction(int(i == j)) for j in range(rs.rank)] for i in range(rs.rank)]
    return quotient_group(Q, P)


def z_group_lattice(rs: RootSystem, J) -> FiniteAbelianGroup:
    J = _as_face(rs, J)
    r = rs.rank
    # tau_J^perp = {a_j = 0 for j in J} is spanned by alpha_i, i not in J
    perp = [[Fraction(int(i == k)) for k in range(r)] for i in range(r) if i + 1 not in J.J]
    P = [list(w.coords) for w in rs.fundamental_weights()]
    Q = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    P_J = lattice_subspace_intersection(P, perp)
    Q_J = lattice_subspace_intersection(Q, perp)
    return quotient_group(Q_J, P_J)


def z_group_cosets(rs: RootSystem, table: CosetTable, J) -> FiniteAbelianGroup:
    J = _as_face(rs, J)
    r = rs.rank
    members = [rec.lambda_R for rec in table if all(rec.lambda_R[j - 1] == 0 for j in J.J)]
    Q = [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    sup = lattice_basis(Q + [list(m.coords) for m in members])
    group = quotient_group(Q, sup)
    if group.order != len(members):
        raise InvariantViolation(f"{rs.id}, J={J}: {len(members)} cosets but subgroup order {group.order}")
    return group


def _cyclic(n: int) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(() if n == 1 else (n,))


def z_group_table(rs: RootSystem, J) -> FiniteAbelianGroup | None:
    """Closed-form Z(J) for nonempty J.  ``None`` for the empty J.

    Types without a listed case (E8, F4, G2) have trivial center and return the
    trivial group.
    """
    J = _as_face(rs, J)
    if not J.J:
        return None
    fam, n = rs.id.family, rs.rank
    Js = J.J
    all_even = all(j % 2 == 0 for j in Js)
    if fam == "A":
        c = n + 1
        for j in Js:
            c = gcd(c, j)
        return _cyclic(c)
    if fam == "B":
        return _cyclic(2 if all_even else 1)
    if fam == "C":
        return _cyclic(2 if n not in Js else 1)
    if fam == "D":
        ends = {n - 1, n} & Js
        if not ends:
            return weight_lattice_group(rs) if all_even else _cyclic(2)
        low_even = all(j % 2 == 0 for j in Js if j < n - 1)
        if len(ends) == 1 and low_even and n % 4 == 2 and n >= 6:
            return _cyclic(2)
        return _cyclic(1)
    if fam == "E" and n == 6:
        return _cyclic(3 if not Js & {1, 3, 5, 6} else 1)
    if fam == "E" and n == 7:
        return _cyclic(2 if not Js & {2, 5, 7} else 1)
    return _cyclic(1)


def fiber_report(rs: RootSystem, J, table: CosetTable | None = None, strict: bool = True) -> FiberReport:
    """Run every applicable method for ``J``; raise on disagreement when ``strict``."""
    J = _as_face(rs, J)
    if table is None:
        table = enumerate_cosets(rs)
    lat = z_group_lattice(rs, J)
    cos = z_group_cosets(rs, table, J)
    tab = z_group_table(rs, J)
    agree = lat == cos and (tab is None or tab == lat)
    if strict and not agree:
        raise FiberDisagreement(
            f"{rs.id}, J={J}: lattice method gives {lat}, coset method {cos}, closed form {tab}"
        )
    return FiberReport(J, lat, cos, tab, agree, lat.is_trivial())
