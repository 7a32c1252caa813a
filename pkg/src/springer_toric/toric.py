"""Cones, fans and semigroups for the toric varieties V (lattice P) and V_ad (lattice Q).

The cocharacter lattice N = Hom(P, Z) is written in the basis dual to the
fundamental weights, so a vector ``v`` of the ambient space has N-coordinates
``(v(omega_1), ..., v(omega_r))``.  The element dual to the simple-root basis,
``v_i``, has coordinates given by row ``i`` of the inverse Cartan matrix.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

from .cosets import CosetTable, InvariantViolation, enumerate_cosets, lambda_R_of
from .intlat import (
    FiniteAbelianGroup,
    LatticeError,
    det,
    inverse,
    mat_vec,
    quotient_group,
    rank,
    smith_normal_form,
    transpose,
)
from .rootsys import RootSystem, RootSystemError, Weight

__all__ = [
    "ToricError",
    "Cone",
    "Fan",
    "SemigroupDecomposition",
    "primitive",
    "sigma_cone",
    "face_cone",
    "face_fan",
    "is_smooth",
    "cone_multiplicity",
    "resolve_fan",
    "check_refinement",
    "semigroup_decompose",
    "decompositions",
    "weight_lattice_points",
    "hilbert_basis",
    "canonical_module_points",
    "orbifold_chart",
]

DEFAULT_RESOLUTION_CAP = 10_000


class ToricError(ValueError):
    pass


def primitive(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector on the ray through the rational vector ``v``."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ToricError("zero vector has no primitive generator")
    s = reduce(math.lcm, (x.denominator for x in fr), 1)
    ints = [int(x * s) for x in fr]
    g = reduce(math.gcd, ints)
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class Cone:
    """Cone generated by primitive integer rays in N."""

    ray_generators: tuple[tuple[int, ...], ...]
    dim: int

    def __init__(self, rays: Iterable[Sequence]):
        gens = tuple(primitive(r) for r in rays)
        object.__setattr__(self, "ray_generators", gens)
        object.__setattr__(self, "dim", rank(gens) if gens else 0)

    @property
    def simplicial(self) -> bool:
        return self.dim == len(self.ray_generators)


@dataclass(frozen=True)
class Fan:
    """Simplicial fan stored by its rays and maximal cones (as sorted ray-index tuples)."""

    rays: tuple[tuple[int, ...], ...]
    maximal: tuple[tuple[int, ...], ...]

    def cones(self) -> list[Cone]:
        """Every cone of the fan, faces included (the zero cone appears once)."""
        faces = set()
        for m in self.maximal:
            for k in range(len(m) + 1):
                faces.update(itertools.combinations(m, k))
        return [Cone([self.rays[i] for i in f]) for f in sorted(faces, key=lambda f: (len(f), f))]

    def maximal_cones(self) -> list[Cone]:
        return [Cone([self.rays[i] for i in m]) for m in self.maximal]

    def support_descriptor(self) -> dict:
        return {"dim": len(self.rays[0]) if self.rays else 0, "maximal_cones": len(self.maximal)}


# ---------------------------------------------------------------- the cone sigma


def sigma_cone(rs: RootSystem) -> Cone:
    """The cone generated by the basis ``v_i`` dual to the simple roots, in N."""
    inv = rs._cartan_inv
    return Cone([inv[i] for i in range(rs.rank)])


def face_cone(rs: RootSystem, J: Iterable[int]) -> Cone:
    """The face tau_J of sigma spanned by ``v_j``, ``j in J`` (1-based)."""
    inv = rs._cartan_inv
    J = sorted(set(J))
    if any(not 1 <= j <= rs.rank for j in J):
        raise RootSystemError(f"face index out of range 1..{rs.rank}: {J}")
    return Cone([inv[j - 1] for j in J])


def face_fan(c: Cone) -> Fan:
    if not c.simplicial:
        raise ToricError("only simplicial cones are supported")
    return Fan(c.ray_generators, (tuple(range(len(c.ray_generators))),))


def cone_multiplicity(c: Cone) -> int:
    """Index of the sublattice generated by the rays in the saturated lattice they span."""
    if not c.ray_generators:
        return 1
    _, D, _ = smith_normal_form(c.ray_generators)
    diag = [D[i][i] for i in range(len(c.ray_generators))]
    if any(d == 0 for d in diag):
        raise ToricError("cone generators are linearly dependent")
    return reduce(lambda a, b: a * b, diag, 1)


def is_smooth(rs: RootSystem | None, c: Cone) -> bool:
    """True iff the ray generators are part of a Z-basis of N."""
    if not c.simplicial:
        return False
    return cone_multiplicity(c) == 1


# ---------------------------------------------------------------- resolution


def _parallelepiped_point(gens: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], list[Fraction]]:
    """Nonzero lattice point of the half-open parallelepiped with least coordinate sum.

    Returns the point and its coefficients with respect to ``gens``.
    """
    n = len(gens)
    _, D, V = smith_normal_form(gens)
    Vinv = inverse(V)
    Ginv = inverse(gens)
    diag = [D[i][i] for i in range(n)]
    best = None
    for y in itertools.product(*(range(d) for d in diag)):
        if not any(y):
            continue
        x = mat_vec(transpose(Vinv), y)  # row vector y @ Vinv
        t = [c - math.floor(c) for c in mat_vec(transpose(Ginv), x)]
        point = tuple(int(sum(t[i] * gens[i][k] for i in range(n))) for k in range(n))
        key = (sum(t), point)
        if best is None or key < best[0]:
            best = (key, point, t)
    return best[1], best[2]


def resolve_fan(rs: RootSystem | None, start: Fan, cap: int = DEFAULT_RESOLUTION_CAP) -> Fan:
    """Smooth refinement of a full-dimensional simplicial fan by stellar subdivisions.

    At each step the maximal cone of largest multiplicity (ties: smallest ray
    tuple) is subdivided at its parallelepiped point of least coefficient sum.
    """
    rays = list(start.rays)
    index = {r: k for k, r in enumerate(rays)}
    maximal = set(start.maximal)
    for _ in range(cap):
        mults = {m: cone_multiplicity(Cone([rays[i] for i in m])) for m in maximal}
        bad = [m for m in maximal if mults[m] > 1]
        if not bad:
            return Fan(tuple(rays), tuple(sorted(maximal)))
        target = min(bad, key=lambda m: (-mults[m], [rays[i] for i in m]))
        gens = [rays[i] for i in target]
        p, t = _parallelepiped_point(gens)
        p = primitive(p)
        support = {target[i] for i in range(len(target)) if t[i] > 0}
        if p not in index:
            index[p] = len(rays)
            rays.append(p)
        pi = index[p]
        new = set()
        for m in maximal:
            if support <= set(m):
                for r in support:
                    new.add(tuple(sorted((set(m) - {r}) | {pi})))
            else:
                new.add(m)
        maximal = new
    worst = max(maximal, key=lambda m: cone_multiplicity(Cone([rays[i] for i in m])))
    raise ToricError(f"resolution did not finish within {cap} subdivisions; offending cone {[rays[i] for i in worst]}")


def check_refinement(original: Fan, refined: Fan) -> dict:
    """Independent checks that ``refined`` subdivides ``original`` into smooth cones.

    Returns flags ``contained``, ``walls``, ``volume``, ``smooth``.  Support
    equality follows from ``contained`` + ``walls`` (each interior wall shared by
    exactly two cones on opposite sides, boundary walls on the boundary) +
    ``volume`` (total normalized volume equal).
    """
    if len(original.maximal) != 1:
        raise ToricError("check_refinement expects a single-cone original fan")
    G = [original.rays[i] for i in original.maximal[0]]
    n = len(G)
    Ginv = inverse(G)

    def coeffs(v):
        return mat_vec(transpose(Ginv), v)

    ray_t = [coeffs(r) for r in refined.rays]
    contained = all(all(c >= 0 for c in t) for t in ray_t)

    # h(v) = sum of coefficients; h(G_i) = 1.  Volume of the truncated simplex.
    h = [sum(t) for t in ray_t]
    vol = Fraction(0)
    for m in refined.maximal:
        vol += abs(det([refined.rays[i] for i in m])) / reduce(lambda a, b: a * b, (h[i] for i in m), Fraction(1))
    volume = vol == abs(det(G))

    walls: dict[tuple[int, ...], list[int]] = {}
    for m in refined.maximal:
        for r in m:
            wall = tuple(x for x in m if x != r)
            walls.setdefault(wall, []).append(r)
    wall_ok = True
    for wall, opposite in walls.items():
        on_boundary = any(all(ray_t[i][k] == 0 for i in wall) for k in range(n))
        if on_boundary:
            wall_ok &= len(opposite) == 1
            continue
        if len(opposite) != 2:
            wall_ok = False
            continue
        normal = _wall_normal([refined.rays[i] for i in wall], n)
        s = [sum(a * b for a, b in zip(normal, refined.rays[o])) for o in opposite]
        wall_ok &= s[0] * s[1] < 0
    smooth = all(cone_multiplicity(c) == 1 for c in refined.maximal_cones())
    return {"contained": contained, "walls": wall_ok, "volume": volume, "smooth": smooth}


def _wall_normal(rows, n):
    from .intlat import nullspace

    ns = nullspace(rows, n)
    return ns[0]


# ---------------------------------------------------------------- semigroups


@dataclass(frozen=True)
class SemigroupDecomposition:
    target: Weight
    lambda_R_part: Weight
    alpha_coeffs: tuple[int, ...]


def decompositions(table: CosetTable, mu: Weight) -> list[tuple[Weight, tuple[int, ...]]]:
    """Every way of writing ``mu = lambda_R + sum n_i alpha_i`` with ``n_i >= 0`` integers."""
    out = []
    for rec in table:
        diff = mu - rec.lambda_R
        if all(c.denominator == 1 and c >= 0 for c in diff):
            out.append((rec.lambda_R, tuple(int(c) for c in diff)))
    return out


def semigroup_decompose(rs: RootSystem, mu: Weight, table: CosetTable | None = None) -> SemigroupDecomposition:
    """Write ``mu`` in sigma-dual cap P as lambda_R plus a nonnegative root-lattice vector."""
    mu = rs.check_weight(mu)
    if not rs.in_weight_lattice(mu):
        raise ToricError(f"{mu} is not in the weight lattice P of {rs.id}")
    neg = [i + 1 for i, a in enumerate(mu) if a < 0]
    if neg:
        raise ToricError(f"{mu} is outside the dual cone: negative coefficient on alpha_{neg}")
    lr = lambda_R_of(rs, mu)
    coeffs = tuple(int(a - b) for a, b in zip(mu, lr))
    if table is None:
        table = enumerate_cosets(rs)
    found = decompositions(table, mu)
    if found != [(lr, coeffs)]:
        raise InvariantViolation(f"{rs.id}: {mu} has decompositions {found}, expected exactly one")
    return SemigroupDecomposition(mu, lr, coeffs)


def _exponent(rs: RootSystem) -> int:
    """Smallest d with P contained in (1/d) Q."""
    return reduce(math.lcm, (a.denominator for w in rs.fundamental_weights() for a in w), 1)


def weight_lattice_points(rs: RootSystem, low: Fraction, high: Fraction, height_max=None,
                          strict_low: bool = False):
    """Yield P-points with every alpha-coordinate in [low, high] (or (low, high]).

    Scans the grid ``(1/d) Z^r`` for the exponent ``d`` of P/Q and filters by
    integrality of the coroot pairings, independent of the coset machinery.
    """
    d = _exponent(rs)
    lo = math.floor(Fraction(low) * d)
    hi = math.floor(Fraction(high) * d)
    axis = [k for k in range(lo, hi + 1) if (k > low * d if strict_low else k >= low * d)]
    cartan = rs.cartan
    r = rs.rank
    hmax = None if height_max is None else Fraction(height_max) * d

    def rec(prefix, total):
        if len(prefix) == r:
            if all(sum(cartan[i][j] * prefix[j] for j in range(r)) % d == 0 for i in range(r)):
                yield Weight(Fraction(y, d) for y in prefix)
            return
        for k in axis:
            if hmax is not None and total + k + (r - len(prefix) - 1) * axis[0] > hmax:
                break
            yield from rec(prefix + [k], total + k)

    yield from rec([], 0)


def hilbert_basis(rs: RootSystem) -> list[Weight]:
    """Irreducible elements of sigma-dual cap P by brute force.

    Every element is a lambda_R plus simple roots, so irreducibles have all
    coordinates <= 1 and are found in that box.
    """
    pts = [p for p in weight_lattice_points(rs, 0, 1) if not p.is_zero()]
    pset = set(pts)
    irreducible = []
    for p in pts:
        if not any((p - q) in pset for q in pts if q != p and all(a <= b for a, b in zip(q, p))):
            irreducible.append(p)
    return sorted(irreducible, key=lambda w: w.coords)


def canonical_module_points(rs: RootSystem, bound, table: CosetTable | None = None) -> set[Weight]:
    """P-points with all alpha-coordinates > 0 and height <= bound.

    Each returned point is checked to decompose uniquely as lambda_C plus a
    nonnegative root-lattice vector.
    """
    if bound < 1:
        raise ToricError("bound must be at least 1")
    if table is None:
        table = enumerate_cosets(rs)
    pts = set(weight_lattice_points(rs, 0, bound, height_max=bound, strict_low=True))
    lcs = [rec.lambda_C for rec in table]
    for mu in pts:
        hits = [lc for lc in lcs if all(c.denominator == 1 and c >= 0 for c in mu - lc)]
        if len(hits) != 1:
            raise InvariantViolation(f"{rs.id}: {mu} decomposes over lambda_C values {hits}")
    return pts


def orbifold_chart(rs: RootSystem, d: int) -> tuple[FiniteAbelianGroup, bool]:
    """Group Q_d / P for Q_d = (1/d) Q, and smoothness of the Q_d toric chart."""
    if d < 1:
        raise ToricError("d must be a positive integer")
    r = rs.rank
    P = [list(w.coords) for w in rs.fundamental_weights()]
    Qd = [[Fraction(int(i == j), d) for j in range(r)] for i in range(r)]
    try:
        group = quotient_group(P, Qd)
    except LatticeError:
        raise ToricError(f"P is not contained in (1/{d}) Q for {rs.id}") from None
    # sigma in the lattice dual to Q_d: coordinates v_i(alpha_k / d)
    cone = Cone([[Fraction(int(i == k), d) for k in range(r)] for i in range(r)])
    return group, is_smooth(None, cone)
