"""Weight multiplicities, the multiplicity of an irreducible in R(M), and the normality test."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cosets import CosetTable
from .rootsys import RootSystem, RootSystemError, Weight, dominant_representative

__all__ = [
    "WeightMultiplicityTable",
    "OrbitCoverMultiplicity",
    "weight_multiplicities",
    "weyl_dimension",
    "orbit_cover_multiplicity",
    "normality_check",
    "dominant_weights_by_height",
]


@dataclass(frozen=True)
class WeightMultiplicityTable:
    highest_weight: Weight
    entries: dict  # Weight -> int

    def multiplicity(self, mu: Weight) -> int:
        return self.entries.get(mu, 0)

    @property
    def dimension(self) -> int:
        return sum(self.entries.values())


@dataclass(frozen=True)
class OrbitCoverMultiplicity:
    highest_weight: Weight
    mult_via_lambda_R: int
    mult_via_lambda_dom: int


def _check_highest_weight(rs: RootSystem, hw) -> Weight:
    hw = rs.check_weight(hw)
    if not rs.in_weight_lattice(hw):
        raise RootSystemError(f"{hw} is not in the weight lattice of {rs.id}")
    if not rs.is_dominant(hw):
        raise RootSystemError(f"{hw} is not dominant")
    return hw


def weyl_dimension(rs: RootSystem, hw: Weight) -> int:
    rho = rs.rho
    num = Fraction(1)
    den = Fraction(1)
    for a in rs.positive_roots:
        num *= rs.inner(hw + rho, a)
        den *= rs.inner(rho, a)
    d = num / den
    assert d.denominator == 1
    return int(d)


def _below(hw: Weight, mu: Weight) -> bool:
    """``mu <= hw`` in the dominance order."""
    return all(c.denominator == 1 and c >= 0 for c in hw - mu)


def weight_multiplicities(rs: RootSystem, hw, height_bound=None) -> WeightMultiplicityTable:
    """Freudenthal's recursion, working down from ``hw`` by depth.

    ``height_bound`` limits the depth (``height(hw - mu)``) explored; the table is
    then partial.
    """
    hw = _check_highest_weight(rs, hw)
    r = rs.rank
    simple = rs.simple_roots
    rho = rs.rho
    pos = rs.positive_roots
    norm_top = rs.inner(hw + rho, hw + rho)

    # weights of V(hw): mu <= hw whose dominant conjugate is also <= hw
    layers = [[hw]]
    seen = {hw}
    while True:
        if height_bound is not None and len(layers) > height_bound:
            break
        nxt = []
        for mu in layers[-1]:
            for a in simple:
                nu = mu - a
                if nu in seen:
                    continue
                dom, _ = dominant_representative(rs, nu)
                if _below(hw, dom):
                    seen.add(nu)
                    nxt.append(nu)
        if not nxt:
            break
        layers.append(sorted(nxt, key=lambda w: w.coords))

    mult = {hw: 1}
    for layer in layers[1:]:
        for mu in layer:
            total = Fraction(0)
            for a in pos:
                k = 1
                while True:
                    up = mu + k * a
                    m = mult.get(up)
                    if m is None:
                        if not _below(hw, up):
                            break
                        k += 1
                        continue
                    total += m * rs.inner(up, a)
                    k += 1
            den = norm_top - rs.inner(mu + rho, mu + rho)
            val = 2 * total / den
            if val.denominator != 1:
                raise ArithmeticError(f"non-integral multiplicity {val} at {mu}")
            if val:
                mult[mu] = int(val)
    return WeightMultiplicityTable(hw, mult)


def orbit_cover_multiplicity(rs: RootSystem, table: CosetTable, hw) -> OrbitCoverMultiplicity:
    """Multiplicity of V(hw) in R(M), summed over lambda_R and over lambda_dom."""
    wm = weight_multiplicities(rs, hw)
    via_R = sum(wm.multiplicity(rec.lambda_R) for rec in table)
    via_dom = sum(wm.multiplicity(rec.lambda_dom) for rec in table)
    return OrbitCoverMultiplicity(wm.highest_weight, via_R, via_dom)


def normality_check(rs: RootSystem, table: CosetTable) -> tuple[bool, list[dict]]:
    """Normal iff lambda_dom == lambda_R in every coset.

    Offenders are reported with the simple-root indices where lambda_dom has
    coefficient >= 1.
    """
    offending = []
    for rec in table:
        if rec.lambda_dom != rec.lambda_R:
            big = [i + 1 for i, a in enumerate(rec.lambda_dom) if a >= 1]
            offending.append({"coset_id": rec.coset_id, "lambda_dom": rec.lambda_dom, "coefficients_ge_1": big})
    return not offending, offending


def dominant_weights_by_height(rs: RootSystem, count: int) -> list[Weight]:
    """The ``count`` dominant weights of least height (ties: lexicographic in alpha-coordinates)."""
    fund = rs.fundamental_weights()
    heights = [w.height() for w in fund]
    limit = max(heights)
    while True:
        found = []
        ranges = [range(int(limit / h) + 1) for h in heights]
        for c in itertools.product(*ranges):
            w = rs.from_fundamental(c)
            if w.height() <= limit:
                found.append(w)
        if len(found) >= count:
            found.sort(key=lambda w: (w.height(), w.coords))
            return found[:count]
        limit *= 2
