"""Cosets of the weight lattice modulo the root lattice and their distinguished weights."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .rootsys import (
    RootSystem,
    RootSystemError,
    RootSystemId,
    Weight,
    apply_word,
    dominant_representative,
    weyl_orbit,
)

__all__ = [
    "InvariantViolation",
    "CosetRecord",
    "CosetTable",
    "lambda_R_of",
    "enumerate_cosets",
    "conjugacy_witness",
    "certify_minimal",
]


class InvariantViolation(RuntimeError):
    """A mathematical invariant failed to hold; always a bug or a counterexample."""


@dataclass(frozen=True)
class CosetRecord:
    coset_id: int
    lambda_R: Weight
    lambda_dom: Weight
    lambda_C: Weight
    witness: tuple[int, ...]  # apply_word(witness, lambda_dom) == lambda_R


@dataclass(frozen=True)
class CosetTable:
    root_system: RootSystemId
    records: tuple[CosetRecord, ...]

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def lambda_Rs(self) -> list[Weight]:
        return [r.lambda_R for r in self.records]

    def record_for(self, mu: Weight) -> CosetRecord:
        """The record of the coset containing ``mu`` (``mu`` must lie in P)."""
        lr = _frac_part(mu)
        for rec in self.records:
            if rec.lambda_R == lr:
                return rec
        raise KeyError(f"no coset with lambda_R = {lr}")


def _frac_part(mu: Weight) -> Weight:
    return Weight(a - math.floor(a) for a in mu)


def lambda_R_of(rs: RootSystem, mu: Weight) -> Weight:
    """The coset representative of ``mu`` with every alpha-coordinate in [0, 1)."""
    mu = rs.check_weight(mu)
    if not rs.in_weight_lattice(mu):
        raise RootSystemError(f"{mu} is not in the weight lattice of {rs.id}")
    return _frac_part(mu)


def certify_minimal(rs: RootSystem, lam_dom: Weight) -> bool:
    """True if no dominant ``lam_dom - sum n_i alpha_i`` (n != 0, n_i >= 0) exists.

    Dominant weights have nonnegative alpha-coordinates, so ``n_i <= floor(a_i)``.
    """
    ranges = [range(int(math.floor(a)) + 1) if a >= 0 else range(0) for a in lam_dom]
    for n in itertools.product(*ranges):
        if any(n) and rs.is_dominant(lam_dom - Weight(n)):
            return False
    return True


def _weight_lattice_cosets(rs: RootSystem) -> list[Weight]:
    """All lambda_R values: closure of {0} under adding fundamental weights mod Q."""
    found = {Weight.zero(rs.rank)}
    frontier = list(found)
    gens = rs.fundamental_weights()
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _frac_part(x + g)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(found, key=lambda w: w.coords)


def enumerate_cosets(rs: RootSystem) -> CosetTable:
    """One :class:`CosetRecord` per element of P/Q, ordered by lambda_R lexicographically."""
    records = []
    xi = rs.xi
    for k, lr in enumerate(_weight_lattice_cosets(rs)):
        dom, word = dominant_representative(rs, lr)
        if not certify_minimal(rs, dom):
            raise InvariantViolation(f"{rs.id}: dominant conjugate {dom} of {lr} is not minimal in its coset")
        if not (dom - lr).in_root_lattice():
            raise InvariantViolation(f"{rs.id}: {dom} and {lr} lie in different cosets")
        records.append(CosetRecord(k, lr, dom, xi - lr, tuple(word)))
    return CosetTable(rs.id, tuple(records))


def conjugacy_witness(rs: RootSystem, rec: CosetRecord, check_orbit: bool = False) -> tuple[int, ...]:
    """Word sending lambda_dom to lambda_R, verified by replay.

    With ``check_orbit`` the conjugacy is also confirmed by orbit membership.
    """
    word = rec.witness
    if apply_word(rs, word, rec.lambda_dom) != rec.lambda_R:
        raise InvariantViolation(f"{rs.id}: witness {word} does not send {rec.lambda_dom} to {rec.lambda_R}")
    if check_orbit and rec.lambda_R not in weyl_orbit(rs, rec.lambda_dom):
        raise InvariantViolation(f"{rs.id}: {rec.lambda_R} is not in the Weyl orbit of {rec.lambda_dom}")
    return word
