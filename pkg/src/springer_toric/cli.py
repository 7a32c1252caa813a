"""Command-line front end.

Usage::

    springer-toric <command> <FAMILY><RANK> [--J 1,3] [--weight 1/2,0,1/2]
                   [--bound N] [--format json|text] [--out PATH]

Exit status is 0 on success, 1 on bad input and 2 when a computed invariant fails
(for instance when the fiber-group methods disagree).
"""
from __future__ import annotations

import argparse
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import cosets as cosets_mod
from . import fibers, repmult, toric
from .intlat import LatticeError
from .report import (
    STATUS_INPUT_ERROR,
    STATUS_INVARIANT,
    STATUS_OK,
    ReportDocument,
    group_json,
    rat,
    weight_expr,
    weight_json,
)
from .rootsys import RootSystemError, RootSystemId, Weight, build_root_system, parse_type

COMMANDS = (
    "info",
    "cosets",
    "zgroup",
    "zgroup-sweep",
    "decompose",
    "smooth",
    "resolve",
    "canonical",
    "mult",
    "normality",
    "conformance",
)

CONFORMANCE_DEFAULT = (
    [f"A{n}" for n in range(1, 7)]
    + [f"B{n}" for n in range(2, 6)]
    + [f"C{n}" for n in range(2, 6)]
    + [f"D{n}" for n in range(4, 8)]
    + ["E6", "E7"]
)

HILBERT_BASIS_BOX_LIMIT = 5000


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{message}\n{self.format_usage().strip()}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="springer-toric", description="Lattices, cosets, toric data and fiber groups of simple root systems.")
    p.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    p.add_argument("types", nargs="*", help="root system type such as A3 or E6 (conformance: several, or ranges like A1-A4)")
    p.add_argument("--J", dest="J", help="comma-separated face indices, e.g. 2,4")
    p.add_argument("--weight", help="comma-separated alpha-coordinates, e.g. 1/2,0,1/2")
    p.add_argument("--bound", type=int, help="height bound for canonical")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--out", help="write the report to PATH instead of stdout")
    p.add_argument("--fundamental", action="store_true", help="also render fundamental-weight coordinates")
    p.add_argument("--max-rank", type=int, default=8, help="largest classical rank accepted (default 8)")
    p.add_argument("--threads", type=int, default=1, help="worker processes for conformance")
    return p


# ---------------------------------------------------------------- argument helpers


def _parse_J(text):
    if text is None or text.strip() == "":
        return []
    try:
        return sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise InputError(f"malformed --J {text!r}; expected e.g. --J 1,3") from None


def _parse_weight(text, rank):
    if text is None:
        raise InputError("this command needs --weight a1,...,ar (alpha-coordinates)")
    try:
        coords = [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"malformed --weight {text!r}; expected rationals like 1/2,0,1/2") from None
    if len(coords) != rank:
        raise InputError(f"--weight has {len(coords)} coordinates, expected {rank}")
    return Weight(coords)


def _check_limits(rid: RootSystemId, max_rank: int):
    if rid.family in "ABCD" and rid.rank > max_rank:
        raise InputError(f"{rid} exceeds the classical rank limit {max_rank} (raise with --max-rank)")


def _expand_types(items):
    out = []
    for item in items:
        m = re.fullmatch(r"([A-Ga-g])(\d+)-(?:[A-Ga-g])?(\d+)", item.strip())
        if m:
            fam = m.group(1).upper()
            lo, hi = int(m.group(2)), int(m.group(3))
            out.extend(f"{fam}{n}" for n in range(lo, hi + 1))
        else:
            out.append(item)
    return out


# ---------------------------------------------------------------- commands


def _coset_rows(rs, table, fundamental):
    return [
        {
            "coset_id": rec.coset_id,
            "lambda_R": weight_json(rec.lambda_R, rs, fundamental),
            "lambda_dom": weight_json(rec.lambda_dom, rs, fundamental),
            "lambda_C": weight_json(rec.lambda_C, rs, fundamental),
            "witness": list(rec.witness),
        }
        for rec in table
    ]


def cmd_info(rs, args):
    sigma = toric.sigma_cone(rs)
    payload = {
        "type": str(rs.id),
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "pairing": [[rat(x) for x in r] for r in rs.pairing],
        "positive_root_count": len(rs.positive_roots),
        "xi": weight_json(rs.xi),
        "fundamental_weights": [weight_json(w) for w in rs.fundamental_weights()],
        "P_mod_Q": group_json(fibers.weight_lattice_group(rs)),
        "sigma_rays": [list(r) for r in sigma.ray_generators],
        "sigma_smooth": toric.is_smooth(rs, sigma),
    }
    lines = [
        f"type {rs.id}, rank {rs.rank}, {len(rs.positive_roots)} positive roots",
        "cartan: " + str([list(r) for r in rs.cartan]),
        f"P/Q = {fibers.weight_lattice_group(rs)}",
        "sigma rays in N: " + str([list(r) for r in sigma.ray_generators]),
        f"sigma smooth: {payload['sigma_smooth']}",
    ]
    return payload, lines


def cmd_cosets(rs, args):
    table = cosets_mod.enumerate_cosets(rs)
    for rec in table:
        cosets_mod.conjugacy_witness(rs, rec)
    payload = {"type": str(rs.id), "order": len(table), "records": _coset_rows(rs, table, args.fundamental)}
    lines = [f"{len(table)} cosets of P mod Q for {rs.id}"]
    for rec in table:
        lines.append(f"[{rec.coset_id}] lambda_R   = {weight_expr(rec.lambda_R)}")
        lines.append(f"    lambda_dom = {weight_expr(rec.lambda_dom)}")
        lines.append(f"    lambda_C   = {weight_expr(rec.lambda_C)}")
        lines.append("    witness    = " + (" ".join(f"s{i}" for i in rec.witness) or "(empty)"))
    return payload, lines


def _fiber_json(rep):
    return {
        "J": sorted(rep.J.J),
        "lattice": group_json(rep.group_lattice),
        "cosets": group_json(rep.group_cosets),
        "table": group_json(rep.group_table),
        "agree": rep.agree,
        "orbit_closure_isomorphism": rep.orbit_closure_isomorphism,
    }


def cmd_zgroup(rs, args):
    J = fibers.face_spec(rs, _parse_J(args.J))
    rep = fibers.fiber_report(rs, J, strict=False)
    payload = {"type": str(rs.id), **_fiber_json(rep)}
    lines = [
        f"Z(J) for {rs.id}, J = {J}: {rep.group_lattice}",
        f"  lattice quotient: {rep.group_lattice}",
        f"  coset subgroup:   {rep.group_cosets}",
        f"  closed form:      {rep.group_table if rep.group_table is not None else '(n/a for empty J)'}",
        f"  agree = {str(rep.agree).lower()}",
        f"  V(tau_J) -> V_ad(tau_J) isomorphism: {str(rep.orbit_closure_isomorphism).lower()}",
    ]
    status = STATUS_OK if rep.agree else STATUS_INVARIANT
    return payload, lines, status


def sweep_type(name: str) -> dict:
    """All nonempty J for one type; used by zgroup-sweep and conformance."""
    rs = build_root_system(name)
    table = cosets_mod.enumerate_cosets(rs)
    rows = [_fiber_json(fibers.fiber_report(rs, J, table, strict=False)) for J in fibers.nonempty_subsets(rs.rank)]
    bad = [r for r in rows if not r["agree"]]
    return {
        "type": str(rs.id),
        "checked": len(rows),
        "agreements": len(rows) - len(bad),
        "disagreements": len(bad),
        "discrepancies": bad,
        "results": rows,
    }


def _sweep_lines(res):
    lines = [f"{res['type']}: {res['checked']} subsets, {res['agreements']} agree, {res['disagreements']} disagree"]
    for d in res["discrepancies"]:
        lines.append(
            f"  J={d['J']}: lattice {d['lattice']['name']}, cosets {d['cosets']['name']}, "
            f"table {d['table']['name']} (lattice authoritative)"
        )
    return lines


def cmd_zgroup_sweep(rs, args):
    res = sweep_type(str(rs.id))
    status = STATUS_OK if not res["disagreements"] else STATUS_INVARIANT
    return res, _sweep_lines(res), status


def cmd_decompose(rs, args):
    mu = _parse_weight(args.weight, rs.rank)
    try:
        dec = toric.semigroup_decompose(rs, mu)
    except toric.ToricError as e:
        raise InputError(str(e)) from None
    payload = {
        "type": str(rs.id),
        "target": weight_json(dec.target, rs, args.fundamental),
        "lambda_R_part": weight_json(dec.lambda_R_part, rs, args.fundamental),
        "alpha_coeffs": list(dec.alpha_coeffs),
        "unique": True,
    }
    lines = [
        f"{weight_expr(dec.target)}",
        f"  = lambda_R ({weight_expr(dec.lambda_R_part)}) + "
        + " + ".join(f"{c} α{i}" for i, c in enumerate(dec.alpha_coeffs, start=1)),
        "  decomposition is unique",
    ]
    return payload, lines


def cmd_smooth(rs, args):
    J = _parse_J(args.J)
    cone = toric.face_cone(rs, J) if J else toric.sigma_cone(rs)
    smooth = toric.is_smooth(rs, cone)
    payload = {
        "type": str(rs.id),
        "cone": "tau_J" if J else "sigma",
        "J": J,
        "rays": [list(r) for r in cone.ray_generators],
        "multiplicity": toric.cone_multiplicity(cone),
        "smooth": smooth,
    }
    lines = [f"{payload['cone']} for {rs.id}" + (f", J = {J}" if J else ""), f"  rays: {payload['rays']}",
             f"  multiplicity {payload['multiplicity']}, smooth = {str(smooth).lower()}"]
    if not J:
        d = toric._exponent(rs)
        if (d + 1) ** rs.rank <= HILBERT_BASIS_BOX_LIMIT:
            hb = toric.hilbert_basis(rs)
            payload["hilbert_basis"] = [weight_json(w) for w in hb]
            lines.append(f"  Hilbert basis of sigma-dual cap P: {len(hb)} elements (rank {rs.rank})")
            if (len(hb) == rs.rank) != smooth:
                return payload, lines, STATUS_INVARIANT
    return payload, lines


def cmd_resolve(rs, args):
    start = toric.face_fan(toric.sigma_cone(rs))
    fan = toric.resolve_fan(rs, start)
    checks = toric.check_refinement(start, fan)
    payload = {
        "type": str(rs.id),
        "original_rays": [list(r) for r in start.rays],
        "rays": [list(r) for r in fan.rays],
        "maximal_cones": [list(m) for m in fan.maximal],
        "multiplicities": [toric.cone_multiplicity(c) for c in fan.maximal_cones()],
        "checks": checks,
    }
    lines = [f"resolution of the sigma fan of {rs.id}: {len(fan.rays)} rays, {len(fan.maximal)} maximal cones"]
    lines += [f"  ray {k}: {list(r)}" for k, r in enumerate(fan.rays)]
    lines += [f"  cone {list(m)}" for m in fan.maximal]
    lines.append("  checks: " + ", ".join(f"{k}={str(v).lower()}" for k, v in sorted(checks.items())))
    return payload, lines, (STATUS_OK if all(checks.values()) else STATUS_INVARIANT)


def cmd_canonical(rs, args):
    bound = args.bound if args.bound is not None else 2
    if bound < 1:
        raise InputError("--bound must be at least 1")
    table = cosets_mod.enumerate_cosets(rs)
    pts = sorted(toric.canonical_module_points(rs, bound, table), key=lambda w: (w.height(), w.coords))
    payload = {
        "type": str(rs.id),
        "bound": bound,
        "generators_lambda_C": [weight_json(rec.lambda_C) for rec in table],
        "points": [weight_json(w) for w in pts],
    }
    lines = [f"{len(pts)} points of the canonical module of {rs.id} with height <= {bound}"]
    lines += ["  generator lambda_C = " + weight_expr(rec.lambda_C) for rec in table]
    lines += ["  " + weight_expr(w) for w in pts]
    return payload, lines


def cmd_mult(rs, args):
    hw = _parse_weight(args.weight, rs.rank)
    table = cosets_mod.enumerate_cosets(rs)
    wm = repmult.weight_multiplicities(rs, hw)
    oc = repmult.orbit_cover_multiplicity(rs, table, hw)
    weyl = repmult.weyl_dimension(rs, hw)
    payload = {
        "type": str(rs.id),
        "highest_weight": weight_json(hw, rs, args.fundamental),
        "dimension": wm.dimension,
        "weyl_dimension": weyl,
        "mult_via_lambda_R": oc.mult_via_lambda_R,
        "mult_via_lambda_dom": oc.mult_via_lambda_dom,
        "weights": [
            {"weight": weight_json(w), "multiplicity": m}
            for w, m in sorted(wm.entries.items(), key=lambda kv: (-kv[0].height(), kv[0].coords))
        ],
    }
    lines = [
        f"V({weight_expr(hw)}) of {rs.id}: dimension {wm.dimension} (Weyl formula {weyl})",
        f"  multiplicity in R(M) via lambda_R:   {oc.mult_via_lambda_R}",
        f"  multiplicity in R(M) via lambda_dom: {oc.mult_via_lambda_dom}",
    ]
    ok = wm.dimension == weyl and oc.mult_via_lambda_R == oc.mult_via_lambda_dom
    return payload, lines, (STATUS_OK if ok else STATUS_INVARIANT)


def cmd_normality(rs, args):
    table = cosets_mod.enumerate_cosets(rs)
    normal, off = repmult.normality_check(rs, table)
    payload = {
        "type": str(rs.id),
        "normal": normal,
        "offending_cosets": [
            {"coset_id": o["coset_id"], "lambda_dom": weight_json(o["lambda_dom"]), "coefficients_ge_1": o["coefficients_ge_1"]}
            for o in off
        ],
    }
    lines = [f"B-orbit closure for {rs.id}: normal = {str(normal).lower()}"]
    for o in off:
        lines.append(
            f"  coset {o['coset_id']}: lambda_dom = {weight_expr(o['lambda_dom'])}, "
            f"coefficient >= 1 on {['α%d' % i for i in o['coefficients_ge_1']]}"
        )
    return payload, lines


def conformance_sweep(names, threads: int = 1) -> tuple[dict, list[str], str]:
    names = list(names)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(sweep_type, names))
    else:
        results = [sweep_type(n) for n in names]
    total = sum(r["checked"] for r in results)
    bad = sum(r["disagreements"] for r in results)
    payload = {
        "types": [r["type"] for r in results],
        "checked": total,
        "agreements": total - bad,
        "disagreements": bad,
        "per_type": results,
    }
    lines = [f"conformance over {len(results)} types: {total} subsets, {total - bad} agree, {bad} disagree"]
    for r in results:
        lines.extend(_sweep_lines(r))
    return payload, lines, (STATUS_OK if bad == 0 else STATUS_INVARIANT)


HANDLERS = {
    "info": cmd_info,
    "cosets": cmd_cosets,
    "zgroup": cmd_zgroup,
    "zgroup-sweep": cmd_zgroup_sweep,
    "decompose": cmd_decompose,
    "smooth": cmd_smooth,
    "resolve": cmd_resolve,
    "canonical": cmd_canonical,
    "mult": cmd_mult,
    "normality": cmd_normality,
}


def _request_echo(args) -> dict:
    return {
        "command": args.command,
        "types": list(args.types),
        "J": args.J,
        "weight": args.weight,
        "bound": args.bound,
        "fundamental": args.fundamental,
        "format": args.format,
    }


def run(argv) -> ReportDocument:
    """Parse ``argv`` and compute the report; never raises for user errors."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as e:
        wants_json = "json" in argv or "--format=json" in argv
        return ReportDocument(request={"argv": list(argv)}, status=STATUS_INPUT_ERROR, error=str(e),
                              fmt="json" if wants_json else "text")
    doc = ReportDocument(request=_request_echo(args))
    doc.fmt, doc.out = args.format, args.out
    try:
        if args.command == "conformance":
            names = _expand_types(args.types) or list(CONFORMANCE_DEFAULT)
            for n in names:
                _check_limits(parse_type(n), args.max_rank)
            res = conformance_sweep([str(parse_type(n)) for n in names], args.threads)
        elif args.command in HANDLERS:
            if len(args.types) != 1:
                raise InputError(f"{args.command} takes exactly one type such as A3\n{parser.format_usage().strip()}")
            rid = parse_type(args.types[0])
            _check_limits(rid, args.max_rank)
            res = HANDLERS[args.command](build_root_system(rid), args)
        else:
            raise InputError(f"unknown command {args.command!r}; expected one of {', '.join(COMMANDS)}")
    except (InputError, RootSystemError, LatticeError) as e:
        doc.status, doc.error = STATUS_INPUT_ERROR, str(e)
        return doc
    except cosets_mod.InvariantViolation as e:
        doc.status, doc.error = STATUS_INVARIANT, str(e)
        return doc
    payload, lines, *rest = res
    doc.payload, doc.text_lines = payload, lines
    doc.status = rest[0] if rest else STATUS_OK
    return doc


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    doc = run(argv)
    text = doc.to_json() if doc.fmt == "json" else doc.to_text()
    if doc.out:
        with open(doc.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return doc.exit_code


if __name__ == "__main__":
    sys.exit(main())
