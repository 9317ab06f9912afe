"""Command-line interface: ``brstkit <command> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import List, Optional

from . import __version__, catalog
from .brst import (
    BrstCharge,
    GhostNames,
    beta_special,
    build_c0,
    build_ghost_presentation,
    build_Q,
    canonical_omega,
    double_complex_check,
    solve_brst_ansatz,
    tilde_map,
    verify_nilpotent,
)
from .brst.basis import BasisChangeError, apply_basis_change, derived_presentation
from .brst.fock import FockError, fock_expand
from .demos import DEMOS, Check, zero_check
from .io import SpecError, load_alg, load_map, load_tensor, read_text_or_file
from .ncpoly import PresentationError
from .parsing import ParseError, UnknownSymbolError
from .rewrite import OrientationError, StepLimitExceeded, confluence_check, step_limit
from .ybtensor import TensorFormError, TensorSquareOp, qla_axioms, twist_consistency, ybe_check


class InputError(Exception):
    pass


def _subst(pairs: List[str]) -> dict:
    out = {}
    for item in pairs or []:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise InputError(f"--subst expects name=rational, got {item!r}")
        try:
            out[name.strip()] = Fraction(value.strip())
        except ValueError:
            raise InputError(f"--subst value for {name} is not a rational: {value!r}") from None
    return out


def _spec(args):
    spec = load_alg(args.spec)
    unknown = [k for k in args.bindings if k not in spec.presentation.params]
    if unknown:
        raise InputError(f"--subst names unknown parameters: {', '.join(unknown)}")
    return spec.substitute(args.bindings)


def _ghost_names(spec) -> GhostNames:
    if spec.names is not None:
        return spec.names
    raise InputError("the algebra file declares no ghost names (metadata.names)")


def _phi(args, spec):
    s = _structure(spec)
    if args.phi in (None, "perm"):
        return TensorSquareOp.permutation(s.n, s.params, 1)
    if args.phi == "sigma":
        return s.sigma
    op = load_tensor(args.phi)
    return op.substitute(args.bindings) if args.bindings else op


def _structure(spec):
    if spec.structure is None:
        raise InputError("the algebra file has no 'structure' block (sigma, C)")
    return spec.structure


def _parse(args, pres, text):
    """Parse ``text`` before specializing, so it may name the substituted parameters."""
    if not args.bindings:
        return pres.parse(text)
    poly = load_alg(args.spec).presentation.parse(text).substitute(args.bindings).transfer(pres.alphabet)
    poly.params = pres.params.union(poly.params)
    return poly


def _charge(args, pres) -> BrstCharge:
    text = read_text_or_file(args.charge)
    return BrstCharge(pres.reduce(_parse(args, pres, text)), pres)


# -- commands ---------------------------------------------------------------------


def cmd_check_ybe(args) -> List[Check]:
    op = load_tensor(args.tensor)
    if args.bindings:
        op = op.substitute(args.bindings)
    r = ybe_check(op)
    return [Check("ybe", r.passed, f"{r.components} components", r.witness or None)]


def cmd_check_qla(args) -> List[Check]:
    s = _structure(_spec(args))
    return [Check(c.name, c.passed, f"{c.components} components", c.witness or None) for c in qla_axioms(s).checks]


def cmd_check_twist(args) -> List[Check]:
    spec = _spec(args)
    s = _structure(spec)
    rep = twist_consistency(s, _phi(args, spec))
    return [Check(c.name, c.passed, f"{c.components} components", c.witness or None) for c in rep.checks]


def cmd_normal_form(args) -> List[Check]:
    p = _spec(args).presentation
    nf = p.reduce(_parse(args, p, args.expr))
    return [Check("normal form", None, str(nf))]


def cmd_confluence(args) -> List[Check]:
    p = _spec(args).presentation
    rep = confluence_check(p.rules(), args.max_degree)
    out = [Check("confluence", rep.passed, f"{rep.pairs_checked} critical pairs up to degree {args.max_degree}")]
    for cp, a, b in rep.unresolved[:10]:
        out.append(Check("unresolved pair", False, cp.render(p.alphabet), f"{a} != {b}"))
    return out


def cmd_build_brst(args) -> List[Check]:
    spec = _spec(args)
    if args.mode == "proposition":
        s = _structure(spec)
        names = spec.names or GhostNames.indexed(s.n)
        phi = _phi(args, spec)
        chi0 = None if names.chi0 else (spec.chi0 if spec.chi0 is not None else 1)
        pres = build_ghost_presentation(s, phi, "sigma-twisted", names, chi0, True)
        c0 = build_c0(s, phi, pres, chi0, names)
        Q = build_Q([pres.gen(x) for x in names.constraints], c0, presentation=pres)
        return [Check("charge", None, str(Q.q)), zero_check("Q^2", verify_nilpotent(Q))]
    names = _ghost_names(spec)
    pres = spec.presentation
    if not all(g in pres.alphabet for g in names.ghosts):
        pres = canonical_omega(pres, names)
    res = solve_brst_ansatz(pres, names)
    out = []
    if res.ok:
        out.append(Check("charge", None, str(res.charge.q)))
        out.append(zero_check("Q^2", verify_nilpotent(res.charge)))
    else:
        out.append(Check("ansatz", False, f"obstruction at level {res.obstruction_level}", str(res.obstruction)))
    for k, vs in res.ambiguity.items():
        out.append(Check(f"ambiguity level {k}", None, f"{len(vs)} closed directions"))
    return out


def cmd_check_nilpotent(args) -> List[Check]:
    p = _spec(args).presentation
    Q = _charge(args, p)
    return [Check("charge", None, str(Q.q)), zero_check("Q^2", verify_nilpotent(Q))]


def cmd_basis_change(args) -> List[Check]:
    spec = _spec(args)
    src = spec.presentation
    target = load_alg(args.target).substitute(args.bindings).presentation if args.target else None
    bc = load_map(args.map, src, target)
    d = derived_presentation(src, bc, args.max_degree)
    out = [Check("closure degree", None, str(d.closure_degree))]
    for (lo, hi), expr in d.structure.items():
        br = "{%s,%s}" % (lo, hi) if d.kinds[(lo, hi)] == "anticommutator" else f"[{lo},{hi}]"
        out.append(Check("bracket", None, f"{br} = {expr}"))
    if d.presentation is not None:
        target = target or d.presentation
        bad = bc.certificate(target)
        out.append(Check("invertible", not bad, "; ".join(bad) or "both compositions are the identity"))
        if args.charge and not bad:
            q = src.reduce(_parse(args, src, read_text_or_file(args.charge)))
            out.append(Check("charge in new generators", None, str(apply_basis_change(q, bc, target))))
    return out


def _family_coefficients(p):
    j, t, w = p.gen("J"), p.gen("T"), p.gen("W")
    jw = p.reduce(j * w - w * j)
    tw = p.reduce(t * w - w * t)
    return jw.coeff("T"), jw.coeff("J^2"), tw.coeff("J*T")


def cmd_double_complex(args) -> List[Check]:
    spec = _spec(args)
    p = spec.presentation
    try:
        a1, a2, a3 = _family_coefficients(p)
    except KeyError as exc:
        raise InputError(f"double-complex needs generators J, T, W with ghosts: {exc}") from None
    if a1.is_zero() or a3.is_zero():
        raise InputError("the family needs a1 and a3 nonzero")
    names = _ghost_names(spec)
    if not all(g in p.alphabet for g in names.ghosts):
        p = canonical_omega(p, names)
    beta = beta_special(a1, a2, a3)
    tq = p.gen("T") + p.parse("J^2").scale(beta)
    Q = BrstCharge(catalog.family_charge(p, (a1, a2, a3)), p)
    Qt = BrstCharge(catalog.family_charge(p, tilde_map(a1, a2, a3), tq), p)
    rep = double_complex_check(Q, Qt)
    out = [
        Check("coefficients", None, f"a1={a1}, a2={a2}, a3={a3}; beta={beta}"),
        Check("Q", None, str(Q.q)),
        Check("Qt", None, str(Qt.q)),
    ]
    return out + [zero_check(name, r) for name, r in rep.items()]


def cmd_fock(args) -> List[Check]:
    spec = _spec(args)
    p = spec.presentation
    Q = _charge(args, p)
    eqs = fock_expand(Q, spec.names)
    return [Check(f"fock {e.monomial}", None, e.render()) for e in eqs]


def cmd_demo(args) -> List[Check]:
    return DEMOS[args.which]()


# -- driver ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def options(defaults: bool) -> argparse.ArgumentParser:
        # subcommands suppress their defaults so options given before the command survive
        def d(value):
            return value if defaults else argparse.SUPPRESS

        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--subst", nargs="+", default=d([]), metavar="NAME=RATIONAL", help="specialize parameters")
        p.add_argument("--json", action="store_true", default=d(False), help="machine-readable report")
        p.add_argument("--step-limit", type=int, default=d(None), help="reduction step limit")
        return p

    common = options(False)
    ap = argparse.ArgumentParser(prog="brstkit", description="BRST charges for quadratic algebras", parents=[options(True)])
    ap.add_argument("--version", action="version", version=f"brstkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(fn=fn)
        return p

    p = add("check-ybe", cmd_check_ybe, "Yang-Baxter equation for a tensor file")
    p.add_argument("tensor")
    p = add("check-qla", cmd_check_qla, "quantum Lie algebra axioms of a structure block")
    p.add_argument("spec")
    p = add("check-twist", cmd_check_twist, "consistency of (sigma, phi)")
    p.add_argument("spec")
    p.add_argument("--phi", default="perm", help="tensor file, 'sigma' or 'perm'")
    p = add("normal-form", cmd_normal_form, "normal form of an expression")
    p.add_argument("spec")
    p.add_argument("--expr", required=True)
    p = add("confluence", cmd_confluence, "critical-pair confluence check")
    p.add_argument("spec")
    p.add_argument("--max-degree", type=int, default=4)
    p = add("build-brst", cmd_build_brst, "construct a BRST charge")
    p.add_argument("spec")
    p.add_argument("--mode", choices=("proposition", "ansatz"), default="proposition")
    p.add_argument("--phi", default="perm")
    p = add("check-nilpotent", cmd_check_nilpotent, "reduce Q^2")
    p.add_argument("spec")
    p.add_argument("--charge", required=True, help="expression or file")
    p = add("basis-change", cmd_basis_change, "induced presentation of new generators")
    p.add_argument("spec")
    p.add_argument("--map", required=True)
    p.add_argument("--target", help="algebra file of the target presentation")
    p.add_argument("--charge", help="charge to rewrite in the new generators")
    p.add_argument("--max-degree", type=int, default=3)
    p = add("double-complex", cmd_double_complex, "Q^2, Qt^2 and {Q, Qt} for the J, T, W family")
    p.add_argument("spec")
    p = add("fock", cmd_fock, "physical-state equations on the ghost Fock space")
    p.add_argument("spec")
    p.add_argument("--charge", required=True)
    p = add("paper-demo", cmd_demo, "reproduce a worked example end to end")
    p.add_argument("which", choices=sorted(DEMOS))
    return ap


INPUT_ERRORS = (
    InputError,
    SpecError,
    ParseError,
    UnknownSymbolError,
    PresentationError,
    OrientationError,
    TensorFormError,
    FockError,
    BasisChangeError,
    FileNotFoundError,
    IsADirectoryError,
    KeyError,
    ValueError,
)


def _emit(report: dict, as_json: bool, out):
    if as_json:
        out.write(json.dumps(report, indent=1) + "\n")
        return
    for c in report["checks"]:
        tag = c["status"].upper()
        line = f"{tag:4}  {c['name']}: {c['detail']}"
        if "residual" in c:
            line += f"\n      residual: {c['residual']}"
        out.write(line + "\n")
    if report["status"] == "error":
        out.write(f"ERROR {report['error']}\n")
    else:
        out.write(f"{report['status'].upper()}\n")


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    report = {"command": " ".join(argv), "status": "pass", "checks": [], "timing": 0.0, "version": __version__}
    t0 = time.perf_counter()
    code = 0
    try:
        args.bindings = _subst(args.subst)
        if args.step_limit is not None:
            with step_limit(args.step_limit):
                checks = args.fn(args)
        else:
            checks = args.fn(args)
        report["checks"] = [c.to_dict() for c in checks]
        if any(c.passed is False for c in checks):
            report["status"], code = "fail", 1
    except StepLimitExceeded as exc:
        report["status"], code = "fail", 1
        report["checks"].append({"name": "reduction", "status": "fail", "detail": str(exc), "residual": str(exc.partial)})
    except INPUT_ERRORS as exc:
        report["status"], code = "error", 2
        report["error"] = f"{type(exc).__name__}: {exc}"
    report["timing"] = round(time.perf_counter() - t0, 4)
    _emit(report, args.json, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
