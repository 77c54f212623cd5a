"""Command-line frontend.

Exit codes: 0 success, 1 a ``check`` failed, 2 unreadable or malformed
input, 3 well-formed input that makes no sense for the command.
"""

import argparse
import hashlib
import json
import random
import sys
from typing import Dict, List, Optional

from .alexander import alexander_polynomial, check_symmetry
from .fields import CoeffField
from .laurent import LaurentPoly, RationalExpr, format_poly
from .presentation import PresentationError, SemanticError, load_presentation
from .representation import (Representation, derham_extension_search, enum_sl2_reps,
                             load_quotient, load_representation, regular_rep)
from .torsion import alpha_complex, milnor_check, torsion, twisted_complex, twisted_torsion_check
from .twisted import (check_monic, degree_and_genus, divisibility_report, monic_is_exact,
                      parse_map, twisted_alexander)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_SEMANTIC = 0, 1, 2, 3


class CheckFailed(Exception):
    pass


class Report:
    """Accumulates the machine-readable run report."""

    def __init__(self, argv: List[str]):
        self.command = list(argv)
        self.inputs: Dict[str, str] = {}
        self.result: dict = {}
        self.notes: List[str] = []
        self.lines: List[str] = []

    def read(self, path: str) -> str:
        try:
            with open(path, "rb") as fh:
                data = fh.read()
        except OSError as exc:
            raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from exc
        self.inputs[path] = hashlib.sha256(data).hexdigest()
        return path

    def say(self, line: str):
        self.lines.append(line)

    def to_json(self, status: int) -> str:
        doc = {"command": self.command, "inputs": self.inputs, "result": self.result,
               "notes": self.notes, "exit_status": status}
        return json.dumps(doc, sort_keys=True, indent=2)


def poly_json(f: LaurentPoly) -> dict:
    return {"text": format_poly(f, descending=True), "terms": f.to_pairs(),
            "field": f.field.to_json()}


def rational_json(r: RationalExpr) -> dict:
    num, den = r.unit_normal()
    return {"numerator": poly_json(num), "denominator": poly_json(den),
            "polynomial": r.is_polynomial()}


def rational_text(r: RationalExpr) -> str:
    num, den = r.unit_normal()
    if den.is_constant():
        return format_poly(num, descending=True)
    return f"({format_poly(num, descending=True)}) / ({format_poly(den, descending=True)})"


# -- loaders ----------------------------------------------------------------------

def _load_pres(rep: Report, path: str):
    return load_presentation(rep.read(path))


def _load_rep(rep: Report, path: str) -> Representation:
    try:
        return load_representation(rep.read(path))
    except json.JSONDecodeError as exc:
        raise PresentationError(f"{path}: invalid JSON ({exc.msg})", exc.lineno, exc.colno) from exc


def _load_json(rep: Report, path: str):
    try:
        with open(rep.read(path), encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"{path}: invalid JSON ({exc.msg})", exc.lineno, exc.colno) from exc


def _pick_rep(rep: Report, args, pres) -> Representation:
    if getattr(args, "rep", None):
        return _load_rep(rep, args.rep)
    if getattr(args, "quotient", None):
        q = load_quotient(rep.read(args.quotient))
        return regular_rep(q)
    raise SemanticError("a representation is required (--rep or --quotient)")


# -- commands -----------------------------------------------------------------------

def cmd_alexander(args, rep: Report):
    p = _load_pres(rep, args.file)
    delta = alexander_polynomial(p)
    rep.result = {"polynomial": delta.to_pairs(), "text": format_poly(delta, descending=True),
                  "normalization": "integer-primitive", "symmetric": check_symmetry(delta)}
    rep.notes.append("primitive integer coefficients, lowest degree 0, positive constant term")
    rep.say(format_poly(delta, descending=True))


def _twisted_payload(res) -> dict:
    dg = degree_and_genus(res)
    return {
        "numerator": poly_json(res.numerator),
        "denominator": poly_json(res.denominator),
        "column": res.column,
        "reduced": rational_json(res.reduced),
        "polynomial": poly_json(res.polynomial) if res.polynomial is not None else None,
        "dimension": res.dim,
        "monic": check_monic(res),
        "monic_exact": monic_is_exact(res),
        "degree": dg.degree,
        "genus_estimate": str(dg.genus) if dg.genus is not None else None,
        "degenerate": dg.degenerate,
        "cross_checked": res.cross_checked,
    }


def cmd_twisted(args, rep: Report):
    p = _load_pres(rep, args.file)
    r = _pick_rep(rep, args, p)
    res = twisted_alexander(p, r, verify=args.verify)
    rep.result = _twisted_payload(res)
    if not monic_is_exact(res):
        rep.notes.append("over F_p the monic test only compares leading coefficients up to sign")
    rep.notes.append("reduced form compared up to c*t^s")
    rep.say(f"reduced: {rational_text(res.reduced)}")
    rep.say(f"column: {res.column}")
    if res.polynomial is None:
        rep.say("polynomial: none")
    qualifier = "" if monic_is_exact(res) else " (leading coefficients equal up to sign)"
    rep.say(f"monic: {str(check_monic(res)).lower()}{qualifier}")


def cmd_enum_reps(args, rep: Report):
    p = _load_pres(rep, args.file)
    reps = enum_sl2_reps(p, args.p, irreducible_only=args.irreducible,
                         up_to_conjugacy=args.up_to_conjugacy, limit=args.limit,
                         max_prime=args.max_prime, normal_form=args.normal_form)
    rep.result = {"prime": args.p, "count": len(reps),
                  "representations": [r.to_json()["images"] for r in reps]}
    if args.up_to_conjugacy:
        rep.notes.append("one representative per GL(2, F_p) conjugation orbit")
    rep.say(f"{len(reps)} representation(s) into SL(2, F_{args.p})")
    for r in reps:
        rep.say(json.dumps(r.to_json()["images"], sort_keys=True))


def cmd_torsion(args, rep: Report):
    p = _load_pres(rep, args.file)
    if args.rep:
        r = _load_rep(rep, args.rep)
        cmp = twisted_torsion_check(p, r)
        label = "twisted invariant at t^-1"
    else:
        cmp = milnor_check(p)
        label = "Delta/(t-1)"
    rep.result = {"acyclic": cmp.acyclic, "matches": cmp.holds,
                  "torsion": rational_json(cmp.torsion) if cmp.torsion is not None else None,
                  "expected": rational_json(cmp.expected)}
    rep.notes.append("torsion compared up to c*t^s")
    if not cmp.acyclic:
        rep.say("chain complex is not acyclic; comparison skipped")
        return cmp
    rep.say(f"torsion: {rational_text(cmp.torsion)}")
    rep.say(f"matches {label}: {str(cmp.holds).lower()}")
    if args.verify:
        rng = random.Random(args.seed)
        c = twisted_complex(p, r) if args.rep else alpha_complex(p, cmp.torsion.field)
        same = all(torsion(c, rng, perturb_lifts=True) == cmp.torsion for _ in range(5))
        rep.result["basis_independent"] = same
        rep.say(f"basis independence: {str(same).lower()}")
    return cmp


def check_torsion(args, rep: Report):
    cmp = cmd_torsion(args, rep)
    if not (cmp.acyclic and cmp.holds):
        raise CheckFailed("torsion identity failed")


def check_fibered(args, rep: Report):
    p = _load_pres(rep, args.file)
    if args.p:
        reps = enum_sl2_reps(p, args.p, irreducible_only=True, up_to_conjugacy=True,
                             max_prime=args.max_prime)
        if not reps:
            raise SemanticError(f"no irreducible SL(2, F_{args.p}) representation")
    else:
        reps = [_pick_rep(rep, args, p)]
    results = [twisted_alexander(p, r, verify=args.verify) for r in reps]
    monic = all(check_monic(res) for res in results)
    first = results[0]
    dg = degree_and_genus(first)
    rep.result = {"monic": monic, "monic_exact": monic_is_exact(first),
                  "representations_checked": len(results), "degree": dg.degree,
                  "genus_estimate": str(dg.genus) if dg.genus is not None else None,
                  "twisted": rational_json(first.reduced)}
    if not monic_is_exact(first):
        rep.notes.append("over F_p the monic test only compares leading coefficients up to sign")
    rep.say(f"monic={str(monic).lower()} degree={dg.degree} genus={dg.genus}")
    if not monic:
        raise CheckFailed("twisted invariant is not monic")


def check_divides(args, rep: Report):
    p1 = _load_pres(rep, args.source)
    p2 = _load_pres(rep, args.target)
    phi = parse_map(_load_json(rep, args.map), p1, p2)
    r = _load_rep(rep, args.rep)
    evidence = []
    if r.field.p:
        evidence = enum_sl2_reps(p2, r.field.p, up_to_conjugacy=True, limit=50,
                                 max_prime=args.max_prime)
    d = divisibility_report(p1, p2, phi, r, evidence)
    rep.result = {"divides": d.holds, "classical": d.classical,
                  "numerator_divides": d.numerator_divides,
                  "relator_certificate": d.certified, "meridional": d.meridional,
                  "surjective_evidence": d.surjective_evidence,
                  "source": rational_json(d.source.reduced),
                  "target": rational_json(d.target.reduced)}
    rep.notes.extend(d.notes)
    rep.notes.append("surjectivity is not decided; evidence compares generated image groups")
    rep.say(f"divides: {str(d.holds).lower()} (classical: {str(d.classical).lower()})")
    rep.say(f"relator certificate: {'rewriting' if d.certified else 'representations only'}")
    if d.surjective_evidence is not None:
        rep.say(f"images generate the same finite group: {str(d.surjective_evidence).lower()}")
    if not (d.holds and d.classical):
        raise CheckFailed("divisibility failed")


def check_derham(args, rep: Report):
    p = _load_pres(rep, args.file)
    F = CoeffField(args.p)
    delta = alexander_polynomial(p).change_field(F)
    values = [F(args.a)] if args.a is not None else [a for a in F.elements() if a not in (F.zero, F.one)]
    rows = []
    agree = True
    for a in values:
        witness = derham_extension_search(p, a, F)
        root = delta(a) == F.zero
        agree &= (witness is not None) == root
        rows.append({"a": F.encode(a), "witness": witness is not None, "delta_vanishes": root})
        rep.say(f"a={F.format(a)}: witness={'yes' if witness else 'no'} Delta(a)=0: {'yes' if root else 'no'}")
    rep.result = {"prime": args.p, "values": rows, "consistent": agree}
    rep.notes.append("witnesses are taken modulo the coboundary direction")
    if not agree:
        raise CheckFailed("witness existence and Delta(a) = 0 disagree")


def check_symmetry_cmd(args, rep: Report):
    p = _load_pres(rep, args.file)
    delta = alexander_polynomial(p)
    ok = check_symmetry(delta)
    rep.result = {"alexander": poly_json(delta), "symmetric": ok}
    rep.say(f"symmetric: {str(ok).lower()}")
    if not ok:
        raise CheckFailed("Alexander polynomial is not symmetric")


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON run report")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized self-checks")
    common.add_argument("--verify", action="store_true", help="run extra self-checks")

    parser = argparse.ArgumentParser(prog="twistalex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("alexander", parents=[common], help="Alexander polynomial")
    a.add_argument("file")
    a.set_defaults(func=cmd_alexander)

    t = sub.add_parser("twisted", parents=[common], help="twisted Alexander polynomial")
    t.add_argument("file")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--rep", help="representation JSON")
    g.add_argument("--quotient", help="finite quotient JSON (regular representation)")
    t.set_defaults(func=cmd_twisted)

    e = sub.add_parser("enum-reps", parents=[common], help="SL(2, F_p) representations")
    e.add_argument("file")
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--irreducible", action="store_true")
    e.add_argument("--up-to-conjugacy", action="store_true")
    e.add_argument("--normal-form", action="store_true",
                   help="two-generator normal-form search (misses non-split meridians)")
    e.add_argument("--limit", type=int)
    e.add_argument("--max-prime", type=int, default=13, help="search-space guard")
    e.set_defaults(func=cmd_enum_reps)

    s = sub.add_parser("torsion", parents=[common], help="Reidemeister torsion")
    s.add_argument("file")
    s.add_argument("--rep")
    s.set_defaults(func=cmd_torsion)

    c = sub.add_parser("check", help="decision checks")
    csub = c.add_subparsers(dest="kind", required=True)
    f = csub.add_parser("fibered", parents=[common])
    f.add_argument("file")
    fg = f.add_mutually_exclusive_group(required=True)
    fg.add_argument("--p", type=int, help="check every irreducible SL(2, F_p) representation")
    fg.add_argument("--rep")
    fg.add_argument("--quotient")
    f.add_argument("--max-prime", type=int, default=13)
    f.set_defaults(func=check_fibered)

    d = csub.add_parser("divides", parents=[common])
    d.add_argument("--from", dest="source", required=True)
    d.add_argument("--to", dest="target", required=True)
    d.add_argument("--map", required=True)
    d.add_argument("--rep", required=True)
    d.add_argument("--max-prime", type=int, default=13)
    d.set_defaults(func=check_divides)

    h = csub.add_parser("derham", parents=[common])
    h.add_argument("file")
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--a", help="single value of a (default: all of F_p minus {0, 1})")
    h.set_defaults(func=check_derham)

    y = csub.add_parser("symmetry", parents=[common])
    y.add_argument("file")
    y.set_defaults(func=check_symmetry_cmd)

    o = csub.add_parser("torsion", parents=[common])
    o.add_argument("file")
    o.add_argument("--rep")
    o.set_defaults(func=check_torsion)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    report = Report(argv)
    status = EXIT_OK
    error = None
    try:
        args.func(args, report)
    except CheckFailed as exc:
        status, error = EXIT_CHECK_FAILED, str(exc)
    except (PresentationError, FileNotFoundError, json.JSONDecodeError) as exc:
        status, error = EXIT_INPUT, str(exc)
    except SemanticError as exc:
        status, error = EXIT_SEMANTIC, str(exc)
    except ValueError as exc:
        # malformed field or matrix data inside an otherwise readable file
        status, error = EXIT_INPUT, str(exc)
    if error is not None and status != EXIT_CHECK_FAILED:
        report.result = {"error": error}
    if args.json:
        print(report.to_json(status))
    else:
        for line in report.lines:
            print(line)
        if error is not None:
            print(f"error: {error}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
