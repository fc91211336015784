"""Command line front end.

Input files are JSON objects.  Which keys are needed depends on the command:

  divisor      variables, base_ideal, tail_cone, coefficients [, generating_set]
  arrangement  variables, linear_forms, tail_cone, coefficients
  graded       variables, ideal, grading [, beta, degree, second]
  hypertoric   a [, r]

``coefficients`` holds one vertex list per hyperplane; numbers may be
integers or strings "p/q".  ``weights`` may sit in the input or in a
separate file given by --weights.

Exit codes: 0 success, 1 a negative verdict, 2 bad input.
"""

import argparse
import hashlib
import itertools
import json
import sys
from fractions import Fraction
from typing import List

from .arrangement import (
    ArrangementSpec, arrangement_to_divisor, cm_sufficient, is_saturated, nok_cone,
    value_semigroup, verify_well_poised,
)
from .errors import InputError, WellPoisedError
from .exactmath import as_fraction
from .polyalg import Polynomial, PolynomialIdeal, ideal_equals, parse_polynomial
from .polyhedra import RationalCone, SigmaPolyhedron, is_admissable
from .quotients import (
    GradedPresentation, HypertoricSpec, git_quotient_presentation, hypertoric_matrices,
    hypertoric_total_space, moment_ideal, quotient_weight_report, segre_presentation,
    veronese_presentation,
)
from .semicanonical import (
    PolyhedralDivisorSpec, cone_lift_check, default_generating_set, degenerate_base,
    generating_set, lift_weight, presentation_from_generating_set, semicanonical_presentation,
)

COMMANDS = (
    "embed", "generators", "lift", "degenerate", "lift-check", "verify-wellpoised",
    "value-semigroup", "nok-cone", "admissable", "cm-check", "veronese", "segre",
    "quotient", "hypertoric",
)


# input

class Source:
    """Raw text plus the decoded object, for error locations."""

    def __init__(self, text: str, name: str = "<input>"):
        self.text = text
        self.name = name
        if not text.strip():
            raise InputError("empty input file", 1, 1)
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(self.data, dict):
            raise InputError("top level must be a JSON object", 1, 1)

    def locate(self, needle: str):
        """(line, column) of the first occurrence of a JSON string literal."""
        lit = json.dumps(needle)
        i = self.text.find(lit)
        if i < 0:
            return None, None
        line = self.text.count("\n", 0, i) + 1
        col = i - (self.text.rfind("\n", 0, i) + 1) + 1
        return line, col

    def locate_key(self, key):
        return self.locate(key)

    def get(self, key, default=None, required=False):
        if key in self.data:
            return self.data[key]
        if required:
            raise InputError(f"missing required field '{key}'", 1, 1)
        return default

    def poly(self, s, variables) -> Polynomial:
        if not isinstance(s, str):
            raise InputError(f"expected a polynomial string, got {s!r}", 1, 1)
        try:
            return parse_polynomial(s, variables)
        except InputError as exc:
            line, col = self.locate(s)
            if line is None:
                raise
            raise InputError(str(exc).split(": ", 1)[-1], line, col + (exc.column or 1)) from None

    def number(self, x, key):
        try:
            return as_fraction(x)
        except (ValueError, TypeError, ZeroDivisionError):
            line, col = self.locate(x) if isinstance(x, str) else self.locate_key(key)
            raise InputError(f"bad number {x!r} in '{key}'", line or 1, col or 1) from None


def _int_matrix(src, key, rows, required=True):
    M = src.get(key, required=required)
    if M is None:
        return None
    if not isinstance(M, list) or not all(isinstance(r, list) for r in M):
        line, col = src.locate_key(key)
        raise InputError(f"'{key}' must be a list of integer vectors", line or 1, col or 1)
    out = []
    for r in M:
        vals = [src.number(x, key) for x in r]
        if any(v.denominator != 1 for v in vals):
            line, col = src.locate_key(key)
            raise InputError(f"'{key}' must have integer entries", line or 1, col or 1)
        out.append([int(v) for v in vals])
    return out


def _coefficients(src):
    tail_rays = _int_matrix(src, "tail_cone", None)
    if not tail_rays:
        line, col = src.locate_key("tail_cone")
        raise InputError("'tail_cone' needs at least one ray", line or 1, col or 1)
    r = len(tail_rays[0])
    tail = RationalCone(r, tail_rays)
    raw = src.get("coefficients", required=True)
    out = []
    for entry in raw:
        verts = [[src.number(x, "coefficients") for x in v] for v in entry]
        if not verts or any(len(v) != r for v in verts):
            line, col = src.locate_key("coefficients")
            raise InputError(f"each coefficient needs vertices of length {r}", line or 1, col or 1)
        out.append(SigmaPolyhedron.from_points(r, verts, tail))
    return out


def _variables(src):
    V = src.get("variables", required=True)
    if not isinstance(V, list) or not all(isinstance(v, str) for v in V):
        line, col = src.locate_key("variables")
        raise InputError("'variables' must be a list of names", line or 1, col or 1)
    return tuple(V)


def load_divisor(src) -> PolyhedralDivisorSpec:
    if "linear_forms" in src.data:
        return arrangement_to_divisor(load_arrangement(src))
    V = _variables(src)
    gens = [src.poly(s, V) for s in src.get("base_ideal", [])]
    coeffs = _coefficients(src)
    G = src.get("generating_set")
    G = [src.poly(s, V) for s in G] if G is not None else None
    return PolyhedralDivisorSpec(PolynomialIdeal(gens, V), coeffs, generating_set=G,
                                 name=src.get("name", ""))


def load_arrangement(src) -> ArrangementSpec:
    V = _variables(src)
    forms = [src.poly(s, V) for s in src.get("linear_forms", required=True)]
    return ArrangementSpec(len(V) - 1, forms, _coefficients(src), name=src.get("name", ""))


def load_graded(src, data=None) -> GradedPresentation:
    sub = src if data is None else _Sub(src, data)
    V = _variables(sub)
    gens = [src.poly(s, V) for s in sub.get("ideal", [])]
    grading = _int_matrix(sub, "grading", None)
    return GradedPresentation(PolynomialIdeal(gens, V), grading)


class _Sub:
    """A nested object read with the parent's error locations."""

    def __init__(self, parent, data):
        self.parent = parent
        self.data = data

    def get(self, key, default=None, required=False):
        if key in self.data:
            return self.data[key]
        if required:
            raise InputError(f"missing required field '{key}'", 1, 1)
        return default

    def __getattr__(self, name):
        return getattr(self.parent, name)


def load_hypertoric(src) -> HypertoricSpec:
    a = _int_matrix(src, "a", None)
    r = src.get("r")
    return HypertoricSpec(a, r)


def load_weights(src, path=None) -> List[list]:
    if path:
        with open(path) as fh:
            text = fh.read()
        wsrc = Source(text, path)
        W = wsrc.data.get("weights") if isinstance(wsrc.data, dict) else None
        if W is None:
            raise InputError("weights file needs a 'weights' list", 1, 1)
        return [[wsrc.number(x, "weights") for x in w] for w in W]
    W = src.get("weights", required=True)
    return [[src.number(x, "weights") for x in w] for w in W]


# output

def fmt(x, machine=False) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Polynomial):
        s = str(x)
        return s.replace(" ", "") if machine else s
    if isinstance(x, PolynomialIdeal):
        gens = [fmt(g, machine) for g in x.gb_polys()]
        return "<" + (",".join(gens) if machine else ", ".join(gens)) + ">"
    if isinstance(x, (list, tuple)):
        return "[" + ",".join(fmt(y, machine) for y in x) + "]"
    if x is None:
        return "none"
    s = str(x)
    return s.replace(" ", "_") if machine else s


class Report:
    def __init__(self, command, digest):
        self.records = [("job", [("command", command), ("input_sha256", digest)])]

    def add(self, kind, *pairs):
        self.records.append((kind, list(pairs)))

    def render(self, machine=False) -> str:
        lines = []
        for kind, pairs in self.records:
            if machine:
                lines.append(" ".join([kind] + [f"{k}={fmt(v, True)}" for k, v in pairs]))
            else:
                lines.append(f"[{kind}]")
                lines.extend(f"  {k}: {fmt(v)}" for k, v in pairs)
        return "\n".join(lines) + "\n"


def _presentation_records(rep, pres):
    rep.add("presentation",
            ("H", pres.coordinates),
            ("variables", list(pres.variables)),
            ("ideal", pres.presentation_ideal))


# commands

def cmd_embed(src, args, rep):
    pres = semicanonical_presentation(load_divisor(src))
    _presentation_records(rep, pres)
    return 0


def cmd_generators(src, args, rep):
    spec = load_divisor(src)
    pres = semicanonical_presentation(spec)
    G = default_generating_set(spec)
    _presentation_records(rep, pres)
    for g, v, u in generating_set(spec, G):
        rep.add("generator", ("g", g), ("v", list(v)), ("u", list(u)))
    J = presentation_from_generating_set(pres, G)
    rep.add("equivalence", ("ideal", J), ("equal", ideal_equals(J, pres.presentation_ideal)))
    return 0


def cmd_lift(src, args, rep):
    pres = semicanonical_presentation(load_divisor(src))
    _presentation_records(rep, pres)
    for w in load_weights(src, args.weights):
        rep.add("lift", ("w", w), ("lifted", lift_weight(pres, w)))
    return 0


def cmd_degenerate(src, args, rep):
    spec = load_divisor(src)
    for w in load_weights(src, args.weights):
        rep.add("degeneration", ("w", w), ("Y_w", degenerate_base(spec, w)))
    return 0


def _lift_record(rep, r):
    rep.add("cone", ("label", r.label), ("w", r.weight), ("lifted", r.lifted_weight),
            ("Y_w", r.degenerate_base), ("irreducible", r.condition_irreducible),
            ("initial_generates", r.condition_initial_generates),
            ("degree_polyhedra", r.condition_degree_polyhedra),
            ("in_w_J", r.in_w_JD), ("J_Dw", r.JD_w), ("equal", r.ideals_equal),
            ("prime", r.prime_certified), ("prime_route", r.prime_route))


def cmd_lift_check(src, args, rep):
    spec = load_divisor(src)
    pres = semicanonical_presentation(spec)
    _presentation_records(rep, pres)
    G = default_generating_set(spec)
    for i, w in enumerate(load_weights(src, args.weights)):
        _lift_record(rep, cone_lift_check(spec, G, w, pres, label=f"w{i + 1}"))
    return 0


def cmd_verify(src, args, rep):
    a = load_arrangement(src)
    pres = semicanonical_presentation(arrangement_to_divisor(a))
    _presentation_records(rep, pres)
    reports = sorted(verify_well_poised(a, parallel=args.parallel), key=lambda r: r.label)
    for r in reports:
        _lift_record(rep, r)
    ok = all(r.prime_certified for r in reports)
    rep.add("verdict", ("well_poised", ok), ("cones", len(reports)))
    return 0 if ok else 1


def _index_sets(src, a):
    I = src.get("index_set")
    if I is not None:
        return [tuple(I)]
    return list(itertools.combinations(range(a.m + 1), a.m + 1 - a.c))


def cmd_value_semigroup(src, args, rep):
    a = load_arrangement(src)
    umax = int(src.get("u_max", 8))
    for I in _index_sets(src, a):
        d = value_semigroup(a, I)
        rep.add("semigroup", ("index_set", list(d.index_set)), ("complement", list(d.complement)))
        for u in range(umax + 1):
            rep.add("fibre", ("u", u), ("lower", d.lower_bounds(u)), ("upper", d.upper_bound(u)),
                    ("members", [list(v) for v in d.members(u)]))
    return 0


def cmd_nok_cone(src, args, rep):
    a = load_arrangement(src)
    for I in _index_sets(src, a):
        C = nok_cone(a, I)
        rep.add("nok_cone", ("index_set", list(I)),
                ("inequalities", [list(n) for n, b in C.inequalities]))
    return 0


def cmd_admissable(src, args, rep):
    spec = load_divisor(src)
    I = src.get("index_set")
    coeffs = [spec.coefficients[i] for i in I] if I is not None else spec.coefficients
    ok, witness = is_admissable(coeffs)
    rep.add("admissable", ("index_set", list(I) if I is not None else "all"),
            ("admissable", ok), ("witness", witness))
    if "linear_forms" in src.data and I is None:
        a = load_arrangement(src)
        for S in _index_sets(src, a):
            sat, wit = is_saturated(a, S)
            rep.add("saturation", ("index_set", list(S)), ("saturated", sat), ("witness", wit))
    return 0 if ok else 1


def cmd_cm_check(src, args, rep):
    a = load_arrangement(src)
    ok, S = cm_sufficient(a)
    rep.add("cohen_macaulay_sufficient", ("holds", ok), ("subset", S))
    return 0 if ok else 1


def cmd_veronese(src, args, rep):
    g = load_graded(src)
    d = int(src.get("degree", 2))
    v = veronese_presentation(g, d)
    rep.add("veronese", ("degree", d), ("variables", list(v.vars)),
            ("monomials", [list(e) for e in v.metadata["monomials"]]), ("ideal", v.ideal))
    return 0


def cmd_segre(src, args, rep):
    g1 = load_graded(src)
    second = src.get("second", required=True)
    g2 = load_graded(src, second)
    s = segre_presentation(g1, g2)
    rep.add("segre", ("variables", list(s.vars)), ("ideal", s.ideal))
    return 0


def cmd_quotient(src, args, rep):
    g = load_graded(src)
    beta = [int(b) for b in src.get("beta", required=True)]
    W = load_weights(src, args.weights) if (args.weights or "weights" in src.data) else []
    q = git_quotient_presentation(g, beta, args.cap, W)
    rep.add("quotient", ("beta", beta), ("k", q.metadata["k"]),
            ("r0_trivial", q.metadata["r0_trivial"]),
            ("generators", q.metadata["generators"]), ("variables", list(q.vars)),
            ("ideal", q.ideal))
    ok = True
    for w in W:
        Wq, ini, prime, route = quotient_weight_report(q, w)
        rep.add("weight", ("w", w), ("image", Wq), ("initial", ini), ("prime", prime),
                ("route", route))
        ok = ok and prime
    return 0 if ok else 1


def cmd_hypertoric(src, args, rep):
    spec = load_hypertoric(src)
    M = hypertoric_matrices(spec)
    rep.add("matrices", ("F", M.F), ("P", M.P), ("s", M.s), ("A", M.A), ("B", M.B),
            ("det_A", M.det_A))
    rep.add("moment", ("ideal", moment_ideal(spec)))
    pres, reports = hypertoric_total_space(spec, parallel=args.parallel)
    _presentation_records(rep, pres)
    meta = pres.metadata
    rep.add("total_space", ("delta_smooth", meta["delta_smooth"]),
            ("matches_moment_ideal", meta["matches_moment_ideal"]),
            ("coordinates", [f"{k}->{v}" for k, v in sorted(meta["coordinate_to_variable"].items())]))
    reports = sorted(reports, key=lambda r: r.label)
    for r in reports:
        _lift_record(rep, r)
    ok = meta["delta_smooth"] and meta["matches_moment_ideal"] and all(r.prime_certified for r in reports)
    rep.add("verdict", ("well_poised", ok), ("cones", len(reports)))
    return 0 if ok else 1


HANDLERS = {
    "embed": cmd_embed, "generators": cmd_generators, "lift": cmd_lift,
    "degenerate": cmd_degenerate, "lift-check": cmd_lift_check,
    "verify-wellpoised": cmd_verify, "value-semigroup": cmd_value_semigroup,
    "nok-cone": cmd_nok_cone, "admissable": cmd_admissable, "cm-check": cmd_cm_check,
    "veronese": cmd_veronese, "segre": cmd_segre, "quotient": cmd_quotient,
    "hypertoric": cmd_hypertoric,
}


def build_parser():
    p = argparse.ArgumentParser(prog="wellpoised",
                                description="Semi-canonical embeddings and well-poisedness checks.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="JSON input file")
    p.add_argument("--weights", help="JSON file with a 'weights' list")
    p.add_argument("--cap", type=int, default=4, help="largest Veronese exponent to try")
    p.add_argument("--parallel", type=int, default=1, help="worker threads for per-cone checks")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    return p


def run(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        with open(args.input, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        err.write(f"error: cannot read {args.input}: {exc.strerror}\n")
        return 2
    digest = hashlib.sha256(raw).hexdigest()
    rep = Report(args.command, digest)
    try:
        text = raw.decode("utf-8")
        src = Source(text, args.input)
        code = HANDLERS[args.command](src, args, rep)
    except UnicodeDecodeError:
        err.write(f"error: {args.input}: not UTF-8 text\n")
        return 2
    except (WellPoisedError, ValueError, TypeError, KeyError, IndexError) as exc:
        err.write(f"error: {args.input}: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 2
    out.write(rep.render(args.format == "machine"))
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
