"""Command line: ``ghilb compute``, ``ghilb verify``, ``ghilb chart``.

Output goes to stdout as canonical JSON (sorted keys, canonical term order).
Errors go to stderr as ``{"error": {"code": ..., "message": ...}}``.
Exit codes: 0 success / all cases pass, 1 a verification case failed,
2 malformed input or an operation error.
"""
import argparse
import json
import re
import sys

import jsonschema

from . import charts as ch
from .algebra import FiniteAlgebra
from .divided import delta, gamma, internal_mul, margin_product, margin_product_direct, norm_ideal_generators, shuffle
from .errors import GhilbError, InputError
from .norm import AlgebraMap, modpolyring_basis, norm_ideal_image, norm_value, pid_ideal_equal
from .rings import BaseRing, PolyRing
from .tensor import tensor_from_json, tensor_to_json
from .verify import Job, report_json, run_verify

COMMANDS = (
    "gamma",
    "shuffle",
    "internal-mul",
    "delta",
    "margin-product",
    "sigma",
    "discriminant",
    "norm",
    "chart",
    "plucker",
    "eval",
)

# --- schemas -----------------------------------------------------------------

_POLY = {"type": "string", "minLength": 1}
_SCALAR = {"type": ["string", "integer"]}
_TERM = {
    "type": "object",
    "properties": {"tuple": {"type": "array", "items": _POLY}, "coeff": _SCALAR},
    "required": ["tuple", "coeff"],
    "additionalProperties": False,
}
_TENSOR = {
    "oneOf": [
        {"type": "array", "items": _TERM},
        {
            "type": "object",
            "properties": {"delta": {"type": "object", "properties": {
                "x": {"type": "array", "items": _POLY, "minItems": 1},
                "y": {"type": "array", "items": _POLY, "minItems": 1}},
                "required": ["x", "y"], "additionalProperties": False}},
            "required": ["delta"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"gamma": {"type": "object", "properties": {
                "a": {"type": "integer", "minimum": 0}, "f": _POLY},
                "required": ["a", "f"], "additionalProperties": False}},
            "required": ["gamma"],
            "additionalProperties": False,
        },
    ]
}
_ALGEBRA = {
    "type": "object",
    "properties": {
        "rank": {"type": "integer", "minimum": 1},
        "base": {"type": "string"},
        "unit": {"type": "array", "items": _SCALAR},
        "constants": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "i": {"type": "integer", "minimum": 1},
                    "j": {"type": "integer", "minimum": 1},
                    "k": {"type": "integer", "minimum": 1},
                    "c": _SCALAR,
                },
                "required": ["i", "j", "k", "c"],
                "additionalProperties": False,
            },
        },
        "names": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["rank", "base", "unit", "constants"],
    "additionalProperties": False,
}
_POINTS = {
    "oneOf": [
        {"type": "string"},
        {"type": "array", "minItems": 1, "items": {"oneOf": [_SCALAR, {"type": "array", "items": _SCALAR}]}},
    ]
}
_IMAGES = {"type": "object", "additionalProperties": {"type": "array", "items": _SCALAR}}
_COMMON = {
    "command": {"type": "string"},
    "ring": {"type": "string"},
    "vars": {"type": "array", "items": {"type": "string", "pattern": "^[A-Za-z_][A-Za-z0-9_]*$"}},
}


def _schema(props, required):
    p = dict(_COMMON)
    p.update(props)
    return {"type": "object", "properties": p, "required": required, "additionalProperties": False}


SCHEMAS = {
    "gamma": _schema({"a": {"type": "integer", "minimum": 0}, "f": _POLY}, ["a", "f"]),
    "shuffle": _schema({"u": _TENSOR, "v": _TENSOR}, ["u", "v"]),
    "internal-mul": _schema({"u": _TENSOR, "v": _TENSOR}, ["u", "v"]),
    "delta": _schema(
        {
            "n": {"type": "integer", "minimum": 1},
            "x": {"type": "array", "items": _POLY, "minItems": 1},
            "y": {"type": "array", "items": _POLY, "minItems": 1},
            "method": {"enum": ["star", "nu"]},
        },
        ["x", "y"],
    ),
    "margin-product": _schema(
        {
            "factors": {
                "type": "array",
                "minItems": 1,
                "items": {
                    "type": "array",
                    "minItems": 1,
                    "items": {
                        "type": "array",
                        "prefixItems": [{"type": "integer", "minimum": 0}, _POLY],
                        "items": False,
                        "minItems": 2,
                    },
                },
            }
        },
        ["factors"],
    ),
    "sigma": _schema({"algebra": _ALGEBRA, "tensor": _TENSOR}, ["algebra", "tensor"]),
    "discriminant": _schema({"algebra": _ALGEBRA}, ["algebra"]),
    "norm": _schema(
        {
            "algebra": _ALGEBRA,
            "images": _IMAGES,
            "V": {"type": "array", "items": _POLY, "minItems": 1},
            "elements": {"type": "array", "items": _TENSOR},
        },
        ["algebra", "images"],
    ),
    "chart": _schema({"tuple": {"type": "array", "items": _POLY, "minItems": 1}, "points": _POINTS}, ["tuple", "points"]),
    "plucker": _schema(
        {"algebra": _ALGEBRA, "images": _IMAGES, "V": {"type": "array", "items": _POLY, "minItems": 1}},
        ["algebra", "images", "V"],
    ),
    "eval": _schema({"elem": _TENSOR, "points": _POINTS}, ["elem", "points"]),
}

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


# --- helpers -----------------------------------------------------------------

def _collect_strings(obj, skip=("ring", "command", "algebra", "vars", "images", "points", "method")):
    if isinstance(obj, str):
        yield obj
    elif isinstance(obj, list):
        for v in obj:
            yield from _collect_strings(v, ())
    elif isinstance(obj, dict):
        for k, v in obj.items():
            if k in skip or k == "coeff":
                continue
            yield from _collect_strings(v, ())


def infer_vars(doc):
    """Identifiers appearing in the polynomial fields of ``doc``, sorted."""
    if "vars" in doc:
        return list(doc["vars"])
    names = set()
    if "images" in doc:
        names.update(doc["images"])
    for s in _collect_strings(doc):
        names.update(_IDENT.findall(s))
    return sorted(names)


def _ring_of(doc):
    base = BaseRing.parse(doc.get("ring", "QQ"))
    return PolyRing(base, infer_vars(doc))


def _tensor(spec, ring):
    if isinstance(spec, list):
        return tensor_from_json(spec, ring)
    if "delta" in spec:
        d = spec["delta"]
        return delta([ring.parse(s) for s in d["x"]], [ring.parse(s) for s in d["y"]])
    g = spec["gamma"]
    return gamma(g["a"], ring.parse(g["f"]))


def _tensor_out(t):
    return {"degree": t.n, "result": tensor_to_json(t), "text": str(t)}


def _points(spec, base):
    if isinstance(spec, str):
        return ch.PointConfig.parse(spec, base)
    return ch.PointConfig(spec, base)


def _algebra_map(doc, E):
    F = PolyRing(BaseRing.parse(doc.get("ring", "QQ")), infer_vars(doc))
    images = {name: doc["images"].get(name) for name in F.names}
    missing = [n for n, v in images.items() if v is None]
    if missing:
        raise InputError(f"no image given for variable(s) {', '.join(missing)}")
    return AlgebraMap(F, E, images)


# --- commands ----------------------------------------------------------------

def _cmd_gamma(doc):
    R = _ring_of(doc)
    return _tensor_out(gamma(doc["a"], R.parse(doc["f"])))


def _cmd_shuffle(doc):
    R = _ring_of(doc)
    return _tensor_out(shuffle(_tensor(doc["u"], R), _tensor(doc["v"], R)))


def _cmd_internal_mul(doc):
    R = _ring_of(doc)
    return _tensor_out(internal_mul(_tensor(doc["u"], R), _tensor(doc["v"], R)))


def _cmd_delta(doc):
    R = _ring_of(doc)
    x = [R.parse(s) for s in doc["x"]]
    y = [R.parse(s) for s in doc["y"]]
    if "n" in doc and doc["n"] != len(x):
        raise InputError(f"n = {doc['n']} but the tuples have length {len(x)}")
    return _tensor_out(delta(x, y, doc.get("method", "star")))


def _cmd_margin_product(doc):
    R = _ring_of(doc)
    factors = [[(a, R.parse(s)) for a, s in row] for row in doc["factors"]]
    out = margin_product(factors)
    res = _tensor_out(out)
    res["agrees_with_internal_product"] = out == margin_product_direct(factors)
    return res


def _cmd_sigma(doc):
    E = FiniteAlgebra.from_json(doc["algebra"])
    return {"result": E.base.fmt(E.sigma(_tensor(doc["tensor"], E.alphabet)))}


def _cmd_discriminant(doc):
    E = FiniteAlgebra.from_json(doc["algebra"])
    return {"result": E.base.fmt(E.discriminant())}


def _cmd_norm(doc):
    E = FiniteAlgebra.from_json(doc["algebra"])
    phi = _algebra_map(doc, E)
    F = phi.source
    V = [F.parse(s) for s in doc["V"]] if "V" in doc else modpolyring_basis(F, E.n)
    gens = norm_ideal_generators(E.n, V)
    values = norm_ideal_image(gens, phi)
    disc = E.discriminant()
    fmt = E.base.fmt
    out = {
        "norm_values": [fmt(v) for v in values],
        "discriminant": fmt(disc),
        "equal": pid_ideal_equal(values, [disc], E.base),
        "V": [str(v) for v in V],
    }
    if "elements" in doc:
        out["element_values"] = [fmt(norm_value(_tensor(t, F), phi)) for t in doc["elements"]]
    return out


def _chart_output(x, P):
    C = ch.chart_algebra(x)
    A = ch.chart_specialize(C, P)
    doc = A.to_json()
    return {
        "tuple": [str(v) for v in x],
        "points": [[str(c) for c in p] for p in P.points],
        "algebra": doc,
        "discriminant": A.base.fmt(A.discriminant()),
    }


def _cmd_chart(doc):
    R = _ring_of(doc)
    x = [R.parse(s) for s in doc["tuple"]]
    return _chart_output(x, _points(doc["points"], R.coeffs))


def _cmd_plucker(doc):
    E = FiniteAlgebra.from_json(doc["algebra"])
    phi = _algebra_map(doc, E)
    V = [phi.source.parse(s) for s in doc["V"]]
    from itertools import combinations

    vals = ch.pluecker_coords(E, phi, V)
    subsets = [[str(V[i]) for i in S] for S in combinations(range(len(V)), E.n)]
    return {"minors": [E.base.fmt(v) for v in vals], "subsets": subsets}


def _cmd_eval(doc):
    R = _ring_of(doc)
    s = _tensor(doc["elem"], R)
    P = _points(doc["points"], R.coeffs)
    return {"result": str(ch.eval_point(s, P))}


_DISPATCH = {
    "gamma": _cmd_gamma,
    "shuffle": _cmd_shuffle,
    "internal-mul": _cmd_internal_mul,
    "delta": _cmd_delta,
    "margin-product": _cmd_margin_product,
    "sigma": _cmd_sigma,
    "discriminant": _cmd_discriminant,
    "norm": _cmd_norm,
    "chart": _cmd_chart,
    "plucker": _cmd_plucker,
    "eval": _cmd_eval,
}


def run_compute(command, doc):
    """Validate ``doc`` against the command's schema and dispatch."""
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    cmd = command or doc.get("command")
    if cmd is None:
        raise InputError("no command given")
    if command and doc.get("command") not in (None, command):
        raise InputError(f"document command {doc['command']!r} differs from {command!r}")
    if cmd not in _DISPATCH:
        raise InputError(f"unknown command {cmd!r}")
    try:
        jsonschema.validate(doc, SCHEMAS[cmd])
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"schema violation at {where}: {exc.message}") from None
    return _DISPATCH[cmd](doc)


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _fail(exc, stream):
    code = getattr(exc, "code", "error")
    stream.write(json.dumps({"error": {"code": code, "message": str(exc)}}, sort_keys=True) + "\n")
    return 2


def _split_tuple(text):
    """Split on commas outside parentheses."""
    parts, depth, cur = [], 0, []
    for chr_ in text:
        if chr_ == "(":
            depth += 1
        elif chr_ == ")":
            depth -= 1
        if chr_ == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(chr_)
    parts.append("".join(cur).strip())
    return parts


def build_parser():
    p = argparse.ArgumentParser(prog="ghilb", description="Divided powers, norms and blow-up charts.")
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("compute", help="run one operation on a JSON document")
    c.add_argument("command", choices=COMMANDS)
    c.add_argument("--in", dest="infile", default="-", help="input JSON file, '-' for stdin")

    v = sub.add_parser("verify", help="run a seeded identity suite")
    v.add_argument("suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--n-max", type=int, default=3)
    v.add_argument("--r-max", type=int, default=2)
    v.add_argument("--degree-max", type=int, default=3)
    v.add_argument("--n", type=int)
    v.add_argument("--r", type=int)
    v.add_argument("--ring")
    v.add_argument("--jobs", type=int, default=1, help="worker processes (report is unaffected)")
    v.add_argument("--out", help="also write the report to this file")

    k = sub.add_parser("chart", help="specialize a chart algebra at a point configuration")
    k.add_argument("--ring", default="QQ")
    k.add_argument("--vars", help="comma-separated variable names (default: inferred)")
    k.add_argument("--tuple", required=True, help='chart tuple, e.g. "1,t"')
    k.add_argument("--point", required=True, help='points, e.g. "0;1" or "0,0;1,1"')
    return p


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.cmd == "compute":
            try:
                if args.infile == "-":
                    doc = json.load(sys.stdin)
                else:
                    with open(args.infile, encoding="utf-8") as fh:
                        doc = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise InputError(f"cannot read input: {exc}") from None
            stdout.write(dumps(run_compute(args.command, doc)))
            return 0
        if args.cmd == "verify":
            job = Job(
                suite=args.suite, seed=args.seed, trials=args.trials, n_max=args.n_max, r_max=args.r_max,
                degree_max=args.degree_max, n=args.n, r=args.r, ring=args.ring, jobs=max(1, args.jobs),
            )
            report = run_verify(job)
            text = report_json(report) + "\n"
            stdout.write(text)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            return 0 if report["status"] == "pass" else 1
        if args.cmd == "chart":
            entries = _split_tuple(args.tuple)
            doc = {"ring": args.ring, "tuple": entries}
            if args.vars:
                doc["vars"] = [s.strip() for s in args.vars.split(",")]
            R = _ring_of(doc)
            P = ch.PointConfig.parse(args.point, R.coeffs)
            if not args.vars and R.nvars != P.r:
                raise InputError(f"points have {P.r} coordinates but {R.nvars} variables were inferred; pass --vars")
            x = [R.parse(s) for s in entries]
            stdout.write(dumps(_chart_output(x, P)))
            return 0
    except GhilbError as exc:
        return _fail(exc, stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
