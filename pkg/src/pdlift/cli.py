"""Command-line front end: ``pdlift probe | t1check | example | ring-table``."""

from __future__ import annotations

import argparse
import json
import sys

from .expr import ExprError
from .lifting import (
    DEFAULT_BUDGET,
    NO_OBSTRUCTION,
    PRECISION_LIMITED,
    REFUTED,
    UnsupportedTarget,
    check_well_defined,
    deligne_example,
    probe_smoothness,
    required_bounds,
    t1_lifting_check,
)
from .pd_rings import FAMILIES, PD, RingDescriptor, Wm, make_ring
from .problem import ProblemError, ProblemFile, load, parse_image_spec, ring_expression
from .series import Presentation, SeriesMismatch

EXIT_OK, EXIT_INPUT, EXIT_REFUTED, EXIT_LIMITED = 0, 1, 2, 3

PROBE_EXIT = {NO_OBSTRUCTION: EXIT_OK, REFUTED: EXIT_REFUTED, PRECISION_LIMITED: EXIT_LIMITED}

EXAMPLES = {
    "node": ProblemFile(3, ["x", "y"], ["x*y"]),
    "free": ProblemFile(3, ["x", "y"], []),
    "p-torsion": ProblemFile(3, ["x"], ["p*x"]),
}
DELIGNE = {"deligne-p2": 2, "deligne-p3": 3, "deligne-p5": 5}
EXAMPLE_NAMES = sorted(EXAMPLES) + sorted(DELIGNE)


class InputError(Exception):
    pass


# -- text rendering ---------------------------------------------------------

def _fmt_images(images: dict) -> str:
    parts = []
    for v, coords in images.items():
        terms = [f"{c}" if lab == "1" else (lab if c == 1 else f"{c}*{lab}") for lab, c in coords.items() if c]
        parts.append(f"{v} -> {' + '.join(terms) or '0'}")
    return ", ".join(parts)


def render_probe(doc: dict) -> str:
    out = [f"verdict: {doc['verdict']}"]
    pres = doc["presentation"]
    out.append(f"presentation: p={pres['p']} vars={pres['vars']} generators={pres['generators']}")
    ci = doc["condition_i"]
    out.append(f"condition (i): {ci['status']}" + (f" at {ci['point']}" if ci.get("point") is not None else ""))
    for e in doc["eliminations"]:
        out.append(f"  eliminated {e['var']} = {e['value']}")
    if doc.get("normalized"):
        out.append(f"normalized generators: {doc['normalized']['generators']}")
    for cell in doc["cells"]:
        where = cell.get("condition", "?")
        if "m" in cell:
            where += f" m={cell['m']}"
        if cell.get("d") is not None:
            where += f" d={cell['d']}"
        extra = f" ({cell['reason']})" if cell.get("reason") else ""
        out.append(f"  cell {where}: {cell['verdict']}{extra}")
    w = doc.get("witness")
    if w:
        wr = w["witness"]
        out.append(f"witness map into {wr['ring_name']}: {_fmt_images(wr['images'])}")
        if "original_images" in w:
            out.append(f"  in original coordinates: {_fmt_images(w['original_images'])}")
        s = w["surjection"]
        out.append(f"  does not lift along {s['source']} -> {s['target']} (kernel {s['kernel_basis']})")
        cert = w.get("certificate")
        if cert:
            out.append(f"  certificate mod {cert['modulus']}: y*A = 0, y*b != 0 with y = {cert['left_witness']}")
    for c in doc["caveats"]:
        out.append(f"note: {c}")
    return "\n".join(out)


def render_t1(doc: dict) -> str:
    out = [f"verdict: {doc['verdict']}", f"ring: {doc['ring']} -> {doc['restricted_ring']}",
           f"base map: {_fmt_images(doc['base'])}"]
    for c in doc["classes_checked"]:
        out.append(f"  class {_fmt_images(c['class'])}: {c['verdict']}")
    if "witness" in doc:
        w = doc["witness"]
        out.append(f"non-liftable class: {_fmt_images(w['class'])}")
        cert = w["lift"].get("certificate")
        if cert:
            out.append(f"  certificate mod {cert['modulus']}: left witness {cert['left_witness']}")
    return "\n".join(out)


def render_deligne(doc: dict) -> str:
    out = [f"p = {doc['p']}, m = {doc['m']}, lambda = {doc['lambda']}"]
    for c in doc["checks"]:
        out.append(f"  [{'ok' if c['ok'] else 'FAIL'}] {c['statement']}: {c['value']}")
    out.append(f"conclusion: r^p = {doc['coefficient']}*g{doc['p']}*eps with "
               f"{doc['coefficient']} != 0 mod {doc['modulus']}, so the class does not lift")
    out.append(f"verdict: {doc['verdict']}")
    return "\n".join(out)


def _emit(doc, as_json, renderer):
    if as_json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(renderer(doc))


# -- commands ---------------------------------------------------------------

def _load_problem(path) -> ProblemFile:
    try:
        return load(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except ProblemError as exc:
        raise InputError(str(exc)) from None


def run_probe(pf: ProblemFile, m_max=4, d_max=4, budget=DEFAULT_BUDGET):
    m, D = required_bounds(m_max, d_max)
    pres = pf.presentation(m, D)
    return probe_smoothness(pres, m_max, d_max, budget, pf.point)


def cmd_probe(args) -> int:
    if args.m_max < 1 or args.d_max < 1 or args.budget < 1:
        raise InputError("--m-max, --d-max and --budget must be positive")
    pf = _load_problem(args.file)
    rep = run_probe(pf, args.m_max, args.d_max, int(args.budget))
    _emit(rep.to_json(), args.json, render_probe)
    return PROBE_EXIT[rep.verdict]


def _t1_images(pf: ProblemFile, ring, specs):
    exprs = dict(pf.images or {})
    for s in specs or []:
        try:
            v, e = parse_image_spec(s)
        except ProblemError as exc:
            raise InputError(str(exc)) from None
        exprs[v] = e
    unknown = set(exprs) - set(pf.vars)
    if unknown:
        raise InputError(f"images given for unknown variables {sorted(unknown)}")
    imgs = []
    for v in pf.vars:
        try:
            imgs.append(ring_expression(ring, exprs.get(v, "0")))
        except ExprError as exc:
            raise InputError(f"image of {v}: {exc}") from None
    return imgs


def run_t1check(pf: ProblemFile, m: int, d: int | None, image_specs=()):
    if m < 1:
        raise InputError("--m must be positive")
    if d is not None and d < 2:
        raise InputError("--d must be at least 2 (the check compares W_(m,d) with W_(m,d-1))")
    if d is None and m < 2:
        raise InputError("--m must be at least 2 when --d is omitted")
    ring = PD(pf.p, m, d) if d is not None else Wm(pf.p, m)
    ext_bound = m + (d or 1)
    pres = pf.presentation(m, ext_bound + 1)
    X = check_well_defined(pres, ring, _t1_images(pf, ring, image_specs))
    if not X:
        bad = ", ".join(f"{pf.generators[j]} -> {v}" for j, v in X.failures)
        raise InputError(f"base map is not well-defined: {bad}")
    try:
        return t1_lifting_check(X)
    except UnsupportedTarget as exc:
        raise InputError(str(exc)) from None


def cmd_t1check(args) -> int:
    pf = _load_problem(args.file)
    rep = run_t1check(pf, args.m, args.d, args.image)
    _emit(rep.to_json(), args.json, render_t1)
    return EXIT_OK if rep.surjective else EXIT_REFUTED


def cmd_example(args) -> int:
    name = args.name
    if name in DELIGNE:
        rep = deligne_example(DELIGNE[name])
        _emit(rep.to_json(), args.json, render_deligne)
        return EXIT_REFUTED if rep.ok else EXIT_INPUT
    if name in EXAMPLES:
        rep = run_probe(EXAMPLES[name])
        _emit(rep.to_json(), args.json, render_probe)
        return PROBE_EXIT[rep.verdict]
    raise InputError(f"unknown example {name!r}; available: {', '.join(EXAMPLE_NAMES)}")


def cmd_ring_table(args) -> int:
    g = tuple(int(c) for c in args.g.split(",") if c.strip()) if args.g else ()
    try:
        desc = RingDescriptor(args.family, args.p, args.m, args.d, args.n, g)
        ring = make_ring(desc)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(json.dumps(ring.table_json(), indent=2))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; 2 is reserved for refutations
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="pdlift", description="Divided-power lifting probes for formal W-algebras.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pr = sub.add_parser("probe", help="run the lifting conditions on a bounded grid")
    pr.add_argument("file")
    pr.add_argument("--m-max", type=int, default=4)
    pr.add_argument("--d-max", type=int, default=4)
    pr.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    pr.add_argument("--json", action="store_true")
    pr.set_defaults(func=cmd_probe)

    t1 = sub.add_parser("t1check", help="check the T^1-lifting property at one map")
    t1.add_argument("file")
    t1.add_argument("--m", type=int, required=True)
    t1.add_argument("--d", type=int, default=None, help="PD level; omit to use W_m -> W_(m-1)")
    t1.add_argument("--image", action="append", default=[], metavar="'VAR: EXPR'")
    t1.add_argument("--json", action="store_true")
    t1.set_defaults(func=cmd_t1check)

    ex = sub.add_parser("example", help="run a bundled scenario")
    ex.add_argument("name", help=", ".join(EXAMPLE_NAMES))
    ex.add_argument("--json", action="store_true")
    ex.set_defaults(func=cmd_example)

    rt = sub.add_parser("ring-table", help="dump a test ring's structure constants as JSON")
    rt.add_argument("family", choices=FAMILIES)
    rt.add_argument("--p", type=int, required=True)
    rt.add_argument("--m", type=int, default=0)
    rt.add_argument("--d", type=int, default=0)
    rt.add_argument("--n", type=int, default=0)
    rt.add_argument("--g", default="", help="comma-separated digits of g(T)")
    rt.set_defaults(func=cmd_ring_table)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SeriesMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
