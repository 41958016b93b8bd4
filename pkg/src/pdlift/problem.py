"""Problem files: JSON documents describing a presentation (and optional map)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .expr import ExprError, parse_poly
from .series import Presentation
from .witt import is_prime


class ProblemError(ValueError):
    def __init__(self, msg, line=None, col=None):
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(msg + where)
        self.line = line
        self.col = col


@dataclass
class ProblemFile:
    p: int
    vars: list
    generators: list = field(default_factory=list)
    precision: int | None = None
    degree_cap: int | None = None
    point: list | None = None
    images: dict | None = None  # variable -> ring expression in g0, g1, ..., eps

    def to_json(self) -> dict:
        out = {"p": self.p, "vars": list(self.vars), "generators": list(self.generators)}
        if self.precision is not None:
            out["precision"] = self.precision
        if self.degree_cap is not None:
            out["degree_cap"] = self.degree_cap
        if self.point is not None:
            out["point"] = list(self.point)
        if self.images is not None:
            out["images"] = dict(self.images)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def polys(self):
        return [parse_poly(g, self.vars, self.p) for g in self.generators]

    def presentation(self, m: int, D: int) -> Presentation:
        m = max(m, self.precision or 1)
        D = max(D, self.degree_cap or 1)
        return Presentation.from_polys(self.p, self.vars, self.polys(), m, D)


def _locate(text, needle):
    idx = text.find(json.dumps(needle))
    if idx < 0:
        return None, None
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 2  # +1 for the quote
    return line, col


def loads(text: str) -> ProblemFile:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise ProblemError("problem file must be a JSON object")
    unknown = set(raw) - {"p", "vars", "generators", "precision", "degree_cap", "point", "images"}
    if unknown:
        raise ProblemError(f"unknown keys: {sorted(unknown)}")
    p = raw.get("p")
    if not isinstance(p, int) or not is_prime(p):
        raise ProblemError(f"p must be prime, got {p!r}")
    vars_ = raw.get("vars", [])
    if not isinstance(vars_, list) or not all(isinstance(v, str) and v.isidentifier() for v in vars_):
        raise ProblemError("vars must be a list of identifiers")
    if len(set(vars_)) != len(vars_):
        raise ProblemError("vars must be distinct")
    gens = raw.get("generators", [])
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise ProblemError("generators must be a list of expression strings")
    for k in ("precision", "degree_cap"):
        v = raw.get(k)
        if v is not None and (not isinstance(v, int) or v < 1):
            raise ProblemError(f"{k} must be a positive integer")
    pf = ProblemFile(p, vars_, gens, raw.get("precision"), raw.get("degree_cap"),
                     raw.get("point"), raw.get("images"))
    for g in gens:
        try:
            parse_poly(g, vars_, p)
        except ExprError as exc:
            line, col = _locate(text, g)
            raise ProblemError(str(exc), line, None if col is None else col + exc.col - 1) from None
    if pf.point is not None:
        if not isinstance(pf.point, list) or len(pf.point) != len(vars_) or not all(isinstance(a, int) for a in pf.point):
            raise ProblemError("point must be a list of integers, one per variable")
    if pf.images is not None and not isinstance(pf.images, dict):
        raise ProblemError("images must map variable names to expressions")
    return pf


def load(path) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def parse_image_spec(spec: str):
    """'T: 9*g1' -> ('T', '9*g1')."""
    if ":" not in spec:
        raise ProblemError(f"image must look like 'VAR: EXPR', got {spec!r}")
    var, expr = spec.split(":", 1)
    return var.strip(), expr.strip()


def ring_expression(ring, text: str):
    """Evaluate an expression in basis symbols (g1, g2, eps, T, ...) inside ``ring``."""
    names = []
    for i, lab in enumerate(ring.labels):
        if i == 0:
            continue
        if "*" not in lab and "^" not in lab:
            names.append(lab)
    if "g1" not in names and any(lab.startswith("g") for lab in ring.labels):
        names.append("g1")
    poly = parse_poly(text, names, ring.p)
    out = ring.zero()
    for exp, c in poly.items():
        term = ring.scalar(c)
        for name, k in zip(names, exp):
            if k:
                sym = ring.basis(name) if name in ring.labels else ring.zero()
                term = term * sym**k
        out = out + term
    return out
