"""Truncated multivariate power series over W and presentations W[[T]]/I.

A ``TruncatedSeries`` is exact modulo (p^m, total degree D): coefficients
are reduced mod p^m and terms of total degree >= D are dropped.  All
orders and valuations reported here are "at the working precision".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .expr import format_poly, parse_poly
from .pd_rings import ArtinTestRing, RingElem
from .witt import AtLeast, RingParams, WittInt, valuation


class SeriesMismatch(ValueError):
    pass


class SubstitutionError(ValueError):
    pass


class PointNotAZero(ValueError):
    def __init__(self, index, value):
        super().__init__(f"generator {index} does not vanish at the point (value {value})")
        self.index = index
        self.value = value


class ImageNotInMaxIdeal(ValueError):
    pass


class InsufficientPrecision(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    vars: tuple
    p: int
    m: int
    D: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        mod = self.p**self.m
        clean = {}
        for e, c in self.terms.items():
            e = tuple(e)
            if len(e) != len(self.vars):
                raise ValueError("exponent length does not match variables")
            if sum(e) >= self.D:
                continue
            c %= mod
            if c:
                clean[e] = (clean.get(e, 0) + c) % mod
                if not clean[e]:
                    del clean[e]
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "terms", clean)

    # -- construction --------------------------------------------------
    @classmethod
    def parse(cls, text, vars, p, m, D):
        return cls(tuple(vars), p, m, D, parse_poly(text, vars, p))

    def like(self, terms):
        return TruncatedSeries(self.vars, self.p, self.m, self.D, terms)

    def zero(self):
        return self.like({})

    def const(self, c):
        return self.like({(0,) * len(self.vars): c})

    def var(self, i):
        e = [0] * len(self.vars)
        e[i] = 1
        return self.like({tuple(e): 1})

    @property
    def modulus(self):
        return self.p**self.m

    # -- comparison / display -----------------------------------------
    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if (self.vars, self.p, self.m, self.D) != (other.vars, other.p, other.m, other.D):
            raise SeriesMismatch("series parameters differ")

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.const(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.vars, self.p, self.m, self.D, self.terms) == (
            other.vars, other.p, other.m, other.D, other.terms
        )

    def __hash__(self):
        return hash((self.vars, self.m, self.D, frozenset(self.terms.items())))

    def __str__(self):
        return format_poly(self.signed_terms(), self.vars)

    def __repr__(self):
        return f"TruncatedSeries({self}; p={self.p}, m={self.m}, D={self.D})"

    def signed_terms(self):
        """Terms with symmetric representatives in (-p^m/2, p^m/2]."""
        mod = self.modulus
        return {e: (c - mod if c > mod // 2 else c) for e, c in self.terms.items()}

    def is_zero(self):
        return not self.terms

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        return series_arith(self, self._coerce(other), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return series_arith(self, self._coerce(other), "sub")

    def __rsub__(self, other):
        return series_arith(self._coerce(other), self, "sub")

    def __mul__(self, other):
        if isinstance(other, int):
            return self.like({e: c * other for e, c in self.terms.items()})
        return series_arith(self, other, "mul")

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __pow__(self, n):
        out = self.const(1)
        for _ in range(n):
            out = out * self
        return out

    def _coerce(self, other):
        return self.const(other) if isinstance(other, int) else other

    # -- structure -----------------------------------------------------
    def ord(self):
        """Smallest total degree of a nonzero term; AtLeast(D) for 0."""
        if not self.terms:
            return AtLeast(self.D)
        return min(sum(e) for e in self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.vars), 0)

    def linear_coefficients(self) -> list:
        out = []
        for i in range(len(self.vars)):
            e = [0] * len(self.vars)
            e[i] = 1
            out.append(self.terms.get(tuple(e), 0))
        return out

    def coefficient(self, exp) -> WittInt:
        return WittInt(self.terms.get(tuple(exp), 0), self.m, self.p)

    def derivative(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return TruncatedSeries(self.vars, self.p, self.m, self.D - 1, out)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def with_bounds(self, m=None, D=None, vars=None):
        return TruncatedSeries(
            self.vars if vars is None else vars,
            self.p,
            self.m if m is None else m,
            self.D if D is None else D,
            self.terms,
        )

    def eval_int(self, point) -> int:
        """Value at an integer point, mod p^m."""
        mod = self.modulus
        total = 0
        for e, c in self.terms.items():
            t = c
            for a, k in zip(point, e):
                if k:
                    t = t * pow(a, k, mod) % mod
            total += t
        return total % mod


def series_arith(f: TruncatedSeries, g: TruncatedSeries, op: str) -> TruncatedSeries:
    f._check(g)
    if op in ("add", "sub"):
        sign = 1 if op == "add" else -1
        out = dict(f.terms)
        for e, c in g.terms.items():
            out[e] = out.get(e, 0) + sign * c
        return f.like(out)
    if op == "mul":
        out = {}
        D = f.D
        for e1, c1 in f.terms.items():
            d1 = sum(e1)
            for e2, c2 in g.terms.items():
                if d1 + sum(e2) >= D:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return f.like(out)
    raise ValueError(f"unknown op {op!r}")


def compose(f: TruncatedSeries, images) -> TruncatedSeries:
    """f(images), where each image has constant term in pW.

    Images live in a common series ring, which may differ from f's.
    """
    images = list(images)
    if len(images) != len(f.vars):
        raise SubstitutionError("need one image per variable")
    if not images:
        raise SubstitutionError("cannot compose a series in zero variables without a target")
    tgt = images[0]
    for im in images:
        tgt._check(im)
        if im.constant_term() % f.p:
            raise SubstitutionError(f"image {im} has a unit constant term")
    if tgt.m > f.m:
        raise SubstitutionError("target precision exceeds source precision")
    powers = [[tgt.const(1)] for _ in images]
    out = tgt.zero()
    for e, c in f.terms.items():
        term = tgt.const(c)
        for i, k in enumerate(e):
            while len(powers[i]) <= k:
                powers[i].append(powers[i][-1] * images[i])
            if k:
                term = term * powers[i][k]
        out = out + term
    return out


@dataclass(frozen=True, eq=False)
class Presentation:
    """R = W[[T_1..T_r]]/(f_1, ..., f_s) at precision (p^m, degree D)."""

    p: int
    vars: tuple
    generators: tuple
    m: int
    D: int

    def __post_init__(self):
        RingParams(self.p)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variable names must be distinct")
        gens = tuple(self.generators)
        for g in gens:
            if (g.vars, g.p, g.m, g.D) != (tuple(self.vars), self.p, self.m, self.D):
                raise SeriesMismatch("generator parameters differ from presentation")
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_polys(cls, p, vars, polys, m, D):
        vars = tuple(vars)
        gens = []
        for f in polys:
            if isinstance(f, str):
                f = parse_poly(f, vars, p)
            gens.append(TruncatedSeries(vars, p, m, D, f))
        return cls(p, vars, tuple(gens), m, D)

    @property
    def params(self):
        return RingParams(self.p)

    @property
    def r(self):
        return len(self.vars)

    def series(self, terms=None):
        return TruncatedSeries(self.vars, self.p, self.m, self.D, terms or {})

    def is_free(self):
        return all(g.is_zero() for g in self.generators)

    def to_json(self):
        return {
            "p": self.p,
            "vars": list(self.vars),
            "generators": [str(g) for g in self.generators],
            "precision": self.m,
            "degree_cap": self.D,
        }

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generators) or "0"
        return f"W[[{', '.join(self.vars)}]]/({gens})  (p={self.p}, m={self.m}, D={self.D})"


def translate_to_point(pres: Presentation, point) -> Presentation:
    point = [int(a) for a in point]
    if len(point) != pres.r:
        raise ValueError("point dimension does not match number of variables")
    for a in point:
        if a % pres.p:
            raise SubstitutionError(f"point coordinate {a} is not in pW")
    for j, g in enumerate(pres.generators):
        v = g.eval_int(point)
        if v:
            raise PointNotAZero(j, v)
    if not any(a % pres.p**pres.m for a in point):
        return pres
    base = pres.series()
    images = [base.var(i) + a for i, a in enumerate(point)]
    gens = tuple(compose(g, images) for g in pres.generators)
    return Presentation(pres.p, pres.vars, gens, pres.m, pres.D)


@dataclass(frozen=True)
class Elimination:
    var: str
    generator: int
    value: TruncatedSeries  # the eliminated variable as a series in the remaining ones


@dataclass(frozen=True)
class Minimized:
    presentation: Presentation
    eliminations: tuple

    def back_substitute(self, images):
        """Images of the original variables, given images of the remaining ones.

        ``images`` maps each remaining variable name to a value; values only
        need to support + and * with ints (ring elements do).
        """
        env = dict(images)
        for el in reversed(self.eliminations):
            env[el.var] = _eval_generic(el.value, [env[v] for v in el.value.vars])
        return env


def _eval_generic(f: TruncatedSeries, values):
    acc = None
    for e, c in f.terms.items():
        t = None
        for v, k in zip(values, e):
            for _ in range(k):
                t = v if t is None else t * v
        t = c if t is None else t * c
        acc = t if acc is None else acc + t
    if acc is None:
        acc = values[0] * 0 if values else 0
    return acc


def _solve_for(f: TruncatedSeries, i: int, lam: int) -> TruncatedSeries:
    """The series phi in the other variables with f(..., phi, ...) = 0."""
    mod = f.modulus
    inv = pow(lam, -1, mod)
    base = f.zero()
    h = f - f.var(i) * lam
    phi = base
    for _ in range(f.D + 1):
        images = [f.var(k) if k != i else phi for k in range(len(f.vars))]
        nxt = compose(h, images) * (-inv % mod)
        if nxt == phi:
            break
        phi = nxt
    return phi


def minimize_presentation(pres: Presentation) -> Minimized:
    """Eliminate variables with a unit linear coefficient in some generator."""
    for j, g in enumerate(pres.generators):
        if g.constant_term():
            raise SubstitutionError(f"generator {j} has nonzero constant term; translate first")
    eliminations = []
    cur = pres
    while True:
        pick = None
        for j, g in enumerate(cur.generators):
            for i, lam in enumerate(g.linear_coefficients()):
                if lam % cur.p:
                    pick = (j, i, lam)
                    break
            if pick:
                break
        if pick is None:
            return Minimized(cur, tuple(eliminations))
        j, i, lam = pick
        phi = _solve_for(cur.generators[j], i, lam)
        keep = [k for k in range(cur.r) if k != i]
        new_vars = tuple(cur.vars[k] for k in keep)
        phi_small = TruncatedSeries(
            new_vars, cur.p, cur.m, cur.D,
            {tuple(e[k] for k in keep): c for e, c in phi.terms.items()},
        )
        eliminations.append(Elimination(cur.vars[i], j, phi_small))
        if new_vars:
            tgt = TruncatedSeries(new_vars, cur.p, cur.m, cur.D)
            images = []
            it = iter(range(len(new_vars)))
            for k in range(cur.r):
                images.append(phi_small if k == i else tgt.var(next(it)))
            gens = [compose(g, images) for jj, g in enumerate(cur.generators) if jj != j]
        else:
            # every remaining generator collapses to its constant term, which is 0
            gens = []
        gens = tuple(g for g in gens if not g.is_zero())
        cur = Presentation(cur.p, new_vars, gens, cur.m, cur.D)


@dataclass(frozen=True)
class LinearReport:
    coefficients: tuple  # per generator: tuple of ints
    valuations: tuple  # per generator: tuple of int | AtLeast
    min_valuation: object  # int, or AtLeast(m) when there are no linear terms

    def to_json(self):
        return {
            "coefficients": [list(c) for c in self.coefficients],
            "valuations": [[v if isinstance(v, int) else str(v) for v in row] for row in self.valuations],
            "min_valuation": self.min_valuation if isinstance(self.min_valuation, int) else None,
        }


def linear_diagnostics(pres: Presentation) -> LinearReport:
    coeffs, vals = [], []
    best = AtLeast(pres.m)
    for g in pres.generators:
        lc = tuple(g.linear_coefficients())
        vs = tuple(valuation(c, pres.p, pres.m) for c in lc)
        coeffs.append(lc)
        vals.append(vs)
        for v in vs:
            if isinstance(v, int) and (isinstance(best, AtLeast) or v < best):
                best = v
    return LinearReport(tuple(coeffs), tuple(vals), best)


def jacobian(pres: Presentation) -> list:
    return [[g.derivative(i) for i in range(pres.r)] for g in pres.generators]


def evaluate(f: TruncatedSeries, ring: ArtinTestRing, images, check=True) -> RingElem:
    """Value of f under the continuous W-map sending T_i to images[i]."""
    images = list(images)
    if len(images) != len(f.vars):
        raise ValueError("need one image per variable")
    for x in images:
        if x.ring != ring:
            raise ValueError(f"image {x} is not in {ring}")
        if not x.in_max_ideal():
            raise ImageNotInMaxIdeal(f"{x} is not in the maximal ideal of {ring}")
    N = ring.nilpotency_bound
    if check:
        if f.D < N:
            raise InsufficientPrecision(f"degree cap {f.D} < nilpotency bound {N} of {ring}")
        if f.m < ring.char_exponent:
            raise InsufficientPrecision(
                f"precision {f.m} < {ring.char_exponent} needed by {ring}"
            )
    return _eval_in_ring(f.terms, ring, images, N)


def _eval_in_ring(terms, ring, images, N):
    dim = ring.dim
    powers = [[ring.one().coords] for _ in images]
    acc = [0] * dim
    for e, c in terms.items():
        if sum(e) >= N:
            continue
        vec = None
        for i, k in enumerate(e):
            if not k:
                continue
            pw = powers[i]
            while len(pw) <= k:
                pw.append(ring.reduce(ring.raw_mul(pw[-1], images[i].coords)))
            vec = pw[k] if vec is None else ring.reduce(ring.raw_mul(vec, pw[k]))
        if vec is None:
            acc[0] += c
        else:
            for k2, v in enumerate(vec):
                if v:
                    acc[k2] += c * v
    return ring.elem(acc)
