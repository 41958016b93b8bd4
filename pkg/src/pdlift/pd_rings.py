"""Finite local test algebras over W = Z_p.

Every ring here is a quotient of a free Z-module with a fixed ordered basis
and integer structure constants.  An element is an integer coordinate
vector kept in a canonical normal form.  For all families except the
ramified ones the normal form is coordinate-wise reduction mod p^{m_i};
the ramified rings W[[T]]/(p - g T^n, T^d) use base-p digits with carries.

Basis 0 is always the unit and every other basis element is nilpotent, so
an element lies in the maximal ideal iff its 0-th coordinate is divisible
by p.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .witt import (
    RingParams,
    factorial_unit_part,
    factorial_valuation,
    pd_composition_integer,
)


class RingMismatch(ValueError):
    pass


class NotInPDIdeal(ValueError):
    pass


class UnsupportedTruncation(ValueError):
    pass


FAMILIES = (
    "Wm",
    "WmEps",
    "WmMixedEps",
    "PD",
    "PDEps",
    "PDEpsQuot",
    "Ramified",
    "ResidueSeries",
)

PD_FAMILIES = ("Wm", "WmEps", "WmMixedEps", "PD", "PDEps", "PDEpsQuot")


@dataclass(frozen=True)
class RingDescriptor:
    family: str
    p: int
    m: int = 0
    d: int = 0
    n: int = 0
    g: tuple = ()  # () is the zero flag

    def __post_init__(self):
        RingParams(self.p)
        fam = self.family
        if fam not in FAMILIES:
            raise ValueError(f"unknown ring family {fam!r}")
        if fam in ("Wm", "WmEps", "WmMixedEps", "PD", "PDEps", "PDEpsQuot"):
            if self.m < 1:
                raise ValueError(f"{fam} needs m >= 1")
        if fam in ("PD", "PDEps", "PDEpsQuot", "Ramified", "ResidueSeries"):
            if self.d < 1:
                raise ValueError(f"{fam} needs d >= 1")
        if fam == "PDEpsQuot" and self.d < 2:
            raise ValueError("PDEpsQuot needs d >= 2")
        if fam == "Ramified":
            if self.n < 1:
                raise ValueError("Ramified needs n >= 1")
            g = tuple(int(c) for c in self.g)
            if any(g) and g[0] % self.p == 0:
                raise ValueError("g must be a unit (constant term prime to p) or zero")
            object.__setattr__(self, "g", g if any(g) else ())

    @property
    def params(self) -> RingParams:
        return RingParams(self.p)

    def __str__(self):
        f = self.family
        if f in ("Wm", "WmEps", "WmMixedEps"):
            return f"{f}(m={self.m}, p={self.p})"
        if f in ("PD", "PDEps", "PDEpsQuot"):
            return f"{f}(m={self.m}, d={self.d}, p={self.p})"
        if f == "Ramified":
            g = list(self.g) if self.g else 0
            return f"Ramified(n={self.n}, g={g}, d={self.d}, p={self.p})"
        return f"ResidueSeries(d={self.d}, p={self.p})"

    def to_json(self) -> dict:
        out = {"family": self.family, "p": self.p}
        for k in ("m", "d", "n"):
            if getattr(self, k):
                out[k] = getattr(self, k)
        if self.family == "Ramified":
            out["g"] = list(self.g)
        return out


def Wm(p, m):
    return make_ring(RingDescriptor("Wm", p, m=m))


def WmEps(p, m):
    return make_ring(RingDescriptor("WmEps", p, m=m))


def WmMixedEps(p, m):
    return make_ring(RingDescriptor("WmMixedEps", p, m=m))


def PD(p, m, d):
    return make_ring(RingDescriptor("PD", p, m=m, d=d))


def PDEps(p, m, d):
    return make_ring(RingDescriptor("PDEps", p, m=m, d=d))


def PDEpsQuot(p, m, d):
    return make_ring(RingDescriptor("PDEpsQuot", p, m=m, d=d))


def Ramified(p, n, g, d):
    return make_ring(RingDescriptor("Ramified", p, d=d, n=n, g=tuple(g or ())))


def ResidueSeries(p, d):
    return make_ring(RingDescriptor("ResidueSeries", p, d=d))


# Basis symbols are (gamma_index, has_eps).  Labels: "1", "g1", "eps", "g2*eps".
def _label(a, eps, family):
    if family in ("Ramified", "ResidueSeries"):
        base = "1" if a == 0 else ("T" if a == 1 else f"T^{a}")
    else:
        base = "1" if a == 0 else f"g{a}"
    if not eps:
        return base
    return "eps" if a == 0 else f"{base}*eps"


class ArtinTestRing:
    """A finite local W-algebra given by basis, moduli and structure constants.

    ``exps[i]`` is the modulus exponent of coordinate i, ``table[i][j]`` is
    the sparse product of basis elements i and j as ``((k, c), ...)``.
    """

    def __init__(self, descriptor, symbols, exps, table, nilpotency_bound):
        self.descriptor = descriptor
        self.p = descriptor.p
        self.symbols = tuple(symbols)
        self.labels = tuple(_label(a, e, descriptor.family) for a, e in symbols)
        self.exps = tuple(exps)
        self.moduli = tuple(self.p**e for e in exps)
        self.table = table
        self.nilpotency_bound = nilpotency_bound
        self._index = {s: i for i, s in enumerate(self.symbols)}

    # -- identity ------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, ArtinTestRing) and other.descriptor == self.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return str(self.descriptor)

    @property
    def family(self):
        return self.descriptor.family

    @cached_property
    def dim(self):
        return len(self.symbols)

    def index(self, symbol):
        return self._index[symbol]

    # -- normal forms --------------------------------------------------
    def reduce(self, coords) -> tuple:
        return tuple([int(c) % q for c, q in zip(coords, self.moduli)])

    @cached_property
    def char_exponent(self) -> int:
        """Smallest e with p^e = 0 in the ring."""
        return max(self.exps)

    @cached_property
    def order_log(self) -> int:
        """log_p of the number of elements."""
        return sum(self.exps)

    # -- elements ------------------------------------------------------
    def elem(self, coords) -> "RingElem":
        coords = list(coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return RingElem(self, self.reduce(coords))

    def zero(self):
        return RingElem(self, (0,) * self.dim)

    def one(self):
        return self.scalar(1)

    def scalar(self, c: int):
        return self.elem([c] + [0] * (self.dim - 1))

    def basis(self, symbol_or_label):
        if isinstance(symbol_or_label, str):
            i = self.labels.index(symbol_or_label)
        elif isinstance(symbol_or_label, int):
            i = symbol_or_label
        else:
            i = self._index[symbol_or_label]
        c = [0] * self.dim
        c[i] = 1
        return self.elem(c)

    def gamma_basis(self, a: int, eps: bool = False):
        """gamma^a(T) (times eps); zero if the symbol was truncated away."""
        i = self._index.get((a, eps))
        if i is None:
            return self.zero()
        return self.basis(i)

    def raw_mul(self, x, y) -> list:
        out = [0] * self.dim
        table = self.table
        for i, a in enumerate(x):
            if not a:
                continue
            row = table[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return out

    def in_max_ideal(self, coords) -> bool:
        return coords[0] % self.p == 0

    # -- enumeration ---------------------------------------------------
    def coord_ranges(self):
        """Per-coordinate value ranges spanning the maximal ideal."""
        first = range(0, self.moduli[0], self.p)
        return [first] + [range(q) for q in self.moduli[1:]]

    def max_ideal_size(self) -> int:
        return math.prod(len(r) for r in self.coord_ranges())

    def enumerate_max_ideal(self):
        for coords in itertools.product(*self.coord_ranges()):
            yield RingElem(self, coords)

    def enumerate_all(self):
        for coords in itertools.product(*[range(q) for q in self.moduli]):
            yield RingElem(self, self.reduce(coords))

    # -- checks --------------------------------------------------------
    def check_axioms(self) -> list:
        """Return a list of failures of commutativity/associativity/unit on basis."""
        bad = []
        basis = [self.basis(i) for i in range(self.dim)]
        one = self.one()
        for a in basis:
            if one * a != a:
                bad.append(("unit", a))
        for a, b in itertools.product(basis, repeat=2):
            if a * b != b * a:
                bad.append(("comm", a, b))
        for a, b, c in itertools.product(basis, repeat=3):
            if (a * b) * c != a * (b * c):
                bad.append(("assoc", a, b, c))
        return bad

    def max_ideal_generators(self):
        gens = [self.scalar(self.p)] if self.char_exponent > 0 else []
        gens += [self.basis(i) for i in range(1, self.dim)]
        return [g for g in gens if not g.is_zero()]

    def table_json(self) -> dict:
        products = {}
        for i in range(self.dim):
            for j in range(i, self.dim):
                prod = self.basis(i) * self.basis(j)
                if not prod.is_zero():
                    products[f"{self.labels[i]}*{self.labels[j]}"] = prod.to_json()
        return {
            "ring": self.descriptor.to_json(),
            "name": str(self.descriptor),
            "basis": list(self.labels),
            "moduli": [f"{self.p}^{e}" for e in self.exps],
            "modulus_exponents": list(self.exps),
            "order_log_p": self.order_log,
            "products": products,
            "nilpotency_bound": self.nilpotency_bound,
        }


class RamifiedRing(ArtinTestRing):
    """W[[T]]/(p - g(T) T^n, T^d) with digits c_i in [0, p)."""

    def __init__(self, descriptor):
        d, p = descriptor.d, descriptor.p
        symbols = [(i, False) for i in range(d)]
        table = [
            [((i + j, 1),) if i + j < d else () for j in range(d)] for i in range(d)
        ]
        super().__init__(descriptor, symbols, [1] * d, table, d)
        self.n = descriptor.n
        self.g = tuple(descriptor.g[:d])

    def reduce(self, coords) -> tuple:
        c = [int(x) for x in coords]
        p, n, d, g = self.p, self.n, self.dim, self.g
        for i in range(d):
            q, c[i] = divmod(c[i], p)
            if q and g:
                # p T^i = g(T) T^{n+i}
                for k, gk in enumerate(g):
                    if i + n + k >= d:
                        break
                    c[i + n + k] += q * gk
        return tuple(c)

    @cached_property
    def char_exponent(self) -> int:
        e, x = 0, self.one()
        while not x.is_zero():
            x = x * self.scalar(self.p)
            e += 1
        return e

    def coord_ranges(self):
        return [range(1)] + [range(self.p)] * (self.dim - 1)

    def enumerate_all(self):
        for coords in itertools.product(range(self.p), repeat=self.dim):
            yield RingElem(self, coords)


@dataclass(frozen=True, eq=False)
class RingElem:
    ring: ArtinTestRing
    coords: tuple

    def _same(self, other):
        if isinstance(other, int):
            return self.ring.scalar(other)
        if not isinstance(other, RingElem):
            raise TypeError(f"cannot combine RingElem with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        return other

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.scalar(other)
        return (
            isinstance(other, RingElem)
            and other.ring == self.ring
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((self.ring, self.coords))

    def __add__(self, other):
        other = self._same(other)
        return RingElem(self.ring, self.ring.reduce([a + b for a, b in zip(self.coords, other.coords)]))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same(other)
        return RingElem(self.ring, self.ring.reduce([a - b for a, b in zip(self.coords, other.coords)]))

    def __rsub__(self, other):
        return self._same(other) - self

    def __neg__(self):
        return self.ring.elem([-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElem(self.ring, self.ring.reduce([a * other for a in self.coords]))
        other = self._same(other)
        return RingElem(self.ring, self.ring.reduce(self.ring.raw_mul(self.coords, other.coords)))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        out, base = self.ring.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coords)

    def in_max_ideal(self) -> bool:
        return self.ring.in_max_ideal(self.coords)

    def gamma(self, n: int):
        return gamma(self, n)

    def to_json(self) -> dict:
        return {lab: c for lab, c in zip(self.ring.labels, self.coords) if c}

    def __str__(self):
        terms = []
        for lab, c in zip(self.ring.labels, self.coords):
            if c:
                terms.append(str(c) if lab == "1" else (lab if c == 1 else f"{c}*{lab}"))
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


def elem_arith(x: RingElem, y: RingElem, op: str) -> RingElem:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# construction


def _pd_product(a, b, d):
    if a + b >= d:
        return None
    return a + b, math.comb(a + b, a)


def make_ring(desc: RingDescriptor) -> ArtinTestRing:
    fam, m, d = desc.family, desc.m, desc.d
    if fam in ("Ramified", "ResidueSeries"):
        if fam == "ResidueSeries":
            desc = RingDescriptor("Ramified", desc.p, d=d, n=1, g=())
            ring = RamifiedRing(desc)
            ring.descriptor = RingDescriptor("ResidueSeries", desc.p, d=d)
            return ring
        return RamifiedRing(desc)

    if fam == "Wm":
        symbols, exps, gd, nil = [(0, False)], [m], 1, m
    elif fam == "WmEps":
        symbols, exps, gd, nil = [(0, False), (0, True)], [m, m], 1, m + 1
    elif fam == "WmMixedEps":
        symbols, exps, gd, nil = [(0, False), (0, True)], [m + 1, m], 1, m + 1
    elif fam == "PD":
        symbols = [(a, False) for a in range(d)]
        exps, gd, nil = [m] * d, d, m + d - 1
    elif fam == "PDEps":
        symbols = [(a, False) for a in range(d)] + [(a, True) for a in range(d)]
        exps, gd, nil = [m] * (2 * d), d, m + d
    else:  # PDEpsQuot: W_{m,d}[eps]/(gamma^{d-1} eps)
        symbols = [(a, False) for a in range(d)] + [(a, True) for a in range(d - 1)]
        exps, gd, nil = [m] * (2 * d - 1), d, m + d

    index = {s: i for i, s in enumerate(symbols)}
    table = []
    for (a, ea) in symbols:
        row = []
        for (b, eb) in symbols:
            entry = ()
            if not (ea and eb):
                prod = _pd_product(a, b, gd)
                if prod is not None:
                    k = index.get((prod[0], ea or eb))
                    if k is not None:
                        entry = ((k, prod[1]),)
            row.append(entry)
        table.append(tuple(row))
    ring = ArtinTestRing(desc, symbols, exps, tuple(table), nil)
    return ring


# ---------------------------------------------------------------------------
# divided powers


def _gamma_scaled_unit(c: int, n: int, ring: ArtinTestRing) -> RingElem:
    # gamma^n(c * 1) = c^n / n! for c in pW
    p, mod = ring.p, ring.moduli[0]
    if n == 0:
        return ring.one()
    if c % mod == 0:
        return ring.zero()
    v = 0
    w = c
    while w % p == 0:
        w //= p
        v += 1
    e = v * n - factorial_valuation(n, p)
    if e >= ring.exps[0]:
        return ring.zero()
    unit = factorial_unit_part(n, p, ring.exps[0]).value
    return ring.scalar(p**e * pow(w, n, mod) * pow(unit, -1, mod))


def _gamma_basis_term(i: int, c: int, n: int, ring: ArtinTestRing) -> RingElem:
    """gamma^n(c * b_i) for a single basis element b_i in the PD ideal."""
    if n == 0:
        return ring.one()
    if n == 1:
        return ring.basis(i) * c
    a, eps = ring.symbols[i]
    if a == 0 and not eps:
        return _gamma_scaled_unit(c, n, ring)
    if eps:
        # gamma^n(y eps) = y^n gamma^n(eps) = 0 for n >= 2
        return ring.zero()
    # gamma^n(c gamma^a) = c^n * (na)!/(n! a!^n) * gamma^{na}
    k = ring._index.get((n * a, False))
    if k is None:
        return ring.zero()
    mod = ring.moduli[k]
    coef = pow(c, n, mod) * (pd_composition_integer(n, a) % mod)
    return ring.basis(k) * coef


def gamma_sequence(x: RingElem, n: int) -> list:
    """[gamma^0(x), ..., gamma^n(x)] via the addition law over basis components."""
    ring = x.ring
    if ring.family not in PD_FAMILIES:
        raise NotInPDIdeal(f"{ring} carries no divided power structure here")
    if not x.in_max_ideal():
        raise NotInPDIdeal(f"{x} has a unit component")
    # convolve on raw coordinates; zero terms are skipped
    seq = [ring.one().coords] + [None] * n
    for i, c in enumerate(x.coords):
        if not c:
            continue
        part = [_gamma_basis_term(i, c, k, ring).coords for k in range(n + 1)]
        part = [t if any(t) else None for t in part]
        new = []
        for k in range(n + 1):
            acc = [0] * ring.dim
            for j in range(k + 1):
                a, b = seq[j], part[k - j]
                if a is None or b is None:
                    continue
                for idx, v in enumerate(ring.raw_mul(a, b)):
                    acc[idx] += v
            t = ring.reduce(acc)
            new.append(t if any(t) else None)
        seq = new
    return [RingElem(ring, t) if t is not None else ring.zero() for t in seq]


def gamma(x: RingElem, n: int) -> RingElem:
    if n < 0:
        raise ValueError("n must be >= 0")
    return gamma_sequence(x, n)[n]


# ---------------------------------------------------------------------------
# ring maps


class RingMap:
    """Additive map given by the images of basis elements."""

    def __init__(self, source, target, images, name=""):
        self.source = source
        self.target = target
        self.images = [tuple(im.coords) for im in images]
        self.name = name

    def __call__(self, x: RingElem) -> RingElem:
        if x.ring != self.source:
            raise RingMismatch(f"map from {self.source} applied to {x.ring}")
        out = [0] * self.target.dim
        for c, im in zip(x.coords, self.images):
            if c:
                for k, v in enumerate(im):
                    out[k] += c * v
        return self.target.elem(out)

    def homomorphism_failures(self) -> list:
        src = self.source
        bad = []
        if self(src.one()) != self.target.one():
            bad.append(("unit",))
        basis = [src.basis(i) for i in range(src.dim)]
        for a, b in itertools.product(basis, repeat=2):
            if self(a * b) != self(a) * self(b):
                bad.append((str(a), str(b)))
        if not isinstance(src, RamifiedRing):
            # additive relations p^{m_i} b_i = 0 must map to zero
            for i, q in enumerate(src.moduli):
                if not self.target.elem([q * v for v in self.images[i]]).is_zero():
                    bad.append(("modulus", src.labels[i]))
        return bad

    def is_homomorphism(self) -> bool:
        return not self.homomorphism_failures()


@dataclass(frozen=True)
class KernelGen:
    """Kernel generator p^shift * e_coord, annihilated by p^ann."""

    coord: int
    shift: int
    ann: int


class TruncationMap(RingMap):
    """Surjection onto a ring whose basis is a subset of the source basis."""

    def __init__(self, source, target):
        self.source_to_target = []
        images = []
        for i, s in enumerate(source.symbols):
            j = target._index.get(s)
            raw = [0] * target.dim
            if j is not None:
                raw[j] = 1
            images.append(target.elem(raw))
        super().__init__(source, target, images, name=f"{source} -> {target}")
        self.kernel_gens = []
        for i, s in enumerate(source.symbols):
            j = target._index.get(s)
            if j is None:
                self.kernel_gens.append(KernelGen(i, 0, source.exps[i]))
            elif source.exps[i] > target.exps[j]:
                self.kernel_gens.append(
                    KernelGen(i, target.exps[j], source.exps[i] - target.exps[j])
                )
        self._target_pos = [target._index[s] for s in target.symbols]
        self._src_pos = [source._index[s] for s in target.symbols]

    @property
    def kernel_basis(self) -> list:
        out = []
        for kg in self.kernel_gens:
            raw = [0] * self.source.dim
            raw[kg.coord] = self.source.p**kg.shift
            out.append(self.source.elem(raw))
        return out

    def section(self, y: RingElem) -> RingElem:
        """Coordinate-wise canonical lift: same digits, zero on new symbols."""
        if y.ring != self.target:
            raise RingMismatch("section applied to wrong ring")
        raw = [0] * self.source.dim
        for jt, js in zip(self._target_pos, self._src_pos):
            raw[js] = y.coords[jt]
        return self.source.elem(raw)

    def kernel_coords(self, x: RingElem) -> tuple:
        """Coordinates of a kernel element w.r.t. ``kernel_gens``."""
        p = self.source.p
        if not self(x).is_zero():
            raise ValueError(f"{x} is not in the kernel")
        out = []
        covered = set()
        for kg in self.kernel_gens:
            c = x.coords[kg.coord]
            assert c % p**kg.shift == 0
            out.append((c // p**kg.shift) % p**kg.ann)
            covered.add(kg.coord)
        assert all(x.coords[i] == 0 for i in range(self.source.dim) if i not in covered)
        return tuple(out)

    @cached_property
    def square_zero(self) -> bool:
        ks = self.kernel_basis
        return all((a * b).is_zero() for a in ks for b in ks)

    def kernel_module_size_log(self) -> int:
        return sum(kg.ann for kg in self.kernel_gens)

    def enumerate_kernel(self):
        ranges = [range(self.source.p**kg.ann) for kg in self.kernel_gens]
        ks = self.kernel_basis
        for ts in itertools.product(*ranges):
            out = self.source.zero()
            for t, k in zip(ts, ks):
                if t:
                    out = out + k * t
            yield out


def _supported(s: RingDescriptor, t: RingDescriptor) -> bool:
    if s.p != t.p:
        return False
    fs, ft = s.family, t.family
    if fs == ft == "PD":
        return (s.m == t.m and s.d == t.d + 1) or (s.d == t.d and s.m == t.m + 1)
    if fs == ft == "Wm":
        return s.m == t.m + 1
    if fs == "WmEps" and ft == "WmMixedEps":
        return s.m == t.m + 1
    if fs == ft == "WmEps":
        return s.m == t.m + 1
    if fs == "PDEps" and ft == "PDEpsQuot":
        return s.m == t.m and s.d == t.d
    if fs == "PDEpsQuot" and ft == "PDEps":
        return s.m == t.m and s.d == t.d + 1
    if fs == ft == "PDEps":
        return (s.m == t.m and s.d == t.d + 1) or (s.d == t.d and s.m == t.m + 1)
    if fs == ft == "Ramified":
        return s.n == t.n and s.g == t.g and s.d == t.d + 1
    if fs == ft == "ResidueSeries":
        return s.d == t.d + 1
    return False


def make_truncation(source, target) -> TruncationMap:
    if isinstance(source, RingDescriptor):
        source = make_ring(source)
    if isinstance(target, RingDescriptor):
        target = make_ring(target)
    if not _supported(source.descriptor, target.descriptor):
        raise UnsupportedTruncation(f"no truncation {source} -> {target}")
    return TruncationMap(source, target)


def shift_substitution(p: int, m: int, d: int) -> RingMap:
    """T -> T + eps from W_{m,d+1} to W_{m,d}[eps].

    gamma^n(T + eps) = gamma^n(T) + gamma^{n-1}(T) eps, since gamma^i(eps) = 0
    for i >= 2.
    """
    if m < 1 or d < 1:
        raise ValueError("need m, d >= 1")
    src, tgt = PD(p, m, d + 1), PDEps(p, m, d)
    images = []
    for n in range(d + 1):
        im = tgt.gamma_basis(n) + (tgt.gamma_basis(n - 1, True) if n else tgt.zero())
        images.append(im)
    return RingMap(src, tgt, images, name=f"T->T+eps {src} -> {tgt}")


def eps_to_zero(ring: ArtinTestRing) -> RingMap:
    """The projection A[eps] -> A."""
    fam = ring.family
    if fam == "PDEps" or fam == "PDEpsQuot":
        tgt = PD(ring.p, ring.descriptor.m, ring.descriptor.d)
    elif fam == "WmEps":
        tgt = Wm(ring.p, ring.descriptor.m)
    elif fam == "WmMixedEps":
        tgt = Wm(ring.p, ring.descriptor.m + 1)
    else:
        raise UnsupportedTruncation(f"{ring} has no eps coordinate")
    images = []
    for s in ring.symbols:
        images.append(tgt.zero() if s[1] else tgt.basis(tgt.index(s)))
    return RingMap(ring, tgt, images, name=f"eps->0 {ring} -> {tgt}")


def eps_extension(ring: ArtinTestRing) -> ArtinTestRing:
    d = ring.descriptor
    if d.family == "Wm":
        return WmEps(d.p, d.m)
    if d.family == "PD":
        return PDEps(d.p, d.m, d.d)
    raise UnsupportedTruncation(f"no eps-extension for {ring}")


def eps_inclusion(ring: ArtinTestRing, y: RingElem) -> RingElem:
    """y * eps in the eps-extension (or glued ring) ``ring``."""
    out = [0] * ring.dim
    for s, c in zip(y.ring.symbols, y.coords):
        k = ring._index.get((s[0], True))
        if k is not None:
            out[k] = c
    return ring.elem(out)


def base_inclusion(ring: ArtinTestRing, x: RingElem) -> RingElem:
    """Place the coordinates of x on the eps-free symbols of ``ring``."""
    out = [0] * ring.dim
    for s, c in zip(x.ring.symbols, x.coords):
        out[ring.index(s)] = c
    return ring.elem(out)
