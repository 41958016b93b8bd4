"""Deligne's example R = W[T]/(T^p) against the T^1-lifting property.

With m = 2p + 1 and lambda = p^2, the point s = lambda*gamma^1(T) of
W_{m,p+1} and its first-order deformation r' = (lambda + eps)*gamma^1(T)
over W_{m,p} cannot be glued: every candidate r over W_{m,p+1}[eps] has
r^p = p^2 lambda^{p-1} (p-1)! * eps*gamma^p(T), which is nonzero.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from ..pd_rings import PD, PDEps, RingElem
from ..series import Presentation
from ..witt import RingParams
from .maps import check_well_defined
from .t1 import t1_lifting_check


class RingPoly:
    """Polynomials in one indeterminate x over a test ring, truncated in x-degree."""

    def __init__(self, ring, coeffs, cap):
        self.ring = ring
        self.cap = cap
        cs = list(coeffs)[: cap + 1]
        cs += [ring.zero()] * (cap + 1 - len(cs))
        self.coeffs = cs

    @classmethod
    def const(cls, c: RingElem, cap):
        return cls(c.ring, [c], cap)

    @classmethod
    def x_times(cls, c: RingElem, cap):
        return cls(c.ring, [c.ring.zero(), c], cap)

    def __add__(self, other):
        return RingPoly(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.cap)

    def __mul__(self, other):
        out = [self.ring.zero()] * (self.cap + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > self.cap:
                    break
                out[i + j] = out[i + j] + a * b
        return RingPoly(self.ring, out, self.cap)

    def __pow__(self, n):
        out = RingPoly.const(self.ring.one(), self.cap)
        for _ in range(n):
            out = out * self
        return out


@dataclass
class Check:
    name: str
    statement: str
    value: str
    ok: bool

    def to_json(self):
        return {"name": self.name, "statement": self.statement, "value": self.value, "ok": self.ok}


@dataclass
class DeligneReport:
    p: int
    m: int
    lam: int
    coefficient: int  # p^2 lambda^{p-1} (p-1)! mod p^m
    checks: list = field(default_factory=list)
    t1: object = None
    seconds: float = 0.0

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    @property
    def verdict(self):
        return "NotSurjective" if self.ok else "Inconsistent"

    def to_json(self):
        return {
            "kind": "deligne",
            "verdict": self.verdict,
            "p": self.p,
            "m": self.m,
            "lambda": self.lam,
            "coefficient": self.coefficient,
            "modulus": self.p**self.m,
            "checks": [c.to_json() for c in self.checks],
            "t1check": self.t1.to_json() if self.t1 is not None else None,
            "seconds": round(self.seconds, 4),
        }


def deligne_example(p: int) -> DeligneReport:
    t0 = time.perf_counter()
    RingParams(p)
    m, lam = 2 * p + 1, p**2
    mod = p**m
    coef = p**2 * lam ** (p - 1) * math.factorial(p - 1) % mod
    rep = DeligneReport(p, m, lam, coef)
    add = rep.checks.append

    a = p * lam**p % mod
    b = p**2 * lam ** (p - 1) % mod
    add(Check("a1", f"p*lambda^p = 0 mod {p}^{m}", str(a), a == 0))
    add(Check("a2", f"p^2*lambda^(p-1) != 0 mod {p}^{m}", str(b), b != 0))

    A = PD(p, m, p + 1)
    s = A.gamma_basis(1) * lam
    sp = s**p
    add(Check("b", f"s^p = 0 in W_({m},{p + 1}) for s = {lam}*g1", str(sp), sp.is_zero()))

    E1 = PDEps(p, m, p)
    r1 = (E1.one() * lam + E1.gamma_basis(0, True)) * E1.gamma_basis(1)
    r1p = r1**p
    add(Check("c", f"(r')^p = 0 in W_({m},{p})[eps] for r' = ({lam}+eps)*g1", str(r1p), r1p.is_zero()))

    # r = (lambda + eps) g1 + x g^p with x a free indeterminate
    E = PDEps(p, m, p + 1)
    r_head = (E.one() * lam + E.gamma_basis(0, True)) * E.gamma_basis(1)
    r = RingPoly.const(r_head, p) + RingPoly.x_times(E.gamma_basis(p), p)
    rp = r**p
    expected = E.gamma_basis(p, True) * coef
    x_free = all(c.is_zero() for c in rp.coeffs[1:])
    add(Check("d1", "r^p has no terms involving x", str([str(c) for c in rp.coeffs[1:]]), x_free))
    add(Check("d2", f"r^p = {coef}*g{p}*eps", str(rp.coeffs[0]), rp.coeffs[0] == expected))
    add(Check("d3", f"{coef} != 0 mod {p}^{m}", str(coef), coef != 0))

    pres = Presentation.from_polys(p, ("T",), [f"T^{p}"], m, m + p + 2)
    X = check_well_defined(pres, A, [s])
    t1 = t1_lifting_check(X, classes=[(PD(p, m, p).gamma_basis(1),)])
    rep.t1 = t1
    add(Check("e", "T^1-lifting fails for the class eps*g1 (linear lift engine)",
              t1.verdict, not t1.surjective))
    rep.seconds = time.perf_counter() - t0
    return rep
