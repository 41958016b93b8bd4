"""Exact arithmetic in W_m = Z/p^m and linear algebra over it.

Everything here works on plain Python integers; ``WittInt`` is a thin
immutable wrapper that carries the prime and the precision so that mixing
moduli is caught early.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import total_ordering


class ModulusMismatch(ValueError):
    pass


class NonUnit(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    return all(n % q for q in range(3, math.isqrt(n) + 1, 2))


@dataclass(frozen=True)
class RingParams:
    """The base ring W = W(F_p) = Z_p; unramified, so e = 1 and u = p."""

    p: int
    e: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.e != 1:
            raise ValueError("only unramified bases (e = 1) are supported")

    @property
    def u(self) -> int:
        return self.p


@total_ordering
@dataclass(frozen=True)
class AtLeast:
    """Valuation of an element that is zero at the working precision."""

    bound: int

    def __eq__(self, other):
        if isinstance(other, AtLeast):
            return self.bound == other.bound
        return False

    def __lt__(self, other):
        if isinstance(other, AtLeast):
            return self.bound < other.bound
        return False

    def __gt__(self, other):
        if isinstance(other, AtLeast):
            return self.bound > other.bound
        return other < self.bound

    def __hash__(self):
        return hash(("AtLeast", self.bound))

    def __str__(self):
        return f">={self.bound}"


def valuation(x: int, p: int, cap: int | None = None):
    """p-adic valuation of the integer x; ``AtLeast(cap)`` once it reaches cap."""
    if x == 0:
        if cap is None:
            raise ValueError("valuation of 0 needs a cap")
        return AtLeast(cap)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
        if cap is not None and v >= cap:
            return AtLeast(cap)
    return v


@dataclass(frozen=True)
class WittInt:
    value: int
    m: int
    p: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("precision must be >= 1")
        object.__setattr__(self, "value", self.value % self.p**self.m)

    @property
    def modulus(self) -> int:
        return self.p**self.m

    def _check(self, other: "WittInt"):
        if not isinstance(other, WittInt):
            raise TypeError(f"expected WittInt, got {type(other).__name__}")
        if (self.p, self.m) != (other.p, other.m):
            raise ModulusMismatch(
                f"p^m mismatch: {self.p}^{self.m} vs {other.p}^{other.m}"
            )

    def __add__(self, other):
        return witt_arith(self, other, "add")

    def __sub__(self, other):
        return witt_arith(self, other, "sub")

    def __mul__(self, other):
        return witt_arith(self, other, "mul")

    def __neg__(self):
        return WittInt(-self.value, self.m, self.p)

    def __pow__(self, n: int):
        return WittInt(pow(self.value, n, self.modulus), self.m, self.p)

    def ord_p(self):
        return ord_p(self)

    def inverse(self):
        return unit_inverse(self)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"WittInt({self.value} mod {self.p}^{self.m})"


def witt_arith(a: WittInt, b: WittInt, op: str) -> WittInt:
    a._check(b)
    if op == "add":
        v = a.value + b.value
    elif op == "sub":
        v = a.value - b.value
    elif op == "mul":
        v = a.value * b.value
    else:
        raise ValueError(f"unknown op {op!r}")
    return WittInt(v, a.m, a.p)


def ord_p(a: WittInt):
    return valuation(a.value, a.p, a.m)


def unit_inverse(a: WittInt) -> WittInt:
    if a.value % a.p == 0:
        raise NonUnit(f"{a.value} is not a unit mod {a.p}^{a.m}")
    return WittInt(pow(a.value, -1, a.modulus), a.m, a.p)


def digit_sum(n: int, p: int) -> int:
    s = 0
    while n:
        n, r = divmod(n, p)
        s += r
    return s


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return (n - digit_sum(n, p)) // (p - 1)


def factorial_unit_part(n: int, p: int, m: int) -> WittInt:
    """The unit u with n! = p^v * u, reduced mod p^m."""
    v = factorial_valuation(n, p)
    return WittInt(math.factorial(n) // p**v, m, p)


def binomial_mod(a: int, b: int, p: int, m: int) -> WittInt:
    if not 0 <= b <= a:
        raise ValueError("need 0 <= b <= a")
    return WittInt(math.comb(a, b), m, p)


def pd_composition_integer(n: int, a: int) -> int:
    # gamma^n(gamma^a(x)) = (na)! / (n! (a!)^n) * gamma^{na}(x)
    num = math.factorial(n * a)
    den = math.factorial(n) * math.factorial(a) ** n
    q, r = divmod(num, den)
    assert r == 0
    return q


def pd_composition_constant(n: int, a: int, p: int, m: int) -> WittInt:
    if n < 1 or a < 1:
        raise ValueError("need n, a >= 1")
    return WittInt(pd_composition_integer(n, a), m, p)


# ---------------------------------------------------------------------------
# Linear systems over Z/p^m


@dataclass(frozen=True)
class ZpMatrix:
    """Rectangular matrix over Z/p^m stored as reduced integer rows."""

    rows: tuple
    p: int
    m: int
    ncols: int = -1

    def __post_init__(self):
        mod = self.p**self.m
        rows = tuple(tuple(int(x) % mod for x in r) for r in self.rows)
        ncols = self.ncols
        if ncols < 0:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def from_witt(cls, entries):
        flat = [x for row in entries for x in row]
        if not flat:
            raise ValueError("cannot infer modulus of an empty matrix")
        p, m = flat[0].p, flat[0].m
        for x in flat:
            if (x.p, x.m) != (p, m):
                raise ModulusMismatch("entries must share one modulus")
        return cls(tuple(tuple(x.value for x in row) for row in entries), p, m)

    @property
    def modulus(self) -> int:
        return self.p**self.m

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> WittInt:
        return WittInt(self.rows[i][j], self.m, self.p)

    def apply(self, x) -> tuple:
        mod = self.modulus
        return tuple(sum(a * b for a, b in zip(row, x)) % mod for row in self.rows)

    def left_apply(self, y) -> tuple:
        mod = self.modulus
        return tuple(
            sum(y[i] * self.rows[i][j] for i in range(self.nrows)) % mod
            for j in range(self.ncols)
        )


@dataclass(frozen=True)
class Solution:
    x: tuple
    kernel: tuple  # generators of {k : A k = 0} as a Z/p^m-module

    solvable = True


@dataclass(frozen=True)
class NoSolution:
    """Certificate: y with y.A = 0 and y.b != 0 (mod p^m)."""

    y: tuple
    residue: int  # y . b mod p^m, nonzero

    solvable = False

    def verify(self, A: ZpMatrix, b) -> bool:
        mod = A.modulus
        if any(A.left_apply(self.y)):
            return False
        return sum(a * c for a, c in zip(self.y, b)) % mod != 0


@dataclass
class _SmithForm:
    """U A V = D with D diagonal p^{v_0}, p^{v_1}, ... in the first `rank` slots."""

    U: list
    V: list
    vals: list = field(default_factory=list)


def _smith(A: ZpMatrix) -> _SmithForm:
    p, mod = A.p, A.modulus
    nr, nc = A.nrows, A.ncols
    S = [list(r) for r in A.rows]
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]
    vals = []
    for k in range(min(nr, nc)):
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                if S[i][j]:
                    v = valuation(S[i][j], p)
                    # lowest valuation; ties -> lowest row, then lowest column
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        S[k], S[i] = S[i], S[k]
        U[k], U[i] = U[i], U[k]
        for row in S:
            row[k], row[j] = row[j], row[k]
        for row in V:
            row[k], row[j] = row[j], row[k]
        unit = S[k][k] // p**v
        inv = pow(unit, -1, mod)
        S[k] = [x * inv % mod for x in S[k]]
        U[k] = [x * inv % mod for x in U[k]]
        piv = p**v
        for i2 in range(nr):
            if i2 != k and S[i2][k]:
                c = S[i2][k] // piv
                S[i2] = [(a - c * b) % mod for a, b in zip(S[i2], S[k])]
                U[i2] = [(a - c * b) % mod for a, b in zip(U[i2], U[k])]
        for j2 in range(k + 1, nc):
            if S[k][j2]:
                c = S[k][j2] // piv
                for row in S:
                    row[j2] = (row[j2] - c * row[k]) % mod
                for row in V:
                    row[j2] = (row[j2] - c * row[k]) % mod
        vals.append(v)
    return _SmithForm(U, V, vals)


def solve_linear(A: ZpMatrix, b) -> Solution | NoSolution:
    """Solve A x = b over Z/p^m.

    Uses valuation-pivoted elimination down to a diagonal form, so both a
    particular solution and a full set of kernel generators fall out.
    Unsolvable systems return a left-kernel certificate instead of raising.
    """
    p, m, mod = A.p, A.m, A.modulus
    b = [int(x) % mod for x in b]
    if len(b) != A.nrows:
        raise ValueError("dimension mismatch between A and b")
    sf = _smith(A)
    rank = len(sf.vals)
    c = [sum(u * x for u, x in zip(row, b)) % mod for row in sf.U]
    y = [0] * A.ncols
    for i, v in enumerate(sf.vals):
        if c[i] % p**v:
            cert = [x * p ** (m - v) % mod for x in sf.U[i]]
            return NoSolution(tuple(cert), sum(a * x for a, x in zip(cert, b)) % mod)
        y[i] = c[i] // p**v
    for i in range(rank, A.nrows):
        if c[i]:
            return NoSolution(tuple(sf.U[i]), c[i])

    def col(vec):
        return tuple(
            sum(sf.V[r][k] * vec[k] for k in range(A.ncols)) % mod
            for r in range(A.ncols)
        )

    kernel = []
    for i in range(A.ncols):
        v = sf.vals[i] if i < rank else m
        if v == 0:
            continue
        e = [0] * A.ncols
        e[i] = p ** (m - v) if i < rank else 1
        kernel.append(col(e))
    return Solution(col(y), tuple(kernel))


def kernel_length(A: ZpMatrix) -> int:
    """log_p of the order of ker(A) inside (Z/p^m)^ncols."""
    vals = _smith(A).vals
    return A.m * A.ncols - sum(A.m - v for v in vals)
