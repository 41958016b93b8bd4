"""First-order deformations of maps h_R(A) and the T^1-lifting check.

For a representable functor, a deformation of X: R -> A over A[eps] is a
map T_i -> x_i + delta_i eps, and it is well defined iff
sum_i df_j/dT_i(x) delta_i = 0 in A.  So T^1(X/A) is the kernel of the
Jacobian at x, computed here as a Z/p^m-module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..pd_rings import (
    PD,
    ArtinTestRing,
    PDEps,
    PDEpsQuot,
    RingElem,
    Wm,
    WmEps,
    WmMixedEps,
    base_inclusion,
    eps_extension,
    eps_inclusion,
    make_truncation,
)
from ..series import evaluate, jacobian
from ..witt import ZpMatrix, kernel_length, solve_linear
from .maps import (
    NO_LIFT,
    AlgebraMap,
    LiftProblem,
    LiftReport,
    check_well_defined,
    lift_square_zero,
    restrict,
)


class UnsupportedTarget(ValueError):
    pass


@dataclass(frozen=True)
class T1Class:
    base: AlgebraMap
    deformation: AlgebraMap  # into A[eps], restricting to base under eps -> 0
    delta: tuple  # delta_i in A

    def to_json(self):
        return {v: d.to_json() for v, d in zip(self.base.pres.vars, self.delta)}

    def __str__(self):
        return ", ".join(f"{v}: {d}" for v, d in zip(self.base.pres.vars, self.delta))


@dataclass
class T1Module:
    base: AlgebraMap
    extension: ArtinTestRing
    generators: list = field(default_factory=list)  # of T1Class
    length: int = 0  # log_p of the module order

    @property
    def target_length(self):
        return self.base.target.order_log

    def to_json(self):
        return {
            "base": self.base.images_json(),
            "ring": str(self.base.target),
            "length": self.length,
            "ring_length": self.target_length,
            "generators": [g.to_json() for g in self.generators],
        }


def _uniform_modulus(ring: ArtinTestRing) -> int:
    if len(set(ring.exps)) != 1:
        raise UnsupportedTarget(f"{ring} has mixed coordinate moduli")
    return ring.exps[0]


def deformation_of(X: AlgebraMap, delta, ext: ArtinTestRing | None = None) -> AlgebraMap:
    ext = ext or eps_extension(X.target)
    imgs = [base_inclusion(ext, x) + eps_inclusion(ext, d) for x, d in zip(X.images, delta)]
    return AlgebraMap(X.pres, ext, tuple(imgs))


def t1_module(X: AlgebraMap) -> T1Module:
    A = X.target
    if A.family not in ("Wm", "PD"):
        raise UnsupportedTarget(f"T^1 needs a target W_m or W_(m,d), got {A}")
    ext = eps_extension(A)
    pres = X.pres
    m = _uniform_modulus(A)
    r, n = pres.r, A.dim
    jac = jacobian(pres)
    cols = [(i, b) for i in range(r) for b in range(n)]
    rows = []
    for j in range(len(pres.generators)):
        jv = [evaluate(jac[j][i], A, X.images, check=False) for i in range(r)]
        prods = {(i, b): (jv[i] * A.basis(b)).coords for (i, b) in cols}
        for c in range(n):
            rows.append(tuple(prods[col][c] for col in cols))
    mat = ZpMatrix(tuple(rows), A.p, m, ncols=len(cols))
    if rows:
        sol = solve_linear(mat, [0] * len(rows))
        kernel = sol.kernel
        length = kernel_length(mat)
    else:
        kernel = [tuple(int(k == c) for k in range(len(cols))) for c in range(len(cols))]
        length = m * len(cols)
    gens = []
    for vec in kernel:
        delta = []
        for i in range(r):
            delta.append(A.elem([vec[i * n + b] for b in range(n)]))
        Y = deformation_of(X, delta, ext)
        Y = check_well_defined(pres, ext, Y.images)
        if not Y:
            raise AssertionError(f"T^1 generator is not a deformation: {Y}")
        gens.append(T1Class(X, Y, tuple(delta)))
    return T1Module(X, ext, gens, length)


@dataclass
class T1LiftReport:
    surjective: bool
    base: AlgebraMap
    restricted: AlgebraMap
    checked: list = field(default_factory=list)  # (T1Class, LiftReport)
    witness: T1Class | None = None
    witness_report: LiftReport | None = None

    @property
    def verdict(self):
        return "Surjective" if self.surjective else "NotSurjective"

    def to_json(self):
        out = {
            "kind": "t1check",
            "verdict": self.verdict,
            "ring": str(self.base.target),
            "restricted_ring": str(self.restricted.target),
            "base": self.base.images_json(),
            "classes_checked": [
                {"class": c.to_json(), "verdict": rep.verdict} for c, rep in self.checked
            ],
        }
        if self.witness is not None:
            out["witness"] = {
                "class": self.witness.to_json(),
                "deformation": self.witness.deformation.images_json(),
                "lift": self.witness_report.to_json(),
            }
        return out


def _glue_setup(A: ArtinTestRing):
    """(A', A[eps], A[eps]/(eps * ker(A -> A'))) for the two supported extensions."""
    d = A.descriptor
    if d.family == "Wm":
        if d.m < 2:
            raise UnsupportedTarget("W_m -> W_(m-1) needs m >= 2")
        return Wm(d.p, d.m - 1), WmEps(d.p, d.m), WmMixedEps(d.p, d.m - 1)
    if d.family == "PD":
        if d.d < 2:
            raise UnsupportedTarget("W_(m,d) -> W_(m,d-1) needs d >= 2")
        return PD(d.p, d.m, d.d - 1), PDEps(d.p, d.m, d.d), PDEpsQuot(d.p, d.m, d.d)
    raise UnsupportedTarget(f"no T^1-lifting setup for {A}")


def t1_lifting_check(X: AlgebraMap, classes=None) -> T1LiftReport:
    """Is T^1(X/A) -> T^1(X'/A') onto, for A = W_m or W_{m,d}?

    Each class of T^1(X'/A') glues with X to a map into
    A[eps]/(eps I) = A x_{A'} A'[eps]; the class lifts iff that map lifts
    across the square-zero extension A[eps] -> A[eps]/(eps I).  Liftable
    classes form a submodule, so checking generators suffices.
    """
    A = X.target
    A1, ext, glued = _glue_setup(A)
    pi = make_truncation(A, A1)
    X1 = check_well_defined(X.pres, A1, [pi(x) for x in X.images])
    if not X1:
        raise AssertionError("restriction of a well-defined map failed")
    if classes is None:
        classes = [c.delta for c in t1_module(X1).generators]
    sur = make_truncation(ext, glued)
    report = T1LiftReport(True, X, X1)
    for delta in classes:
        delta = tuple(A1.elem(d.coords) if isinstance(d, RingElem) else A1.elem(d) for d in delta)
        Y1 = check_well_defined(X.pres, eps_extension(A1), deformation_of(X1, delta).images)
        if not Y1:
            raise ValueError(f"class {delta} is not in T^1(X'/A')")
        cls = T1Class(X1, Y1, delta)
        imgs = [base_inclusion(glued, x) + eps_inclusion(glued, dd) for x, dd in zip(X.images, delta)]
        Z = check_well_defined(X.pres, glued, imgs)
        if not Z:
            raise AssertionError(f"glued map into {glued} is not well-defined: {Z}")
        rep = lift_square_zero(LiftProblem(Z, sur))
        report.checked.append((cls, rep))
        if rep.verdict == NO_LIFT:
            report.surjective = False
            report.witness = cls
            report.witness_report = rep
            return report
    return report


def restrict_class(c: T1Class, ring_map) -> AlgebraMap:
    """Push a deformation along a ring map of eps-extensions."""
    return restrict(c.deformation, ring_map)
