"""W-algebra maps into test rings and the square-zero lifting engine."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..pd_rings import ArtinTestRing, RingElem, TruncationMap
from ..series import InsufficientPrecision, Presentation, evaluate, jacobian
from ..witt import NoSolution, ZpMatrix, solve_linear

LIFTED = "Lifted"
NO_LIFT = "NoLift"
PRECISION_LIMITED = "PrecisionLimited"
PASS = "Pass"


@dataclass(frozen=True, eq=False)
class AlgebraMap:
    """R -> A given by images of the variables; ``verified`` once I maps to 0."""

    pres: Presentation
    target: ArtinTestRing
    images: tuple
    verified: bool = False

    def values(self):
        return [evaluate(g, self.target, self.images) for g in self.pres.generators]

    def images_json(self):
        return {v: x.to_json() for v, x in zip(self.pres.vars, self.images)}

    def __str__(self):
        imgs = ", ".join(f"{v} -> {x}" for v, x in zip(self.pres.vars, self.images))
        return f"[{imgs}] into {self.target}"


@dataclass(frozen=True)
class WellDefinedFailure:
    failures: tuple  # (generator index, value)

    def __bool__(self):
        return False


def check_well_defined(pres: Presentation, target: ArtinTestRing, images):
    """Verified AlgebraMap, or a falsy WellDefinedFailure listing bad generators."""
    images = tuple(images)
    bad = []
    for j, g in enumerate(pres.generators):
        v = evaluate(g, target, images)
        if not v.is_zero():
            bad.append((j, v))
    if bad:
        return WellDefinedFailure(tuple(bad))
    return AlgebraMap(pres, target, images, verified=True)


@dataclass(frozen=True)
class LinearCertificate:
    """An inconsistent system A t = b over Z/p^M with left witness y."""

    matrix: ZpMatrix
    rhs: tuple
    y: tuple
    row_labels: tuple = ()
    col_labels: tuple = ()

    def verify(self) -> bool:
        return NoSolution(self.y, 0).verify(self.matrix, self.rhs)

    def to_json(self):
        return {
            "modulus": f"{self.matrix.p}^{self.matrix.m}",
            "matrix": [list(r) for r in self.matrix.rows],
            "rhs": list(self.rhs),
            "left_witness": list(self.y),
            "row_labels": list(self.row_labels),
            "col_labels": list(self.col_labels),
        }


@dataclass(frozen=True)
class LiftProblem:
    base: AlgebraMap
    surjection: TruncationMap

    def __post_init__(self):
        if self.surjection.target != self.base.target:
            raise ValueError("surjection target must equal the base map's target")
        if not self.surjection.square_zero:
            raise ValueError(f"{self.surjection.name} is not square-zero")


@dataclass
class LiftReport:
    verdict: str
    lifted: AlgebraMap | None = None
    certificate: LinearCertificate | None = None
    reason: str = ""
    base: AlgebraMap | None = None
    surjection: TruncationMap | None = None
    stats: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.verdict in (LIFTED, PASS)

    def to_json(self):
        out = {"verdict": self.verdict, "stats": dict(self.stats)}
        if self.reason:
            out["reason"] = self.reason
        if self.surjection is not None:
            out["surjection"] = {
                "source": str(self.surjection.source),
                "target": str(self.surjection.target),
                "kernel_basis": [str(k) for k in self.surjection.kernel_basis],
            }
        if self.base is not None:
            out["witness"] = {
                "ring": self.base.target.descriptor.to_json(),
                "ring_name": str(self.base.target),
                "basis": list(self.base.target.labels),
                "images": self.base.images_json(),
                "coords": {v: list(x.coords) for v, x in zip(self.base.pres.vars, self.base.images)},
            }
        if self.lifted is not None:
            out["lift"] = self.lifted.images_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def _precision_gap(pres: Presentation, ring: ArtinTestRing) -> str:
    if pres.D < ring.nilpotency_bound:
        return f"degree cap {pres.D} < nilpotency bound {ring.nilpotency_bound} of {ring}"
    if pres.m < ring.char_exponent:
        return f"precision p^{pres.m} too small for {ring} (needs p^{ring.char_exponent})"
    return ""


def lift_square_zero(problem: LiftProblem) -> LiftReport:
    """Lift ``problem.base`` across the square-zero surjection, or certify it can't be.

    With x~ the coordinate-wise lift of the images and delta_i in the kernel K,
    f(x~ + delta) = f(x~) + sum_i df/dT_i(x~) delta_i because K^2 = 0, so the
    lift exists iff a linear system over Z/p^M is solvable.
    """
    t0 = time.perf_counter()
    base, sur = problem.base, problem.surjection
    pres, A = base.pres, sur.source
    gap = _precision_gap(pres, A)
    if gap:
        return LiftReport(PRECISION_LIMITED, reason=gap, base=base, surjection=sur)

    xt = [sur.section(x) for x in base.images]
    gens = pres.generators
    kgs = sur.kernel_gens
    kbasis = sur.kernel_basis
    p = A.p

    if not gens:
        lifted = AlgebraMap(pres, A, tuple(xt), verified=True)
        return LiftReport(LIFTED, lifted=lifted, base=base, surjection=sur,
                          stats={"unknowns": 0, "equations": 0})

    values = [evaluate(g, A, xt) for g in gens]
    if not kgs:
        if any(not v.is_zero() for v in values):
            raise AssertionError("base map is not well-defined")
        return LiftReport(LIFTED, lifted=AlgebraMap(pres, A, tuple(xt), True), base=base, surjection=sur)

    M = max(kg.ann for kg in kgs)
    jac = jacobian(pres)
    cols, col_labels = [], []
    for i in range(pres.r):
        for l, k in enumerate(kbasis):
            cols.append((i, l))
            col_labels.append(f"{pres.vars[i]}:{A.labels[kgs[l].coord]}*p^{kgs[l].shift}")
    rows, rhs, row_labels = [], [], []
    for j in range(len(gens)):
        jvals = [evaluate(jac[j][i], A, xt, check=False) for i in range(pres.r)]
        prods = {}
        for (i, l) in cols:
            prods[(i, l)] = sur.kernel_coords(jvals[i] * kbasis[l])
        fv = sur.kernel_coords(values[j])
        for l2, kg in enumerate(kgs):
            scale = p ** (M - kg.ann)
            rows.append([prods[c][l2] * scale for c in cols])
            rhs.append(-fv[l2] * scale)
            row_labels.append(f"f{j}:{A.labels[kg.coord]}")
    mat = ZpMatrix(tuple(tuple(r) for r in rows), p, M, ncols=len(cols))
    sol = solve_linear(mat, rhs)
    stats = {
        "unknowns": len(cols),
        "equations": len(rows),
        "modulus": f"{p}^{M}",
        "seconds": round(time.perf_counter() - t0, 6),
    }
    if not sol.solvable:
        cert = LinearCertificate(mat, tuple(x % p**M for x in rhs), sol.y,
                                 tuple(row_labels), tuple(col_labels))
        return LiftReport(NO_LIFT, certificate=cert, base=base, surjection=sur, stats=stats)

    images = list(xt)
    for (i, l), t in zip(cols, sol.x):
        if t:
            images[i] = images[i] + kbasis[l] * t
    lifted = check_well_defined(pres, A, images)
    if not lifted:
        raise AssertionError(f"linear lift does not annihilate I: {lifted}")
    return LiftReport(LIFTED, lifted=lifted, base=base, surjection=sur, stats=stats)


def restrict(map_: AlgebraMap, ring_map) -> AlgebraMap:
    imgs = tuple(ring_map(x) for x in map_.images)
    return AlgebraMap(map_.pres, ring_map.target, imgs, verified=map_.verified)


__all__ = [
    "AlgebraMap",
    "WellDefinedFailure",
    "LinearCertificate",
    "LiftProblem",
    "LiftReport",
    "check_well_defined",
    "lift_square_zero",
    "restrict",
    "InsufficientPrecision",
    "LIFTED",
    "NO_LIFT",
    "PRECISION_LIMITED",
    "PASS",
]
