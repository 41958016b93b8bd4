"""The bounded smoothness probe: conditions (i)-(iii) and the curve criterion.

A refutation is a theorem about R (some map into a test ring does not lift).
"No obstruction found" only means the bounded search came up empty.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

from ..pd_rings import PD, Ramified, ResidueSeries, WmEps, WmMixedEps, make_truncation
from ..series import (
    Presentation,
    PointNotAZero,
    jacobian,
    linear_diagnostics,
    minimize_presentation,
    translate_to_point,
)
from ..witt import AtLeast
from .maps import (
    NO_LIFT,
    PASS,
    PRECISION_LIMITED,
    AlgebraMap,
    LiftProblem,
    LiftReport,
    _precision_gap,
    check_well_defined,
    lift_square_zero,
)

DEFAULT_BUDGET = 10**6

REFUTED = "RefutedWithWitness"
NO_OBSTRUCTION = "NoObstructionFound"


def required_bounds(m_max: int, d_max: int) -> tuple:
    """(precision, degree cap) that every probe cell up to (m_max, d_max) needs."""
    # W_{m+1}[eps]: char p^{m+1}, nilpotency m+2; W_{m,d+1}: nilpotency m+d
    return m_max + 1, m_max + max(d_max, 2)


def enumerate_and_lift(pres: Presentation, surjection, budget: int = DEFAULT_BUDGET) -> LiftReport:
    """Try every map R -> target (lexicographic, ascending) and lift each one.

    The first map without a lift is returned as the witness.  ``budget``
    bounds the number of candidate image tuples examined.
    """
    t0 = time.perf_counter()
    target = surjection.target
    gap = _precision_gap(pres, surjection.source)
    if gap:
        return LiftReport(PRECISION_LIMITED, reason=gap, surjection=surjection,
                          stats={"candidates": 0, "coverage": 0.0})
    r = pres.r
    elems = list(target.enumerate_max_ideal())
    total = len(elems) ** r
    candidates = well_defined = 0
    for combo in itertools.product(elems, repeat=r):
        if candidates >= budget:
            return LiftReport(
                PRECISION_LIMITED,
                reason=f"budget of {budget} candidate maps exhausted",
                surjection=surjection,
                stats={
                    "candidates": candidates,
                    "well_defined": well_defined,
                    "total": total,
                    "coverage": candidates / total,
                    "seconds": round(time.perf_counter() - t0, 4),
                },
            )
        candidates += 1
        base = check_well_defined(pres, target, combo)
        if not base:
            continue
        well_defined += 1
        rep = lift_square_zero(LiftProblem(base, surjection))
        if rep.verdict == NO_LIFT:
            rep.stats.update(candidates=candidates, well_defined=well_defined, total=total,
                             seconds=round(time.perf_counter() - t0, 4))
            return rep
        if rep.verdict == PRECISION_LIMITED:
            return rep
    return LiftReport(
        PASS,
        surjection=surjection,
        stats={
            "candidates": candidates,
            "well_defined": well_defined,
            "total": total,
            "coverage": 1.0,
            "seconds": round(time.perf_counter() - t0, 4),
        },
    )


# -- condition (i) -------------------------------------------------------


@dataclass(frozen=True)
class PointResult:
    point: tuple | None
    method: str
    note: str = ""

    @property
    def found(self):
        return self.point is not None

    def to_json(self):
        return {
            "status": "Point" if self.found else "Unknown",
            "point": list(self.point) if self.found else None,
            "method": self.method,
            "note": self.note,
        }


def _newton(pres: Presentation):
    """Hensel-lift the residue point 0 when the Jacobian has a unit maximal minor."""
    p, m, mod = pres.p, pres.m, pres.p**pres.m
    gens = [g for g in pres.generators if not g.is_zero()]
    s, r = len(gens), pres.r
    if s == 0:
        return (0,) * r
    if s > r or any(g.constant_term() % p for g in gens):
        return None
    jac = [[gens[j].derivative(i) for i in range(r)] for j in range(s)]
    J0 = [[jac[j][i].constant_term() % p for i in range(r)] for j in range(s)]
    # pick s columns giving a unit minor, greedily by Gaussian elimination mod p
    cols = []
    rows = [list(row) for row in J0]
    for j in range(s):
        piv = next((i for i in range(r) if i not in cols and rows[j][i] % p), None)
        if piv is None:
            return None
        cols.append(piv)
        inv = pow(rows[j][piv], -1, p)
        for j2 in range(j + 1, s):
            c = rows[j2][piv] * inv % p
            rows[j2] = [(a - c * b) % p for a, b in zip(rows[j2], rows[j])]
    x = [0] * r
    for _ in range(m + 2):
        vals = [g.eval_int(x) for g in gens]
        if not any(vals):
            return tuple(x)
        mat = [[jac[j][i].eval_int(x) for i in cols] for j in range(s)]
        delta = _solve_unit(mat, vals, mod)
        for k, i in enumerate(cols):
            x[i] = (x[i] - delta[k]) % mod
    return tuple(x) if not any(g.eval_int(x) for g in gens) else None


def _solve_unit(mat, rhs, mod):
    n = len(mat)
    a = [row[:] + [b] for row, b in zip(mat, rhs)]
    for c in range(n):
        piv = next(r for r in range(c, n) if math.gcd(a[r][c], mod) == 1)
        a[c], a[piv] = a[piv], a[c]
        inv = pow(a[c][c], -1, mod)
        a[c] = [v * inv % mod for v in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [(v - f * w) % mod for v, w in zip(a[r], a[c])]
    return [a[r][n] for r in range(n)]


def condition_i(pres: Presentation, candidate=None) -> PointResult:
    """Look for a W-point of R in (pW)^r.  Never claims that none exists."""
    if candidate is not None:
        candidate = tuple(int(a) for a in candidate)
        try:
            translate_to_point(pres, candidate)
        except (PointNotAZero, ValueError) as exc:
            return PointResult(None, "candidate", f"supplied point rejected: {exc}")
        return PointResult(candidate, "candidate", f"verified at precision p^{pres.m}")
    if all(g.constant_term() == 0 for g in pres.generators):
        return PointResult((0,) * pres.r, "origin", "all generators have ord >= 1")
    pt = _newton(pres)
    if pt is not None:
        return PointResult(pt, "newton", "Hensel lift from a unit Jacobian minor")
    return PointResult(None, "none", "no point found (this does not show that none exists)")


# -- conditions (ii), (iii) and the curve criterion ----------------------


def condition_ii(pres: Presentation, m: int, budget: int = DEFAULT_BUDGET) -> LiftReport:
    """Maps R -> W_{m+1}[eps]/(p^m eps) lifted to W_{m+1}[eps]."""
    if m < 1:
        raise ValueError("m must be >= 1")
    sur = make_truncation(WmEps(pres.p, m + 1), WmMixedEps(pres.p, m))
    rep = enumerate_and_lift(pres, sur, budget)
    rep.stats["cell"] = {"condition": "ii", "m": m}
    return rep


def condition_iii(pres: Presentation, m: int, d: int, budget: int = DEFAULT_BUDGET) -> LiftReport:
    """Maps R -> W_{m,d} lifted to W_{m,d+1}."""
    if m < 1 or d < 1:
        raise ValueError("m, d must be >= 1")
    sur = make_truncation(PD(pres.p, m, d + 1), PD(pres.p, m, d))
    rep = enumerate_and_lift(pres, sur, budget)
    rep.stats["cell"] = {"condition": "iii", "m": m, "d": d}
    return rep


def curve_criterion_probe(pres: Presentation, n: int, g, d_max: int,
                          budget: int = DEFAULT_BUDGET) -> LiftReport:
    """Arc test along W[[T]]/(p - gT^n, T^{d+1}) -> W[[T]]/(p - gT^n, T^d).

    Heuristic over F_p (the criterion wants an algebraically closed residue
    field); a NoLift is still a sound refutation.
    """
    g = tuple(g or ())
    last = None
    for d in range(1, d_max + 1):
        if any(g):
            sur = make_truncation(Ramified(pres.p, n, g, d + 1), Ramified(pres.p, n, g, d))
        else:
            sur = make_truncation(ResidueSeries(pres.p, d + 1), ResidueSeries(pres.p, d))
        rep = enumerate_and_lift(pres, sur, budget)
        rep.stats["cell"] = {"condition": "curve", "n": n, "g": list(g), "d": d}
        rep.stats["heuristic"] = True
        if rep.verdict != PASS:
            rep.reason = (rep.reason + "; " if rep.reason else "") + "HEURISTIC: residue field F_p is not algebraically closed"
            return rep
        last = rep
    if last is None:
        return LiftReport(PASS, stats={"heuristic": True, "cells": 0})
    last.reason = "HEURISTIC: residue field F_p is not algebraically closed"
    return last


# -- the probe -----------------------------------------------------------


@dataclass
class ProbeReport:
    verdict: str
    pres: Presentation
    condition_i: PointResult
    normalized: Presentation | None = None
    eliminations: tuple = ()
    linear: object = None
    cells: list = field(default_factory=list)
    witness: LiftReport | None = None
    witness_original: dict | None = None
    caveats: list = field(default_factory=list)
    bounds: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "kind": "probe",
            "verdict": self.verdict,
            "presentation": self.pres.to_json(),
            "bounds": self.bounds,
            "condition_i": self.condition_i.to_json(),
            "normalized": self.normalized.to_json() if self.normalized else None,
            "eliminations": [
                {"var": e.var, "generator": e.generator, "value": str(e.value)}
                for e in self.eliminations
            ],
            "linear": self.linear.to_json() if self.linear else None,
            "cells": self.cells,
            "caveats": list(self.caveats),
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            if self.witness_original is not None:
                out["witness"]["original_images"] = self.witness_original
        return out


def _cell_summary(rep: LiftReport) -> dict:
    cell = dict(rep.stats.get("cell", {}))
    cell["verdict"] = rep.verdict
    for k in ("candidates", "well_defined", "total", "coverage"):
        if k in rep.stats:
            cell[k] = rep.stats[k]
    if rep.reason:
        cell["reason"] = rep.reason
    return cell


def _grid(m_max, d_max, first_m):
    cells = []
    if first_m is not None and 1 <= first_m <= m_max:
        cells.append(("ii", first_m, None))
    for d in range(2, d_max + 1):
        for m in range(1, m_max + 1):
            cells.append(("iii", m, d))
    for m in range(1, m_max + 1):
        if m != first_m:
            cells.append(("ii", m, None))
    return cells


def probe_smoothness(pres: Presentation, m_max: int = 4, d_max: int = 4,
                     budget: int = DEFAULT_BUDGET, point=None) -> ProbeReport:
    """Run conditions (i)-(iii) on a bounded grid.

    Order: condition (ii) at the smallest linear-coefficient valuation (if
    any), then condition (iii) for d = 2..d_max (m ascending within each d),
    then the remaining condition (ii) cells.  The first non-liftable map wins.
    """
    caveats = [
        "NoObstructionFound is not a smoothness certificate: the search is bounded in m, d and candidates.",
        "ord conditions are checked on generators only and at precision p^m.",
        "condition (iii) is scanned for d >= 2 only.",
    ]
    bounds = {"m_max": m_max, "d_max": d_max, "budget": budget}
    ci = condition_i(pres, point)
    limited = not ci.found
    if ci.found:
        work = translate_to_point(pres, ci.point)
        mini = minimize_presentation(work)
        normalized, elims = mini.presentation, mini.eliminations
        lin = linear_diagnostics(normalized)
    else:
        mini, normalized, elims, lin = None, pres, (), linear_diagnostics(pres)
    report = ProbeReport(NO_OBSTRUCTION, pres, ci, normalized, elims, lin,
                         caveats=caveats, bounds=bounds)
    if ci.found and normalized.is_free():
        report.cells.append({"condition": "all", "verdict": PASS,
                             "reason": "presentation is free after normalization; every map lifts"})
        return report

    first_m = lin.min_valuation if not isinstance(lin.min_valuation, AtLeast) else None
    for cond, m, d in _grid(m_max, d_max, first_m):
        if cond == "ii":
            rep = condition_ii(normalized, m, budget)
        else:
            rep = condition_iii(normalized, m, d, budget)
        report.cells.append(_cell_summary(rep))
        if rep.verdict == NO_LIFT:
            report.verdict = REFUTED
            report.witness = rep
            report.witness_original = _original_images(pres, ci, mini, rep.base)
            return report
        if rep.verdict == PRECISION_LIMITED:
            limited = True
    if limited:
        report.verdict = PRECISION_LIMITED
    return report


def _original_images(pres, ci, mini, base: AlgebraMap):
    if mini is None or base is None:
        return None
    ring = base.target
    env = mini.back_substitute(dict(zip(mini.presentation.vars, base.images)))
    out = {}
    for v, a in zip(pres.vars, ci.point):
        x = env[v]
        if isinstance(x, int):
            x = ring.scalar(x)
        out[v] = (x + ring.scalar(a)).to_json()
    return out


__all__ = [
    "DEFAULT_BUDGET",
    "REFUTED",
    "NO_OBSTRUCTION",
    "ProbeReport",
    "PointResult",
    "condition_i",
    "condition_ii",
    "condition_iii",
    "curve_criterion_probe",
    "enumerate_and_lift",
    "probe_smoothness",
    "required_bounds",
    "jacobian",
]
