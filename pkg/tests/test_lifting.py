import pytest

from corpus import lift_problems
from oracles import brute_lift_exists, well_defined
from pdlift.lifting import (
    LIFTED,
    NO_LIFT,
    NO_OBSTRUCTION,
    PASS,
    PRECISION_LIMITED,
    REFUTED,
    AlgebraMap,
    LiftProblem,
    check_well_defined,
    condition_i,
    condition_ii,
    condition_iii,
    curve_criterion_probe,
    enumerate_and_lift,
    lift_square_zero,
    probe_smoothness,
    required_bounds,
    restrict,
)
from pdlift.pd_rings import PD, Wm, WmEps, WmMixedEps, make_truncation
from pdlift.series import Presentation


def pres(p, vars_, gens, m=6, D=10):
    return Presentation.from_polys(p, vars_, gens, m, D)


# -- well-definedness ---------------------------------------------------------

def test_well_defined_examples():
    R = PD(3, 7, 4)
    X = check_well_defined(pres(3, ["T"], ["T^3"], 7, 12), R, [R.gamma_basis(1) * 9])
    assert X and X.verified
    E = WmEps(3, 1)
    bad = check_well_defined(pres(3, ["x"], ["x"], 2, 4), E, [E.basis("eps")])
    assert not bad
    assert bad.failures[0][1] == E.basis("eps")
    F = PD(3, 2, 3)
    assert check_well_defined(pres(3, ["x", "y"], [], 3, 6), F, [F.basis(1), F.basis(2)])


# -- the lift engine ------------------------------------------------------------

CORPUS = lift_problems()


@pytest.mark.parametrize("label,problem", CORPUS, ids=[c[0] for c in CORPUS])
def test_lift_matches_exhaustive_search(label, problem):
    rep = lift_square_zero(problem)
    base = problem.base
    assert (rep.verdict == LIFTED) == brute_lift_exists(base.pres, problem.surjection, base.images)
    if rep.verdict == LIFTED:
        # soundness: the lift is well-defined and restricts to the base map
        assert well_defined(base.pres, problem.surjection.source, rep.lifted.images)
        assert restrict(rep.lifted, problem.surjection).images == base.images
    else:
        assert rep.certificate.verify()


def test_corpus_has_both_verdicts():
    verdicts = {lift_square_zero(p).verdict for _, p in CORPUS}
    assert verdicts == {LIFTED, NO_LIFT}


def _node_problem(p, m):
    R = PD(p, m, 2)
    P = pres(p, ["x", "y"], ["x*y"], m + 1, m + 4)
    X = check_well_defined(P, R, [R.basis(1), R.basis(1)])
    return LiftProblem(X, make_truncation(PD(p, m, 3), R))


def test_node_does_not_lift_p3():
    rep = lift_square_zero(_node_problem(3, 1))
    assert rep.verdict == NO_LIFT
    assert rep.certificate.verify()


def test_node_does_not_lift_p2():
    assert lift_square_zero(_node_problem(2, 2)).verdict == NO_LIFT


def test_free_algebra_lifts_with_zero_correction():
    R = PD(3, 2, 2)
    P = pres(3, ["x", "y"], [])
    X = check_well_defined(P, R, [R.basis(1), R.scalar(3)])
    rep = lift_square_zero(LiftProblem(X, make_truncation(PD(3, 2, 3), R)))
    assert rep.verdict == LIFTED
    sur = rep.surjection
    assert list(rep.lifted.images) == [sur.section(x) for x in X.images]


def test_p_torsion_witness():
    T = WmMixedEps(3, 1)
    P = pres(3, ["x"], ["p*x"], 2, 4)
    X = check_well_defined(P, T, [T.basis("eps")])
    assert X
    rep = lift_square_zero(LiftProblem(X, make_truncation(WmEps(3, 2), T)))
    assert rep.verdict == NO_LIFT


def test_precision_limited_when_degree_cap_too_small():
    R = PD(3, 2, 2)
    P = pres(3, ["x"], ["x^2"], 2, 3)
    X = AlgebraMap(P, R, (R.basis(1),), True)
    rep = lift_square_zero(LiftProblem(X, make_truncation(PD(3, 2, 3), R)))
    assert rep.verdict == PRECISION_LIMITED
    assert "degree cap" in rep.reason


def test_lift_problem_validation():
    R = PD(3, 2, 2)
    X = AlgebraMap(pres(3, ["x"], []), PD(3, 2, 3), (PD(3, 2, 3).zero(),), True)
    with pytest.raises(ValueError):
        LiftProblem(X, make_truncation(PD(3, 2, 3), R))


# -- conditions -------------------------------------------------------------

def test_condition_i_examples():
    assert condition_i(pres(3, ["x"], ["x - 3"])).point == (3,)
    res = condition_i(pres(3, ["x"], ["x^2 - 3"], 2, 4))
    assert res.point is None and res.to_json()["status"] == "Unknown"
    assert "does not show" in res.note
    assert condition_i(pres(3, ["x", "y"], ["x*y"])).point == (0, 0)


def test_condition_i_candidate():
    assert condition_i(pres(3, ["x"], ["x - 3"]), (3,)).point == (3,)
    assert not condition_i(pres(3, ["x"], ["x - 3"]), (6,)).found


def test_condition_ii():
    assert condition_ii(pres(3, ["x"], ["p*x"]), 1).verdict == NO_LIFT
    assert condition_ii(pres(3, ["x", "y"], []), 2).verdict == PASS


def test_condition_iii():
    assert condition_iii(pres(3, ["x", "y"], ["x*y"]), 1, 2).verdict == NO_LIFT
    assert condition_iii(pres(3, ["x"], []), 2, 1).verdict == PASS
    # T^3 at (1,2): c^3 * 6 gamma^3 vanishes in both rings
    assert condition_iii(pres(3, ["T"], ["T^3"]), 1, 2).verdict == PASS


def test_budget_gives_precision_limited_with_coverage():
    rep = condition_iii(pres(3, ["x", "y"], ["x^3*y^3"]), 2, 3, budget=10)
    assert rep.verdict == PRECISION_LIMITED
    assert rep.stats["candidates"] == 10
    assert 0 < rep.stats["coverage"] < 1


def test_enumeration_is_deterministic():
    P = pres(2, ["x", "y"], ["x*y"])
    a = condition_iii(P, 2, 2).base.images
    b = condition_iii(P, 2, 2).base.images
    assert a == b


@pytest.mark.parametrize("k", [1, 2])
def test_p_power_torsion_fails_at_min_valuation(k):
    P = pres(3, ["x"], [f"{3**k}*x"])
    rep = probe_smoothness(P, m_max=3, d_max=2)
    assert rep.verdict == REFUTED
    assert rep.cells[0]["condition"] == "ii"
    assert rep.cells[0]["m"] == k
    assert rep.cells[0]["verdict"] == NO_LIFT


def test_curve_probe():
    node = pres(3, ["x", "y"], ["x*y"])
    rep = curve_criterion_probe(node, 1, (), 3)
    assert rep.verdict == NO_LIFT
    assert rep.stats["cell"]["d"] == 2
    assert "HEURISTIC" in rep.reason
    free = pres(3, ["x"], [])
    ok = curve_criterion_probe(free, 1, (1,), 3)
    assert ok.verdict == PASS and ok.stats["heuristic"]


# -- the probe ------------------------------------------------------------------

def _probe(p, vars_, gens, m_max=4, d_max=4):
    m, D = required_bounds(m_max, d_max)
    return probe_smoothness(pres(p, vars_, gens, m, D), m_max, d_max)


@pytest.mark.parametrize("p,cell", [(3, (1, 2)), (2, (2, 2))])
def test_probe_node(p, cell):
    rep = _probe(p, ["x", "y"], ["x*y"])
    assert rep.verdict == REFUTED
    last = rep.cells[-1]
    assert (last["condition"], last["m"], last["d"]) == ("iii",) + cell


def test_probe_p_torsion():
    rep = _probe(3, ["x"], ["p*x"])
    assert rep.verdict == REFUTED
    assert rep.cells[-1] == {**rep.cells[-1], "condition": "ii", "m": 1}


@pytest.mark.parametrize("gens", [[], ["y"], ["y + x^2 + x*y"]])
def test_probe_never_refutes_smooth(gens):
    assert _probe(3, ["x", "y"], gens).verdict == NO_OBSTRUCTION


def test_unknown_point_does_not_block_sound_refutation():
    # W[[x]]/(x^2 - 3) is ramified: x -> g1 in W_(1,2) does not lift
    rep = _probe(3, ["x"], ["x^2 - 3"], 2, 2)
    assert rep.condition_i.point is None
    assert rep.verdict == REFUTED


def test_unknown_point_without_refutation_is_precision_limited():
    # the unit ideal: no maps anywhere, no W-point either
    rep = _probe(3, ["x"], ["1 + x"], 2, 2)
    assert rep.condition_i.point is None
    assert rep.verdict == PRECISION_LIMITED


def test_budget_exhaustion_downgrades_probe():
    m, D = required_bounds(2, 2)
    rep = probe_smoothness(pres(3, ["x", "y"], ["x^2*y"], m, D), 2, 2, budget=5)
    assert rep.verdict == PRECISION_LIMITED


def test_probe_translates_to_supplied_point():
    m, D = required_bounds(2, 2)
    rep = probe_smoothness(pres(3, ["x", "y"], ["(x - 3)*(y - 3)"], m, D), 2, 2, point=(3, 3))
    assert rep.verdict == REFUTED
    # witness in original coordinates is shifted by the point (3 = 0 when m = 1)
    ring = rep.witness.base.target
    for v in ("x", "y"):
        assert _rebuild(ring, rep.witness_original[v]) == ring.scalar(3) + ring.basis("g1")


def _rebuild(ring, coords_json):
    return ring.elem([coords_json.get(lab, 0) for lab in ring.labels])


@pytest.mark.parametrize("p,vars_,gens,bounds", [
    (3, ["x", "y"], ["x*y"], (4, 4)),
    (2, ["x", "y"], ["x*y"], (4, 4)),
    (3, ["x"], ["p*x"], (4, 4)),
    (3, ["T"], ["T^3"], (7, 4)),
    (3, ["x", "y"], ["y - x^2 + x*y^2 - 3*x", "x^3"], (3, 3)),
])
def test_witness_reverifies_in_original_coordinates(p, vars_, gens, bounds):
    rep = _probe(p, vars_, gens, *bounds)
    assert rep.verdict == REFUTED
    w = rep.witness
    base = w.base
    ring = base.target
    images = [_rebuild(ring, rep.witness_original[v]) for v in vars_]
    P = pres(p, vars_, gens, *required_bounds(*bounds))
    X = check_well_defined(P, ring, images)
    assert X
    again = lift_square_zero(LiftProblem(X, w.surjection))
    assert again.verdict == NO_LIFT
    assert not brute_lift_exists(P, w.surjection, images)


def test_probe_t_cubed_witness():
    rep = _probe(3, ["T"], ["T^3"], 7, 4)
    assert rep.verdict == REFUTED
    c = rep.cells[-1]
    assert (c["condition"], c["m"], c["d"]) == ("iii", 3, 2)
    assert rep.witness_original == {"T": {"1": 3, "g1": 1}}
