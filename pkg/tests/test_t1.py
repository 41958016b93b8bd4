import itertools
import math

import pytest

from oracles import well_defined
from pdlift.lifting import (
    UnsupportedTarget,
    check_well_defined,
    deligne_example,
    t1_lifting_check,
    t1_module,
)
from pdlift.lifting.t1 import deformation_of, restrict_class
from pdlift.pd_rings import PD, PDEps, Wm, eps_extension, make_truncation
from pdlift.series import Presentation


def _map(p, vars_, gens, ring, images, m=None, D=None):
    m = m or ring.char_exponent + 1
    D = D or ring.nilpotency_bound + 3
    P = Presentation.from_polys(p, vars_, gens, m, D)
    X = check_well_defined(P, ring, images)
    assert X
    return X


def _brute_t1_size(X):
    """Count first-order deformations by trying every delta in A^r."""
    A = X.target
    ext = eps_extension(A)
    count = 0
    for delta in itertools.product(list(A.enumerate_all()), repeat=X.pres.r):
        Y = deformation_of(X, delta, ext)
        if well_defined(X.pres, ext, Y.images):
            count += 1
    return count


def test_free_t1_is_free_of_rank_one():
    A = PD(3, 2, 2)
    X = _map(3, ["x"], [], A, [A.basis(1)])
    mod = t1_module(X)
    assert mod.length == A.order_log


def test_t1_of_double_point():
    A = Wm(3, 1)
    X = _map(3, ["x"], ["x^2"], A, [A.zero()])
    assert t1_module(X).length == 1


@pytest.mark.parametrize("gens,ring,images", [
    (["x*y"], PD(3, 1, 2), ["g1", "g1"]),
    (["x^3"], PD(3, 1, 3), ["g1"]),
    (["p*x"], Wm(3, 2), ["0"]),
    (["x*y - p*x"], PD(2, 2, 2), ["g1", "2"]),
], ids=str)
def test_t1_size_matches_brute_force(gens, ring, images):
    vars_ = ["x", "y"][: len(images)]
    imgs = [ring.scalar(int(s)) if s.isdigit() else ring.basis(s) for s in images]
    X = _map(ring.p, vars_, gens, ring, imgs)
    assert ring.p ** t1_module(X).length == _brute_t1_size(X)


def test_t1_contains_deligne_class():
    A = PD(3, 7, 3)
    X = _map(3, ["T"], ["T^3"], A, [A.gamma_basis(1) * 9], 7, 12)
    Y = deformation_of(X, [A.gamma_basis(1)])
    assert check_well_defined(X.pres, Y.target, Y.images)
    # (9 + eps) g1 is exactly that deformation
    E = Y.target
    assert Y.images[0] == (E.one() * 9 + E.gamma_basis(0, True)) * E.gamma_basis(1)


def test_t1_functorial_under_truncation():
    A, A1 = PD(3, 2, 3), PD(3, 2, 2)
    X = _map(3, ["x", "y"], ["x*y"], A, [A.gamma_basis(2), A.gamma_basis(1)])
    pi = make_truncation(A, A1)
    X1 = check_well_defined(X.pres, A1, [pi(x) for x in X.images])
    ext_map = make_truncation(PDEps(3, 2, 3), PDEps(3, 2, 2))
    for c in t1_module(X).generators:
        Z = restrict_class(c, ext_map)
        assert check_well_defined(X.pres, Z.target, Z.images)
        assert Z.images == deformation_of(X1, [pi(d) for d in c.delta]).images


def test_t1_requires_pd_or_wm_target():
    A = PDEps(3, 1, 2)
    X = _map(3, ["x"], [], A, [A.zero()])
    with pytest.raises(UnsupportedTarget):
        t1_module(X)


def test_lifting_check_free_is_surjective():
    A = PD(3, 3, 3)
    X = _map(3, ["x", "y"], [], A, [A.basis(1), A.scalar(3)])
    assert t1_lifting_check(X).surjective
    W = Wm(3, 3)
    assert t1_lifting_check(_map(3, ["x"], [], W, [W.scalar(3)])).surjective


def test_lifting_check_deligne_not_surjective():
    A = PD(3, 7, 4)
    X = _map(3, ["T"], ["T^3"], A, [A.gamma_basis(1) * 9], 7, 12)
    rep = t1_lifting_check(X)
    assert not rep.surjective
    assert rep.witness_report.certificate.verify()
    assert rep.witness.delta == (PD(3, 7, 3).gamma_basis(1),)


def test_lifting_check_low_precision_is_surjective():
    # at m = 1 every relevant coefficient vanishes mod 3
    A = PD(3, 1, 4)
    X = _map(3, ["T"], ["T^3"], A, [A.gamma_basis(1) * 9], 2, 8)
    assert t1_lifting_check(X).surjective
    E1 = PD(3, 1, 3)
    assert t1_lifting_check(X, classes=[(E1.gamma_basis(1),)]).surjective


def test_lifting_check_needs_d_at_least_two():
    A = PD(3, 2, 1)
    X = _map(3, ["x"], [], A, [A.scalar(3)])
    with pytest.raises(UnsupportedTarget):
        t1_lifting_check(X)


@pytest.mark.parametrize("p,m,coef", [(2, 5, 16), (3, 7, 1458), (5, 11, 39062500)])
def test_deligne_chain(p, m, coef):
    rep = deligne_example(p)
    assert rep.m == m and rep.lam == p * p
    assert rep.coefficient == coef
    assert coef == p**2 * (p * p) ** (p - 1) * math.factorial(p - 1) % p**m
    assert rep.ok, [c for c in rep.checks if not c.ok]
    assert rep.verdict == "NotSurjective"
    names = [c.name for c in rep.checks]
    assert names == ["a1", "a2", "b", "c", "d1", "d2", "d3", "e"]


def test_deligne_p3_values():
    rep = deligne_example(3)
    vals = {c.name: c.value for c in rep.checks}
    assert vals["a1"] == "0"
    assert vals["a2"] == "729"
    assert vals["d2"] == "1458*g3*eps"
