import random

import pytest
from hypothesis import given, settings

from helpers import (DOUBLE_ROOT, QUARTIC, SQRT2, cubic_double, quartic_starts, sextic,
                     sextic_starts)
from oracle import coeffs_close, quaternions
from quatroots.classify import (ISOLATED, MULTIPLE, SPHERICAL, ClassifiedRoot, ZeroKind, classify_zero,
                                group_spheres, polish_spheres, project_to_class, quadratic_zero_structure,
                                refine_sphere, sphere_summary, swap_adjacent_factors)
from quatroots.errors import NotAZero, PreconditionViolation
from quatroots.hpoly import HPoly, char_poly, evaluate, from_factors, star_mul
from quatroots.quaternion import I, J, ClassKey, Quaternion, class_key, conj, norm, same_class
from quatroots.solver import SolverConfig, solve

Q = Quaternion


def test_classify_quartic_examples():
    kind = classify_zero(QUARTIC, I)
    assert kind.tag == SPHERICAL and kind.sphere == ClassKey(0.0, 1.0)
    assert classify_zero(QUARTIC, Q(0, -1, 0, 1)).tag == ISOLATED
    assert classify_zero(QUARTIC, Q(1, 0, -1)).tag == ISOLATED
    # any point of the sphere of i
    assert classify_zero(QUARTIC, Q(0, 0.6, 0, 0.8)).tag == SPHERICAL


def test_classify_real_zero():
    assert classify_zero(HPoly([2, -3, 1]), Q(1)) == ZeroKind(ISOLATED)


def test_classify_rejects_non_zero():
    with pytest.raises(NotAZero):
        classify_zero(QUARTIC, Q(3))


def test_zero_kind_invariants():
    with pytest.raises(ValueError):
        ZeroKind(SPHERICAL)
    with pytest.raises(ValueError):
        ZeroKind(ISOLATED, sphere=ClassKey(0, 1))
    with pytest.raises(ValueError):
        ZeroKind(ISOLATED, multiplicity=2)
    with pytest.raises(ValueError):
        ZeroKind(MULTIPLE, multiplicity=0)
    with pytest.raises(ValueError):
        ZeroKind("double")
    with pytest.raises(ValueError):
        ClassifiedRoot(I, ZeroKind(ISOLATED), -1.0)


def test_group_quartic_roots():
    out = solve(QUARTIC, SolverConfig(), quartic_starts())
    classified = group_spheres(out.roots, QUARTIC)
    sphere = [c for c in classified if c.kind.tag == SPHERICAL]
    isolated = [c for c in classified if c.kind.tag == ISOLATED]
    assert len(sphere) == 2 and len(isolated) == 2
    assert sphere[0].kind.sphere == sphere[1].kind.sphere
    key = sphere[0].kind.sphere
    assert abs(key.re) <= 1e-12 and abs(key.norm - 1) <= 1e-12
    assert norm(sphere[0].value - sphere[1].value) >= 0.1
    keys = sorted(class_key(c.value) for c in isolated)
    assert keys[0] == pytest.approx((0.0, SQRT2), abs=1e-12)
    assert keys[1] == pytest.approx((1.0, SQRT2), abs=1e-12)
    summary = sphere_summary(classified)
    assert len(summary) == 1 and len(summary[0]["members"]) == 2


def test_group_double_root():
    out = solve(cubic_double(), SolverConfig(stopping="residual", eps_residual=1e-10, kmax=200))
    # the double root is only resolved to about 1e-6
    classified = group_spheres(out.roots, cubic_double(), tol=1e-5)
    double = [c for c in classified if c.kind.tag == MULTIPLE]
    assert len(double) == 2
    assert all(c.kind.multiplicity == 2 and norm(c.value - DOUBLE_ROOT) <= 1e-5 for c in double)
    assert [c.kind for c in classified if c not in double] == [ZeroKind(ISOLATED)]


def test_group_simple_roots():
    out = solve(sextic(), SolverConfig(), sextic_starts())
    classified = group_spheres(out.roots, sextic())
    assert [c.kind for c in classified] == [ZeroKind(ISOLATED)] * 6
    assert all(c.residual <= 1e-10 for c in classified)
    assert sphere_summary(classified) == []


def test_group_spheres_permutation_invariant():
    out = solve(QUARTIC, SolverConfig(), quartic_starts())
    base = group_spheres(out.roots, QUARTIC)
    rng = random.Random(1)
    for _ in range(5):
        order = list(range(4))
        rng.shuffle(order)
        permuted = group_spheres([out.roots[a] for a in order], QUARTIC)
        assert sorted(repr(c.kind) for c in permuted) == sorted(repr(c.kind) for c in base)
        for pos, a in enumerate(order):
            assert permuted[pos].kind.tag == base[a].kind.tag


@settings(max_examples=100, deadline=None)
@given(quaternions(bound=2.0, min_norm=0.0), quaternions(bound=2.0), quaternions(bound=2.0))
def test_sphere_criteria_agree(centre, a, b):
    # p = (x - a) * (x - b) * c(x) with c the characteristic polynomial of q
    q = Q(centre[0], centre[1] + 0.5, centre[2], centre[3])
    c = HPoly(list(char_poly(q).coeffs))
    p = star_mul(from_factors([b, a]), c)
    kind = classify_zero(p, q)
    assert kind.tag == SPHERICAL and kind.sphere == class_key(q)
    # both tests fire on every point of the class
    assert norm(evaluate(p, conj(q))) <= 1e-8 * max(1.0, p.eval_bound(q))


@settings(max_examples=200, deadline=None)
@given(quaternions(bound=3.0), quaternions(bound=3.0))
def test_swap_preserves_product(x1, x2):
    y1, y2 = swap_adjacent_factors(x1, x2)
    assert coeffs_close(from_factors([x1, x2]).coeffs, from_factors([y1, y2]).coeffs, 1e-10)
    if norm(conj(x2) - x1) > 1e-3:
        assert same_class(y1, x2, 1e-9) and same_class(y2, x1, 1e-9)


@pytest.mark.parametrize("x1,x2", [(Q(1), Q(2)), (J, I), (I, -I)])
def test_swap_examples(x1, x2):
    y1, y2 = swap_adjacent_factors(x1, x2)
    assert coeffs_close(from_factors([x1, x2]).coeffs, from_factors([y1, y2]).coeffs, 1e-14)


def test_swap_degenerate_cases():
    assert swap_adjacent_factors(1, 2) == (Q(2), Q(1))
    assert swap_adjacent_factors(I, -I) == (-I, I)


def test_quadratic_structure_examples():
    x = Q(-1, 0, 0, -1)
    s = quadratic_zero_structure(x, x)
    assert s.kind == ZeroKind(MULTIPLE, multiplicity=2) and s.witness == x
    s = quadratic_zero_structure(x, Q(-1, -1))
    assert s.kind.tag == MULTIPLE and s.witness == x
    # the product really vanishes only at x1 among its class
    p = from_factors([x, Q(-1, -1)])
    assert norm(evaluate(p, x)) <= 1e-14 and norm(evaluate(p, Q(-1, -1))) > 0.1
    s = quadratic_zero_structure(I, -I)
    assert s.kind == ZeroKind(SPHERICAL, sphere=ClassKey(0.0, 1.0))
    assert from_factors([I, -I]) == HPoly([1, 0, 1])


def test_quadratic_structure_preconditions():
    with pytest.raises(PreconditionViolation):
        quadratic_zero_structure(I, J + 1)
    with pytest.raises(PreconditionViolation):
        quadratic_zero_structure(Q(1), Q(1))


def test_refine_sphere_recovers_divisor():
    near = Q(1e-9, 1 + 3e-9, 0, 0)
    c = refine_sphere(QUARTIC, near)
    assert c is not None
    assert c.coeffs == pytest.approx((1.0, 0.0, 1.0), abs=1e-14)


def test_refine_sphere_declines_isolated_and_double():
    assert refine_sphere(QUARTIC, Q(1, 0, -1)) is None
    assert refine_sphere(cubic_double(), DOUBLE_ROOT) is None
    assert refine_sphere(HPoly.linear(I), I) is None


def test_project_to_class():
    p = project_to_class(Q(0.1, 0.3, 0, 0.4), char_poly(I))
    assert p == Q(0.0, 0.6, 0.0, 0.8)
    assert project_to_class(Q(2), char_poly(I)) == I


def test_polish_spheres_counts():
    roots = [Q(1e-9, 0.6, 0, 0.8), Q(-1e-9, 0, 1 + 2e-9, 0), Q(1, 0, -1), Q(0, -1, 0, 1)]
    polished, count = polish_spheres(QUARTIC, roots)
    assert count == 1
    assert class_key(polished[0]) == pytest.approx((0.0, 1.0), abs=1e-15)
    assert polished[2:] == roots[2:]
    assert polish_spheres(QUARTIC, roots[2:]) == (roots[2:], 0)
