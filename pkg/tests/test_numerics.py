import math

import numpy as np
import pytest

from cospectral_trees.numerics import (
    ModeUnsupported,
    basis_values,
    build_vertex_system,
    charfn_value,
    det_oracle,
    det_with_growth,
    ratio_constancy_check,
    spectrum_from_charfn,
    vanishing_order,
)
from cospectral_trees.polynomials import IntPoly
from cospectral_trees.spectral import (
    P2_LEAF,
    CharFn,
    PendantMode,
    ProblemSpec,
    RootCondition,
    attach_char_fn,
    char_fn,
    char_pair,
    merged_char_fn,
)
from cospectral_trees.trees import RootedTree, attach, enumerate_trees, path, star

N = ProblemSpec(RootCondition.NEUMANN)
D = ProblemSpec(RootCondition.DIRICHLET)
NN = ProblemSpec(RootCondition.NEUMANN, PendantMode.NEUMANN)
STAR = RootedTree(star(4), 0)


def cf(e, *c):
    return CharFn(e, IntPoly(c))


def test_basis_limits():
    s, ds, c, dc = basis_values(0.0)
    assert (s, ds, c, dc) == (1.0, 1.0, 1.0, -0.0)
    s, _, c, _ = basis_values(-1e-20)
    assert s == pytest.approx(1.0) and c == pytest.approx(1.0)
    s, _, c, _ = basis_values(-4.0)
    assert s == pytest.approx(math.sinh(2) / 2) and c == pytest.approx(math.cosh(2))


def test_single_edge_system():
    vs = build_vertex_system(RootedTree(path(2), 0), N)
    assert vs.size == 2
    for lam in (0.3, 2.0, 11.0):
        assert abs(det_oracle(vs, lam)) == pytest.approx(abs(math.cos(math.sqrt(lam))))
    assert abs(det_oracle(vs, (math.pi / 2) ** 2)) < 1e-14


def test_star_systems_match_hand_elimination():
    vn = build_vertex_system(STAR, N)
    vd = build_vertex_system(STAR, D)
    assert vn.size == vd.size == 6
    for lam in np.linspace(0.2, 30, 13):
        s, _, c, _ = basis_values(lam)
        assert abs(det_oracle(vn, lam)) == pytest.approx(abs(3 * c * s * s), rel=1e-10, abs=1e-14)
        assert abs(det_oracle(vd, lam)) == pytest.approx(abs(s ** 3), rel=1e-10, abs=1e-14)
    assert abs(det_oracle(vn, math.pi ** 2)) < 1e-12
    assert vanishing_order(vn, math.pi ** 2) == pytest.approx(2, abs=0.01)


def test_growth_report():
    det, growth = det_with_growth(build_vertex_system(STAR, N), 2.0)
    assert det == pytest.approx(det_oracle(build_vertex_system(STAR, N), 2.0))
    assert 1.0 <= growth < 100


def test_ratio_check_star():
    out = ratio_constancy_check(STAR, N, cf(2, 0, 3), n_samples=20)
    assert out["ok"] and out["max_rel_dev"] <= 1e-10
    bad = ratio_constancy_check(STAR, N, cf(3, 0, 3), n_samples=20)
    assert not bad["ok"]


def test_ratio_check_explicit_samples():
    out = ratio_constancy_check(STAR, D, cf(3, 1), samples=[0.5, 2.0, 5.0, 17.0])
    assert out["ok"] and out["used"] == 4


@pytest.mark.parametrize("spec", [N, D, NN, ProblemSpec(RootCondition.DIRICHLET, PendantMode.NEUMANN)])
def test_ratio_check_all_small_trees(spec):
    for n in range(2, 7):
        for t in enumerate_trees(n):
            for v in range(n):
                rt = RootedTree(t, v)
                assert ratio_constancy_check(rt, spec, char_fn(rt, spec))["ok"]


def test_spectrum_examples():
    sp = spectrum_from_charfn(cf(1, 1), 5)
    assert sp.as_pairs() == pytest.approx([((k * math.pi) ** 2, 1) for k in range(1, 6)])
    sp = spectrum_from_charfn(cf(2, 0, 3), 6)
    lams = [ev.lam for ev in sp.eigenvalues]
    mults = [ev.multiplicity for ev in sp.eigenvalues]
    expect = [(math.pi / 2) ** 2, math.pi ** 2, (3 * math.pi / 2) ** 2, (2 * math.pi) ** 2,
              (5 * math.pi / 2) ** 2, (3 * math.pi) ** 2]
    assert lams == pytest.approx(expect)
    assert mults == [1, 2, 1, 2, 1, 2]
    a = spectrum_from_charfn(cf(5, 0, -4, 0, 24), 12)
    b = spectrum_from_charfn(cf(5, 0, -5, 0, 30), 12)
    assert a.as_pairs() == b.as_pairs()
    with pytest.raises(ValueError):
        spectrum_from_charfn(cf(1, 1), 0)


def test_spectrum_neumann_mode():
    f = char_fn(RootedTree(path(2), 0), NN)
    assert f == cf(-1, -1, 0, 1)
    sp = spectrum_from_charfn(f, 4)
    assert sp.as_pairs() == pytest.approx([(0.0, 1), (math.pi ** 2, 1), (4 * math.pi ** 2, 1), (9 * math.pi ** 2, 1)])
    with pytest.raises(ModeUnsupported):
        spectrum_from_charfn(cf(-1, 1, 0, 1), 3)


@pytest.mark.parametrize("spec", [N, D, NN])
def test_det_vanishes_at_eigenvalues_with_matching_order(spec):
    for n in (3, 4, 5, 6):
        for t in enumerate_trees(n):
            for v in (0, n - 1):
                rt = RootedTree(t, v)
                vs = build_vertex_system(rt, spec)
                f = char_fn(rt, spec)
                for ev in spectrum_from_charfn(f, 6).eigenvalues:
                    if ev.lam == 0.0:
                        continue
                    local = max(abs(det_oracle(vs, ev.lam + 0.05)), abs(det_oracle(vs, ev.lam - 0.05)))
                    assert abs(det_oracle(vs, ev.lam)) <= 1e-8 * local
                    assert vanishing_order(vs, ev.lam, h=1e-3) == pytest.approx(ev.multiplicity, abs=0.05)


def test_spectrum_of_merged_tree_two_ways(spider):
    t, v1, v2 = spider
    for v in (v1, v2):
        direct = merged_char_fn(t, v, P2_LEAF)
        via = attach_char_fn(char_pair(RootedTree(t, v)), char_pair(P2_LEAF))
        assert spectrum_from_charfn(direct, 15).as_pairs() == spectrum_from_charfn(via, 15).as_pairs()
        merged = RootedTree(attach(t, v, P2_LEAF), v)
        assert ratio_constancy_check(merged, N, direct)["ok"]


def test_eigenvalues_nonnegative():
    for t in enumerate_trees(7):
        for v in range(7):
            for spec in (N, D):
                sp = spectrum_from_charfn(char_fn(RootedTree(t, v), spec), 8)
                assert all(ev.lam >= 0 for ev in sp.eigenvalues)


def test_charfn_value_matches_oracle_up_to_constant():
    rt = RootedTree(path(4), 1)
    vs = build_vertex_system(rt, N)
    f = char_fn(rt, N)
    r = [det_oracle(vs, lam) / charfn_value(f, lam) for lam in (0.7, 3.1, 6.0)]
    assert np.allclose(r, r[0])
