import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _helpers import haar_unitary, random_frame
from framecast.errors import IllConditioned, NotAFrame, ShapeMismatch
from framecast.frames import to_parseval
from framecast.pipeline import BUILTIN_SIGNALS, example_points, grid_signal, reconstruct_on_grid
from framecast.quadrature import adaptive_simpson, fourier_transform, gauss_legendre
from framecast.recon import (
    TruncationBoundInput,
    analysis,
    ball_volume,
    dual_frame,
    fourier_decay_bound,
    highdim_decay_bound,
    highdim_truncation_bound,
    reconstruct,
    tail_sum,
    truncate_split,
    truncation_bound,
)
from framecast.spiral import DiskGrid
from framecast.testfuncs import Bump, SeparableBump, harmonic_truncation_error, polynomial_l1


# -- reconstruction ------------------------------------------------------------

def test_reconstruct_onb_delta():
    q = np.eye(4)
    np.testing.assert_array_equal(reconstruct(q, [1, 0, 0, 0]), q[0])
    with pytest.raises(ShapeMismatch):
        reconstruct(q, [1, 0])


@pytest.mark.parametrize("name", ["fig1", "fig2"])
def test_reconstruct_figures(name, backend):
    pts = example_points()
    grid = DiskGrid.midpoint(0.25, 50)
    rec = reconstruct_on_grid(pts, grid_signal(pts, BUILTIN_SIGNALS[name], grid), backend=backend)
    assert rec.relative_error <= 1e-9
    assert rec.isometry_defect <= 1e-10


def test_reconstruct_zero_signal():
    pts = example_points()
    rec = reconstruct_on_grid(pts, np.zeros(2500))
    assert rec.relative_error == 0 and not np.any(rec.reconstructed)


def test_dual_path_matches_parseval(rng):
    x = random_frame(rng, 7, 4, 1e4)
    f = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    via_dual = reconstruct(x, analysis(x, f), dual=True)
    np.testing.assert_allclose(via_dual, f, atol=1e-9)
    # tall (m > n) and wide (m <= n) branches of the dual agree with numpy's pinv
    for frame in (x.vectors, x.vectors[:3]):
        s = frame.T @ frame.conj()
        np.testing.assert_allclose(dual_frame(frame), frame @ np.linalg.pinv(s).T, atol=1e-9)


def test_dual_errors():
    with pytest.raises(NotAFrame):
        dual_frame(np.zeros((2, 2)))
    with pytest.raises(IllConditioned):
        dual_frame(np.diag([1.0, 3e-7]))


# -- truncation split ---------------------------------------------------------

def test_truncate_all_terms(rng):
    x = random_frame(rng, 6, 3, 1e2)
    f = rng.standard_normal(3) + 0j
    split = truncate_split(x, analysis(x, f), len(x))
    assert split.f_eps_norm <= 1e-10 * np.linalg.norm(f)


def test_truncate_onb_single_term():
    split = truncate_split(np.eye(3), analysis(np.eye(3), [1.0, 0, 0]), 1)
    assert split.f_eps_norm == 0
    with pytest.raises(ValueError):
        truncate_split(np.eye(3), np.zeros(3), 0)
    with pytest.raises(ShapeMismatch):
        truncate_split(np.eye(3), np.zeros(2), 1)


def test_truncate_monotone_on_onb(rng):
    q = haar_unitary(rng, 8)
    f = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    c = analysis(q, f)
    norms = [truncate_split(q, c, k).f_eps_norm for k in range(1, 9)]
    assert all(b <= a + 1e-14 for a, b in zip(norms, norms[1:]))
    # Pythagoras: the discarded energy is the sum of the dropped |c|^2
    for k, nrm in enumerate(norms, start=1):
        assert nrm == pytest.approx(math.sqrt(np.sum(np.abs(c[k:]) ** 2)), abs=1e-12)


# -- decay bounds -------------------------------------------------------------

def test_fourier_decay_bound_examples():
    assert fourier_decay_bound(1, 2 * math.pi, 1.0) == pytest.approx(1.0)
    assert fourier_decay_bound(2, 3.0, 4.0) == pytest.approx(fourier_decay_bound(2, 3.0, 2.0) / 4)
    with pytest.raises(ValueError):
        fourier_decay_bound(0, 1.0, 1.0)
    with pytest.raises(ValueError):
        fourier_decay_bound(2, 1.0, 0.0)


def test_fourier_decay_empirical():
    f = Bump(2, 0.5)  # (1 - 4 t^2)^2 on (-1/2, 1/2)
    np.testing.assert_allclose(f.poly.coef, [1, 0, -8, 0, 16], atol=1e-12)
    l1 = f.deriv_l1(2)
    for lam in (1, 2, 5, 10):
        fhat = abs(f.fourier(lam))
        assert fhat == pytest.approx(abs(f.fourier_exact(lam)), abs=1e-13)
        assert fhat <= fourier_decay_bound(2, l1, lam)


def test_highdim_bound_consistency(rng):
    for _ in range(100):
        k = int(rng.integers(1, 6))
        l1, lam = rng.uniform(0.01, 10, 2)
        assert highdim_decay_bound(1, k, l1, lam) == pytest.approx(
            fourier_decay_bound(k, l1, lam), rel=1e-14)
    assert highdim_decay_bound(4, 2, 1.5, 3.0) == pytest.approx(4 * highdim_decay_bound(1, 2, 1.5, 3.0))
    with pytest.raises(ValueError):
        highdim_decay_bound(0, 2, 1.0, 1.0)


def test_highdim_decay_empirical(rng):
    # square [-R, R]^2 inscribed in B(0, R sqrt 2)
    f = SeparableBump(Bump(3, 0.5))
    k = 2
    partial = f.partial_l1(k)
    for _ in range(10):
        r = rng.uniform(1, 10)
        phi = rng.uniform(0, 2 * math.pi)
        lam = (r * math.cos(phi), r * math.sin(phi))
        fhat = abs(f.fourier(lam))
        exact = abs(f.g.fourier_exact(lam[0]) * f.g.fourier_exact(lam[1]))
        assert fhat == pytest.approx(exact, abs=1e-12)
        assert fhat <= highdim_decay_bound(2, k, partial, r)


# -- truncation bounds -----------------------------------------------------------

def test_truncation_bound_closed_form():
    rep = truncation_bound(TruncationBoundInput(2, 1.0, 1.0, 0.5, 99))
    assert rep.formula_id == "thm32"
    assert rep.bound == pytest.approx(1 / (4 * math.pi ** 2) * 2 / 100, rel=1e-14)
    assert rep.bound == pytest.approx(5.0661e-4, abs=1e-8)
    assert rep.inputs["N_tilde"] == 99


def test_truncation_bound_eq35_consistency(rng):
    for _ in range(20):
        inp = TruncationBoundInput(2, float(rng.uniform(0.1, 5)), 1.0, 0.5, int(rng.integers(1, 1000)))
        a = truncation_bound(inp).bound
        b = truncation_bound(inp, "eq35").bound
        assert a == pytest.approx(b, rel=1e-14, abs=1e-14)
    with pytest.raises(ValueError):
        truncation_bound(TruncationBoundInput(3, 1.0, 1.0, 0.5, 5), "eq35")
    with pytest.raises(ValueError):
        truncation_bound(TruncationBoundInput(2, 1.0, 1.0, 0.5, 5), "other")


def test_truncation_bound_decreasing():
    b = [truncation_bound(TruncationBoundInput(2, 1.0, 1.0, 0.5, n)).bound for n in (10, 10 ** 3, 10 ** 6)]
    assert b[0] > b[1] > b[2] > 0


def test_truncation_bound_spacing():
    inp = TruncationBoundInput(3, 1.0, 0.5, 1.0, 10)
    assert truncation_bound(inp, spacing=2.0).bound == pytest.approx(truncation_bound(inp).bound / 8)


@pytest.mark.parametrize("bad", [
    dict(k=1), dict(k=2.5), dict(N_tilde=0), dict(A=0.0), dict(R=-1.0), dict(deriv_l1=-1.0),
])
def test_truncation_input_validation(bad):
    args = dict(k=2, deriv_l1=1.0, A=1.0, R=0.5, N_tilde=5)
    args.update(bad)
    with pytest.raises(ValueError):
        TruncationBoundInput(**args)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_truncation_domination_harmonic(p):
    f = Bump(p, 0.5, 0.5)  # (4 t (1 - t))^p on [0, 1]
    for n in (4, 8, 16, 32):
        quad, tail = harmonic_truncation_error(f, n)
        assert quad == pytest.approx(tail, rel=1e-3)
        bound = truncation_bound(TruncationBoundInput(p, f.deriv_l1(p), 1.0, 0.5, n)).bound
        assert quad <= bound


def test_sine_squared_test_function_domination():
    # sin^2(pi t) (t - t^2): vanishes with its first derivative at 0 and 1
    def f(t):
        return np.sin(np.pi * t) ** 2 * (t - t * t)

    def f2(t):
        s, c = np.sin(np.pi * t), np.cos(np.pi * t)
        g, g1 = t - t * t, 1 - 2 * t
        s2 = s * s
        ds2 = 2 * np.pi * s * c
        dds2 = 2 * np.pi ** 2 * (c * c - s * s)
        return dds2 * g + 2 * ds2 * g1 + s2 * (-2.0)

    l1 = gauss_legendre(lambda t: np.abs(f2(t)), 0, 1, nodes_per_unit=256)
    x = np.polynomial.legendre.leggauss(512)
    nodes, weights = 0.5 * (x[0] + 1), 0.5 * x[1]
    for n in (4, 8, 16, 32):
        ns = np.arange(-n, n + 1)
        fhat = np.array([fourier_transform(f, 0, 1, k) for k in ns])
        resid = f(nodes) - np.exp(2j * np.pi * np.outer(nodes, ns)) @ fhat
        err = math.sqrt(np.sum(weights * np.abs(resid) ** 2))
        assert err <= truncation_bound(TruncationBoundInput(2, l1, 1.0, 0.5, n), "eq35").bound


def test_highdim_truncation_bound():
    rep = highdim_truncation_bound(2, 3, 1.0, 0.5, 0.25, 0.1)
    expected = math.sqrt(math.pi * 0.25 ** 2) / 0.5 * (math.sqrt(2) / (2 * math.pi)) ** 3 * 0.1
    assert rep.bound == pytest.approx(expected) and rep.formula_id == "highdim"
    assert ball_volume(3, 1.0) == pytest.approx(4 / 3 * math.pi)
    with pytest.raises(ValueError):
        highdim_truncation_bound(2, 3, 1.0, 0.0, 0.25, 0.1)


# -- tail sums -----------------------------------------------------------------

def test_tail_sum_examples():
    labels = [0, 1, -1, 2, -2]
    assert tail_sum(labels, np.zeros(5), 1) == 0
    assert tail_sum(labels, np.ones(5), 5) == 0
    assert tail_sum(labels, np.ones(5), 10) == 0
    assert tail_sum([2, -1, 0], [5.0, 3.0, 1.0], 1) == pytest.approx(8.0)
    with pytest.raises(ShapeMismatch):
        tail_sum([0, 1], [1.0], 1)
    with pytest.raises(ValueError):
        tail_sum([0, 1], [1.0, 1.0], -1)


def test_tail_sum_quadrature_decreases():
    f = Bump(3, 0.5, 0.5)
    lam = np.arange(-40, 41)
    fhat = np.array([f.fourier(k) for k in lam])
    assert tail_sum(lam, fhat, 2 * 16 + 1) < tail_sum(lam, fhat, 2 * 8 + 1)


@given(st.lists(st.floats(-50, 50), min_size=1, max_size=30), st.integers(0, 5))
def test_tail_sum_non_increasing(labels, seed):
    vals = np.random.default_rng(seed).standard_normal(len(labels))
    sums = [tail_sum(labels, vals, n) for n in range(len(labels) + 1)]
    assert all(b <= a + 1e-12 for a, b in zip(sums, sums[1:]))


# -- quadrature and test functions ---------------------------------------------

def test_gauss_legendre_and_simpson():
    assert gauss_legendre(np.exp, 0, 1) == pytest.approx(math.e - 1, rel=1e-14)
    assert gauss_legendre(np.exp, 1, 1) == 0
    assert adaptive_simpson(math.exp, 0, 1) == pytest.approx(math.e - 1, rel=1e-12)
    with pytest.raises(ArithmeticError):
        gauss_legendre(lambda t: np.sign(t - 1 / 3) * np.sin(1e6 * t) ** 2, 0, 1,
                       nodes_per_unit=4, max_doublings=2)


def test_bump_properties():
    b = Bump(3, 0.5, 0.5)
    assert b(np.array([-0.1, 1.1])).tolist() == [0.0, 0.0]
    for k in range(3):
        assert abs(b.derivative(k)(0.0)) < 1e-12 and abs(b.derivative(k)(1.0)) < 1e-12
    assert b.l2_norm() ** 2 == pytest.approx(gauss_legendre(lambda t: b(t) ** 2, 0, 1), rel=1e-12)
    assert polynomial_l1(np.polynomial.Polynomial([0, 1]), -1, 1) == pytest.approx(1.0)
    assert b.fourier_exact(0) == pytest.approx(b.fourier(0))
    np.testing.assert_allclose(b.fourier_exact(np.array([1.0, 2.0])),
                               [b.fourier(1.0), b.fourier(2.0)], atol=1e-13)
    with pytest.raises(ValueError):
        harmonic_truncation_error(Bump(2, 0.5), 4)


def test_parseval_dual_equivalence(rng):
    # dual-frame and Parseval reconstruction agree on the same measurements
    x = random_frame(rng, 6, 4, 1e3)
    f = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    res = to_parseval(x)
    meas = analysis(x, f)
    from framecast.frames import transfer_coefficients
    a = reconstruct(res, transfer_coefficients(res, meas))
    b = reconstruct(x, meas, dual=True)
    np.testing.assert_allclose(a, b, atol=1e-10)
