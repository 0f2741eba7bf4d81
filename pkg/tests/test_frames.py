import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from _helpers import THREE_LAMBDAS, FOUR_LAMBDAS, six_vector_frame, haar_unitary, random_frame, sinc
from framecast import linalg
from framecast.errors import (
    DirectSumViolated,
    NotAFrame,
    PartitionInvalid,
    ShapeMismatch,
    SpanMismatch,
)
from framecast.frames import (
    Frame,
    FrameBounds,
    canonical_tight_frame,
    frame_bounds,
    frame_operator,
    gram_matrix,
    subframe_parseval_union,
    symmetric_distance,
    synthesis_matrix,
    to_parseval,
    transfer_coefficients,
)
from framecast.recon import analysis, reconstruct
from framecast.spiral import interval_exponential_frame

E1E1E2 = Frame(np.array([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))


def test_frame_validation_and_access():
    f = Frame([[1, 2j], [3, 4]], labels=("a", "b"))
    assert f.dim == 2 and len(f) == 2
    assert f[1][0] == 3
    with pytest.raises(ValueError):
        f.vectors[0, 0] = 5
    with pytest.raises(ValueError):
        Frame([[1, 2]], labels=("a", "b"))
    sub = f.subset([1])
    assert sub.labels == ("b",) and len(sub) == 1


def test_frame_bounds_type():
    with pytest.raises(ValueError):
        FrameBounds(2.0, 1.0)
    b = FrameBounds(1.0, 1.0 + 1e-12)
    assert b.is_parseval() and b.condition == pytest.approx(1.0)


# -- operators ---------------------------------------------------------------

def test_synthesis_matrix_onb_is_identity(rng):
    q = haar_unitary(rng, 4)
    np.testing.assert_allclose(synthesis_matrix(q, q), np.eye(4), atol=1e-14)


def test_synthesis_matrix_three_lambda():
    frame, _ = interval_exponential_frame(THREE_LAMBDAS)
    gs = linalg.gram_schmidt(frame.vectors)
    t = synthesis_matrix(frame, gs.onb)
    # against the unnormalized hand-worked basis the matrix is unit upper triangular
    d = np.diag(gs.triangular_block())
    t_monic = t / d[:, None]
    c21, c31, c32 = sinc(THREE_LAMBDAS[1] - THREE_LAMBDAS[0]), sinc(THREE_LAMBDAS[2] - THREE_LAMBDAS[0]), sinc(THREE_LAMBDAS[2] - THREE_LAMBDAS[1])
    theta = (c32 - c21 * c31) / (1 - c21 ** 2)
    expected = np.array([[1, c21, c31], [0, 1, theta], [0, 0, 1]])
    np.testing.assert_allclose(t_monic, expected, atol=1e-10)


def test_synthesis_matrix_six_vector():
    frame = six_vector_frame()
    gs = linalg.gram_schmidt(frame.vectors)
    t = synthesis_matrix(frame, gs.onb)
    assert t.shape == (3, 6)
    np.testing.assert_allclose(t[:, 3], t[:, 0] + t[:, 1], atol=1e-14)
    np.testing.assert_allclose(t[:, 4], t[:, 0] + t[:, 2], atol=1e-14)
    np.testing.assert_allclose(t[:, 5], t[:, 1] + t[:, 2], atol=1e-14)
    np.testing.assert_allclose(np.tril(t[:, :3], -1), 0, atol=1e-14)


def test_synthesis_matrix_span_mismatch():
    with pytest.raises(SpanMismatch):
        synthesis_matrix(np.eye(3), np.eye(3)[:2])


def test_frame_operator_examples(rng):
    np.testing.assert_allclose(frame_operator(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(frame_operator(E1E1E2), np.diag([2.0, 1.0]))
    x = random_frame(rng, 6, 3, 1e2)
    q = haar_unitary(rng, 3)
    t = synthesis_matrix(x, q)
    # T T* in the basis q, mapped back to standard coordinates
    np.testing.assert_allclose(q.T @ (t @ t.conj().T) @ q.conj(), frame_operator(x), atol=1e-12)


def test_gram_matrix_matches_sinc():
    frame, gram = interval_exponential_frame(FOUR_LAMBDAS)
    np.testing.assert_allclose(gram_matrix(frame), gram, atol=1e-14)


def test_frame_bounds_examples(backend):
    b = frame_bounds(np.eye(3), backend=backend)
    assert b.lower == pytest.approx(1) and b.upper == pytest.approx(1)
    b = frame_bounds(E1E1E2, backend=backend)
    assert b.lower == pytest.approx(1) and b.upper == pytest.approx(2)
    with pytest.raises(NotAFrame):
        frame_bounds(np.array([[1.0, 0.0, 0.0]]), backend=backend)
    with pytest.raises(NotAFrame):
        frame_bounds(np.array([[1.0, 0.0], [2.0, 0.0]]), backend=backend)
    b = frame_bounds(np.array([[1.0, 0.0], [2.0, 0.0]]), on_span=True, backend=backend)
    assert b.lower == pytest.approx(5) and b.upper == pytest.approx(5)


# -- to_parseval -------------------------------------------------------------

def test_to_parseval_onb_unchanged(backend, rng):
    q = haar_unitary(rng, 5)
    res = to_parseval(q, backend=backend)
    np.testing.assert_allclose(res.parseval.vectors, q, atol=1e-12)


def test_to_parseval_three_lambda_gives_onb(backend):
    frame, _ = interval_exponential_frame(THREE_LAMBDAS)
    res = to_parseval(frame, backend=backend)
    g = res.parseval.vectors
    np.testing.assert_allclose(g @ g.conj().T, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(res.transfer @ frame.vectors, g, atol=1e-12)


def test_to_parseval_six_vector(backend):
    frame = six_vector_frame()
    res = to_parseval(frame, backend=backend)
    assert len(res.parseval) == 6 and res.span_dim == 3
    np.testing.assert_allclose(frame_operator(res.parseval), np.eye(3), atol=1e-10)
    np.testing.assert_allclose(res.transfer @ frame.vectors, res.parseval.vectors, atol=1e-12)
    assert res.pivots == (0, 1, 2)
    # transfer touches only the pivot vectors
    np.testing.assert_allclose(res.transfer[:, 3:], 0, atol=0)


def test_to_parseval_subspace_flag(backend, rng):
    x = random_frame(rng, 5, 2) .vectors @ haar_unitary(rng, 4)[:2]
    with pytest.raises(NotAFrame):
        to_parseval(x, backend=backend)
    res = to_parseval(x, subspace=True, backend=backend)
    assert res.span_dim == 2
    g = res.parseval.vectors
    np.testing.assert_allclose(g.T @ g.conj(), res.onb_used.T @ res.onb_used.conj(), atol=1e-12)


def test_to_parseval_all_zero(backend):
    with pytest.raises(NotAFrame):
        to_parseval(np.zeros((3, 2)), backend=backend)


def test_to_parseval_order_and_onb_independent(backend, rng):
    x = random_frame(rng, 7, 4, 1e4)
    base = to_parseval(x, backend=backend).parseval.vectors
    other = to_parseval(x, order=[6, 5, 4, 3, 2, 1, 0], backend=backend).parseval.vectors
    np.testing.assert_allclose(other, base, atol=1e-10)
    onb = haar_unitary(rng, 4)
    supplied = to_parseval(x, onb=onb, backend=backend).parseval.vectors
    np.testing.assert_allclose(supplied, base, atol=1e-10)


def test_to_parseval_supplied_onb_mismatch():
    x = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
    with pytest.raises(SpanMismatch):
        to_parseval(x, onb=np.eye(3)[1:], subspace=True)


def test_parseval_identity_random_vectors(backend, rng):
    x = random_frame(rng, 9, 5, 1e4)
    res = to_parseval(x, backend=backend)
    g = res.parseval.vectors
    for _ in range(100):
        y = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        rec = g.T @ (g.conj() @ y)
        assert np.linalg.norm(rec - y) <= 1e-9 * np.linalg.norm(y)


@given(st.integers(1, 6), st.integers(0, 6), st.integers(0, 2 ** 32 - 1))
def test_to_parseval_property(n, extra, seed):
    rng = np.random.default_rng(seed)
    x = random_frame(rng, n + extra, n, 1e4)
    res = to_parseval(x)
    b = frame_bounds(res.parseval)
    assert abs(b.lower - 1) <= 1e-9 and abs(b.upper - 1) <= 1e-9
    assert linalg.is_partial_isometry(res.w, 1e-10).coisometry_defect <= 1e-10


# -- canonical tight frame and distance ---------------------------------------

def test_canonical_examples(backend, rng):
    q = haar_unitary(rng, 3)
    np.testing.assert_allclose(canonical_tight_frame(q, backend=backend).vectors, q, atol=1e-12)
    g = canonical_tight_frame(E1E1E2, backend=backend).vectors
    r = 1 / math.sqrt(2)
    np.testing.assert_allclose(g, [[r, 0], [r, 0], [0, 1]], atol=1e-15)


def test_canonical_equals_parseval(backend, rng):
    for _ in range(5):
        x = random_frame(rng, 8, 5, 1e4)
        a = to_parseval(x, backend=backend).parseval.vectors
        b = canonical_tight_frame(x, backend=backend).vectors
        np.testing.assert_allclose(a, b, atol=1e-10)


def test_symmetric_distance_examples():
    x = np.array([[1.0, 0.0]])
    assert symmetric_distance(x, x) == 0
    assert symmetric_distance(x, -x) == pytest.approx(4)
    with pytest.raises(ShapeMismatch):
        symmetric_distance(x, np.eye(2))


def test_symmetric_distance_three_lambda_optimal(rng):
    frame, _ = interval_exponential_frame(THREE_LAMBDAS)
    res = to_parseval(frame)
    best = symmetric_distance(frame, res.parseval)
    e = res.onb_used
    for _ in range(500):
        mu = haar_unitary(rng, 3).T @ e
        assert symmetric_distance(frame, mu) >= best


# -- transfer coefficients ---------------------------------------------------

def test_transfer_identity():
    res = to_parseval(np.eye(3))
    meas = np.array([1.0, 2j, -3.0])
    np.testing.assert_allclose(transfer_coefficients(res, meas), meas, atol=1e-15)
    with pytest.raises(ShapeMismatch):
        transfer_coefficients(res, meas[:2])


def test_transfer_three_lambda_f1():
    frame, _ = interval_exponential_frame(THREE_LAMBDAS)
    res = to_parseval(frame)
    f = frame.vectors[0]
    rec = reconstruct(res, transfer_coefficients(res, analysis(frame, f)))
    np.testing.assert_allclose(rec, f, atol=1e-9)


def test_transfer_random_in_span(rng):
    x = random_frame(rng, 8, 4, 1e4)
    res = to_parseval(x)
    f = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    # only the measurements <f, f_j> are used
    meas = x.vectors.conj() @ f
    rec = res.parseval.vectors.T @ transfer_coefficients(res, meas)
    assert np.linalg.norm(rec - f) <= 1e-9 * np.linalg.norm(f)


# -- union of per-part Parseval frames -----------------------------------------

def test_union_orthogonal_singletons(backend):
    x = np.diag([2.0, 0.5, 3.0]).astype(complex)
    u = subframe_parseval_union(x, [[0], [1], [2]], backend=backend)
    np.testing.assert_allclose(u.ambient.vectors, np.eye(3), atol=1e-15)
    assert u.coincides and u.deviation <= 1e-8
    assert u.block_bounds.is_parseval() and u.ambient_bounds.is_parseval()


def test_union_orthogonal_blocks(backend, rng):
    a = random_frame(rng, 3, 2, 10).vectors
    b = random_frame(rng, 3, 2, 10).vectors
    x = np.zeros((6, 4), dtype=complex)
    x[:3, :2], x[3:, 2:] = a, b
    u = subframe_parseval_union(x, [[0, 1, 2], [3, 4, 5]], backend=backend)
    assert u.coincides and u.deviation <= 1e-8


def test_union_four_lambda(backend):
    frame, _ = interval_exponential_frame(FOUR_LAMBDAS)
    u = subframe_parseval_union(frame, [[0, 1], [2, 3]], backend=backend)
    assert u.part_dims == (2, 2)
    assert abs(u.block_bounds.lower - 1) <= 1e-9 and abs(u.block_bounds.upper - 1) <= 1e-9
    assert not u.coincides and u.deviation > 1e-3
    # synthesis in concatenated sub-ONB coordinates is block diagonal
    np.testing.assert_allclose(u.synthesis[:2, 2:], 0, atol=0)
    np.testing.assert_allclose(u.synthesis[2:, :2], 0, atol=0)
    # the parts are not orthogonal, so the union is not Parseval in C^4 itself
    assert not u.ambient_bounds.is_parseval(1e-3)


def test_union_errors():
    with pytest.raises(PartitionInvalid):
        subframe_parseval_union(np.eye(3), [[0], [1]])
    with pytest.raises(PartitionInvalid):
        subframe_parseval_union(np.eye(3), [[0, 1], [1, 2]])
    with pytest.raises(PartitionInvalid):
        subframe_parseval_union(np.eye(3), [[0, 1, 2], []])
    x = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    with pytest.raises(DirectSumViolated):
        subframe_parseval_union(x, [[0, 1], [2]])
