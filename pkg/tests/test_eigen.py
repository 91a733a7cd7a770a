import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from licstirap import presets
from licstirap.eigen import (DefectiveMatrix, ExactEigensystem, cubic_roots, eigenvalue_curves,
                             exact_eigensystem, track_continuity)
from licstirap.model import hamiltonian_3


def residual(h, es):
    h = np.asarray(h, dtype=complex)
    return max(np.linalg.norm(h @ es.right_eigenvectors[:, k]
                              - es.eigenvalues[k] * es.right_eigenvectors[:, k])
               for k in range(len(es)))


def test_diagonal():
    es = exact_eigensystem(np.diag([1.0, 2.0, 3.0 - 1j]))
    order = np.argsort(es.eigenvalues.real)
    np.testing.assert_allclose(es.eigenvalues[order], [1, 2, 3 - 1j], atol=1e-14)
    np.testing.assert_allclose(np.abs(es.right_eigenvectors[:, order]), np.eye(3), atol=1e-14)


def test_two_by_two_invariants():
    h = np.array([[0, 25], [25, -75j]])
    es = exact_eigensystem(h)
    assert es.eigenvalues.sum() == pytest.approx(-75j)
    assert np.prod(es.eigenvalues) == pytest.approx(-625)
    assert residual(h, es) < 1e-12


def test_phase_convention():
    es = exact_eigensystem(np.array([[1, 2j, 0], [2j, -1, 1], [0, 1, 0.5]]))
    for v in es.right_eigenvectors.T:
        assert np.linalg.norm(v) == pytest.approx(1)
        first = v[np.abs(v) > 1e-12][0]
        assert first.imag == 0 and first.real > 0


def test_repeated_eigenvalues():
    es = exact_eigensystem(np.diag([1.0, 1.0, 3.0]))
    np.testing.assert_allclose(sorted(es.eigenvalues.real), [1, 1, 3])
    assert abs(np.linalg.det(es.right_eigenvectors)) == pytest.approx(1)
    np.testing.assert_allclose(exact_eigensystem(2 * np.eye(3)).eigenvalues, 2)


@pytest.mark.parametrize("h", [[[1, 1], [0, 1]], [[1, 1, 0], [0, 1, 0], [0, 0, 2]],
                               [[2, 1, 0], [0, 2, 1], [0, 0, 2]]])
def test_defective(h):
    with pytest.raises(DefectiveMatrix):
        exact_eigensystem(h)


def test_cubic_roots():
    roots = cubic_roots(-6, 11, -6)
    np.testing.assert_allclose(sorted(roots.real), [1, 2, 3])


def test_dimension_check():
    with pytest.raises(ValueError):
        exact_eigensystem(np.eye(4))


# subnormal entries make numpy.linalg.det itself return NaN
finite = st.floats(-50, 50, allow_subnormal=False)


@settings(max_examples=200)
@given(arrays(float, (2, 3, 3), elements=finite))
def test_random_complex_symmetric(parts):
    a = parts[0] + 1j * parts[1]
    h = a + a.T
    try:
        es = exact_eigensystem(h)
    except DefectiveMatrix:
        return
    scale = max(np.linalg.norm(h, 2), 1e-300)
    assert residual(h, es) <= 1e-10 * scale
    assert abs(es.eigenvalues.sum() - np.trace(h)) <= 1e-10 * scale
    assert abs(np.prod(es.eigenvalues) - np.linalg.det(h)) <= 1e-10 * max(scale, 1) ** 3


@given(arrays(float, (3, 3), elements=finite))
def test_hermitian_real(parts):
    h = parts + parts.T
    es = exact_eigensystem(h)
    assert np.max(np.abs(es.eigenvalues.imag)) <= 1e-10 * max(np.abs(h).max(), 1)


def sys_of(vals):
    return ExactEigensystem(np.array(vals, dtype=complex), np.eye(len(vals)))


def test_track_continuity():
    a = sys_of([1, 2j, -3])
    assert track_continuity(a, a) == (0, 1, 2)
    assert track_continuity(a, sys_of([2j, 1, -3])) == (1, 0, 2)
    # spacing ~2, perturbations < spacing/10
    assert track_continuity(a, sys_of([1.1, 2j - 0.1, -3 + 0.15j])) == (0, 1, 2)
    assert track_continuity(sys_of([0, 0]), sys_of([0, 0])) == (0, 1)


def test_track_continuity_matches_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a, b = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
        perm = track_continuity(sys_of(a), sys_of(b))
        costs = {p: np.abs(b[list(p)] - a).sum() for p in itertools.permutations(range(3))}
        assert costs[perm] == min(costs.values())


def test_tracked_curves_are_continuous():
    ps, p = presets.lics(100, delta_pump=0.0)
    times = np.linspace(-4, 4, 4001)
    mats = [hamiltonian_3(t, ps, p) for t in times]
    curves = eigenvalue_curves(mats)
    jumps = np.abs(np.diff(curves, axis=0)).max(axis=1)
    dh = np.array([np.linalg.norm(b - a, 2) for a, b in zip(mats, mats[1:])])
    assert np.all(jumps <= 10 * dh + 1e-12)


@pytest.mark.parametrize("scale", [1e-200, 1e-100, 1e100, 1e200])
def test_extreme_scales(scale):
    base = np.array([[1, 2j, 0.5], [2j, -1, 1], [0.5, 1, 3 - 1j]])
    ref = exact_eigensystem(base)
    es = exact_eigensystem(base * scale)
    np.testing.assert_allclose(es.eigenvalues / scale, ref.eigenvalues, rtol=1e-12)
    scaled = ExactEigensystem(es.eigenvalues / scale, es.right_eigenvectors)
    assert residual(base, scaled) <= 1e-10 * np.linalg.norm(base, 2)
    assert exact_eigensystem(np.full((3, 3), scale)).eigenvalues.real.max() == pytest.approx(3 * scale)
