"""Closed-form eigensystems of 2x2 and 3x3 complex (non-Hermitian) matrices.

Eigenvalues of 3x3 matrices come from the characteristic cubic solved by
Cardano's formula, each root polished by one Newton step. Right eigenvectors
are the largest cofactor vector of ``H - eps*I``; repeated roots with a
two-dimensional null space fall back to an SVD null-space basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

DEGENERACY_TOL = 1e-10
# Cardano roots of a k-fold root carry eps**(1/k)-sized errors
CLUSTER_TOL = 1e-5
_CUBE_ROOTS_OF_UNITY = np.exp(2j * np.pi * np.arange(3) / 3)


class DefectiveMatrix(ValueError):
    """A repeated eigenvalue has fewer independent eigenvectors than its multiplicity."""


@dataclass(frozen=True)
class ExactEigensystem:
    eigenvalues: np.ndarray
    right_eigenvectors: np.ndarray  # columns

    def __len__(self):
        return len(self.eigenvalues)

    def permuted(self, perm) -> "ExactEigensystem":
        perm = list(perm)
        return ExactEigensystem(self.eigenvalues[perm], self.right_eigenvectors[:, perm])


def _fix_phase(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    big = np.max(np.abs(v))
    for i, x in enumerate(v):
        if abs(x) > 1e-12 * big:
            v = v * (abs(x) / x)
            v[i] = abs(v[i])
            return v
    return v


def _scale(h: np.ndarray) -> float:
    return max(float(np.max(np.abs(h))), np.finfo(float).tiny)


def _quadratic_roots(tr, det):
    disc = np.sqrt(complex(tr * tr - 4 * det))
    # pick the sign that avoids cancellation, recover the other root from the product
    big = 0.5 * (tr + disc) if abs(tr + disc) >= abs(tr - disc) else 0.5 * (tr - disc)
    small = det / big if big != 0 else 0j
    return np.array([big, small])


def cubic_roots(a, b, c) -> np.ndarray:
    """Roots of ``x**3 + a x**2 + b x + c`` (complex coefficients)."""
    a, b, c = complex(a), complex(b), complex(c)
    d0 = a * a - 3 * b
    d1 = 2 * a**3 - 9 * a * b + 27 * c
    s = np.sqrt(d1 * d1 - 4 * d0**3)
    w = 0.5 * (d1 + s) if abs(d1 + s) >= abs(d1 - s) else 0.5 * (d1 - s)
    if w == 0:
        roots = np.full(3, -a / 3)
    else:
        cc = w ** (1 / 3) * _CUBE_ROOTS_OF_UNITY
        roots = -(a + cc + d0 / cc) / 3
    # one Newton step per root, kept only where it shrinks the residual
    # (near a repeated root dp ~ 0 and the step can overshoot)
    def poly(x):
        return x**3 + a * x**2 + b * x + c
    p = poly(roots)
    dp = 3 * roots**2 + 2 * a * roots + b
    with np.errstate(divide="ignore", invalid="ignore"):
        stepped = roots - p / dp
    better = np.isfinite(stepped) & (np.abs(poly(stepped)) < np.abs(p))
    return np.where(better, stepped, roots)


def _null_vector_2(m: np.ndarray) -> np.ndarray:
    rows = [np.array([-m[0, 1], m[0, 0]]), np.array([-m[1, 1], m[1, 0]])]
    v = max(rows, key=lambda r: float(np.linalg.norm(r)))
    if np.linalg.norm(v) == 0:
        return None
    return v


def _null_vector_3(m: np.ndarray) -> np.ndarray:
    # cofactor vectors: each is orthogonal (bilinearly) to two rows of m
    best, best_norm = None, 0.0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        v = np.cross(m[i], m[j])
        nv = float(np.linalg.norm(v))
        if nv > best_norm:
            best, best_norm = v, nv
    return best, best_norm


def _null_space(m: np.ndarray, k: int, scale: float) -> np.ndarray:
    _, sv, vh = np.linalg.svd(m)
    nullity = int(np.sum(sv <= DEGENERACY_TOL * scale))
    if nullity < k:
        raise DefectiveMatrix(f"eigenvalue of multiplicity {k} has a {max(nullity, 1)}-dimensional"
                              " null space")
    return vh[-k:].conj().T


def _det3(h):
    return (h[0, 0] * (h[1, 1] * h[2, 2] - h[1, 2] * h[2, 1])
            - h[0, 1] * (h[1, 0] * h[2, 2] - h[1, 2] * h[2, 0])
            + h[0, 2] * (h[1, 0] * h[2, 1] - h[1, 1] * h[2, 0]))


def _repeated_root(h, guess, multiplicity):
    """Refine a repeated root as the nearest root of the characteristic polynomial's derivative."""
    tr = np.trace(h)
    if h.shape[0] == 2 or multiplicity == 3:
        return tr / h.shape[0]
    minors = sum(h[i, i] * h[j, j] - h[i, j] * h[j, i] for i, j in ((0, 1), (0, 2), (1, 2)))
    # d/dx (x^3 - tr x^2 + minors x - det) = 3x^2 - 2 tr x + minors
    cands = _quadratic_roots(2 * tr / 3, minors / 3)
    return cands[np.argmin(np.abs(cands - guess))]


def exact_eigensystem(h) -> ExactEigensystem:
    h = np.asarray(h, dtype=complex)
    if h.shape not in ((2, 2), (3, 3)):
        raise ValueError(f"need a 2x2 or 3x3 matrix, got shape {h.shape}")
    # solve at unit scale so the cubic coefficients neither overflow nor underflow;
    # a power of two keeps the rescaling exact
    unit = np.ldexp(1.0, int(np.frexp(_scale(h))[1]))
    es = _solve(h / unit)
    return ExactEigensystem(es.eigenvalues * unit, es.right_eigenvectors)


def _solve(h) -> ExactEigensystem:
    n = h.shape[0]
    scale = _scale(h)
    if n == 2:
        vals = _quadratic_roots(h[0, 0] + h[1, 1], h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0])
    else:
        minors = (h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0]
                  + h[0, 0] * h[2, 2] - h[0, 2] * h[2, 0]
                  + h[1, 1] * h[2, 2] - h[1, 2] * h[2, 1])
        vals = cubic_roots(-np.trace(h), minors, -_det3(h))

    vecs = np.zeros((n, n), dtype=complex)
    done = np.zeros(n, dtype=bool)
    eye = np.eye(n)
    for k in range(n):
        if done[k]:
            continue
        group = [j for j in range(k, n)
                 if not done[j] and abs(vals[j] - vals[k]) <= CLUSTER_TOL * scale]
        if len(group) == 1:
            m = h - vals[k] * eye
            if n == 2:
                v = _null_vector_2(m)
            else:
                v, vnorm = _null_vector_3(m)
                if vnorm <= DEGENERACY_TOL * scale**2:
                    v = None
            if v is None:
                # rank below n-1 although the root looks simple
                v = np.linalg.svd(m)[2][-1].conj()
            vecs[:, k] = _fix_phase(v)
        else:
            root = _repeated_root(h, np.mean(vals[group]), len(group))
            basis = _null_space(h - root * eye, len(group), scale)
            for col, j in enumerate(group):
                vals[j] = root
                vecs[:, j] = _fix_phase(basis[:, col])
        done[group] = True
    return ExactEigensystem(vals, vecs)


def track_continuity(prev: ExactEigensystem, nxt: ExactEigensystem) -> tuple[int, ...]:
    """Permutation ``sigma`` so that ``nxt.eigenvalues[sigma[k]]`` continues ``prev`` branch ``k``.

    Exhaustive search over all permutations; ties go to the first one in
    lexicographic order, which starts with the identity.
    """
    a = np.asarray(getattr(prev, "eigenvalues", prev))
    b = np.asarray(getattr(nxt, "eigenvalues", nxt))
    best, best_cost = None, np.inf
    for perm in itertools.permutations(range(len(a))):
        cost = float(np.sum(np.abs(b[list(perm)] - a)))
        if cost < best_cost:
            best, best_cost = perm, cost
    return best


def eigenvalue_curves(matrices, reference=None) -> np.ndarray:
    """Continuity-tracked eigenvalues along a sequence of matrices.

    Returns an array of shape ``(len(matrices), n)``. ``reference`` optionally
    fixes the branch labels at the first matrix: column ``k`` starts on the
    exact eigenvalue nearest ``reference[k]``.
    """
    out = []
    prev = None
    for h in matrices:
        sys_ = exact_eigensystem(h)
        if prev is None:
            if reference is not None:
                sys_ = sys_.permuted(track_continuity(np.asarray(reference), sys_))
        else:
            sys_ = sys_.permuted(track_continuity(prev, sys_))
        out.append(sys_.eigenvalues)
        prev = sys_
    return np.array(out)
