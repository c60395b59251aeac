"""Dense complex linear algebra helpers.

Everything operates on plain ``numpy`` arrays. Matrices are square
``complex128`` arrays, states are one dimensional ``complex128`` arrays
with unit norm. Inner products are conjugate linear in the first slot:
``<a, b> = sum(conj(a) * b)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import ClassificationError, DimensionMismatchError, PremiseError


def as_square_matrix(a: np.ndarray | list, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise DimensionMismatchError(f"{name} must be square, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ClassificationError(f"{name} has non-finite entries")
    return arr


def as_state_vector(v: np.ndarray | list, dim: int | None = None, name: str = "state") -> np.ndarray:
    arr = np.asarray(v, dtype=complex).reshape(-1)
    if arr.size == 0:
        raise DimensionMismatchError(f"{name} is empty")
    if dim is not None and arr.size != dim:
        raise DimensionMismatchError(f"{name} has length {arr.size}, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise ClassificationError(f"{name} has non-finite entries")
    return arr


def normalize(v: np.ndarray | list) -> np.ndarray:
    """Return ``v / ||v||``; a zero vector is rejected."""
    arr = as_state_vector(v)
    norm = np.linalg.norm(arr)
    if norm == 0.0:
        raise PremiseError("cannot normalize the zero vector")
    return arr / norm


def dagger(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).conj().T


def frobenius_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=complex)))


def is_hermitian(a: np.ndarray, tol: float = DEFAULT_TOLERANCES.tau_zero) -> bool:
    arr = as_square_matrix(a)
    return frobenius_norm(arr - dagger(arr)) <= tol


def is_unitary(a: np.ndarray, tol: float = DEFAULT_TOLERANCES.tau_zero) -> bool:
    arr = as_square_matrix(a)
    return frobenius_norm(dagger(arr) @ arr - np.eye(arr.shape[0])) <= tol


def require_hermitian(a: np.ndarray, tol: float = DEFAULT_TOLERANCES.tau_zero, name: str = "matrix") -> np.ndarray:
    arr = as_square_matrix(a, name)
    dev = frobenius_norm(arr - dagger(arr))
    if dev > tol:
        raise ClassificationError(f"{name} is not Hermitian (deviation {dev:.3e})")
    return arr


def require_unitary(a: np.ndarray, tol: float = DEFAULT_TOLERANCES.tau_zero, name: str = "matrix") -> np.ndarray:
    arr = as_square_matrix(a, name)
    dev = frobenius_norm(dagger(arr) @ arr - np.eye(arr.shape[0]))
    if dev > tol:
        raise ClassificationError(f"{name} is not unitary (deviation {dev:.3e})")
    return arr


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """A @ B - B @ A."""
    am = as_square_matrix(a, "a")
    bm = as_square_matrix(b, "b")
    if am.shape != bm.shape:
        raise DimensionMismatchError(f"shape mismatch {am.shape} vs {bm.shape}")
    return am @ bm - bm @ am


# Order 13 diagonal Pade approximant of exp, combined with scaling and
# squaring. Coefficients and the scaling threshold follow the standard
# fixed-order recipe; accuracy is far below 1e-10 relative error for
# ||A||_F up to 100.
_PADE13 = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)
_PADE13_THETA = 5.371920351148152


def mat_exp(a: np.ndarray, scale: complex = 1.0) -> np.ndarray:
    """Matrix exponential ``exp(scale * a)``."""
    m = as_square_matrix(a) * complex(scale)
    dim = m.shape[0]
    eye = np.eye(dim, dtype=complex)
    norm = float(np.linalg.norm(m, 1))
    squarings = 0
    if norm > _PADE13_THETA:
        squarings = int(math.ceil(math.log2(norm / _PADE13_THETA)))
        m = m / (2.0**squarings)
    b = _PADE13
    m2 = m @ m
    m4 = m2 @ m2
    m6 = m2 @ m4
    u = m @ (
        m6 @ (b[13] * m6 + b[11] * m4 + b[9] * m2)
        + b[7] * m6
        + b[5] * m4
        + b[3] * m2
        + b[1] * eye
    )
    v = (
        m6 @ (b[12] * m6 + b[10] * m4 + b[8] * m2)
        + b[6] * m6
        + b[4] * m4
        + b[2] * m2
        + b[0] * eye
    )
    f = np.linalg.solve(v - u, v + u)
    for _ in range(squarings):
        f = f @ f
    return f


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral data of a Hermitian matrix.

    ``eigenvalues`` is real and ascending. Column ``k`` of
    ``eigenvectors`` is the eigenvector for ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def vector(self, k: int) -> np.ndarray:
        return self.eigenvectors[:, k]


def _phase_fix(v: np.ndarray) -> np.ndarray:
    # Rotate the largest-magnitude component to the positive real axis;
    # ties resolve to the smallest index via argmax.
    k = int(np.argmax(np.abs(v)))
    pivot = v[k]
    mag = abs(pivot)
    if mag == 0.0:
        return v
    return v * (pivot.conjugate() / mag)


def herm_eig(a: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> EigenDecomposition:
    """Eigendecomposition with a deterministic choice of eigenvectors.

    Within each near-degenerate eigenvalue cluster the vectors are
    re-orthonormalized in index order, then every vector gets a canonical
    phase. Repeated calls on equal inputs give identical output.
    """
    arr = require_hermitian(a, tol=tol.tau_zero)
    herm = (arr + dagger(arr)) / 2.0
    eigenvalues, vectors = np.linalg.eigh(herm)
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    vectors = np.asarray(vectors, dtype=complex).copy()

    spread = float(eigenvalues[-1] - eigenvalues[0]) if eigenvalues.size > 1 else 0.0
    gap_limit = tol.tau_eig * max(1.0, spread)
    start = 0
    for stop in range(1, eigenvalues.size + 1):
        if stop < eigenvalues.size and eigenvalues[stop] - eigenvalues[stop - 1] <= gap_limit:
            continue
        if stop - start > 1:
            # modified Gram-Schmidt in index order inside the cluster
            for k in range(start, stop):
                for p in range(start, k):
                    vectors[:, k] -= np.vdot(vectors[:, p], vectors[:, k]) * vectors[:, p]
                nrm = np.linalg.norm(vectors[:, k])
                if nrm > 0.0:
                    vectors[:, k] /= nrm
        start = stop
    for k in range(eigenvalues.size):
        vectors[:, k] = _phase_fix(vectors[:, k])
    vectors.setflags(write=False)
    eigenvalues.setflags(write=False)
    return EigenDecomposition(eigenvalues=eigenvalues, eigenvectors=vectors)


def random_unitary(dim: int, seed: int) -> np.ndarray:
    """Haar-style unitary from a seeded complex Gaussian matrix.

    QR with the R diagonal rotated positive gives the canonical factor,
    so the result depends only on ``(dim, seed)``.
    """
    if dim < 1:
        raise DimensionMismatchError(f"dim must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_hermitian(dim: int, seed: int) -> np.ndarray:
    """Seeded Hermitian matrix ``(G + G^dag) / 2`` with Gaussian G."""
    if dim < 1:
        raise DimensionMismatchError(f"dim must be >= 1, got {dim}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + dagger(g)) / 2.0
