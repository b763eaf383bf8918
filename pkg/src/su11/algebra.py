"""2x2 complex linear algebra on sl(2, C).

Matrices are plain ``numpy`` arrays of shape ``(2, 2)`` and dtype ``complex128``.
The named constants ``X``, ``Y``, ``H`` span su(1,1); ``J`` is the signature
matrix defining the dagger involution ``M -> J conj(M).T J``.
"""

import cmath
import math

import numpy as np

__all__ = [
    "I2", "J", "X", "Y", "H",
    "mat2", "matmul", "dagger", "det", "trace", "eig2", "pairing", "commutator",
]


def mat2(m11, m12, m21, m22) -> np.ndarray:
    """Build a 2x2 complex matrix, rejecting NaN and Inf entries."""
    M = np.array([[m11, m12], [m21, m22]], dtype=np.complex128)
    if not np.all(np.isfinite(M)):
        raise ValueError(f"non-finite matrix entries: {M.tolist()}")
    return M


def _frozen(M):
    M.setflags(write=False)
    return M


I2 = _frozen(mat2(1, 0, 0, 1))
J = _frozen(mat2(1, 0, 0, -1))
X = _frozen(mat2(0, 1, 1, 0))
Y = _frozen(mat2(0, 1j, -1j, 0))
H = _frozen(mat2(1j, 0, 0, -1j))


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return A @ B - B @ A


def dagger(M: np.ndarray) -> np.ndarray:
    """Return ``J conj(M).T J``.

    Written entrywise: conjugate, transpose, and negate the off-diagonal
    entries, so ``dagger(dagger(M)) == M`` holds bit for bit.
    """
    M = np.asarray(M)
    return np.array(
        [[M[0, 0].conjugate(), -M[1, 0].conjugate()],
         [-M[0, 1].conjugate(), M[1, 1].conjugate()]],
        dtype=np.complex128,
    )


def det(M: np.ndarray) -> complex:
    return complex(M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0])


def trace(M: np.ndarray) -> complex:
    return complex(M[0, 0] + M[1, 1])


def eig2(M: np.ndarray) -> tuple[complex, complex]:
    """Eigenvalues of a 2x2 matrix from its characteristic polynomial.

    The roots of ``mu**2 - tr(M) mu + det(M)`` are returned ordered by
    descending real part, ties broken by descending imaginary part. The
    smaller-magnitude root is recovered from the product ``det(M)`` to avoid
    cancellation.
    """
    tr = trace(M)
    dt = det(M)
    half = tr / 2
    disc = cmath.sqrt(half * half - dt)
    # pick the sign that avoids cancellation, then use Vieta for the other root
    big = half + disc if (half.conjugate() * disc).real >= 0 else half - disc
    if big == 0:
        small = 0j
    else:
        small = dt / big
    roots = sorted((complex(big), complex(small)), key=lambda z: (z.real, z.imag), reverse=True)
    return roots[0], roots[1]


def pairing(A: np.ndarray, B: np.ndarray, factor: float = 1) -> float:
    """``factor * Im tr(AB)``.

    Factor 1 pairs su(1,1) with its dual realised as pseudo-Hermitian matrices;
    factor 2 pairs su(1,1) with the upper-triangular algebra a + n.
    """
    if factor not in (1, 2):
        raise ValueError(f"pairing factor must be 1 or 2, got {factor}")
    return factor * trace(A @ B).imag


def is_finite_scalar(z) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)
