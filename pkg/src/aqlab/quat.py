"""The four-dimensional algebra of generalized quaternions.

Elements are ``q = a + i b + j c + k d`` with ``i**2 = j**2 = alpha``,
``k = i j``, ``k**2 = -1``.  For ``alpha = -1`` this is the classical
quaternion algebra, for ``alpha = +1`` the split quaternions
(antiquaternions).  The product is realized through the doubling
construction over the scalar ring of :mod:`aqlab.scalars`: writing
``q = z1 + j z2`` with ``z1 = a + ib`` and ``z2 = c - id``,

    (z1, z2)(w1, w2) = (z1 w1 + alpha w2 conj(z2), conj(z1) w2 + w1 z2).

The same splitting yields the defining 2x2 representation ``spin_matrix``
acting on pairs of scalars, with determinant equal to the quaternion norm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import scalars as sk
from .errors import IsotropicScalar, NotPurelyImaginary, SignatureMismatch
from .scalars import ScalarKA

#: Relative tolerance for the purely-imaginary test: |a| < tol * (1 + max|coeff|).
PURE_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class QuaternionA:
    """Quaternion ``a + i b + j c + k d`` with signature ``alpha`` in {-1, +1}."""

    a: float
    b: float
    c: float
    d: float
    alpha: int

    def __post_init__(self):
        if self.alpha not in (-1, 1):
            raise ValueError(f"alpha must be -1 or +1, got {self.alpha!r}")
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def __add__(self, other):
        _check(self, other)
        return QuaternionA(self.a + other.a, self.b + other.b,
                           self.c + other.c, self.d + other.d, self.alpha)

    def __sub__(self, other):
        _check(self, other)
        return QuaternionA(self.a - other.a, self.b - other.b,
                           self.c - other.c, self.d - other.d, self.alpha)

    def __neg__(self):
        return QuaternionA(-self.a, -self.b, -self.c, -self.d, self.alpha)

    def __mul__(self, other):
        return qmul(self, other)

    def coeffs(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])

    def __repr__(self):
        return (f"Q({self.a:g} + {self.b:g}i + {self.c:g}j + {self.d:g}k"
                f" | a={self.alpha:+d})")


def _check(p: QuaternionA, q: QuaternionA):
    if p.alpha != q.alpha:
        raise SignatureMismatch(
            f"cannot combine alpha={p.alpha} with alpha={q.alpha}"
        )


def from_coeffs(v, alpha: int) -> QuaternionA:
    a, b, c, d = (float(t) for t in v)
    return QuaternionA(a, b, c, d, alpha)


def one(alpha: int) -> QuaternionA:
    return QuaternionA(1, 0, 0, 0, alpha)


def i_(alpha: int) -> QuaternionA:
    return QuaternionA(0, 1, 0, 0, alpha)


def j_(alpha: int) -> QuaternionA:
    return QuaternionA(0, 0, 1, 0, alpha)


def k_(alpha: int) -> QuaternionA:
    return QuaternionA(0, 0, 0, 1, alpha)


def scale(t: float, q: QuaternionA) -> QuaternionA:
    return QuaternionA(t * q.a, t * q.b, t * q.c, t * q.d, q.alpha)


def to_pair(q: QuaternionA) -> tuple[ScalarKA, ScalarKA]:
    """Split q = z1 + j z2 into (z1, z2) = (a + ib, c - id)."""
    return (ScalarKA(q.a, q.b, q.alpha), ScalarKA(q.c, -q.d, q.alpha))


def from_pair(z1: ScalarKA, z2: ScalarKA) -> QuaternionA:
    if z1.alpha != z2.alpha:
        raise SignatureMismatch("pair components carry different signatures")
    return QuaternionA(z1.re, z1.im, z2.re, -z2.im, z1.alpha)


def qmul(p: QuaternionA, q: QuaternionA) -> QuaternionA:
    """Associative product of the doubling construction."""
    _check(p, q)
    z1, z2 = to_pair(p)
    w1, w2 = to_pair(q)
    alpha = float(p.alpha)
    # (z1, z2)(w1, w2) = (z1 w1 + alpha w2 conj(z2), conj(z1) w2 + w1 z2)
    u1 = sk.add(sk.mul(z1, w1), sk.scale(alpha, sk.mul(w2, sk.conj(z2))))
    u2 = sk.add(sk.mul(sk.conj(z1), w2), sk.mul(w1, z2))
    return from_pair(u1, u2)


def qconj(q: QuaternionA) -> QuaternionA:
    """a + ib + jc + kd -> a - ib - jc - kd."""
    return QuaternionA(q.a, -q.b, -q.c, -q.d, q.alpha)


def qnormsq(q: QuaternionA) -> float:
    """q * conj(q) = a^2 - alpha b^2 - alpha c^2 + d^2 (real)."""
    return q.a * q.a - q.alpha * (q.b * q.b + q.c * q.c) + q.d * q.d


def qinv(q: QuaternionA, tol: float = sk.ISOTROPY_TOL) -> QuaternionA:
    n = qnormsq(q)
    if abs(n) <= tol:
        raise IsotropicScalar(f"quaternion norm {n:.3e} below tolerance")
    return scale(1.0 / n, qconj(q))


def scalar_product(p: QuaternionA, q: QuaternionA) -> float:
    """Polarization of the norm: <p, q> = (conj(p) q + conj(q) p) / 2."""
    _check(p, q)
    return p.a * q.a - p.alpha * (p.b * q.b + p.c * q.c) + p.d * q.d


def is_purely_imaginary(q: QuaternionA, tol: float = PURE_IMAG_TOL) -> bool:
    sup = max(abs(q.a), abs(q.b), abs(q.c), abs(q.d))
    return abs(q.a) <= tol * (1.0 + sup)


def _require_imaginary(q: QuaternionA):
    if not is_purely_imaginary(q):
        raise NotPurelyImaginary(f"real part {q.a:.3e} is not negligible")


def iq_commutator(p: QuaternionA, q: QuaternionA) -> QuaternionA:
    """[p, q] = pq - qp on purely imaginary quaternions."""
    _require_imaginary(p)
    _require_imaginary(q)
    return qmul(p, q) - qmul(q, p)


# ---------------------------------------------------------------------------
# 2x2 spin representation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpinMatrix:
    """2x2 matrix over the scalar ring, the defining representation space."""

    m: tuple  # ((ScalarKA, ScalarKA), (ScalarKA, ScalarKA))

    @property
    def alpha(self) -> int:
        return self.m[0][0].alpha

    def __getitem__(self, idx):
        r, c = idx
        return self.m[r][c]

    def __matmul__(self, other: "SpinMatrix") -> "SpinMatrix":
        rows = []
        for r in range(2):
            row = []
            for c in range(2):
                row.append(sk.add(sk.mul(self.m[r][0], other.m[0][c]),
                                  sk.mul(self.m[r][1], other.m[1][c])))
            rows.append(tuple(row))
        return SpinMatrix((rows[0], rows[1]))

    def __add__(self, other: "SpinMatrix") -> "SpinMatrix":
        return SpinMatrix(tuple(
            tuple(sk.add(self.m[r][c], other.m[r][c]) for c in range(2))
            for r in range(2)))

    def __sub__(self, other: "SpinMatrix") -> "SpinMatrix":
        return SpinMatrix(tuple(
            tuple(self.m[r][c] - other.m[r][c] for c in range(2))
            for r in range(2)))

    def det(self) -> ScalarKA:
        return sk.mul(self.m[0][0], self.m[1][1]) - sk.mul(self.m[0][1], self.m[1][0])

    def trace(self) -> ScalarKA:
        return sk.add(self.m[0][0], self.m[1][1])

    def real_trace(self) -> float:
        """Sum of real parts of the diagonal entries."""
        return self.m[0][0].re + self.m[1][1].re

    def inv(self, tol: float = sk.ISOTROPY_TOL) -> "SpinMatrix":
        dinv = sk.inv(self.det(), tol=tol)
        return SpinMatrix((
            (sk.mul(dinv, self.m[1][1]), sk.mul(dinv, sk.neg(self.m[0][1]))),
            (sk.mul(dinv, sk.neg(self.m[1][0])), sk.mul(dinv, self.m[0][0])),
        ))

    def max_abs(self) -> float:
        return max(sk.abs2norm(self.m[r][c]) for r in range(2) for c in range(2))


def smat(entries, alpha: int) -> SpinMatrix:
    """Build a SpinMatrix from a 2x2 nest of (re, im) pairs or ScalarKA."""
    rows = []
    for r in range(2):
        row = []
        for c in range(2):
            e = entries[r][c]
            if isinstance(e, ScalarKA):
                row.append(e)
            else:
                row.append(ScalarKA(e[0], e[1], alpha))
        rows.append(tuple(row))
    return SpinMatrix((rows[0], rows[1]))


def smat_close(x: SpinMatrix, y: SpinMatrix, tol: float = 1e-9) -> bool:
    return all(sk.close(x.m[r][c], y.m[r][c], tol=tol)
               for r in range(2) for c in range(2))


def spin_matrix(q: QuaternionA) -> SpinMatrix:
    """Matrix of left multiplication by q on pairs of scalars.

    For q = z1 + j z2 the matrix is [[z1, alpha conj(z2)], [z2, conj(z1)]];
    it is an algebra homomorphism and det = qnormsq(q).
    """
    z1, z2 = to_pair(q)
    return SpinMatrix((
        (z1, sk.scale(float(q.alpha), sk.conj(z2))),
        (z2, sk.conj(z1)),
    ))


def pauli_matrices(alpha: int) -> tuple[SpinMatrix, SpinMatrix, SpinMatrix]:
    """Images of the basis i, j, k: the generalized Pauli triple.

    sigma1 = [[i, 0], [0, -i]], sigma2 = [[0, alpha], [1, 0]],
    sigma3 = [[0, alpha*i], [-i, 0]].
    """
    return (spin_matrix(i_(alpha)), spin_matrix(j_(alpha)), spin_matrix(k_(alpha)))


def ad_matrix(q: QuaternionA) -> np.ndarray:
    """Commutator action of a purely imaginary q on the imaginary subspace.

    In the basis (i, j, k), with q = i a + j b + k c:

        [[0, 2 alpha c, -2 alpha b],
         [-2 alpha c, 0, 2 alpha a],
         [-2 b, 2 a, 0]]
    """
    _require_imaginary(q)
    a, b, c = q.b, q.c, q.d
    al = float(q.alpha)
    return np.array([
        [0.0, 2 * al * c, -2 * al * b],
        [-2 * al * c, 0.0, 2 * al * a],
        [-2 * b, 2 * a, 0.0],
    ])
