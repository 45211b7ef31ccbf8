"""Canonical connections of parallelizable twistor-pair structures.

A model is a bracket algebra on R^m together with two anticommuting
operators I, J squaring to alpha id.  Such a pair admits exactly one
connection that makes I and J parallel and whose torsion satisfies
S(IX, Y) = S(X, IY); its global expression is the eight-term average

    nabla_X Y = (1/4) { [X,Y] - a [IX,IY] + a J[X,JY] - J[IX,KY]
                        - a I[IX,Y] + a I[X,IY] - K[X,KY] + K[IX,JY] },

with a = alpha and K = I J.  The same connection can be evaluated through
the eigenspace projectors of I over the extension by a square root of
alpha; both code paths are implemented and the test suite asserts they
agree, which also certifies uniqueness.

The torsion S equips the tangent space with an anticommutative product
X * Y = S(X, Y) (the adjoint algebra); the integrability predicates below
are all phrased through it.
"""

from __future__ import annotations

import warnings
from functools import cached_property

import numpy as np

from .errors import (
    InvalidMu,
    InvalidModel,
    NonLieBracket,
    NotEigenvalue,
    NotTwistor,
    WrongSignature,
)

STRUCT_TOL = 1e-9
PRED_TOL = 1e-10


class PiAQModel:
    """Bracket algebra with an anticommuting twistor pair.

    Args:
        dim: even dimension m of the underlying space.
        c: structure tensor, [e_i, e_j] = c[i, j, k] e_k (antisymmetric in
           i, j; the Jacobi identity is not required, but curvature-based
           predicates warn when it fails).
        I, J: m x m matrices with I^2 = J^2 = alpha id and IJ + JI = 0.
        alpha: signature, -1 or +1.
    """

    def __init__(self, dim: int, c, I, J, alpha: int, name: str = ""):
        if alpha not in (-1, 1):
            raise InvalidModel(f"alpha must be -1 or +1, got {alpha!r}")
        self.dim = int(dim)
        self.alpha = int(alpha)
        self.name = name
        self.c = np.asarray(c, dtype=float)
        self.I = np.asarray(I, dtype=float)
        self.J = np.asarray(J, dtype=float)
        m = self.dim
        if self.c.shape != (m, m, m) or self.I.shape != (m, m) or self.J.shape != (m, m):
            raise InvalidModel("shape mismatch between dim, c, I, J")
        cscale = max(1.0, np.abs(self.c).max())
        if np.abs(self.c + self.c.transpose(1, 0, 2)).max() > STRUCT_TOL * cscale:
            raise InvalidModel("bracket is not antisymmetric")
        ident = np.eye(m)
        oscale = max(1.0, np.abs(self.I).max(), np.abs(self.J).max()) ** 2
        if (np.abs(self.I @ self.I - alpha * ident).max() > STRUCT_TOL * oscale
                or np.abs(self.J @ self.J - alpha * ident).max() > STRUCT_TOL * oscale
                or np.abs(self.I @ self.J + self.J @ self.I).max() > STRUCT_TOL * oscale):
            raise InvalidModel("I, J fail the twistor-pair relations")
        self.K = self.I @ self.J

    def bracket(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x, float),
                         np.asarray(y, float), self.c)

    @cached_property
    def jacobi_defect(self) -> float:
        t = np.einsum("ijm,mkl->ijkl", self.c, self.c)
        jac = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
        return float(np.abs(jac).max())

    @property
    def is_lie(self) -> bool:
        return self.jacobi_defect <= 1e-9 * max(1.0, np.abs(self.c).max()) ** 2

    # -- tensor helpers -----------------------------------------------------

    def _tb(self, P, Q) -> np.ndarray:
        """Tensor of [P e_a, Q e_b] for matrices P, Q (identity = None)."""
        t = self.c
        if P is not None:
            t = np.einsum("ia,ijk->ajk", P, t)
        if Q is not None:
            t = np.einsum("jb,ajk->abk", Q, t)
        return t

    @staticmethod
    def _post(F, t) -> np.ndarray:
        """Apply F to the value slot of a (a, b, k) tensor."""
        return np.einsum("abk,lk->abl", t, F)

    @cached_property
    def nabla(self) -> np.ndarray:
        """Connection tensor N[a, b, l] = (nabla_{e_a} e_b)^l, eight-term form."""
        a = float(self.alpha)
        I, J, K = self.I, self.J, self.K
        t = self._tb
        total = (
            t(None, None)
            - a * t(I, I)
            + a * self._post(J, t(None, J))
            - self._post(J, t(I, K))
            - a * self._post(I, t(I, None))
            + a * self._post(I, t(None, I))
            - self._post(K, t(None, K))
            + self._post(K, t(I, J))
        )
        return 0.25 * total

    @cached_property
    def torsion_tensor(self) -> np.ndarray:
        """S[a, b, l] = nabla_a b - nabla_b a - [a, b]."""
        n = self.nabla
        return n - n.transpose(1, 0, 2) - self.c

    @cached_property
    def curvature_tensor(self) -> np.ndarray:
        """R[a, b, c, l] of R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z
        - nabla_{[X, Y]} Z."""
        n = self.nabla
        dd = np.einsum("ajl,bcj->abcl", n, n)
        return dd - dd.transpose(1, 0, 2, 3) - np.einsum("abk,kcl->abcl", self.c, n)


def canonical_connection(M: PiAQModel, X, Y) -> np.ndarray:
    """nabla_X Y by the eight-term expansion."""
    return np.einsum("a,b,abl->l", np.asarray(X, float), np.asarray(Y, float),
                     M.nabla)


def canonical_connection_split(M: PiAQModel, X, Y) -> np.ndarray:
    """nabla_X Y through the eigenspace projectors of I.

    Works over the extension of scalars by a root of alpha, represented as
    pairs of real vectors; the result of the projector formula

        V{[HX, VY] + J^3 [VX, J VY]} + H{[VX, HY] + J^3 [HX, J HY]}

    is real again and must coincide with the eight-term expansion.
    """
    al = float(M.alpha)
    I3 = al * M.I
    J3 = al * M.J

    def i_mul(p):
        u, v = p
        return (al * v, u)

    def mat(F, p):
        return (F @ p[0], F @ p[1])

    def brk(p, q):
        u1, v1 = p
        u2, v2 = q
        return (M.bracket(u1, u2) + al * M.bracket(v1, v2),
                M.bracket(u1, v2) + M.bracket(v1, u2))

    def add(p, q):
        return (p[0] + q[0], p[1] + q[1])

    def proj(p, sign):
        w = i_mul(mat(I3, p))
        return (0.5 * (p[0] + sign * w[0]), 0.5 * (p[1] + sign * w[1]))

    z = np.zeros(M.dim)
    Xc = (np.asarray(X, float), z)
    Yc = (np.asarray(Y, float), z)
    vx, hx = proj(Xc, +1), proj(Xc, -1)
    vy, hy = proj(Yc, +1), proj(Yc, -1)
    upper = add(brk(hx, vy), mat(J3, brk(vx, mat(M.J, vy))))
    lower = add(brk(vx, hy), mat(J3, brk(hx, mat(M.J, hy))))
    result = add(proj(upper, +1), proj(lower, -1))
    return result[0]


def torsion(M: PiAQModel, X, Y) -> np.ndarray:
    """Torsion S(X, Y), which is also the adjoint-algebra product X * Y."""
    return np.einsum("a,b,abl->l", np.asarray(X, float), np.asarray(Y, float),
                     M.torsion_tensor)


adjoint_product = torsion


def curvature(M: PiAQModel, X, Y, Z) -> np.ndarray:
    """R(X, Y)Z of the canonical connection; warns on non-Lie brackets."""
    if not M.is_lie:
        warnings.warn(
            f"bracket fails the Jacobi identity by {M.jacobi_defect:.3e}; "
            "curvature has no integrability meaning",
            NonLieBracket,
            stacklevel=2,
        )
    return np.einsum("a,b,c,abcl->l", np.asarray(X, float),
                     np.asarray(Y, float), np.asarray(Z, float),
                     M.curvature_tensor)


def nijenhuis(M: PiAQModel, F, X, Y, tol: float = STRUCT_TOL) -> np.ndarray:
    """Nijenhuis tensor s[X,Y] + [FX,FY] - F[FX,Y] - F[X,FY], s = scalar of F^2."""
    F = np.asarray(F, dtype=float)
    s = _square_scalar(F, tol)
    FX, FY = F @ np.asarray(X, float), F @ np.asarray(Y, float)
    return (s * M.bracket(X, Y) + M.bracket(FX, FY)
            - F @ M.bracket(FX, Y) - F @ M.bracket(X, FY))


def _square_scalar(F: np.ndarray, tol: float) -> float:
    m = F.shape[0]
    sq = F @ F
    s = float(np.trace(sq) / m)
    s = 1.0 if s > 0 else -1.0
    if np.abs(sq - s * np.eye(m)).max() > tol * max(1.0, np.abs(F).max() ** 2):
        raise NotTwistor("operator does not square to a +/- identity multiple")
    return s


def _scale(M: PiAQModel) -> float:
    return (1.0 + np.abs(M.c).max()) ** 2


def _semiholonomic_defect(M: PiAQModel) -> np.ndarray:
    """Pointwise failure of I(X*Y) = I(X)*Y = X*I(Y) on basis pairs."""
    S = M.torsion_tensor
    lhs = M._post(M.I, S)
    mid = np.einsum("ia,ijk->ajk", M.I, S)
    rhs = np.einsum("jb,ajk->abk", M.I, S)
    return np.maximum(np.abs(lhs - mid), np.abs(lhs - rhs))


def _three_web_defect(M: PiAQModel) -> np.ndarray:
    """Failure of the second involution acting as an automorphism of *."""
    S = M.torsion_tensor
    lhs = M._post(M.J, S)
    rhs = np.einsum("ia,jb,ijk->abk", M.J, M.J, S)
    return np.abs(lhs - rhs)


def is_integrable(M: PiAQModel, tol: float = PRED_TOL) -> bool:
    """True when both torsion and curvature of the canonical connection vanish."""
    s = tol * _scale(M)
    return bool(np.abs(M.torsion_tensor).max() <= s
                and np.abs(M.curvature_tensor).max() <= s * _scale(M))


def is_semiholonomic(M: PiAQModel, tol: float = PRED_TOL) -> bool:
    """I(X*Y) = I(X)*Y = X*I(Y) over a basis sweep; equivalent to N_I = 0."""
    return bool(_semiholonomic_defect(M).max() <= tol * _scale(M))


_EIGEN_NAMES = {"1": 1.0, "+1": 1.0, "-1": -1.0,
                "i": 1j, "+i": 1j, "-i": -1j}


def _parse_eigenvalue(lam) -> complex:
    if isinstance(lam, str):
        key = lam.strip().lower()
        if key not in _EIGEN_NAMES:
            raise NotEigenvalue(f"unrecognized eigenvalue literal {lam!r}")
        return complex(_EIGEN_NAMES[key])
    return complex(lam)


def fundamental_involutive(M: PiAQModel, F_name: str, lam,
                           tol: float = PRED_TOL) -> bool:
    """Involutivity test for the eigendistribution of I, J or K.

    For the principal operator I the distribution is involutive exactly when
    it is an ideal of the adjoint algebra: the complementary projection of
    S(pi+ X, Y) must vanish for all Y.  For J or K (non-principal, on a
    semiholonomic model) the criterion is the identity FX * FY = lam F(X * Y);
    with an imaginary eigenvalue the real and imaginary parts are tested
    separately, which is what evaluation over the scalar extension amounts to.
    """
    return bool(_involutive_defect(M, F_name, lam).max() <= tol * _scale(M))


def _involutive_defect(M: PiAQModel, F_name: str, lam) -> np.ndarray:
    F_name = F_name.upper()
    if F_name not in ("I", "J", "K"):
        raise NotEigenvalue("operator must be one of I, J, K")
    F = {"I": M.I, "J": M.J, "K": M.K}[F_name]
    lamc = _parse_eigenvalue(lam)
    fsq = -1.0 if F_name == "K" else float(M.alpha)
    if abs(lamc * lamc - fsq) > 1e-12:
        raise NotEigenvalue(
            f"{lam!r} is not an eigenvalue of {F_name} (square must be {fsq:g})"
        )
    S = M.torsion_tensor
    if F_name == "I":
        ident = np.eye(M.dim, dtype=complex)
        f3 = fsq * F  # F^3 = (F^2 scalar) F
        pi_plus = 0.5 * (ident + lamc * f3)
        pi_minus = ident - pi_plus
        t = np.einsum("ia,ijk->ajk", pi_plus, S.astype(complex))
        t = np.einsum("abk,lk->abl", t, pi_minus)
        return np.abs(t)
    lhs = np.einsum("ia,jb,ijk->abk", F, F, S).astype(complex)
    rhs = lamc * M._post(F, S)
    return np.abs(lhs - rhs)


def _isoclinic_defect(M: PiAQModel, mu: float) -> np.ndarray:
    ident = np.eye(M.dim, dtype=complex)
    if M.alpha == 1:
        pi_plus = 0.5 * (ident + M.I)
    else:
        pi_plus = 0.5 * (ident - 1j * M.I)  # projector for eigenvalue +i
    S = M.torsion_tensor.astype(complex)
    sp = np.einsum("ia,jb,ijk->abk", pi_plus, pi_plus, S)
    lhs = np.einsum("abk,lk->abl", sp, M.J.astype(complex))
    jp = (M.J.astype(complex)) @ pi_plus
    rhs = mu * np.einsum("ia,jb,ijk->abk", jp, jp, S)
    return np.abs(lhs - rhs)


def is_isoclinic_geodesic_const_mu(M: PiAQModel, mu: float,
                                   tol: float = PRED_TOL) -> bool:
    """Constant-slope isoclinic-geodesic test J(X*Y) = mu (JX * JY).

    Checked for X, Y spanning a principal eigendistribution of I.  For
    constant slope the obstruction one-form of the non-constant theory
    vanishes identically, so this identity alone decides the property.
    """
    if mu is None or abs(mu - 1.0) <= 1e-12 or abs(mu + 1.0) <= 1e-12:
        raise InvalidMu("slope must differ from +1 and -1")
    if not is_semiholonomic(M, tol=tol):
        raise InvalidModel("model is not semiholonomic")
    return bool(_isoclinic_defect(M, mu).max() <= tol * _scale(M))


def is_three_web(M: PiAQModel, tol: float = PRED_TOL) -> bool:
    """Split-signature web criterion.

    The adjoint product must be linear over the first involution
    (I(X*Y) = IX*Y = X*IY) while the second acts as an involutory
    automorphism (J(X*Y) = JX*JY); the three pairwise complementary
    involutive distributions are then the two eigenspaces of I and the
    diagonal one of J.
    """
    if M.alpha != 1:
        raise WrongSignature("webs live in the split signature alpha = +1")
    if not is_semiholonomic(M, tol=tol):
        return False
    return bool(_three_web_defect(M).max() <= tol * _scale(M))


def abelian_model(dim: int, I, J, alpha: int, name: str = "abelian") -> PiAQModel:
    """Zero-bracket model; always integrable."""
    return PiAQModel(dim, np.zeros((dim, dim, dim)), I, J, alpha, name=name)


# ---------------------------------------------------------------------------
# Predicate reports with witnesses
# ---------------------------------------------------------------------------

PREDICATES = ("integrable", "semiholonomic", "three_web", "involutive",
              "isoclinic_geodesic")


def _witness(defect: np.ndarray):
    """Basis index tuple of the largest defect entry (value slot dropped)."""
    idx = np.unravel_index(int(np.argmax(defect)), defect.shape)
    return [int(t) for t in idx[:-1]]


def predicate_report(M: PiAQModel, name: str, lam=None, f_name=None,
                     mu=None, tol: float = PRED_TOL) -> dict:
    """Verdict plus a failing basis pair for the CLI surface.

    Returns a dict with ``verdict``, ``residual`` (sup norm of the defect
    tensor) and, when the verdict is false, ``witness`` holding 0-based
    basis indices of the worst-failing pair (triple for curvature).
    """
    scale = tol * _scale(M)
    if name == "integrable":
        ds, dr = np.abs(M.torsion_tensor), np.abs(M.curvature_tensor)
        verdict = is_integrable(M, tol=tol)
        defect = ds if ds.max() >= dr.max() else dr
    elif name == "semiholonomic":
        defect = _semiholonomic_defect(M)
        verdict = bool(defect.max() <= scale)
    elif name == "three_web":
        if M.alpha != 1:
            raise WrongSignature("webs live in the split signature alpha = +1")
        defect = np.maximum(_semiholonomic_defect(M), _three_web_defect(M))
        verdict = bool(defect.max() <= scale)
    elif name == "involutive":
        if f_name is None or lam is None:
            raise NotEigenvalue(
                "involutivity needs --operator and --eigenvalue")
        defect = _involutive_defect(M, f_name, lam)
        verdict = bool(defect.max() <= scale)
    elif name == "isoclinic_geodesic":
        verdict = is_isoclinic_geodesic_const_mu(M, mu, tol=tol)
        defect = _isoclinic_defect(M, mu)
    else:
        raise InvalidModel(f"unknown predicate {name!r}")
    out = {"verdict": verdict, "residual": float(np.abs(defect).max())}
    if not verdict:
        out["witness"] = _witness(np.abs(defect))
    return out
