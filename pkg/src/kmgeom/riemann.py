"""Levi-Civita connections and curvature for left-invariant (pseudo-)metrics.

The Koszul formula loses its derivative terms on left-invariant data:

    2 g(nabla_A B, C) = g([A,B], C) - g([B,C], A) + g([C,A], B)

so the connection is a ``dim x dim x dim`` array of constants,
``gamma[i, j, k]`` with ``nabla_{e_i} e_j = sum_k gamma[i, j, k] e_k``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMetric, DimensionMismatch
from .lie_model import BilinearForm, LieModel, Vector
from .report import DEFAULT_TOL, ResidualReport


@dataclass(frozen=True)
class MetricTensor:
    """A symmetric nondegenerate bilinear form with its signature."""

    mat: np.ndarray
    signature: tuple[int, int, int]  # (positive, negative, zero) eigenvalue counts

    @classmethod
    def from_matrix(cls, mat: np.ndarray, tol: float = DEFAULT_TOL) -> "MetricTensor":
        mat = np.asarray(mat, dtype=float)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatch(f"metric must be square, got {mat.shape}")
        asym = np.max(np.abs(mat - mat.T))
        if asym > tol:
            raise DegenerateMetric(f"metric not symmetric (residual {asym:.3e})")
        if abs(np.linalg.det(mat)) <= tol:
            raise DegenerateMetric("metric determinant below tolerance")
        return cls(mat=mat, signature=signature(mat, tol))

    def is_riemannian(self) -> bool:
        p, q, z = self.signature
        return q == 0 and z == 0

    def is_paracontact_signature(self) -> bool:
        # odd dimension 2n+1, signature (n+1, n)
        p, q, z = self.signature
        return z == 0 and p == q + 1


def signature(g: BilinearForm, tol: float = DEFAULT_TOL) -> tuple[int, int, int]:
    """(p, q, z) counts of positive / negative / zero eigenvalues of a symmetric form."""
    eig = np.linalg.eigvalsh(0.5 * (g + np.asarray(g).T))
    p = int(np.sum(eig > tol))
    q = int(np.sum(eig < -tol))
    z = len(eig) - p - q
    return (p, q, z)


@dataclass(frozen=True)
class AffineConnection:
    """Connection coefficients ``gamma[i, j, k]`` in the model basis."""

    gamma: np.ndarray

    @property
    def dim(self) -> int:
        return self.gamma.shape[0]

    def direction(self, i: int) -> np.ndarray:
        """Matrix of nabla_{e_i}: column j holds nabla_{e_i} e_j."""
        return self.gamma[i].T

    def nabla(self, u: Vector, v: Vector) -> Vector:
        """nabla_u v for constant-coefficient (left-invariant) fields."""
        return np.einsum("i,j,ijk->k", u, v, self.gamma)

    def nabla_endo(self, i: int, t: np.ndarray) -> np.ndarray:
        """(nabla_{e_i} T) for a (1,1)-tensor: the commutator [Gamma_i, T]."""
        gi = self.direction(i)
        return gi @ t - t @ gi

    def nabla_bilinear(self, i: int, b: np.ndarray) -> np.ndarray:
        """(nabla_{e_i} B)(e_j, e_k) = -B(nabla_i e_j, e_k) - B(e_j, nabla_i e_k)."""
        gi = self.direction(i)
        return -(gi.T @ b + b @ gi)

    def nabla_one_form(self, i: int, eta: np.ndarray) -> np.ndarray:
        return -self.direction(i).T @ eta

    def torsion(self, m: LieModel) -> np.ndarray:
        """T[i, j, :] = nabla_i e_j - nabla_j e_i - [e_i, e_j]."""
        return self.gamma - self.gamma.transpose(1, 0, 2) - m.c


def levi_civita(m: LieModel, g: BilinearForm, tol: float = DEFAULT_TOL) -> AffineConnection:
    """Levi-Civita connection of a left-invariant metric via the Koszul formula.

    Raises :class:`DegenerateMetric` when ``|det g|`` falls below ``tol``.
    The result is metric (``nabla g = 0``) and torsion-free by construction,
    which :func:`connection_identity_suite` re-checks numerically.
    """
    g = np.asarray(g, dtype=float)
    if g.shape != (m.dim, m.dim):
        raise DimensionMismatch(f"metric shape {g.shape} does not match dim {m.dim}")
    if abs(np.linalg.det(g)) <= tol:
        raise DegenerateMetric("metric determinant below tolerance")
    # b[i, j, k] = g([e_i, e_j], e_k); transpose(2,0,1)[i,j,k] = b[j,k,i]
    b = np.einsum("ijm,mk->ijk", m.c, g)
    rhs = 0.5 * (b - b.transpose(2, 0, 1) + b.transpose(1, 2, 0))
    # solve g . gamma[i, j, :] = rhs[i, j, :] for every (i, j)
    gamma = np.linalg.solve(g, rhs.reshape(-1, m.dim).T).T.reshape(m.dim, m.dim, m.dim)
    return AffineConnection(gamma=gamma)


def curvature(m: LieModel, conn: AffineConnection, u: Vector, v: Vector, w: Vector) -> Vector:
    """R_{u v} w = nabla_u nabla_v w - nabla_v nabla_u w - nabla_{[u,v]} w."""
    return (
        conn.nabla(u, conn.nabla(v, w))
        - conn.nabla(v, conn.nabla(u, w))
        - conn.nabla(m.bracket(u, v), w)
    )


def curvature_tensor(m: LieModel, conn: AffineConnection) -> np.ndarray:
    """Full array R[i, j, k, :] = R_{e_i e_j} e_k."""
    d = m.dim
    gam = conn.gamma
    # nabla_{e_i} nabla_{e_j} e_k = sum_m gamma[j,k,m] gamma[i,m,:]
    t = np.einsum("jkm,iml->ijkl", gam, gam)
    r = t - t.transpose(1, 0, 2, 3)
    r -= np.einsum("ijm,mkl->ijkl", m.c, gam)
    return r.reshape(d, d, d, d)


def connection_identity_suite(
    m: LieModel, conn: AffineConnection, g: BilinearForm, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """Metric compatibility, torsion-freeness and the first Bianchi identity."""
    report = ResidualReport(tol=tol)
    nabla_g = max(np.max(np.abs(conn.nabla_bilinear(i, g))) for i in range(m.dim))
    report.add("metric_compatibility", nabla_g)
    report.add("torsion_free", np.max(np.abs(conn.torsion(m))))
    r = curvature_tensor(m, conn)
    bianchi = r + r.transpose(1, 2, 0, 3) + r.transpose(2, 0, 1, 3)
    report.add("first_bianchi", np.max(np.abs(bianchi)))
    return report
