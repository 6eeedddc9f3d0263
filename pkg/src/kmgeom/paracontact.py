"""Paracontact metric structures, their nullity condition and canonical connection.

A paracontact metric structure (phi~, xi, eta, g~) satisfies

    phi~^2 = I - eta (x) xi,   d eta(X, Y) = g~(X, phi~ Y),
    g~(phi~ X, phi~ Y) = -g~(X, Y) + eta(X) eta(Y),

with g~ of signature (n+1, n) and the +-1 eigendistributions of phi~ on
ker(eta) each n-dimensional.  The operator h~ = (1/2) L_xi phi~ is
g~-symmetric but, the metric being indefinite, need not be diagonalizable;
its square is always proportional to phi~^2 on nullity spaces, and the sign
of that scalar classifies the spectrum (real pair / complex pair / nilpotent).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMetric, InternalInconsistency, NotNullity
from .lie_model import LieModel, d_one_form, lie_derivative_endo
from .report import DEFAULT_TOL, ResidualReport
from .riemann import AffineConnection, curvature, levi_civita, signature
from .contact import _fit_r_xi, _kernel_basis


@dataclass(frozen=True)
class ParacontactMetricStructure:
    """Tensor quadruple (phi_t, xi, eta, g_t) on a Lie model, with cached h_t."""

    model: LieModel
    phi_t: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    g_t: np.ndarray
    h_t: np.ndarray = None

    def __post_init__(self):
        for name in ("phi_t", "xi", "eta", "g_t"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.h_t is None:
            h = 0.5 * lie_derivative_endo(self.model, self.xi, self.phi_t)
            object.__setattr__(self, "h_t", h)

    @property
    def dim(self) -> int:
        return self.model.dim

    @property
    def n(self) -> int:
        return (self.dim - 1) // 2

    def d_eta(self) -> np.ndarray:
        return d_one_form(self.model, self.eta)

    def levi_civita(self, tol: float = DEFAULT_TOL) -> AffineConnection:
        return levi_civita(self.model, self.g_t, tol)

    def contact_projector(self) -> np.ndarray:
        return np.eye(self.dim) - np.outer(self.xi, self.eta)

    def contact_basis(self) -> np.ndarray:
        return _kernel_basis(self.eta)


@dataclass(frozen=True)
class ParaNullityReport:
    """Fitted paracontact nullity constants and the spectral type of h~."""

    kappa_t: float
    mu_t: float | None
    residual: float
    spectral_type: str  # real_pair | complex_pair | nilpotent | zero
    lambda_t: float | None  # sqrt(s) when real_pair
    s: float  # scalar with h~^2 = s phi~^2
    para1_residual: float  # |h~^2 - (1 + kappa_t) phi~^2|
    rz_residual: float

    @property
    def mu_indeterminate(self) -> bool:
        return self.mu_t is None

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa_t,
            "mu": self.mu_t,
            "mu_indeterminate": self.mu_indeterminate,
            "residual": self.residual,
            "spectral_type": self.spectral_type,
            "lambda": self.lambda_t,
            "h_square_scalar": self.s,
            "h_square_vs_kappa_residual": self.para1_residual,
            "curvature_reflection_residual": self.rz_residual,
        }


def validate_paracontact(s: ParacontactMetricStructure, tol: float = DEFAULT_TOL) -> ResidualReport:
    """Per-axiom residual report for a paracontact metric structure."""
    report = ResidualReport(tol=tol)
    dim, n = s.dim, s.n
    phi, xi, eta, g, h = s.phi_t, s.xi, s.eta, s.g_t, s.h_t
    ident = np.eye(dim)
    deta = s.d_eta()

    report.add("phi_square", np.max(np.abs(phi @ phi - ident + np.outer(xi, eta))))
    report.add("deta_compatibility", np.max(np.abs(deta - g @ phi)))
    report.add("metric_compatibility", np.max(np.abs(phi.T @ g @ phi + g - np.outer(eta, eta))))
    report.add("eta_xi", abs(eta @ xi - 1.0))
    report.add("phi_xi", np.max(np.abs(phi @ xi)))
    report.add("eta_circ_phi", np.max(np.abs(eta @ phi)))
    report.add("eta_is_g_xi", np.max(np.abs(g @ xi - eta)))

    k = _kernel_basis(eta)
    det_restricted = np.linalg.det(k @ deta @ k.T)
    report.add(
        "contact_nondegeneracy",
        0.0 if abs(det_restricted) > tol else 1.0,
        note=f"|det d_eta|_ker eta| = {abs(det_restricted):.3e}",
    )
    p, q, z = signature(g, tol)
    report.add(
        "paracontact_signature",
        0.0 if (p == n + 1 and q == n and z == 0) else 1.0,
        note=f"signature ({p},{q},{z}), expected ({n + 1},{n},0)",
    )
    # +-1 eigendistributions of phi~ restricted to ker(eta) must have rank n each
    for sign, name in ((1.0, "plus_one_eigenrank"), (-1.0, "minus_one_eigenrank")):
        mat = (phi - sign * ident) @ k.T  # columns: (phi -+ I) applied to a ker(eta) basis
        rank = int(np.linalg.matrix_rank(mat, tol=max(tol, 1e-12)))
        report.add(name, 0.0 if rank == n else float(abs(rank - n)),
                   note=f"rank {rank}, expected {n}")

    report.add("h_xi", np.max(np.abs(h @ xi)))
    report.add("eta_circ_h", np.max(np.abs(eta @ h)))
    report.add("h_phi_anticommute", np.max(np.abs(h @ phi + phi @ h)))
    report.add("trace_h", abs(np.trace(h)))
    report.add("h_g_symmetric", np.max(np.abs(h.T @ g - g @ h)))
    try:
        conn = s.levi_civita(tol)
        nabla_xi = np.column_stack([conn.nabla(np.eye(dim)[i], xi) for i in range(dim)])
        report.add("nabla_xi_identity", np.max(np.abs(nabla_xi - (-phi + phi @ h))))
    except (DegenerateMetric, np.linalg.LinAlgError) as exc:  # record, keep reporting
        report.add("nabla_xi_identity", np.inf, note=str(exc))
    return report


def h_tilde(s: ParacontactMetricStructure) -> np.ndarray:
    """h~ = (1/2) L_xi phi~ (cached on the structure)."""
    return s.h_t


def h_square_scalar(s: ParacontactMetricStructure) -> tuple[float, float]:
    """Least-squares scalar with h~^2 = s phi~^2, and the residual of that fit.

    Preferred over an eigensolver: g~-symmetric operators under an indefinite
    metric may be non-diagonalizable, while s is always well-defined on the
    structures this engine certifies.
    """
    h2 = s.h_t @ s.h_t
    p2 = s.phi_t @ s.phi_t
    denom = float(np.sum(p2 * p2))
    scal = float(np.sum(h2 * p2) / denom)
    return scal, float(np.max(np.abs(h2 - scal * p2)))


def spectral_type(s: ParacontactMetricStructure, tol: float = DEFAULT_TOL) -> tuple[str, float, float | None]:
    """Classify h~ by the sign of s in h~^2 = s phi~^2.

    Returns (type, s, lambda_t): real eigenvalue pair +-sqrt(s) for s > 0,
    complex pair for s < 0, nilpotent for s = 0 with h~ != 0, zero otherwise.
    """
    scal, fit_residual = h_square_scalar(s)
    if fit_residual > tol:
        raise InternalInconsistency(
            f"h~^2 is not proportional to phi~^2 (residual {fit_residual:.3e})"
        )
    if np.max(np.abs(s.h_t)) <= tol:
        return "zero", scal, None
    if scal > tol:
        return "real_pair", scal, float(np.sqrt(scal))
    if scal < -tol:
        return "complex_pair", scal, None
    return "nilpotent", scal, None


def para_nullity_fit(s: ParacontactMetricStructure, tol: float = DEFAULT_TOL) -> ParaNullityReport:
    """Fit (kappa~, mu~), classify the spectrum of h~ and run the side checks.

    Side checks: h~^2 = (1 + kappa~) phi~^2 and the curvature reflection
    identity R~_{xi X} xi + phi~ R~_{xi phi~ X} xi = 2 (phi~^2 X - h~^2 X).
    """
    conn = s.levi_civita(tol)
    kappa, mu, residual = _fit_r_xi(s.model, conn, s.xi, s.eta, s.h_t, tol)
    if residual > tol:
        raise NotNullity(
            f"curvature does not satisfy a paracontact nullity condition "
            f"(residual {residual:.3e})",
            residual,
        )
    stype, scal, lam = spectral_type(s, tol)
    para1 = float(np.max(np.abs(s.h_t @ s.h_t - (1.0 + kappa) * s.phi_t @ s.phi_t)))

    dim = s.dim
    basis = np.eye(dim)
    rz = 0.0
    p2 = s.phi_t @ s.phi_t
    h2 = s.h_t @ s.h_t
    for i in range(dim):
        x = basis[i]
        lhs = curvature(s.model, conn, s.xi, x, s.xi) + s.phi_t @ curvature(
            s.model, conn, s.xi, s.phi_t @ x, s.xi
        )
        rhs = 2.0 * (p2 @ x - h2 @ x)
        rz = max(rz, float(np.max(np.abs(lhs - rhs))))

    return ParaNullityReport(
        kappa_t=kappa,
        mu_t=mu,
        residual=residual,
        spectral_type=stype,
        lambda_t=lam,
        s=scal,
        para1_residual=para1,
        rz_residual=rz,
    )


def canonical_pc_connection(
    s: ParacontactMetricStructure, tol: float = DEFAULT_TOL
) -> tuple[AffineConnection, ResidualReport]:
    """The canonical paracontact connection and its defining-property report.

    nabla^pc_X Y = nabla~_X Y + eta(X) phi~ Y + eta(Y)(phi~ X - phi~ h~ X)
                   + g~(X - h~ X, phi~ Y) xi

    Verified properties: parallel eta / xi / g~; the prescribed phi~-derivative
    shift; torsion reflection through phi~ in the xi slot; torsion equal to
    2 d eta(X, Y) xi on the contact distribution; and the full closed-form
    torsion eta(X) phi~ h~ Y - eta(Y) phi~ h~ X + 2 g~(X, phi~ Y) xi.
    """
    m, phi, xi, eta, g, h = s.model, s.phi_t, s.xi, s.eta, s.g_t, s.h_t
    dim = s.dim
    lc = s.levi_civita(tol)
    basis = np.eye(dim)
    phih = phi @ h

    gamma = np.array(lc.gamma, copy=True)
    for i in range(dim):
        for j in range(dim):
            x, y = basis[i], basis[j]
            gamma[i, j] += eta[i] * (phi @ y)
            gamma[i, j] += eta[j] * (phi @ x - phih @ x)
            gamma[i, j] += ((x - h @ x) @ g @ (phi @ y)) * xi
    conn = AffineConnection(gamma=gamma)

    report = ResidualReport(tol=tol)
    report.add("parallel_eta", max(np.max(np.abs(conn.nabla_one_form(i, eta))) for i in range(dim)))
    nabla_xi = np.column_stack([conn.nabla(basis[i], xi) for i in range(dim)])
    report.add("parallel_xi", np.max(np.abs(nabla_xi)))
    report.add("parallel_metric", max(np.max(np.abs(conn.nabla_bilinear(i, g))) for i in range(dim)))

    shift = 0.0
    for i in range(dim):
        d_pc = conn.nabla_endo(i, phi)
        d_lc = lc.nabla_endo(i, phi)
        x = basis[i]
        for j in range(dim):
            y = basis[j]
            rhs = d_lc @ y - eta[j] * (x - h @ x) + ((x - h @ x) @ g @ y) * xi
            shift = max(shift, np.max(np.abs(d_pc @ y - rhs)))
    report.add("phi_derivative_identity", shift)

    tors = conn.torsion(m)

    def t_of(u, v):
        return np.einsum("i,j,ijk->k", u, v, tors)

    refl = 0.0
    closed = 0.0
    on_d = 0.0
    kbasis = _kernel_basis(eta)
    for j in range(dim):
        y = basis[j]
        refl = max(refl, np.max(np.abs(t_of(xi, phi @ y) + phi @ t_of(xi, y))))
    for i in range(dim):
        for j in range(dim):
            x, y = basis[i], basis[j]
            rhs = eta[i] * (phih @ y) - eta[j] * (phih @ x) + 2.0 * (x @ g @ (phi @ y)) * xi
            closed = max(closed, np.max(np.abs(t_of(x, y) - rhs)))
    deta = s.d_eta()
    for u in kbasis:
        for v in kbasis:
            on_d = max(on_d, np.max(np.abs(t_of(u, v) - 2.0 * (u @ deta @ v) * xi)))
    report.add("torsion_phi_reflection", refl)
    report.add("torsion_closed_form", closed)
    report.add("torsion_on_contact_distribution", on_d)
    return conn, report


def integrability_and_parasasaki(
    s: ParacontactMetricStructure, tol: float = DEFAULT_TOL
) -> dict:
    """Integrability and para-Sasakian predicates.

    Integrability is computed two independent ways (Nijenhuis torsion valued
    in R xi on the contact distribution, and vanishing of nabla^pc phi~); a
    disagreement beyond 10 tol signals an engine bug, not a model property.
    """
    m, phi, xi, eta = s.model, s.phi_t, s.xi, s.eta
    deta = s.d_eta()

    def nij(u, v):
        return (
            phi @ phi @ m.bracket(u, v)
            + m.bracket(phi @ u, phi @ v)
            - phi @ m.bracket(phi @ u, v)
            - phi @ m.bracket(u, phi @ v)
            - 2.0 * (u @ deta @ v) * xi
        )

    kbasis = _kernel_basis(eta)
    worst_d = 0.0
    for u in kbasis:
        for v in kbasis:
            w = nij(u, v)
            worst_d = max(worst_d, float(np.max(np.abs(w - (eta @ w) * xi))))
    integrable_n = worst_d <= tol

    conn_pc, _ = canonical_pc_connection(s, tol)
    worst_pc = max(float(np.max(np.abs(conn_pc.nabla_endo(i, phi)))) for i in range(s.dim))
    integrable_pc = worst_pc <= tol

    if integrable_n != integrable_pc and abs(worst_d - worst_pc) > 10.0 * tol:
        raise InternalInconsistency(
            f"integrability criteria disagree: Nijenhuis residual {worst_d:.3e}, "
            f"nabla^pc phi~ residual {worst_pc:.3e}"
        )

    lc = s.levi_civita(tol)
    basis = np.eye(s.dim)
    ps = 0.0
    for i in range(s.dim):
        d_phi = lc.nabla_endo(i, phi)
        x = basis[i]
        for j in range(s.dim):
            y = basis[j]
            rhs = -(x @ s.g_t @ y) * xi + eta[j] * x
            ps = max(ps, float(np.max(np.abs(d_phi @ y - rhs))))
    para_sasakian = ps <= tol
    curv_res = None
    if para_sasakian:
        # curvature consequence R~_{XY} xi = -(eta(Y) X - eta(X) Y), i.e. the
        # kappa~ = -1 nullity form that the covariant condition forces
        worst = 0.0
        for i in range(s.dim):
            for j in range(s.dim):
                r = curvature(m, lc, basis[i], basis[j], xi)
                pred = -(eta[j] * basis[i] - eta[i] * basis[j])
                worst = max(worst, float(np.max(np.abs(r - pred))))
        curv_res = worst

    return {
        "integrable": bool(integrable_n),
        "para_sasakian": bool(para_sasakian),
        "nijenhuis_d_residual": worst_d,
        "pc_parallel_phi_residual": worst_pc,
        "para_sasaki_residual": ps,
        "para_sasaki_curvature_residual": curv_res,
    }
