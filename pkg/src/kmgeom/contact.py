"""Contact metric structures and the (kappa, mu)-nullity machinery.

A contact metric structure is a quadruple (phi, xi, eta, g) with

    phi^2 = -I + eta (x) xi,   d eta(X, Y) = g(X, phi Y),
    g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y),

g Riemannian.  The operator h = (1/2) L_xi phi measures the failure of the
Reeb field to be Killing; a structure is a (kappa, mu)-space when

    R_{X Y} xi = kappa (eta(Y) X - eta(X) Y) + mu (eta(Y) h X - eta(X) h Y)

for constants kappa, mu.  Non-Sasakian (kappa < 1) spaces carry the Boeckx
invariant I_M = (1 - mu/2) / sqrt(1 - kappa), which positions the structure
in one of five classes and drives every derived construction downstream.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NotNullity, SasakianOrInvalid
from .lie_model import LieModel, d_one_form, lie_derivative_endo
from .report import DEFAULT_TOL, ResidualReport
from .riemann import AffineConnection, curvature, levi_civita, signature

# Nijenhuis vanishing uses a looser threshold: two bracket layers of roundoff.
SASAKIAN_FACTOR = 10.0


@dataclass(frozen=True)
class ContactMetricStructure:
    """Tensor quadruple (phi, xi, eta, g) on a Lie model, with cached h."""

    model: LieModel
    phi: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    g: np.ndarray
    h: np.ndarray = None

    def __post_init__(self):
        for name in ("phi", "xi", "eta", "g"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if self.h is None:
            h = 0.5 * lie_derivative_endo(self.model, self.xi, self.phi)
            object.__setattr__(self, "h", h)

    @property
    def dim(self) -> int:
        return self.model.dim

    @property
    def n(self) -> int:
        return (self.dim - 1) // 2

    def d_eta(self) -> np.ndarray:
        return d_one_form(self.model, self.eta)

    def levi_civita(self, tol: float = DEFAULT_TOL) -> AffineConnection:
        return levi_civita(self.model, self.g, tol)

    def contact_projector(self) -> np.ndarray:
        """Projector onto the contact distribution ker(eta) along xi."""
        return np.eye(self.dim) - np.outer(self.xi, self.eta)

    def contact_basis(self) -> np.ndarray:
        """Orthonormal (Euclidean) basis of ker(eta), shape (2n, dim)."""
        return _kernel_basis(self.eta)


def _kernel_basis(eta: np.ndarray) -> np.ndarray:
    dim = eta.shape[0]
    _, _, vt = np.linalg.svd(eta[None, :])
    return vt[1:dim]


@dataclass(frozen=True)
class NullityReport:
    """Fitted nullity constants and derived invariants of a contact structure."""

    kappa: float
    mu: float | None  # None when h = 0 makes mu indeterminate
    residual: float
    lam: float | None  # sqrt(1 - kappa) for kappa < 1
    boeckx: float | None  # undefined for Sasakian structures
    class_tag: str  # "I".."V" or "Sasakian"

    @property
    def mu_indeterminate(self) -> bool:
        return self.mu is None

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "mu": self.mu,
            "mu_indeterminate": self.mu_indeterminate,
            "residual": self.residual,
            "lambda": self.lam,
            "boeckx": self.boeckx,
            "class": self.class_tag,
        }


def validate_contact(s: ContactMetricStructure, tol: float = DEFAULT_TOL) -> ResidualReport:
    """Per-axiom residual report; the structure is valid iff all entries <= tol.

    Reports rather than raises so invalid inputs can be inspected.
    """
    report = ResidualReport(tol=tol)
    dim, phi, xi, eta, g, h = s.dim, s.phi, s.xi, s.eta, s.g, s.h
    ident = np.eye(dim)
    deta = s.d_eta()

    report.add("phi_square", np.max(np.abs(phi @ phi + ident - np.outer(xi, eta))))
    report.add("deta_compatibility", np.max(np.abs(deta - g @ phi)))
    report.add("metric_compatibility", np.max(np.abs(phi.T @ g @ phi - g + np.outer(eta, eta))))
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
    report.add("riemannian_signature", 0.0 if (q == 0 and z == 0) else 1.0,
               note=f"signature ({p},{q},{z})")

    report.add("h_xi", np.max(np.abs(h @ xi)))
    report.add("eta_circ_h", np.max(np.abs(eta @ h)))
    report.add("h_phi_anticommute", np.max(np.abs(h @ phi + phi @ h)))
    report.add("trace_h", abs(np.trace(h)))
    report.add("trace_phi_h", abs(np.trace(phi @ h)))
    report.add("h_g_symmetric", np.max(np.abs(h.T @ g - g @ h)))
    return report


def h_operator(s: ContactMetricStructure) -> np.ndarray:
    """h = (1/2) L_xi phi (cached on the structure)."""
    return s.h


def nijenhuis(s: ContactMetricStructure, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """N_phi(u, v) with the contact sign (+2 d eta(u, v) xi)."""
    m, phi = s.model, s.phi
    deta = s.d_eta()
    return (
        phi @ phi @ m.bracket(u, v)
        + m.bracket(phi @ u, phi @ v)
        - phi @ m.bracket(phi @ u, v)
        - phi @ m.bracket(u, phi @ v)
        + 2.0 * (u @ deta @ v) * s.xi
    )


def nijenhuis_norm(s: ContactMetricStructure, tol: float = DEFAULT_TOL) -> tuple[float, ResidualReport]:
    """Max-abs of N_phi over basis pairs, plus side identities.

    The side residuals check phi N(X,Y) + N(phi X, Y) = 2 eta(X) h Y and the
    vanishing of eta(N(phi X, Y)).
    """
    dim = s.dim
    basis = np.eye(dim)
    worst = 0.0
    shift = 0.0
    eta_comp = 0.0
    for i in range(dim):
        for j in range(dim):
            nij = nijenhuis(s, basis[i], basis[j])
            worst = max(worst, np.max(np.abs(nij)))
            lhs = s.phi @ nij + nijenhuis(s, s.phi @ basis[i], basis[j])
            shift = max(shift, np.max(np.abs(lhs - 2.0 * s.eta[i] * (s.h @ basis[j]))))
            eta_comp = max(eta_comp, abs(s.eta @ nijenhuis(s, s.phi @ basis[i], basis[j])))
    side = ResidualReport(tol=tol)
    side.add("nijenhuis_phi_shift", shift)
    side.add("nijenhuis_eta_component", eta_comp)
    return worst, side


def _fit_r_xi(
    model: LieModel,
    conn: AffineConnection,
    xi: np.ndarray,
    eta: np.ndarray,
    h: np.ndarray,
    tol: float,
) -> tuple[float, float | None, float]:
    """Least-squares (kappa, mu) from R_{b xi} xi = kappa b + mu h b over ker(eta).

    Shared by the contact and paracontact fits; returns (kappa, mu, residual)
    with mu = None when ||h|| <= tol (the mu-term is identically zero).
    """
    dbasis = _kernel_basis(eta)
    h_zero = np.max(np.abs(h)) <= tol
    rows, targets = [], []
    for b in dbasis:
        rows.append(np.column_stack([b] if h_zero else [b, h @ b]))
        targets.append(curvature(model, conn, b, xi, xi))
    a = np.vstack(rows)
    t = np.concatenate(targets)
    sol, *_ = np.linalg.lstsq(a, t, rcond=None)
    if h_zero:
        kappa, mu = float(sol[0]), None
    else:
        kappa, mu = float(sol[0]), float(sol[1])

    dim = model.dim
    basis = np.eye(dim)
    worst = 0.0
    mu_eff = 0.0 if mu is None else mu
    for i in range(dim):
        for j in range(dim):
            r = curvature(model, conn, basis[i], basis[j], xi)
            pred = kappa * (eta[j] * basis[i] - eta[i] * basis[j]) + mu_eff * (
                eta[j] * (h @ basis[i]) - eta[i] * (h @ basis[j])
            )
            worst = max(worst, float(np.max(np.abs(r - pred))))
    return kappa, mu, worst


def boeckx_invariant(kappa: float, mu: float, tol: float = DEFAULT_TOL) -> float:
    """I_M = (1 - mu/2) / sqrt(1 - kappa); undefined at kappa >= 1."""
    if kappa >= 1.0 - tol:
        raise SasakianOrInvalid(f"Boeckx invariant undefined for kappa = {kappa} >= 1")
    return (1.0 - mu / 2.0) / np.sqrt(1.0 - kappa)


def classify_by_invariant(boeckx: float | None, tol: float = DEFAULT_TOL) -> str:
    """Class tag from the position of I_M relative to +-1."""
    if boeckx is None:
        return "Sasakian"
    if abs(boeckx - 1.0) <= tol:
        return "IV"
    if abs(boeckx + 1.0) <= tol:
        return "V"
    if boeckx > 1.0:
        return "I"
    if boeckx < -1.0:
        return "III"
    return "II"


def nullity_fit(s: ContactMetricStructure, tol: float = DEFAULT_TOL) -> NullityReport:
    """Fit (kappa, mu) and verify the full nullity tensor equation.

    Raises :class:`NotNullity` when the best-fit residual exceeds ``tol``
    (a valid contact metric structure that is not a nullity space), and
    :class:`NotNullity` with a kappa diagnostic when kappa lands above 1
    beyond roundoff, which no contact metric structure can do.
    """
    conn = s.levi_civita(tol)
    kappa, mu, residual = _fit_r_xi(s.model, conn, s.xi, s.eta, s.h, tol)
    if residual > tol:
        raise NotNullity(
            f"curvature does not satisfy a nullity condition (residual {residual:.3e})",
            residual,
        )
    if kappa > 1.0 + tol:
        raise NotNullity(f"fitted kappa = {kappa} exceeds 1", residual)

    sasakian = kappa >= 1.0 - tol
    lam = None if sasakian else float(np.sqrt(1.0 - kappa))
    boeckx = None
    if not sasakian and mu is not None:
        boeckx = boeckx_invariant(kappa, mu, tol)
    tag = classify_by_invariant(None if sasakian else boeckx, tol)
    return NullityReport(
        kappa=kappa, mu=mu, residual=residual, lam=lam, boeckx=boeckx, class_tag=tag
    )


def blair_identity_suite(
    s: ContactMetricStructure, kappa: float, mu: float, tol: float = DEFAULT_TOL
) -> ResidualReport:
    """Covariant-derivative identities of a (kappa, mu)-space.

    Checks, over all basis pairs (X, Y):

    * (nabla_X phi) Y = g(X, Y + hY) xi - eta(Y)(X + hX)
    * (nabla_X h) Y   = ((1-kappa) g(X, phi Y) + g(X, phi h Y)) xi
                        + eta(Y) h(phi X + phi h X) - mu phi h Y
    * (nabla_X phi h) Y = (g(X, hY) - (1-kappa) g(X, phi^2 Y)) xi
                          + eta(Y)(hX - (1-kappa) phi^2 X) + mu eta(X) hY
    * h^2 = (kappa - 1) phi^2
    * nabla_xi h = mu h phi
    """
    report = ResidualReport(tol=tol)
    m, phi, xi, eta, g, h = s.model, s.phi, s.xi, s.eta, s.g, s.h
    dim = s.dim
    conn = s.levi_civita(tol)
    basis = np.eye(dim)
    phih = phi @ h

    r1 = r2 = r3 = 0.0
    for i in range(dim):
        x = basis[i]
        d_phi = conn.nabla_endo(i, phi)
        d_h = conn.nabla_endo(i, h)
        d_phih = conn.nabla_endo(i, phih)
        for j in range(dim):
            y = basis[j]
            lhs1 = d_phi @ y
            rhs1 = (x @ g @ (y + h @ y)) * xi - eta[j] * (x + h @ x)
            r1 = max(r1, np.max(np.abs(lhs1 - rhs1)))

            lhs2 = d_h @ y
            rhs2 = ((1 - kappa) * (x @ g @ (phi @ y)) + x @ g @ (h @ phi @ y)) * xi
            rhs2 += eta[j] * (h @ (phi @ x + phih @ x)) - mu * eta[i] * (phih @ y)
            r2 = max(r2, np.max(np.abs(lhs2 - rhs2)))

            lhs3 = d_phih @ y
            rhs3 = (x @ g @ (h @ y) - (1 - kappa) * (x @ g @ (phi @ phi @ y))) * xi
            rhs3 += eta[j] * (h @ x - (1 - kappa) * (phi @ phi @ x)) + mu * eta[i] * (h @ y)
            r3 = max(r3, np.max(np.abs(lhs3 - rhs3)))

    report.add("nabla_phi_identity", r1)
    report.add("nabla_h_identity", r2)
    report.add("nabla_phi_h_identity", r3)
    report.add("h_square_identity", np.max(np.abs(h @ h - (kappa - 1) * phi @ phi)))
    d_xi_h = sum(s.xi[i] * conn.nabla_endo(i, h) for i in range(dim))
    report.add("nabla_xi_h_identity", np.max(np.abs(d_xi_h - mu * h @ phi)))
    return report


def classification_flags(
    s: ContactMetricStructure, report: NullityReport, tol: float = DEFAULT_TOL
) -> dict:
    """Sasakian / K-contact / Tanaka-Webster-parallel predicates.

    ``tw_parallel`` uses the mu = 2 criterion for non-Sasakian nullity spaces.
    """
    nij, _ = nijenhuis_norm(s, tol)
    sasakian = nij <= SASAKIAN_FACTOR * tol
    k_contact = float(np.max(np.abs(s.h))) <= tol
    non_sasakian = report.kappa < 1.0 - tol
    tw_parallel = bool(non_sasakian and report.mu is not None and abs(report.mu - 2.0) <= tol)
    return {"sasakian": bool(sasakian), "k_contact": bool(k_contact), "tw_parallel": tw_parallel}
