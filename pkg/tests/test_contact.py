"""Contact metric validation, h, Nijenhuis torsion, nullity fit, Boeckx invariant."""

import numpy as np
import pytest

from kmgeom.contact import (
    ContactMetricStructure,
    blair_identity_suite,
    boeckx_invariant,
    classification_flags,
    nijenhuis_norm,
    nullity_fit,
    validate_contact,
)
from kmgeom.errors import NotNullity, SasakianOrInvalid

from conftest import family, twisted_contact_3d


def test_validate_family_class_ii():
    rep = validate_contact(family(1.0, 0.0))
    assert rep.valid
    assert rep.worst[1] <= 1e-12


def test_validate_rejects_scaled_metric():
    s = family(1.0, 0.0)
    bad = ContactMetricStructure(model=s.model, phi=s.phi, xi=s.xi, eta=s.eta, g=2.0 * s.g)
    rep = validate_contact(bad)
    assert not rep.valid
    # compatibility with d eta is scale-breaking
    assert rep["deta_compatibility"] > 0.1


def test_validate_rejects_paracontact_tensors(model_5d):
    st = model_5d.structure
    fake = ContactMetricStructure(
        model=st.model, phi=st.phi_t, xi=st.xi, eta=st.eta, g=st.g_t
    )
    rep = validate_contact(fake)
    assert rep["phi_square"] > 1.0  # phi~^2 has the opposite sign


def test_h_eigenstructure_family():
    e = np.eye(3)
    s = family(1.0, 0.0)
    assert np.allclose(s.h @ e[0], e[0])
    assert np.allclose(s.h @ e[1], -e[1])
    assert np.allclose(s.h @ e[2], 0.0)
    s21 = family(2.0, 1.0)
    assert sorted(np.linalg.eigvalsh(s21.h)) == pytest.approx([-2.0, 0.0, 2.0])


def test_h_vanishes_on_sasakian_fixture(sasakian_fixture):
    assert np.max(np.abs(sasakian_fixture.h)) <= 1e-12


def test_nijenhuis_norm():
    worst, side = nijenhuis_norm(family(1.0, 0.0))
    assert worst > 0.1  # kappa < 1 forces nonvanishing torsion
    assert side.valid, side.failures()


def test_nijenhuis_vanishes_on_sasakian_fixture(sasakian_fixture):
    worst, side = nijenhuis_norm(sasakian_fixture)
    assert worst <= 1e-9
    assert side.valid


@pytest.mark.parametrize(
    "lam,d,kappa,mu",
    [(1.0, 0.0, 0.0, 2.0), (1.0, 2.0, 0.0, -2.0), (2.0, 1.0, -3.0, 0.0)],
)
def test_nullity_fit_family(lam, d, kappa, mu):
    fit = nullity_fit(family(lam, d))
    assert fit.kappa == pytest.approx(kappa, abs=1e-9)
    assert fit.mu == pytest.approx(mu, abs=1e-9)
    assert fit.residual <= 1e-9
    assert fit.lam == pytest.approx(np.sqrt(1 - kappa))


def test_nullity_fit_sasakian(sasakian_fixture):
    fit = nullity_fit(sasakian_fixture)
    assert fit.kappa == pytest.approx(1.0, abs=1e-9)
    assert fit.mu_indeterminate
    assert fit.boeckx is None
    assert fit.class_tag == "Sasakian"


def test_nullity_fit_rejects_twisted_structure():
    s = twisted_contact_3d()
    assert validate_contact(s).valid  # genuinely contact metric ...
    with pytest.raises(NotNullity):  # ... but not a nullity space
        nullity_fit(s)


def test_boeckx_invariant_values():
    c = 4.0
    assert boeckx_invariant(c * (2 - c), -2 * c) == pytest.approx(5.0 / 3.0, abs=1e-12)
    assert boeckx_invariant(0.0, 2.0) == 0.0
    with pytest.raises(SasakianOrInvalid):
        boeckx_invariant(1.0, 0.0)


@pytest.mark.parametrize("lam,d", [(1.0, 0.0), (2.0, 1.0)])
def test_blair_identities_family(lam, d):
    s = family(lam, d)
    fit = nullity_fit(s)
    rep = blair_identity_suite(s, fit.kappa, fit.mu)
    assert rep.valid, rep.failures()


def test_blair_identities_sasakian_specialization(sasakian_fixture):
    s = sasakian_fixture
    # with h = 0 the first identity reduces to (nabla_X phi) Y = g(X,Y) xi - eta(Y) X
    rep = blair_identity_suite(s, 1.0, 0.0)
    assert rep.valid, rep.failures()
    conn = s.levi_civita()
    worst = 0.0
    basis = np.eye(s.dim)
    for i in range(s.dim):
        d_phi = conn.nabla_endo(i, s.phi)
        for j in range(s.dim):
            rhs = (basis[i] @ s.g @ basis[j]) * s.xi - s.eta[j] * basis[i]
            worst = max(worst, np.max(np.abs(d_phi @ basis[j] - rhs)))
    assert worst <= 1e-9


def test_classification_flags():
    s = family(1.0, 0.0)
    flags = classification_flags(s, nullity_fit(s))
    assert flags == {"sasakian": False, "k_contact": False, "tw_parallel": True}
    s = family(1.0, 2.0)
    flags = classification_flags(s, nullity_fit(s))
    assert not flags["tw_parallel"]  # mu = -2


def test_classification_flags_sasakian(sasakian_fixture):
    flags = classification_flags(sasakian_fixture, nullity_fit(sasakian_fixture))
    assert flags["sasakian"] and flags["k_contact"] and not flags["tw_parallel"]
