import numpy as np
import pytest

from kmgeom.catalog import family_3d, heisenberg_3d, nilpotent_h_5d
from kmgeom.contact import ContactMetricStructure, nullity_fit
from kmgeom.lie_model import LieModel
from kmgeom.tower import sasakian_structure

# one parameter pair per class: I, II, III, IV, V
CLASS_PARAMS = {
    "I": (1.0, 2.0),
    "II": (1.0, 0.0),
    "III": (1.0, -2.0),
    "IV": (1.0, 1.0),
    "V": (1.0, -1.0),
}

GRID_LAMBDAS = (0.5, 1.0, 1.5, 2.0, 3.0)
GRID_DS = (-2.0, -1.0, 0.0, 1.0, 2.0)


def family(lam, d) -> ContactMetricStructure:
    return family_3d(lam, d).structure


@pytest.fixture(scope="session")
def model_5d():
    return nilpotent_h_5d()


@pytest.fixture(scope="session")
def heisenberg():
    return heisenberg_3d()


@pytest.fixture(scope="session")
def sasakian_fixture() -> ContactMetricStructure:
    """A genuine Sasakian structure: the compatible one built from a class-I space."""
    s = family(1.0, 2.0)
    return sasakian_structure(s, nullity_fit(s)).structure


def twisted_contact_3d(a=1.0, r=1.0) -> ContactMetricStructure:
    """Valid contact metric structure that is not a nullity space (a, r != 0).

    Non-unimodular brackets [X,Y] = 2 xi + a X, [xi,Y] = r X satisfy Jacobi
    and keep eta contact with the standard (phi, g); the curvature R_{. xi} xi
    then falls outside the span of the identity and h.
    """
    c = np.zeros((3, 3, 3))

    def setb(i, j, coeffs):
        for k, v in coeffs.items():
            c[i, j, k] = v
            c[j, i, k] = -v

    setb(0, 1, {2: 2.0, 0: a})
    setb(2, 1, {0: r})
    model = LieModel(c=c)
    phi = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    return ContactMetricStructure(
        model=model, phi=phi, xi=np.eye(3)[2], eta=np.eye(3)[2], g=np.eye(3)
    )
