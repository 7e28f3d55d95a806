import pytest

from chainring import FieldCtx, RingCtx


@pytest.fixture(scope="session")
def F2():
    return FieldCtx(2, 1)


@pytest.fixture(scope="session")
def F3():
    return FieldCtx(3, 1)


@pytest.fixture(scope="session")
def F4():
    return FieldCtx(2, 2)


@pytest.fixture(scope="session")
def F9():
    return FieldCtx(3, 2)


def ring_f_power(field, t, s, shift=1):
    """R^{t, (x - shift)^(p^s)} over the given field."""
    x = field.poly_x()
    c = field.poly([shift])
    return RingCtx(field, t, (x - c) ** (field.p**s))


@pytest.fixture(scope="session")
def R4s1(F2):
    """R^{4,(x-1)^2} over F_2: t=4, p^s=2."""
    return ring_f_power(F2, 4, 1)


@pytest.fixture(scope="session")
def R4s2(F2):
    """R^{4,(x-1)^4} over F_2: t=4, p^s=4."""
    return ring_f_power(F2, 4, 2)


@pytest.fixture(scope="session")
def R2s1(F2):
    """R^{2,(x-1)^2} over F_2: the 16-element workhorse."""
    return ring_f_power(F2, 2, 1)


@pytest.fixture(scope="session")
def R33_F3(F3):
    """R^{3,(x-1)^3} over F_3."""
    return ring_f_power(F3, 3, 1)
