import pytest

from acderiv import builtin_twisted_chart, make_standard_chart


@pytest.fixture(scope="session")
def std1():
    return make_standard_chart(1)


@pytest.fixture(scope="session")
def std2():
    return make_standard_chart(2)


@pytest.fixture(scope="session")
def twisted2():
    return builtin_twisted_chart(2)
