import pytest

from k3degen import _backend
from k3degen.gf import make_field


@pytest.fixture
def F4():
    return make_field(2, 2)


@pytest.fixture
def F9():
    return make_field(3, 2)


@pytest.fixture(params=_backend.available())
def backend(request):
    prev = _backend.use(request.param)
    yield request.param
    _backend.use(prev)
