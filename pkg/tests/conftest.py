import pytest

from src.config import get_settings
from src.elliptic.curve import curve_from_label
from src.lvalues.report import curve_context
from src.modsym.manin import build_space


@pytest.fixture(scope="session")
def settings():
    return get_settings()


@pytest.fixture(scope="session")
def curve(settings):
    def _curve(label: str):
        return curve_from_label(label, settings.labels_path)
    return _curve


@pytest.fixture(scope="session")
def context(curve, settings):
    def _context(label: str):
        return curve_context(curve(label), settings)
    return _context


@pytest.fixture(scope="session")
def eig(context):
    def _eig(label: str):
        return context(label).eig
    return _eig


@pytest.fixture(scope="session")
def space11():
    return build_space(11)


@pytest.fixture(scope="session")
def space37():
    return build_space(37)
