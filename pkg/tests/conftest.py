import numpy as np
import pytest

_ACCEPTANCE: dict[int, str] = {}


def jw_annihilation(i: int, n_modes: int) -> np.ndarray:
    """Jordan-Wigner annihilator from Kronecker products (independent oracle).

    Dense index = sum of bit_k 2^k, so mode 0 is the last Kronecker factor.
    """
    lower = np.array([[0, 1], [0, 0]], dtype=complex)
    z = np.diag([1.0, -1.0]).astype(complex)
    eye = np.eye(2, dtype=complex)
    out = np.eye(1, dtype=complex)
    for k in reversed(range(n_modes)):
        out = np.kron(out, eye if k > i else lower if k == i else z)
    return out


@pytest.fixture
def jw():
    return jw_annihilation


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    status = "PASS" if report.passed else "FAIL"
    line = f"[{status}] criterion {number:>2}: {title} ({report.duration:.2f} s)"
    _ACCEPTANCE[number] = line + (f"\n                 {detail}" if detail else "")


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
