import pytest

from pullstab import make_cover


@pytest.fixture
def example_cover():
    """Degree-6 cyclic cover of P^1 branched at 0 and infinity."""
    return make_cover(6, [("0", [[0, 1, 2, 3, 4, 5]]), ("infty", [[0, 5, 4, 3, 2, 1]])])


@pytest.fixture
def hyperelliptic_cover():
    """Double cover of P^1 branched at four points (an elliptic curve)."""
    return make_cover(2, [(p, [[0, 1]]) for p in ("a", "b", "c", "d")])


@pytest.fixture
def double_cover():
    return make_cover(2, [("0", [[0, 1]]), ("infty", [[0, 1]])])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, name, detail = RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {name} ({detail})")
