import pytest

from ghfilt import cases


@pytest.fixture
def b2():
    return cases.b2()


@pytest.fixture
def a1():
    return cases.a1()


@pytest.fixture
def a2():
    return cases.a2()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n not in RESULTS:
            terminalreporter.write_line(f"criterion {n}: NOT RUN")
            continue
        ok, text, elapsed, why = RESULTS[n]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  ({elapsed:.2f} s)  {text}"
        if why:
            line += f"  [{why}]"
        terminalreporter.write_line(line)
