import itertools

import pytest

# (criterion number, passed, detail) appended by test_acceptance.py
ACCEPTANCE_LINES = []


def grid(ks, ds, ordered=True):
    for k in ks:
        gen = itertools.product(ds, repeat=k) if ordered else itertools.combinations_with_replacement(ds, k)
        yield from gen


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}: {detail}")


@pytest.fixture
def record():
    def _record(n, ok, detail):
        ACCEPTANCE_LINES.append((n, bool(ok), detail))
        print(f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}: {detail}")
        return ok

    return _record
