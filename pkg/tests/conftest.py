"""Shared acceptance bookkeeping.

Each acceptance test wraps its body in ``acceptance(n, name)``; the terminal
summary then prints one PASS/FAIL line per criterion so the whole gate can be
read off the bottom of a ``pytest`` run.
"""

from contextlib import contextmanager

RESULTS: dict[int, tuple[str, bool]] = {}


@contextmanager
def acceptance(number: int, name: str):
    try:
        yield
    except BaseException:
        RESULTS[number] = (name, False)
        raise
    RESULTS[number] = (name, True)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        name, ok = RESULTS[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {number} ({name}): {verdict}")
