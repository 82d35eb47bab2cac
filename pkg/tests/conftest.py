import pytest

from uqsl2.ncalgebra import rule_soundness


def pytest_sessionstart(session):
    bad = [name for name, ok in rule_soundness() if not ok]
    if bad:
        pytest.exit(f"rewrite rules unsound against their relations: {bad}", returncode=3)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        title, ok, secs = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.1f}s)")
