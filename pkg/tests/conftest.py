"""Collects acceptance verdicts and prints them at the end of the run."""
import time
from contextlib import contextmanager

ACCEPTANCE: dict[int, tuple[str, bool, float, str]] = {}


@contextmanager
def criterion(number: int, title: str, limit_s: float | None = None):
    """Time the enclosed block and record a PASS/FAIL line for it.

    A block that raises is recorded as FAIL and the exception propagates.
    A block that finishes but exceeds ``limit_s`` is a failure too.
    """
    start = time.perf_counter()
    detail = ""
    ok = False
    try:
        yield
        ok = True
    except BaseException as exc:
        detail = f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        raise
    finally:
        elapsed = time.perf_counter() - start
        if ok and limit_s is not None and elapsed >= limit_s:
            ok = False
            detail = f"runtime {elapsed:.2f} s exceeds {limit_s} s"
        ACCEPTANCE[number] = (title, ok, elapsed, detail)
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} ({elapsed:.2f} s){' ' + detail if detail else ''}"
        print(line)
    if not ok:
        raise AssertionError(detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, elapsed, detail = ACCEPTANCE[n]
        suffix = f"  {detail}" if detail else ""
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {title} ({elapsed:.2f} s){suffix}")
    n_pass = sum(v[1] for v in ACCEPTANCE.values())
    terminalreporter.write_line(f"{n_pass}/{len(ACCEPTANCE)} acceptance criteria passed")
