import re


def pytest_runtest_logreport(report):
    """One pass/fail line per acceptance criterion, outside capture."""
    if report.when != "call":
        return
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    num, name = int(m.group(1)), m.group(2)
    tag = "PASS" if report.passed else "FAIL"
    print(f"\nacceptance criterion {num:2d} ({name}): {tag}", flush=True)
