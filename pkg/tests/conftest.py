import numpy as np
import pytest

from hybridlens import Image


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_image(rng, height, width, channels=3):
    return Image(rng.random((height, width, channels)))


def pytest_runtest_logreport(report):
    # one visible pass/fail line per acceptance criterion
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
    print(f"[ACCEPTANCE] {status}: {name}", flush=True)
