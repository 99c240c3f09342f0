"""Acceptance suite: every headline number and property at full scale.

Each criterion prints one PASS/FAIL line with its measured values (run
pytest with -s to see them).  The same checks back `hedgehog verify`.
"""

import pytest

from hedgehog import verify

# expected wall-clock budgets, seconds
BUDGETS = {
    "smyth-hedgehog-measure": 1.0,
    "lehmer-hedgehog-measure": 1.0,
    "extremal-construction": 30.0,
    "expansion-coefficients": 1.0,
    "asymptotic-agreement": 5.0,
    "hankel-growth": 600.0,
    "series-integrality": 5.0,
    "symmetric-calibration": 5.0,
    "optimizer-evidence": 300.0,
    "scaled-limit": 2.0,
    "property-suites": 120.0,
}


@pytest.mark.parametrize("name", verify.check_names())
def test_acceptance(name):
    result = verify.run_check(name, quick=False)
    status = "PASS" if result.passed else "FAIL"
    print(f"{status} {result.name:<26} [{result.seconds:7.2f}s] {result.details}")
    assert result.passed, f"{result.name}: {result.details}"
    assert result.seconds <= BUDGETS[name], (
        f"{result.name} took {result.seconds:.1f}s, budget {BUDGETS[name]}s"
    )


def test_quick_mode_shortens_hankel():
    quick = verify.run_check("hankel-growth", quick=True)
    assert quick.passed
    assert "kmax=60" in quick.details
