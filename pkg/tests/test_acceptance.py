"""Exit criteria, one test each.

The whole suite runs once per module under seeds {1, 2, 3} and both primes;
criteria 1-6 are asserted on the first configuration and criterion 7 compares
all six.  Pass/fail lines are printed in the terminal summary.
"""

import pytest

from terracini.acceptance import run_all

ACCEPTANCE_LINES = []


@pytest.fixture(scope="module")
def results():
    out = run_all(trials=3)
    ACCEPTANCE_LINES.extend(c.line() for c in out)
    return {c.number: c for c in out}


@pytest.mark.slow
@pytest.mark.parametrize(
    "number",
    [
        pytest.param(1, id="1-flagship-defective-cells"),
        pytest.param(2, id="2-sweep-agreement"),
        pytest.param(3, id="3-classical-secant-order-zero"),
        pytest.param(4, id="4-interpolation-golden-table"),
        pytest.param(5, id="5-bridge-identity"),
        pytest.param(6, id="6-lemma-suite"),
        pytest.param(7, id="7-reproducibility"),
    ],
)
def test_criterion(results, number):
    criterion = results[number]
    print(criterion.line())
    assert criterion.passed, criterion.detail
