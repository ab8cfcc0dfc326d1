"""The eleven acceptance criteria over the default matrix.

Each criterion runs on every instance; conftest prints one pass/fail line
per criterion in the terminal summary.
"""

import pytest

from dualpolar.verify import CHECKS, DEFAULT_MATRIX, run_check

from conftest import ACCEPTANCE, get_instance

GOLDEN_VERTICES = {("C", 2, 2): 15, ("C", 3, 2): 135, ("B", 2, 3): 40, ("D", 3, 2): 30,
                   ("2D", 2, 2): 45, ("2A_even", 2, 2): 27, ("2A_odd", 2, 2): 297}
GOLDEN_LAMBDA1 = {("C", 2, 2): 4, ("C", 3, 2): 24, ("D", 3, 2): 12}

_results = ACCEPTANCE


def _key(t):
    return f"{t[0]}-{t[1]}-{t[2]}"


@pytest.mark.parametrize("inst", DEFAULT_MATRIX, ids=_key)
@pytest.mark.parametrize("criterion", range(1, len(CHECKS) + 1), ids=lambda i: f"{i:02d}-{CHECKS[i - 1][0]}")
def test_criterion(criterion, inst):
    res = run_check(criterion, get_instance(*inst))
    _results.setdefault(criterion, {})[_key(inst)] = res.status
    assert res.status == "pass", res.detail.get("witness")
    if criterion == 1:
        assert res.detail["levels"][-1] == GOLDEN_VERTICES[inst]
    if criterion == 8 and inst in GOLDEN_LAMBDA1:
        assert res.detail["lambda"][1] == GOLDEN_LAMBDA1[inst]
    if criterion == 10 and inst[1] == 2:
        assert res.reason and "d = 2" in res.reason
    if criterion == 10 and inst[1] >= 3:
        assert res.detail["counts"]["two_space"] > 0
