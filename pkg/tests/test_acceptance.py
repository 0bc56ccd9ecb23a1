"""One test per acceptance criterion; each prints its PASS/FAIL line.

Run directly (`python tests/test_acceptance.py`) for just the table.
"""

import pytest

from monoidvar.acceptance import CRITERIA, run_all


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number}")
def test_criterion(criterion, capsys):
    kw = {"seed": 0} if criterion.number in (5, 8, 9, 10) else {}
    res = criterion(**kw)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.ok, res.detail


if __name__ == "__main__":
    for r in run_all():
        print(r.line())
