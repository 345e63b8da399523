"""The acceptance checklist, one test per criterion.

The K, H and O parts of criteria 8 and 9 run when GRADCON_FULL=1.  Each result
line is collected and printed in the terminal summary.
"""

import json

import pytest

from conftest import CHECKLIST, FULL
from gradcon.acceptance import CRITERIA, run


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number:02d}")
def test_criterion(criterion):
    result = run(criterion, full=FULL)
    CHECKLIST.append(result.line())
    print(result.line())
    assert result.ok, json.dumps(result.detail, sort_keys=True, default=str)
