"""The ten acceptance criteria at full Monte Carlo size and stated tolerances.

Each test prints a ``[PASS]``/``[FAIL]`` line (also collected into the
terminal summary). ``ACCEPTANCE_LEVEL=fast`` runs the 1e5-trial variant.
"""

import os
import re

import pytest

from isac_sensing import validation

LEVEL = os.environ.get("ACCEPTANCE_LEVEL", "full")


@pytest.mark.parametrize("number", sorted(validation.CRITERIA),
                         ids=[f"{n:02d}-" + re.sub(r"\W+", "_", validation.CRITERIA[n][0]).strip("_")
                              for n in sorted(validation.CRITERIA)])
def test_criterion(number, acceptance_log):
    result = validation.run_criterion(number, LEVEL)
    acceptance_log.append(result.line())
    print(result.line())
    assert result.passed, result.line()
