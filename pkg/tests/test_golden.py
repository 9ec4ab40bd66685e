from __future__ import annotations

import pytest

from closure_descent.golden import SUITES


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_golden_facts(suite):
    facts = SUITES[suite]()
    failed = [desc for desc, ok in facts if not ok]
    assert not failed, failed
    assert len(facts) >= 10
