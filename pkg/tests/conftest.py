from datetime import date, timedelta

import pytest

from normcase.engine import init_state
from normcase.policy import decode_answers, load_bundled_policy

FIXED_TODAY = date(2026, 8, 10)


@pytest.fixture(scope="session")
def bundle():
    return load_bundled_policy()


@pytest.fixture
def goal1_answers(bundle):
    return decode_answers(bundle.spec, bundle.fixtures["usertest-goal1"].answers)


@pytest.fixture
def goal1_state(bundle, goal1_answers):
    answers = dict(goal1_answers)
    answers["decision-term"] = FIXED_TODAY + timedelta(days=56)
    return init_state(bundle.spec, answers, FIXED_TODAY)
