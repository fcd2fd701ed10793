"""
Tests retrieving whole messages through a placement.
"""
from fractions import Fraction

import numpy as np
from hetpir.core.exceptions import DomainError
from hetpir.core.model import PlacementPlan, StorageProfile
from hetpir.placement.explicit_assignment import place_n3_table
from hetpir.retrieval.composition import (as_message_array, random_messages,
                                          retrieve)
from hetpir.retrieval.layout import make_layout
import pytest

F = Fraction


@pytest.mark.parametrize("plan, download", [
    (PlacementPlan({"1,2,3": 1}, StorageProfile((1, 1, 1), 3)), 39),
    (place_n3_table(StorageProfile((F(9, 10), F(3, 5), F(3, 10)), 3)), 160),
    (PlacementPlan({"1": 1}, StorageProfile((1,), 3)), 3),
])
def test_retrieve(plan, download):
    layout = make_layout(plan)
    messages = random_messages(plan.profile.K, layout.length, seed=2)
    for theta in range(1, plan.profile.K+1):
        result = retrieve(plan, layout, theta, messages, seed=9)
        assert np.array_equal(result.message, messages[theta-1]), f"message {theta} retrieved incorrectly"
        assert result.download_count == download
        assert Fraction(result.download_count, layout.length) == plan.objective()


def test_random_messages():
    messages = random_messages(3, 10, seed=4)
    assert messages.shape == (3, 10) and messages.dtype == np.uint8
    assert np.array_equal(messages, random_messages(3, 10, seed=4))


def test_as_message_array():
    assert as_message_array([[1, 2], [3, 4]], 2, 2).dtype == np.uint8
    with pytest.raises(DomainError):
        as_message_array(np.zeros((2, 3)), 2, 2)
