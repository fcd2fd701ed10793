"""
Tests choosing the message length and cutting messages into partitions.
"""
from fractions import Fraction

from hetpir.core.configuration import RetrievalParameters
from hetpir.core.exceptions import ContractError, DomainError, LayoutSizeError
from hetpir.core.model import PlacementPlan, StorageProfile, SubsetId
from hetpir.retrieval.layout import make_layout, minimal_length
import pytest

F = Fraction


def table_plan():
    profile = StorageProfile((F(9, 10), F(3, 5), F(3, 10)), 3)
    return PlacementPlan({"1": F(1, 5), "1,2": F(1, 2), "1,3": F(1, 5), "2,3": F(1, 10)}, profile)


@pytest.mark.parametrize("plan, expected", [
    (PlacementPlan({"1,2,3": 1}, StorageProfile((1, 1, 1), 3)), 27),
    (PlacementPlan({"1,2": 1}, StorageProfile((1, 1), 4)), 16),
    (PlacementPlan({"1": 1}, StorageProfile((1,), 3)), 1),
    (PlacementPlan({"1,2": F(1, 2), "1,2,3": F(1, 2)}, StorageProfile((1, 1, F(1, 2)), 2)), 72),
    (table_plan(), 80),
])
def test_minimal_length(plan, expected):
    assert minimal_length(plan) == expected


def test_make_layout():
    layout = make_layout(table_plan())
    assert layout.length == 80
    assert layout.message_count == 3
    assert [str(s) for s in layout.subsets] == ["1", "1,2", "1,3", "2,3"]
    assert list(layout.lengths.values()) == [16, 40, 16, 8]
    assert list(layout.offsets.values()) == [0, 16, 56, 72]
    assert layout.partition_slice(SubsetId.of(1, 3)) == slice(56, 72)
    assert layout.download_count() == 160, "download should be 2L"


def test_base_length():
    layout = make_layout(table_plan(), base_length=2)
    assert layout.length == 160
    assert layout.lengths[SubsetId.of(2, 3)] == 16
    assert make_layout(table_plan(), parameters=RetrievalParameters(base_length=3)).length == 240


def test_layout_errors():
    with pytest.raises(LayoutSizeError) as error:
        make_layout(table_plan(), parameters=RetrievalParameters(max_length=50))
    assert error.value.minimal_length == 80 and error.value.max_length == 50

    with pytest.raises(DomainError):
        make_layout(table_plan(), base_length=0)

    short = PlacementPlan({"1": F(1, 2)}, StorageProfile((1, 1), 2))
    with pytest.raises(ContractError):
        make_layout(short)
    negative = PlacementPlan({"1": F(-1, 2), "1,2": F(3, 2)}, StorageProfile((1, 1), 2))
    with pytest.raises(ContractError):
        make_layout(negative)
