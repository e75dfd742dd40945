"""Tests for kmgroups.limits"""
import pytest

from kmgroups.limits import Limits, DEFAULT

def test_defaults():
    assert DEFAULT.max_height == 24
    assert DEFAULT.nilpotency_cap == 64
    assert DEFAULT.serre_check_height == 6
    assert 'max_height=24' in repr(DEFAULT)

def test_immutable():
    with pytest.raises(AttributeError):
        DEFAULT.max_height = 3
    changed = DEFAULT.replace(max_height=3)
    assert changed.max_height == 3
    assert DEFAULT.max_height == 24
    assert changed.search_budget == DEFAULT.search_budget

def test_validation():
    with pytest.raises(ValueError):
        Limits(max_height=0)
    with pytest.raises(ValueError):
        DEFAULT.replace(straighten_budget=-1)

def test_from_env():
    limits = Limits.from_env({'KMGROUPS_MAX_HEIGHT': '7', 'KMGROUPS_NILPOTENCY_CAP': '9',
                              'UNRELATED': 'x'})
    assert limits.max_height == 7
    assert limits.nilpotency_cap == 9
    assert limits.max_component_dim == DEFAULT.max_component_dim
    with pytest.raises(ValueError):
        Limits.from_env({'KMGROUPS_SEARCH_BUDGET': 'lots'})
