import numpy as np
import pytest

from qadder.errors import DomainError
from qadder.qudit import (
    TupleGrouping,
    format_grouping,
    isometry_check,
    polygon_tuples,
    verify_grouping,
)


def as_sets(grouping):
    return {frozenset(t) for t in grouping.tuples}


PAPER_D4 = {
    frozenset({(0, 1), (3, 2)}),
    frozenset({(1, 2), (0, 3)}),
    frozenset({(2, 3), (1, 0)}),
    frozenset({(3, 0), (2, 1)}),
    frozenset({(0, 0), (1, 3)}),
    frozenset({(1, 1), (2, 0)}),
    frozenset({(2, 2), (3, 1)}),
    frozenset({(3, 3), (0, 2)}),
}

PAPER_D5 = {
    frozenset({(0, 1), (4, 2), (3, 3)}),
    frozenset({(1, 2), (0, 3), (4, 4)}),
    frozenset({(2, 3), (1, 4), (0, 0)}),
    frozenset({(3, 4), (2, 0), (1, 1)}),
    frozenset({(4, 0), (3, 1), (2, 2)}),
    frozenset({(1, 0), (2, 4)}),
    frozenset({(2, 1), (3, 0)}),
    frozenset({(3, 2), (4, 1)}),
    frozenset({(4, 3), (0, 2)}),
    frozenset({(0, 4), (1, 3)}),
}

# canonical output for d=3, frozen from the polygon rule
CANONICAL_D3 = {
    frozenset({(0, 1), (2, 2)}),
    frozenset({(1, 2), (0, 0)}),
    frozenset({(2, 0), (1, 1)}),
    frozenset({(1, 0)}),
    frozenset({(2, 1)}),
    frozenset({(0, 2)}),
}


def test_d4_matches_published_tuples():
    assert as_sets(polygon_tuples(4)) == PAPER_D4


def test_d5_matches_published_tuples():
    assert as_sets(polygon_tuples(5)) == PAPER_D5


def test_d3_canonical_output():
    g = polygon_tuples(3)
    assert as_sets(g) == CANONICAL_D3
    assert len(g.tuples) == 6
    assert sum(len(t) for t in g.tuples) == 9
    assert verify_grouping(g).passed


def test_small_d_rejected():
    for d in (0, 1, 2):
        with pytest.raises(DomainError):
            polygon_tuples(d)


def test_all_dimensions_valid_and_isometric():
    for d in range(3, 13):
        g = polygon_tuples(d)
        assert verify_grouping(g).passed, d
        assert isometry_check(g), d


def test_label_count_identity():
    # monogons + directed diagonals + directed sides account for every label
    for d in range(3, 13):
        assert d + d * (d - 3) + 2 * d == d * d


def test_verify_flags_shared_index():
    g = TupleGrouping(d=2, tuples=(frozenset({(0, 1), (1, 0)}),))
    report = verify_grouping(g)
    assert not report.no_shared_index
    assert not report.passed


def test_verify_flags_wrong_count_and_coverage():
    base = polygon_tuples(4)
    merged = (base.tuples[0] | base.tuples[1],) + base.tuples[2:]
    report = verify_grouping(TupleGrouping(d=4, tuples=merged))
    assert not report.count_is_2d
    assert report.disjoint and report.full_coverage
    assert not report.passed


def test_isometry_false_for_shared_index_partition():
    # swap members between two tuples: still a partition into 2d tuples,
    # but (0,1) and (0,3) now share index 0
    base = polygon_tuples(4)
    t0, t1 = set(base.tuples[0]), set(base.tuples[1])
    t0.remove((3, 2))
    t1.remove((0, 3))
    t0.add((0, 3))
    t1.add((3, 2))
    tampered = TupleGrouping(d=4, tuples=(frozenset(t0), frozenset(t1)) + base.tuples[2:])
    assert not verify_grouping(tampered).passed
    assert isometry_check(tampered) is False


def test_isometry_raises_on_non_partition():
    base = polygon_tuples(4)
    with pytest.raises(ValueError):
        isometry_check(TupleGrouping(d=4, tuples=base.tuples[:-1]))


def test_isometry_invariant_under_tuple_permutation():
    rng = np.random.default_rng(5)
    g = polygon_tuples(6)
    order = rng.permutation(len(g.tuples))
    shuffled = TupleGrouping(d=6, tuples=tuple(g.tuples[k] for k in order))
    assert isometry_check(shuffled) is True


def test_format_grouping_readable():
    text = format_grouping(polygon_tuples(4))
    assert text.splitlines()[0] == "{B01, B32}"
    assert len(text.splitlines()) == 8
