"""Grouping of qudit-adder residual labels via regular-polygon directions.

The d*d residual labels (i, j) are drawn on a regular d-gon: an ordered
pair with i != j is the directed chord from vertex i to vertex j, and
(i, i) is the monogon at vertex i. Labels whose chords are parallel,
equally oriented, and vertex-disjoint can share one residual state, so
the d*d labels collapse into 2d tuples and the adder needs only a qubit
ancilla.

The geometry reduces to modular arithmetic. The chord i -> j has
direction angle pi*(i+j)/d + pi/2 when j > i and the opposite direction
otherwise, so the direction class of a directed chord is

    key(i, j) = (i + j + d*[j < i]) mod 2d

and two chords are parallel with equal orientation exactly when their
keys match. Chords perpendicular to the axis through vertex v and its
opposite satisfy i + j = 2v (mod d).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

Label = tuple[int, int]

GRAM_ATOL = 1e-10


@dataclass(frozen=True)
class TupleGrouping:
    """A claimed partition of the d*d residual labels into tuples."""

    d: int
    tuples: tuple[frozenset[Label], ...]


def _direction_key(i: int, j: int, d: int) -> int:
    return (i + j + (d if j < i else 0)) % (2 * d)


def polygon_tuples(d: int) -> TupleGrouping:
    """Group the residual labels by the polygon rule, yielding 2d tuples.

    Even d: each tuple collects the chords of one direction class; the
    monogon at vertex v joins the class of chords perpendicular to the
    axis through v, oriented with key (2v + d) mod 2d. Odd d: the
    monogon opposite the edge v -> v+1 joins that edge's class, and the
    reversed classes stay monogon-free.
    """
    if d < 3:
        raise DomainError(f"polygon grouping needs d >= 3, got {d}")
    classes: dict[int, set[Label]] = {k: set() for k in range(2 * d)}
    for i in range(d):
        for j in range(d):
            if i != j:
                classes[_direction_key(i, j, d)].add((i, j))
    if d % 2 == 0:
        for v in range(d):
            classes[(2 * v + d) % (2 * d)].add((v, v))
    else:
        for v in range(d):
            s = (2 * v) % d
            classes[s if s % 2 == 1 else s + d].add((v, v))
    # present edge-direction classes first, then the monogon/reversed ones
    ordered = [(2 * i + 1) % (2 * d) for i in range(d)]
    if d % 2 == 0:
        ordered += [(2 * v + d) % (2 * d) for v in range(d)]
    else:
        ordered += [(2 * i + 1 + d) % (2 * d) for i in range(d)]
    return TupleGrouping(d=d, tuples=tuple(frozenset(classes[k]) for k in ordered))


@dataclass(frozen=True)
class GroupingReport:
    labels_in_range: bool
    disjoint: bool
    full_coverage: bool
    count_is_2d: bool
    no_shared_index: bool
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_grouping(g: TupleGrouping) -> GroupingReport:
    """Itemized validity check of a grouping; failures are reported, not raised."""
    d = g.d
    failures: list[str] = []

    in_range = all(0 <= i < d and 0 <= j < d for t in g.tuples for (i, j) in t)
    if not in_range:
        failures.append("label index outside [0, d)")

    seen: set[Label] = set()
    disjoint = True
    for t in g.tuples:
        if seen & t:
            disjoint = False
        seen |= t
    if not disjoint:
        failures.append("tuples are not pairwise disjoint")

    coverage = disjoint and in_range and len(seen) == d * d
    if not coverage:
        failures.append(f"union covers {len(seen)} labels, expected {d * d}")

    count_ok = len(g.tuples) == 2 * d
    if not count_ok:
        failures.append(f"{len(g.tuples)} tuples, expected {2 * d}")

    shared_ok = True
    for t in g.tuples:
        members = sorted(t)
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                if set(members[a]) & set(members[b]):
                    shared_ok = False
                    failures.append(
                        f"labels {members[a]} and {members[b]} share an index in one tuple"
                    )
    return GroupingReport(
        labels_in_range=in_range,
        disjoint=disjoint,
        full_coverage=coverage,
        count_is_2d=count_ok,
        no_shared_index=shared_ok,
        failures=tuple(failures),
    )


def isometry_check(g: TupleGrouping) -> bool:
    """True when the grouped adder map extends to a unitary.

    Each tuple gets one basis vector of a 2d-dimensional residual space;
    the column for label (i, j) is the normalized |i>+|j> tensored with
    its tuple's vector. The map is an isometry exactly when the Gram
    matrix of the d*d columns is the identity, which fails whenever two
    labels sharing an index were grouped together.

    The grouping must at least be a partition of the labels into 2d
    tuples for the construction to make sense; anything else raises.
    """
    d = g.d
    report = verify_grouping(g)
    if not (
        report.labels_in_range
        and report.disjoint
        and report.full_coverage
        and report.count_is_2d
    ):
        raise ValueError(f"grouping is not a partition into 2d tuples: {report.failures}")

    tuple_of: dict[Label, int] = {}
    for k, t in enumerate(g.tuples):
        for label in t:
            tuple_of[label] = k

    n_res = 2 * d
    columns = np.zeros((d * n_res, d * d), dtype=float)
    for col, (i, j) in enumerate((i, j) for i in range(d) for j in range(d)):
        sum_vec = np.zeros(d)
        sum_vec[i] += 1.0
        sum_vec[j] += 1.0
        sum_vec /= np.sqrt(2.0 + 2.0 * (i == j))
        res_vec = np.zeros(n_res)
        res_vec[tuple_of[(i, j)]] = 1.0
        columns[:, col] = np.kron(sum_vec, res_vec)
    gram = columns.T @ columns
    return bool(np.max(np.abs(gram - np.eye(d * d))) < GRAM_ATOL)


def format_label(label: Label, d: int) -> str:
    i, j = label
    return f"B{i}{j}" if d <= 10 else f"B{i},{j}"


def format_grouping(g: TupleGrouping) -> str:
    """One line per tuple, members in sorted order."""
    lines = []
    for t in g.tuples:
        inner = ", ".join(format_label(m, g.d) for m in sorted(t))
        lines.append("{" + inner + "}")
    return "\n".join(lines)
