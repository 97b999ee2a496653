"""Partitions, multipartitions, updown tableaux, and content sequences.

Encodings
---------
* A *partition* is a tuple of weakly decreasing positive integers — trailing
  zeros are never stored, the empty partition is ``()``.
* A *multipartition* of level ``a`` is an ``a``-tuple of partitions.
* A *node* is ``(row, col, comp)``, all 1-based; for an addable node ``col``
  is the length the row reaches after adding the box, for a removable node
  the current length of the row.
* An *updown tableau* of length ``r`` is a tuple of ``r + 1`` multipartitions
  starting at the empty one, consecutive entries differing by exactly one box
  (added or removed).
* A *shape index* pairs ``f`` (the number of "removed pairs") with a
  multipartition of ``r - 2f``; ``enumerate_lambda`` lists them all.

>>> boundary_nodes(((2, 1),), "add")
[(1, 3, 1), (2, 2, 1), (3, 1, 1)]
>>> updown_count(1, 3, ((1,),))
3
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterator, Literal, NamedTuple

Partition = tuple[int, ...]
Multipartition = tuple[Partition, ...]
Node = tuple[int, int, int]
UpdownTableau = tuple[Multipartition, ...]


class LambdaIndex(NamedTuple):
    f: int
    shape: Multipartition


def is_partition(p) -> bool:
    return (
        isinstance(p, tuple)
        and all(isinstance(x, int) and x > 0 for x in p)
        and all(p[i] >= p[i + 1] for i in range(len(p) - 1))
    )


def double_factorial(m: int) -> int:
    """Product of m, m-2, m-4, ...; empty products are 1.

    >>> double_factorial(7)
    105
    >>> double_factorial(-1)
    1
    """
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def partitions(m: int) -> Iterator[Partition]:
    """All partitions of ``m`` in descending lexicographic order.

    >>> list(partitions(3))
    [(3,), (2, 1), (1, 1, 1)]
    """
    assert m >= 0
    if m == 0:
        yield ()
        return

    def gen(remaining: int, largest: int, prefix: tuple[int, ...]):
        if remaining == 0:
            yield prefix
            return
        for part in range(min(remaining, largest), 0, -1):
            yield from gen(remaining - part, part, prefix + (part,))

    yield from gen(m, m, ())


def multipartitions(a: int, m: int) -> Iterator[Multipartition]:
    """All level-``a`` multipartitions of total size ``m``, deterministic order."""
    assert a >= 1 and m >= 0
    if a == 1:
        for p in partitions(m):
            yield (p,)
        return
    for first_size in range(m, -1, -1):
        for p in partitions(first_size):
            for rest in multipartitions(a - 1, m - first_size):
                yield (p,) + rest


def size(mp: Multipartition) -> int:
    return sum(sum(p) for p in mp)


def add_node(mp: Multipartition, node: Node) -> Multipartition:
    row, col, comp = node
    p = list(mp[comp - 1])
    if row == len(p) + 1:
        p.append(1)
    else:
        p[row - 1] += 1
    assert p[row - 1] == col, f"node {node} is not addable to {mp}"
    assert is_partition(tuple(p))
    return mp[: comp - 1] + (tuple(p),) + mp[comp:]


def remove_node(mp: Multipartition, node: Node) -> Multipartition:
    row, col, comp = node
    p = list(mp[comp - 1])
    assert 1 <= row <= len(p) and p[row - 1] == col, f"node {node} is not removable from {mp}"
    p[row - 1] -= 1
    while p and p[-1] == 0:
        p.pop()
    assert is_partition(tuple(p))
    return mp[: comp - 1] + (tuple(p),) + mp[comp:]


def boundary_nodes(mp: Multipartition, direction: Literal["add", "remove"]) -> list[Node]:
    """Addable or removable nodes of a multipartition, ordered by (comp, row).

    >>> boundary_nodes(((), ()), "add")
    [(1, 1, 1), (1, 1, 2)]
    >>> boundary_nodes(((2, 1),), "remove")
    [(1, 2, 1), (2, 1, 1)]
    """
    assert direction in ("add", "remove")
    out: list[Node] = []
    for comp, p in enumerate(mp, start=1):
        if direction == "add":
            for row in range(1, len(p) + 2):
                cur = p[row - 1] if row <= len(p) else 0
                above = p[row - 2] if row >= 2 else None
                if above is None or cur < above:
                    out.append((row, cur + 1, comp))
        else:
            for row in range(1, len(p) + 1):
                below = p[row] if row < len(p) else 0
                if p[row - 1] > below:
                    out.append((row, p[row - 1], comp))
    return out


def step_node(before: Multipartition, after: Multipartition) -> tuple[Node, int]:
    """The single node by which two shapes differ, with sign +1 (added) or -1.

    >>> step_node(((1,),), ((2,),))
    ((1, 2, 1), 1)
    """
    diff = size(after) - size(before)
    assert diff in (1, -1), "shapes must differ by exactly one box"
    if diff == 1:
        for node in boundary_nodes(before, "add"):
            if add_node(before, node) == after:
                return node, 1
    else:
        for node in boundary_nodes(before, "remove"):
            if remove_node(before, node) == after:
                return node, -1
    raise ValueError(f"{before} and {after} do not differ by one box")


def enumerate_lambda(a: int, r: int) -> list[LambdaIndex]:
    """All pairs (f, shape) with |shape| = r - 2f, 0 <= f <= r//2.

    >>> [(f, s) for f, s in enumerate_lambda(1, 2)]
    [(0, ((2,),)), (0, ((1, 1),)), (1, ((),))]
    """
    assert a >= 1 and r >= 0
    out = []
    for f in range(r // 2 + 1):
        for mp in multipartitions(a, r - 2 * f):
            out.append(LambdaIndex(f, mp))
    return out


def _neighbours(mp: Multipartition) -> Iterator[Multipartition]:
    for node in boundary_nodes(mp, "add"):
        yield add_node(mp, node)
    for node in boundary_nodes(mp, "remove"):
        yield remove_node(mp, node)


def updown_tableaux(a: int, r: int, shape: Multipartition) -> list[UpdownTableau]:
    """All length-``r`` one-box walks from the empty multipartition to ``shape``.

    >>> len(updown_tableaux(1, 3, ((1,),)))
    3
    """
    assert len(shape) == a
    if (r - size(shape)) % 2 != 0 or size(shape) > r:
        raise ValueError(f"shape {shape} unreachable in {r} steps")
    empty: Multipartition = ((),) * a
    out: list[UpdownTableau] = []

    def walk(path: list[Multipartition]) -> None:
        steps_left = r - (len(path) - 1)
        gap = size(path[-1]) - size(shape)
        if abs(gap) > steps_left or (steps_left - gap) % 2 != 0:
            return
        if steps_left == 0:
            if path[-1] == shape:
                out.append(tuple(path))
            return
        for nxt in _neighbours(path[-1]):
            path.append(nxt)
            walk(path)
            path.pop()

    walk([empty])
    return out


def updown_count_table(a: int, r: int) -> dict[Multipartition, int]:
    """Walk counts |{walks of length r from empty to shape}| for every shape.

    Dynamic programming over shapes per prefix length; the result covers all
    shapes reachable in exactly ``r`` steps (i.e. every shape of any
    ``enumerate_lambda(a, r)`` entry).
    """
    empty: Multipartition = ((),) * a
    counts: dict[Multipartition, int] = {empty: 1}
    for _ in range(r):
        nxt: dict[Multipartition, int] = {}
        for mp, c in counts.items():
            for nb in _neighbours(mp):
                nxt[nb] = nxt.get(nb, 0) + c
        counts = nxt
    return counts


def updown_count(a: int, r: int, shape: Multipartition) -> int:
    assert len(shape) == a
    if (r - size(shape)) % 2 != 0 or size(shape) > r:
        raise ValueError(f"shape {shape} unreachable in {r} steps")
    return updown_count_table(a, r).get(shape, 0)


def content_sequence(t: UpdownTableau, u) -> list[Fraction]:
    """Contents of the boxes touched along a walk.

    Adding the node ``(l, h, comp)`` contributes ``u[comp-1] + h - l``;
    removing it contributes the negative.

    >>> from fractions import Fraction as F
    >>> content_sequence(((( ),), ((1,),), ((2,),)), [F(0)])
    [Fraction(0, 1), Fraction(1, 1)]
    """
    u = [Fraction(x) for x in u]
    assert t and len(t[0]) == len(u), "component count must match parameter count"
    out = []
    for before, after in itertools.pairwise(t):
        (l, h, comp), sign = step_node(before, after)
        out.append(sign * (u[comp - 1] + h - l))
    return out


def transpose(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x >= i) for i in range(1, p[0] + 1))


def conjugate(mp: Multipartition, convention: str) -> Multipartition:
    """Conjugate multipartition under one of two conventions.

    ``"rev-transpose"`` reverses the component order and transposes each
    component; ``"transpose"`` transposes componentwise only.

    >>> conjugate(((2,), ()), "rev-transpose")
    ((), (1, 1))
    """
    if convention == "rev-transpose":
        return tuple(transpose(p) for p in reversed(mp))
    if convention == "transpose":
        return tuple(transpose(p) for p in mp)
    raise ValueError(f"unknown conjugation convention: {convention!r}")
