"""Exact Specht modules for small symmetric groups.

Everything is done over the rationals in the tabloid model: the permutation
module M^shape has the row-equivalence classes of fillings (tabloids) as an
orthonormal basis, a polytabloid is the signed column-group sum of a tabloid,
and the Specht module is spanned by the polytabloids of standard tableaux.
Permutations act by relabeling tabloid entries; the action matrix on the
standard-polytabloid basis is recovered by exact linear solves against the
polytabloid columns.  The bilinear form is the tabloid inner product
restricted to the Specht span — degenerate exactly where the classical
theory says it should be, which is what the diagram-algebra oracle consumes.

Entries are 0-based throughout; a permutation is a tuple ``p`` with ``p[i]``
the image of ``i``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from itertools import permutations

from .linalg import solve

Tabloid = tuple[tuple[int, ...], ...]
Tableau = tuple[tuple[int, ...], ...]
Perm = tuple[int, ...]


def perm_sign(p: Perm) -> int:
    """Sign of a permutation given as an image tuple.

    >>> perm_sign((1, 0, 2))
    -1
    """
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def cycle_type(p: Perm) -> tuple[int, ...]:
    """Descending cycle lengths, the conjugacy-class invariant.

    >>> cycle_type((1, 0, 2, 3))
    (2, 1, 1)
    """
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def canonical_tabloid(rows: Tableau) -> Tabloid:
    return tuple(tuple(sorted(row)) for row in rows)


def tabloids(shape: tuple[int, ...]) -> list[Tabloid]:
    """All tabloids of the given shape on {0, ..., sum(shape)-1}.

    >>> len(tabloids((2, 1)))
    3
    """
    m = sum(shape)

    def fill(remaining: frozenset[int], rows: tuple[tuple[int, ...], ...], level: int):
        if level == len(shape):
            yield rows
            return
        from itertools import combinations

        for chosen in combinations(sorted(remaining), shape[level]):
            yield from fill(remaining - set(chosen), rows + (chosen,), level + 1)

    return list(fill(frozenset(range(m)), (), 0))


def standard_tableaux(shape: tuple[int, ...]) -> list[Tableau]:
    """Row- and column-strict fillings with 0..m-1.

    >>> len(standard_tableaux((2, 1)))
    2
    """
    m = sum(shape)
    out: list[Tableau] = []

    def grow(rows: list[list[int]], entry: int) -> None:
        if entry == m:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(shape)):
            if len(rows[i]) >= shape[i]:
                continue
            if i > 0 and len(rows[i - 1]) <= len(rows[i]):
                continue
            rows[i].append(entry)
            grow(rows, entry + 1)
            rows[i].pop()

    grow([[] for _ in shape], 0)
    return out


def polytabloid(t: Tableau) -> dict[Tabloid, int]:
    """Signed column-group orbit sum of the tableau's tabloid."""
    m = sum(len(row) for row in t)
    ncols = max((len(row) for row in t), default=0)
    columns = [
        [t[i][j] for i in range(len(t)) if len(t[i]) > j] for j in range(ncols)
    ]
    out: dict[Tabloid, int] = {}
    def sweep(col_idx: int, mapping: list[int], sign: int) -> None:
        if col_idx == len(columns):
            rows = tuple(tuple(mapping[e] for e in row) for row in t)
            key = canonical_tabloid(rows)
            out[key] = out.get(key, 0) + sign
            if out[key] == 0:
                del out[key]
            return
        col = columns[col_idx]
        for images in permutations(col):
            s = perm_sign(tuple(col.index(x) for x in images))
            for src, dst in zip(col, images):
                mapping[src] = dst
            sweep(col_idx + 1, mapping, sign * s)
        for x in col:
            mapping[x] = x

    sweep(0, list(range(m)), 1)
    return out


class SpechtModule:
    """The Specht module of one partition, with exact action and form."""

    def __init__(self, shape: tuple[int, ...]):
        assert all(a > 0 for a in shape) and list(shape) == sorted(shape, reverse=True)
        self.shape = tuple(shape)
        self.m = sum(shape)
        self.tabloid_list = tabloids(self.shape)
        self.tabloid_index = {tb: i for i, tb in enumerate(self.tabloid_list)}
        self.standard = standard_tableaux(self.shape)
        self.basis = [polytabloid(t) for t in self.standard]
        self.dim = len(self.basis)
        self._matrix = [
            [Fraction(self.basis[j].get(tb, 0)) for j in range(self.dim)]
            for tb in self.tabloid_list
        ]
        self._char_memo: dict[tuple[int, ...], Fraction] = {}

    # -- vectors in the tabloid model ----------------------------------

    def act_tabloid_vector(self, p: Perm, vec: dict[Tabloid, Fraction]) -> dict[Tabloid, Fraction]:
        out: dict[Tabloid, Fraction] = {}
        for tb, coeff in vec.items():
            image = canonical_tabloid(tuple(tuple(p[e] for e in row) for row in tb))
            out[image] = out.get(image, Fraction(0)) + coeff
        return {tb: c for tb, c in out.items() if c}

    def coordinates(self, vec: dict[Tabloid, Fraction]) -> list[Fraction]:
        """Exact expansion of a Specht-span vector in the standard basis."""
        rhs = [Fraction(vec.get(tb, 0)) for tb in self.tabloid_list]
        coords = solve(self._matrix, rhs)
        assert coords is not None, "vector is not in the Specht span"
        return coords

    def action_matrix(self, p: Perm) -> list[list[Fraction]]:
        cols = [self.coordinates(self.act_tabloid_vector(p, vec)) for vec in self.basis]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def character(self, p: Perm) -> Fraction:
        """Trace of the permutation on the module, memoized by cycle type."""
        key = cycle_type(p)
        cached = self._char_memo.get(key)
        if cached is not None:
            return cached
        mat = self.action_matrix(p)
        tr = sum((mat[i][i] for i in range(self.dim)), Fraction(0))
        self._char_memo[key] = tr
        return tr

    def pairing(self, v1: dict[Tabloid, Fraction], v2: dict[Tabloid, Fraction]) -> Fraction:
        """Tabloid inner product (tabloids orthonormal)."""
        if len(v2) < len(v1):
            v1, v2 = v2, v1
        return sum((c * v2.get(tb, Fraction(0)) for tb, c in v1.items()), Fraction(0))

    def form_matrix(self) -> list[list[Fraction]]:
        return [[self.pairing(a, b) for b in self.basis] for a in self.basis]


@cache
def specht_module(shape: tuple[int, ...]) -> SpechtModule:
    return SpechtModule(shape)
