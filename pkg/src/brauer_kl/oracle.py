"""Brute-force Brauer diagram algebra over exact rationals.

Ground truth for the single-parameter algebra B_r(delta) at r <= 4: diagrams
are perfect matchings on r top and r bottom points, multiplication is
concatenation with closed loops traded for powers of delta, and cell modules
are spanned by half-diagrams (f disjoint top arcs) tensored with Specht
vectors of the symmetric group on the r - 2f free points.  The decomposition
matrix is computed from exact character identities: the character of each
cell module and of each Gram-quotient simple is evaluated on every basis
diagram, and the integer multiplicities solve the resulting linear system
(characters of pairwise non-isomorphic simples are linearly independent in
characteristic zero).  The regular-representation trace form and its radical
are exposed separately so the semisimplicity bookkeeping can be audited
against the same diagrams.

All of this is deliberately independent of the weight/KL machinery: nothing
here imports from the canonical-basis side, so agreement between the two is
meaningful evidence.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from itertools import combinations

from . import combinat
from .linalg import mat_vec, nullspace, rank, solve
from .specht import SpechtModule, specht_module

Diagram = tuple[int, ...]  # partner array on 2r points; involution, no fixed point
Caps = tuple[tuple[int, int], ...]  # disjoint sorted arcs on the top points


class DimensionTooLarge(Exception):
    """Refuse brute-force runs beyond (2*4-1)!! = 105 diagrams."""


# -- diagrams ---------------------------------------------------------------


def identity_diagram(r: int) -> Diagram:
    """The matching joining top i to bottom i.

    >>> identity_diagram(2)
    (2, 3, 0, 1)
    """
    return tuple(list(range(r, 2 * r)) + list(range(r)))


@cache
def all_diagrams(r: int) -> tuple[Diagram, ...]:
    """All perfect matchings on 2r points; (2r-1)!! of them.

    >>> len(all_diagrams(3))
    15
    """
    out: list[Diagram] = []

    def build(partner: list[int]) -> None:
        try:
            i = partner.index(-1)
        except ValueError:
            out.append(tuple(partner))
            return
        for j in range(i + 1, len(partner)):
            if partner[j] == -1:
                partner[i], partner[j] = j, i
                build(partner)
                partner[i] = partner[j] = -1

    build([-1] * (2 * r))
    return tuple(out)


def flip(d: Diagram) -> Diagram:
    """Top-bottom reflection (the algebra's anti-automorphism).

    >>> flip(identity_diagram(2)) == identity_diagram(2)
    True
    """
    r = len(d) // 2

    def sw(i: int) -> int:
        return i + r if i < r else i - r

    out = [0] * (2 * r)
    for i in range(2 * r):
        out[sw(i)] = sw(d[i])
    return tuple(out)


def multiply(d1: Diagram, d2: Diagram, delta: Fraction | None = None) -> tuple[Diagram, int]:
    """Concatenate d1 over d2; returns (product diagram, loop count).

    The bottom points of d1 are glued to the top points of d2; closed loops
    in the middle layer each contribute one power of the loop scalar.

    >>> e = (1, 0, 3, 2)  # r=2: top arc + bottom arc
    >>> multiply(e, e)
    ((1, 0, 3, 2), 1)
    >>> multiply(identity_diagram(2), identity_diagram(2))
    ((2, 3, 0, 1), 0)
    """
    r = len(d1) // 2
    assert len(d2) == len(d1), "diagrams must share r"

    # node encoding: 0..r-1 top of d1; r..2r-1 middle; 2r..3r-1 bottom of d2
    def d1_next(x: int) -> int:
        return d1[x]

    def d2_next(x: int) -> int:  # x is a middle or bottom node index
        v = d2[x - r]
        return v + r

    partner = [-1] * (2 * r)
    visited_mid = [False] * r

    def trace(start: int, via_d1: bool) -> int:
        """Follow the strand from an outer node; return the outer node it ends at."""
        x, use_d1 = start, via_d1
        while True:
            x = d1_next(x) if use_d1 else d2_next(x)
            if use_d1 and x >= r:  # entered the middle from above
                visited_mid[x - r] = True
                use_d1 = False
            elif not use_d1 and r <= x < 2 * r:  # entered the middle from below
                visited_mid[x - r] = True
                use_d1 = True
            else:
                return x

    ends = list(range(r)) + list(range(2 * r, 3 * r))
    for a in ends:
        if (partner[a] if a < r else partner[a - r]) != -1:
            continue
        b = trace(a, via_d1=a < r)
        ia = a if a < r else a - r
        ib = b if b < r else b - r
        partner[ia], partner[ib] = ib, ia
    loops = 0
    for m in range(r):
        if visited_mid[m]:
            continue
        loops += 1
        x, use_d1 = m + r, False
        while True:
            x = d1_next(x) if use_d1 else d2_next(x)
            if visited_mid[x - r]:
                break
            visited_mid[x - r] = True
            use_d1 = not use_d1
    return tuple(partner), loops


AlgebraElement = dict[Diagram, Fraction]


def multiply_elements(x: AlgebraElement, y: AlgebraElement, delta: Fraction) -> AlgebraElement:
    out: AlgebraElement = {}
    for d1, c1 in x.items():
        for d2, c2 in y.items():
            prod, loops = multiply(d1, d2)
            coeff = c1 * c2 * delta**loops
            if coeff:
                out[prod] = out.get(prod, Fraction(0)) + coeff
    return {d: c for d, c in out.items() if c}


# -- regular representation and trace form (audit machinery) ---------------


def trace_form_matrix(r: int, delta: Fraction) -> list[list[Fraction]]:
    """Gram matrix of (a, b) -> trace of left multiplication by a*b."""
    diagrams = all_diagrams(r)
    index = {d: i for i, d in enumerate(diagrams)}
    # regular-representation trace of a single diagram g
    def reg_trace(g: Diagram) -> Fraction:
        total = Fraction(0)
        for e in diagrams:
            prod, loops = multiply(g, e)
            if prod == e:
                total += delta**loops
        return total

    mat = []
    for a in diagrams:
        row = []
        for b in diagrams:
            prod, loops = multiply(a, b)
            row.append(delta**loops * reg_trace(prod))
        mat.append(row)
    return mat


def trace_radical(r: int, delta: Fraction) -> list[AlgebraElement]:
    """Basis of the trace-form radical, as algebra elements."""
    diagrams = all_diagrams(r)
    vectors = nullspace(trace_form_matrix(r, delta))
    return [
        {d: c for d, c in zip(diagrams, vec) if c} for vec in vectors
    ]


# -- half-diagrams and cell modules -----------------------------------------


@cache
def caps(r: int, f: int) -> tuple[Caps, ...]:
    """All placements of f disjoint arcs on the r top points.

    >>> caps(4, 1)
    (((0, 1),), ((0, 2),), ((0, 3),), ((1, 2),), ((1, 3),), ((2, 3),))
    """
    out: list[Caps] = []

    def build(points: tuple[int, ...], chosen: Caps) -> None:
        if len(chosen) == f:
            out.append(tuple(sorted(chosen)))
            return
        if len(points) < 2 * (f - len(chosen)):
            return
        a = points[0]
        rest = points[1:]
        # a stays free
        build(rest, chosen)
        # or a pairs with a later point
        for b in rest:
            build(tuple(p for p in rest if p != b), chosen + ((a, b),))

    build(tuple(range(r)), ())
    return tuple(sorted(set(out)))


def free_points(r: int, S: Caps) -> tuple[int, ...]:
    used = {p for arc in S for p in arc}
    return tuple(p for p in range(r) if p not in used)


def act_on_caps(d: Diagram, S: Caps) -> tuple[int, Caps, tuple[int, ...]] | None:
    """Act with diagram d on the half-diagram S glued below it.

    Returns (loops, S', perm) where perm[i] is the new label of old free
    label i, or None if two free labels merge (the term falls into the
    higher-cap ideal).
    """
    r = len(d) // 2
    arc_of = {}
    for a, b in S:
        arc_of[a], arc_of[b] = b, a
    free = free_points(r, S)
    label = {p: i for i, p in enumerate(free)}
    visited_bottom: set[int] = set()
    top_done: set[int] = set()
    new_arcs: list[tuple[int, int]] = []
    end_label: dict[int, int] = {}  # top point -> old label

    for t in range(r):
        if t in top_done:
            continue
        x = d[t]
        while True:
            if x < r:  # another top point
                new_arcs.append((min(t, x), max(t, x)))
                top_done.add(t)
                top_done.add(x)
                break
            a = x - r  # a point of S
            visited_bottom.add(a)
            if a in label:
                end_label[t] = label[a]
                top_done.add(t)
                break
            b = arc_of[a]
            visited_bottom.add(b)
            x = d[b + r]
    if len(end_label) < len(free):
        return None  # some stub never reached the top: stub-stub join
    loops = 0
    for a in range(r):
        if a in visited_bottom or a in label:
            continue
        loops += 1
        x = a
        while x not in visited_bottom:
            visited_bottom.add(x)
            y = arc_of[x]
            visited_bottom.add(y)
            x = d[y + r] - r
    S2 = tuple(sorted(new_arcs))
    new_free = free_points(r, S2)
    position = {p: j for j, p in enumerate(new_free)}
    perm = [0] * len(free)
    for t, old in end_label.items():
        perm[old] = position[t]
    return loops, S2, tuple(perm)


def glue_caps(S: Caps, T: Caps, r: int) -> tuple[int, tuple[int, ...]] | None:
    """Pair two half-diagrams on the same r points.

    Returns (loops, tau) with tau[j] = the S-side label identified with
    T-side label j, or None when two same-side labels meet (form value 0).
    """
    s_arc, t_arc = {}, {}
    for a, b in S:
        s_arc[a], s_arc[b] = b, a
    for a, b in T:
        t_arc[a], t_arc[b] = b, a
    s_free = free_points(r, S)
    t_free = free_points(r, T)
    if len(s_free) != len(t_free):
        return None
    s_label = {p: i for i, p in enumerate(s_free)}
    t_label = {p: i for i, p in enumerate(t_free)}
    tau = [-1] * len(t_free)
    visited: set[int] = set()
    for p0 in t_free:
        # walk from the T-side stub, alternating S- and T-arcs
        x = p0
        visited.add(x)
        side = "s"  # next edge to traverse
        while True:
            if side == "s":
                if x in s_label:
                    tau[t_label[p0]] = s_label[x]
                    break
                x = s_arc[x]
                visited.add(x)
                side = "t"
            else:
                if x in t_label:
                    return None  # T-stub ran back into a T-stub
                x = t_arc[x]
                visited.add(x)
                side = "s"
    loops = 0
    for a in range(r):
        if a in visited or a in s_label or a in t_label:
            continue
        loops += 1
        x, side = a, "s"
        while True:
            visited.add(x)
            x = s_arc[x] if side == "s" else t_arc[x]
            side = "t" if side == "s" else "s"
            if x == a and side == "s":
                break
    return loops, tuple(tau)


class CellModule:
    """One cell module C(f, lam) of B_r(delta), with exact Gram data."""

    def __init__(self, r: int, f: int, lam: tuple[int, ...], delta: Fraction):
        assert 2 * f + sum(lam) == r, "caps and partition must fill r points"
        self.r, self.f, self.lam, self.delta = r, f, tuple(lam), delta
        self.caps = caps(r, f)
        self.specht: SpechtModule = specht_module(self.lam)
        self.sdim = self.specht.dim
        self.dim = len(self.caps) * self.sdim
        self._cap_index = {S: i for i, S in enumerate(self.caps)}

    # cell vectors are dense coordinate lists of length dim,
    # ordered (cap block 0 | cap block 1 | ...)

    def act(self, d: Diagram, vec: list[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for ci, S in enumerate(self.caps):
            block = vec[ci * self.sdim : (ci + 1) * self.sdim]
            if not any(block):
                continue
            hit = act_on_caps(d, S)
            if hit is None:
                continue
            loops, S2, perm = hit
            scale = self.delta**loops
            tab: dict = {}
            for j, cj in enumerate(block):
                if not cj:
                    continue
                for tb, coeff in self.specht.basis[j].items():
                    tab[tb] = tab.get(tb, Fraction(0)) + cj * coeff
            moved = self.specht.act_tabloid_vector(perm, tab)
            coords = self.specht.coordinates(moved)
            base = self._cap_index[S2] * self.sdim
            for j, cj in enumerate(coords):
                out[base + j] += scale * cj
        return out

    def character(self, d: Diagram) -> Fraction:
        total = Fraction(0)
        for S in self.caps:
            hit = act_on_caps(d, S)
            if hit is None:
                continue
            loops, S2, perm = hit
            if S2 != S:
                continue
            total += self.delta**loops * self.specht.character(perm)
        return total

    def gram_matrix(self) -> list[list[Fraction]]:
        G = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for ci, S in enumerate(self.caps):
            for cj, T in enumerate(self.caps):
                glued = glue_caps(S, T, self.r)
                if glued is None:
                    continue
                loops, tau = glued
                scale = self.delta**loops
                for i in range(self.sdim):
                    for j in range(self.sdim):
                        moved = self.specht.act_tabloid_vector(tau, self.specht.basis[j])
                        val = scale * self.specht.pairing(self.specht.basis[i], moved)
                        G[ci * self.sdim + i][cj * self.sdim + j] = val
        return G


# -- decomposition matrix ----------------------------------------------------


@dataclass
class OracleMatrix:
    """Decomposition matrix of B_r(delta): rows all cells, columns simples."""

    r: int
    delta: Fraction
    rows: list[tuple[int, tuple[int, ...]]]
    cols: list[tuple[int, tuple[int, ...]]]
    entries: dict[tuple[tuple[int, tuple[int, ...]], tuple[int, tuple[int, ...]]], int]

    def entry(self, row, col) -> int:
        return self.entries.get((row, col), 0)

    def to_json(self) -> dict:
        def label(t):
            f, lam = t
            return f"f{f}:" + (",".join(str(c) for c in lam) or "-")

        return {
            "schema": "brauer-kl/1",
            "oracle": {
                "r": self.r,
                "delta": str(self.delta),
                "rows": [label(t) for t in self.rows],
                "cols": [label(t) for t in self.cols],
                "entries": sorted(
                    [self.rows.index(a), self.cols.index(b), v]
                    for (a, b), v in self.entries.items()
                    if v
                ),
            },
        }


def cell_labels(r: int) -> list[tuple[int, tuple[int, ...]]]:
    """(f, partition) labels in enumeration order.

    >>> cell_labels(2)
    [(0, (2,)), (0, (1, 1)), (1, ())]
    """
    return [(idx.f, idx.shape[0]) for idx in combinat.enumerate_lambda(1, r)]


def oracle_decomposition_matrix(r: int, delta: Fraction) -> OracleMatrix:
    """Exact decomposition matrix [C(f,lam) : D(f',mu)] for B_r(delta)."""
    if r > 4:
        raise DimensionTooLarge(f"r={r} exceeds the brute-force budget of 105 diagrams (r <= 4)")
    delta = Fraction(delta)
    labels = cell_labels(r)
    diagrams = all_diagrams(r)
    cells = {lab: CellModule(r, lab[0], lab[1], delta) for lab in labels}
    grams = {lab: cells[lab].gram_matrix() for lab in labels}
    cols = [lab for lab in labels if any(any(row) for row in grams[lab])]

    chi_C: dict[tuple[int, tuple[int, ...]], list[Fraction]] = {
        lab: [cells[lab].character(d) for d in diagrams] for lab in labels
    }
    chi_D: dict[tuple[int, tuple[int, ...]], list[Fraction]] = {}
    for lab in cols:
        cell = cells[lab]
        rad = nullspace(grams[lab])
        if not rad:
            chi_D[lab] = chi_C[lab]
            continue
        p = len(rad)
        basis_matrix = [[rad[beta][i] for beta in range(p)] for i in range(cell.dim)]
        rad_char = []
        for d in diagrams:
            tr = Fraction(0)
            for alpha in range(p):
                image = cell.act(d, rad[alpha])
                coords = solve(basis_matrix, image)
                assert coords is not None, "radical is not invariant under the algebra"
                tr += coords[alpha]
            rad_char.append(tr)
        chi_D[lab] = [a - b for a, b in zip(chi_C[lab], rad_char)]

    system = [[chi_D[col][i] for col in cols] for i in range(len(diagrams))]
    entries: dict = {}
    for lab in labels:
        solution = solve(system, chi_C[lab])
        assert solution is not None, "cell character outside the simple-character span"
        for col, val in zip(cols, solution):
            assert val.denominator == 1 and val >= 0, f"bad multiplicity {val}"
            if val:
                entries[(lab, col)] = int(val)
    for col in cols:
        assert entries.get((col, col)) == 1, "decomposition matrix lacks unit diagonal"
    return OracleMatrix(r=r, delta=delta, rows=labels, cols=cols, entries=entries)


# -- comparison with the pipeline -------------------------------------------


def _parse_level_label(text: str) -> tuple[int, tuple[int, ...]]:
    """Inverse of the report's level-label format, e.g. 'f1:2,1' or 'f0:-'."""
    head, _, body = text.partition(":")
    assert head.startswith("f")
    f = int(head[1:])
    if body in ("", "-"):
        return f, ()
    return f, tuple(int(c) for c in body.split(","))


def transpose_partition(lam: tuple[int, ...]) -> tuple[int, ...]:
    return combinat.transpose(lam)


def compare(report: dict, oracle_matrix: OracleMatrix, conjugate_convention: str) -> list[dict]:
    """Cell-for-cell diff between a level-truncated report and the oracle.

    ``conjugate_convention`` maps oracle cell labels into report labels:
    ``"identity"`` keeps the partition, ``"transpose"`` transposes it.
    Returns a list of discrepancy records; empty means exact agreement.
    """
    if conjugate_convention not in ("identity", "transpose"):
        raise ValueError(f"unknown conjugate convention: {conjugate_convention!r}")
    params = report["params"]
    assert int(params["k"]) == 1, "oracle comparison is defined at level 1"
    u1 = Fraction(params["u"][0])
    delta = 1 - 2 * u1
    if delta != oracle_matrix.delta:
        return [{"kind": "delta-mismatch", "report": str(delta), "oracle": str(oracle_matrix.delta)}]

    def convert(lab: tuple[int, tuple[int, ...]]) -> tuple[int, tuple[int, ...]]:
        f, lam = lab
        if conjugate_convention == "transpose":
            return f, transpose_partition(lam)
        return f, lam

    level = report["matrix_level"]
    pipe_rows = [_parse_level_label(t) for t in level["rows"]]
    pipe_cols = [_parse_level_label(t) for t in level["cols"]]
    diffs: list[dict] = []
    mapped_rows = [convert(lab) for lab in oracle_matrix.rows]
    mapped_cols = [convert(lab) for lab in oracle_matrix.cols]
    if sorted(mapped_rows) != sorted(pipe_rows):
        diffs.append({"kind": "row-labels", "oracle": mapped_rows, "report": pipe_rows})
    if sorted(mapped_cols) != sorted(pipe_cols):
        diffs.append({"kind": "col-labels", "oracle": mapped_cols, "report": pipe_cols})
    if diffs:
        return diffs

    dense = {(i, j): v for i, j, v in level["entries"]}
    pipe_entry = {}
    for i, row in enumerate(pipe_rows):
        for j, col in enumerate(pipe_cols):
            pipe_entry[(row, col)] = dense.get((i, j), 0)
    for orow in oracle_matrix.rows:
        for ocol in oracle_matrix.cols:
            expected = oracle_matrix.entry(orow, ocol)
            got = pipe_entry[(convert(orow), convert(ocol))]
            if expected != got:
                diffs.append(
                    {
                        "kind": "cell",
                        "row": convert(orow),
                        "col": convert(ocol),
                        "oracle": expected,
                        "report": got,
                    }
                )
    return diffs
