"""End-to-end decomposition pipeline.

The chain: pick block sizes for the given parameters, build the chamber
weight, enumerate the weight family, attach standard-flag multiplicities
(walk counts), run the canonical-basis engine per linkage class, peel the
flagged module into indecomposable tilting summands, and assemble the
decomposition matrices — the full one (rows the whole family) and the
level-truncated one (rows and columns with empty tail parts).

Exactness is enforced, not assumed: the peel keeps an integer residual ledger
over every weight it touches and raises ``NegativeResidual`` the moment the
bookkeeping would need a negative multiplicity, and the final residual must
vanish identically.  Saturation of the weight family (no linkage escaping
through cross-block hyperplanes) holds automatically when the chamber weight
pairs non-integrally with all cross-block roots; otherwise the caller must
opt in via ``assume_saturated`` or the report is refused with
``SaturationNotEstablished``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import combinat
from .combinat import LambdaIndex
from .kl import (
    PINNED_CONJUGATE_CONVENTION,
    Block,
    CanonicalBasisEngine,
    ConventionUnpinned,
    partition_into_blocks,
    resolve_convention,
    singular_pairs,
    singular_reduction_table,
    tilting_table,
)
from .params import ParamConfig, simple_param_condition
from .weights import (
    Weight,
    context_of,
    dominance_less,
    dominance_sort_key,
    enumerate_F,
    in_F_rk,
    lambda_c,
    pairing,
    phiA_condition,
    positive_roots,
    rho,
    tilde,
)


class NegativeResidual(Exception):
    """The tilting peel would need a negative multiplicity."""


class SaturationNotEstablished(Exception):
    """Cross-block linkage cannot be ruled out and was not waived."""


def verma_flag(cfg: ParamConfig) -> dict[Weight, int]:
    """Standard-flag multiplicity of each family weight: the number of
    down-up walks of the prescribed length from the empty shape."""
    table = combinat.updown_count_table(2 * cfg.k, cfg.r)
    out: dict[Weight, int] = {}
    for mu in enumerate_F(cfg.r, cfg):
        idx = tilde(mu, cfg)
        out[mu] = table.get(idx.shape, 0)
    return out


# -- content / Casimir cross-check ---------------------------------------


def _node_coordinate(node: tuple[int, int, int], cfg: ParamConfig) -> tuple[int, int]:
    """Map a cell (row, col, component) to (0-based weight coordinate, sign).

    Components 1..k are head rows counted from the top of their block;
    components k+1..2k are tail rows of the mirrored block, counted from the
    bottom, and grow the weight downward.
    """
    l, _h, t = node
    k = cfg.k
    if t <= k:
        i = cfg.p[t - 1] + l  # 1-based
        return i - 1, +1
    tp = 2 * k - t + 1
    i = cfg.p[tp] - l + 1
    return i - 1, -1


def content_mismatches(cfg: ParamConfig, shapes: list | None = None) -> list[dict]:
    """Compare multipartition contents against the weight-walk eigenvalues.

    For every walk, the content of the cell toggled at step m (with its sign)
    must equal  sigma * nu_i + sigma * (n - i) + 1/2  computed from the weight
    nu before the step, where i is the 1-based coordinate the step moves and
    sigma the direction it moves in.  Returns a list of mismatch records;
    empty means consistent.
    """
    a = 2 * cfg.k
    lc = lambda_c(cfg)
    mismatches: list[dict] = []
    if shapes is None:
        shapes = [idx.shape for idx in combinat.enumerate_lambda(a, cfg.r)]
    for shape in shapes:
        for t in combinat.updown_tableaux(a, cfg.r, shape):
            contents = combinat.content_sequence(t, cfg.u_ext)
            nu = list(lc)
            for m in range(cfg.r):
                node, sign = combinat.step_node(t[m], t[m + 1])
                i0, direction = _node_coordinate(node, cfg)
                sigma = direction if sign > 0 else -direction
                a_val = sigma * nu[i0] + sigma * (cfg.n - (i0 + 1)) + Fraction(1, 2)
                if a_val != contents[m]:
                    mismatches.append(
                        {
                            "shape": shape,
                            "step": m,
                            "node": node,
                            "content": contents[m],
                            "weight_side": a_val,
                        }
                    )
                nu[i0] += sigma
    return mismatches


def content_consistency_check(cfg: ParamConfig) -> bool:
    """True iff every step of every walk passes the content cross-check."""
    return not content_mismatches(cfg)


def truncated_verma_flag(cfg: ParamConfig) -> dict[Weight, int]:
    """Flag multiplicities counting only all-nonnegative paths.

    A walk whose tail components stay empty throughout is the same thing as a
    walk on the head components alone, so the count at a tail-free weight is
    the level-k walk count of its head shape.
    """
    table = combinat.updown_count_table(cfg.k, cfg.r)
    out: dict[Weight, int] = {}
    for mu in enumerate_F(cfg.r, cfg):
        if not in_F_rk(mu, cfg):
            continue
        idx = tilde(mu, cfg)
        out[mu] = table.get(idx.shape[: cfg.k], 0)
    return out


# -- tilting peel ---------------------------------------------------------


@dataclass
class DecompositionResult:
    """Peel output: tilting multiplicities and the supporting tables."""

    cfg: ParamConfig
    convention: str
    family: tuple[Weight, ...]
    flag: dict[Weight, int]
    multiplicities: dict[Weight, int]
    support: tuple[Weight, ...]
    columns: dict[tuple[Weight, Weight], int]
    blocks: list[Block]
    singular_weights: tuple[Weight, ...]
    reduced_blocks: tuple[tuple[Weight, ...], ...] = ()

    def matrix_entry(self, lam: Weight, mu: Weight) -> int:
        """Decomposition-matrix cell: standard lam inside tilting mu."""
        if lam == mu:
            return 1
        return self.columns.get((lam, mu), 0)


def _pick_maximal(candidates: list[Weight], reverse_ties: bool) -> Weight:
    maximal = [
        c
        for c in candidates
        if not any(dominance_less(c, d) for d in candidates if d != c)
    ]
    key = dominance_sort_key
    return min(maximal, key=key) if reverse_ties else max(maximal, key=key)


def tilting_decomposition(
    cfg: ParamConfig,
    convention: str | None = None,
    flag: dict[Weight, int] | None = None,
    reverse_ties: bool = False,
) -> DecompositionResult:
    """Peel the flagged module into indecomposable tilting summands.

    Greedy descent: repeatedly take a dominance-maximal weight with nonzero
    residual, record its multiplicity, and subtract that many copies of the
    corresponding tilting column.  ``reverse_ties`` picks a different maximal
    element when several are incomparable, which must not change the result.
    ``convention`` None uses the frozen pin.
    """
    convention = resolve_convention(convention)
    ctx = context_of(cfg)
    if flag is None:
        flag = verma_flag(cfg)
    family = tuple(enumerate_F(cfg.r, cfg))
    family_set = set(family)
    blocks = partition_into_blocks(list(family), ctx)
    n_out: dict[Weight, int] = {}
    columns: dict[tuple[Weight, Weight], int] = {}
    singular: list[Weight] = []
    reduced: list[tuple[Weight, ...]] = []
    x_rho = rho(ctx.n)
    for block in blocks:
        for mu in block.weights:
            x = tuple(a + b for a, b in zip(mu, x_rho))
            if any(pairing(x, beta) == 0 for beta in positive_roots(ctx.n)):
                singular.append(mu)
        if block.is_singleton:
            lam = block.weights[0]
            m = flag.get(lam, 0)
            if m < 0:
                raise NegativeResidual(f"negative flag multiplicity at {lam}")
            if m:
                n_out[lam] = m
            continue
        x0 = tuple(a + b for a, b in zip(block.weights[0], x_rho))
        if singular_pairs(x0):
            table = singular_reduction_table(block, convention)
            reduced.append(block.weights)
        else:
            engine = CanonicalBasisEngine(ctx, block.weights[0])
            table = tilting_table(block, convention, engine)
        columns.update(table)
        residual: dict[Weight, int] = {}
        for (mu, lam), val in table.items():
            residual.setdefault(mu, 0)
        for mu in block.weights:
            residual[mu] = flag.get(mu, 0)
        while True:
            live = [w for w, val in residual.items() if val != 0]
            if not live:
                break
            lam0 = _pick_maximal(live, reverse_ties)
            if lam0 not in family_set:
                raise NegativeResidual(
                    f"residual escapes the weight family at {lam0}"
                )
            m = residual[lam0]
            if m < 0:
                raise NegativeResidual(f"negative residual {m} at {lam0}")
            n_out[lam0] = m
            for (mu, lam), val in table.items():
                if lam == lam0 and val:
                    residual[mu] = residual.get(mu, 0) - m * val
            if residual.get(lam0) != 0:
                raise NegativeResidual(
                    f"tilting column at {lam0} lacks a unit diagonal"
                )
    support = tuple(mu for mu in family if n_out.get(mu, 0) != 0)
    return DecompositionResult(
        cfg=cfg,
        convention=convention,
        family=family,
        flag=flag,
        multiplicities={mu: n_out.get(mu, 0) for mu in family if n_out.get(mu, 0)},
        support=support,
        columns=columns,
        blocks=blocks,
        singular_weights=tuple(singular),
        reduced_blocks=tuple(reduced),
    )


def simple_dimensions(result: DecompositionResult) -> dict[Weight, int]:
    """Dimensions of the simple modules of the level-k algebra.

    The level-k cell module at a tail-free weight has dimension equal to the
    level-k walk count, and its composition factors are counted by the
    level-truncated decomposition matrix, so the simple dimensions solve
    ``truncated_flag = matrix_level * dims`` by the same greedy descent as
    the tilting peel.  Only meaningful when ``r`` is odd or some ``omega_i``
    is nonzero; the report suppresses this block otherwise.
    """
    cfg = result.cfg
    residual = dict(truncated_verma_flag(cfg))
    level = list(residual)
    dims: dict[Weight, int] = {}
    while True:
        live = [w for w, val in residual.items() if val != 0]
        if not live:
            break
        lam0 = _pick_maximal(live, reverse_ties=False)
        m = residual[lam0]
        if m < 0:
            raise NegativeResidual(f"negative simple dimension {m} at {lam0}")
        if result.multiplicities.get(lam0, 0) == 0:
            raise NegativeResidual(
                f"level residual escapes the tilting support at {lam0}"
            )
        dims[lam0] = m
        for mu in level:
            val = result.matrix_entry(mu, lam0)
            if val:
                residual[mu] -= m * val
    return dims


# -- report assembly -------------------------------------------------------


def level_label(idx: LambdaIndex, k: int) -> str:
    """Compact string form of a level-k cell label."""
    parts = ["," .join(str(c) for c in comp) or "-" for comp in idx.shape[:k]]
    return f"f{idx.f}:" + "|".join(parts)


def family_label(idx: LambdaIndex) -> str:
    """Compact string form of a full (doubled-level) cell label."""
    parts = ["," .join(str(c) for c in comp) or "-" for comp in idx.shape]
    return f"f{idx.f}:" + "|".join(parts)


def decomposition_report(
    cfg: ParamConfig,
    convention: str | None = None,
    conjugate_convention: str | None = None,
    assume_saturated: bool = False,
) -> dict:
    """Full decomposition report as a JSON-serializable dictionary.

    ``None`` conventions resolve through the frozen pins.  Raises
    ``SaturationNotEstablished`` when the chamber weight admits integral
    cross-block pairings and the caller did not waive the check.
    """
    convention = resolve_convention(convention)
    if conjugate_convention is None:
        if PINNED_CONJUGATE_CONVENTION is None:
            raise ConventionUnpinned(
                "no conjugate convention pinned; run the oracle cross-check or pass one explicitly"
            )
        conjugate_convention = PINNED_CONJUGATE_CONVENTION
    phi_ok = phiA_condition(lambda_c(cfg), context_of(cfg))
    if not phi_ok and not assume_saturated:
        raise SaturationNotEstablished(
            "cross-block hyperplanes are integral for these parameters; "
            "pass assume_saturated to proceed"
        )
    result = tilting_decomposition(cfg, convention=convention)
    check = tilting_decomposition(cfg, convention=convention, reverse_ties=True)
    if check.multiplicities != result.multiplicities:
        raise NegativeResidual("peel order changed the tilting multiplicities")

    labels = {mu: tilde(mu, cfg) for mu in result.family}
    rows_full = list(result.family)
    cols_full = list(result.support)
    entries_full = []
    for j, mu in enumerate(cols_full):
        for i, lam in enumerate(rows_full):
            val = result.matrix_entry(lam, mu)
            if val:
                entries_full.append([i, j, val])
    entries_full.sort()

    rows_level = [mu for mu in rows_full if in_F_rk(mu, cfg)]
    cols_level = [mu for mu in cols_full if in_F_rk(mu, cfg)]
    entries_level = []
    for j, mu in enumerate(cols_level):
        for i, lam in enumerate(rows_level):
            val = result.matrix_entry(lam, mu)
            if val:
                entries_level.append([i, j, val])
    entries_level.sort()

    omega_ok = simple_param_condition(cfg.u, cfg.k)
    flags = {
        "omega_condition": omega_ok,
        "phiA_ok": phi_ok,
        "r_parity": cfg.r % 2,
        "saturated": phi_ok or assume_saturated,
        "generic": all(b.is_singleton for b in result.blocks),
        "singular_blocks": [family_label(labels[mu]) for mu in result.singular_weights],
        "singular_reduced": [
            "singular: reduced " + "+".join(family_label(labels[mu]) for mu in blk)
            for blk in result.reduced_blocks
        ],
        "cell_data_only": cfg.r % 2 == 0 and not omega_ok,
    }
    if flags["cell_data_only"]:
        simple_block = None
    else:
        dims = simple_dimensions(result)
        dim_weights = [mu for mu in rows_level if dims.get(mu)]
        simple_block = {
            "labels": [level_label(labels[mu], cfg.k) for mu in dim_weights],
            "dims": [dims[mu] for mu in dim_weights],
        }
    return {
        "schema": "brauer-kl/1",
        "params": cfg.serialize(),
        "kl_convention": convention,
        "conjugate_convention": conjugate_convention,
        "flags": flags,
        "family": [family_label(labels[mu]) for mu in rows_full],
        "verma_flag": [result.flag.get(mu, 0) for mu in rows_full],
        "tilting": {
            "labels": [family_label(labels[mu]) for mu in cols_full],
            "multiplicities": [result.multiplicities[mu] for mu in cols_full],
        },
        "matrix_full": {
            "rows": [family_label(labels[mu]) for mu in rows_full],
            "cols": [family_label(labels[mu]) for mu in cols_full],
            "entries": entries_full,
        },
        "matrix_level": {
            "rows": [level_label(labels[mu], cfg.k) for mu in rows_level],
            "cols": [level_label(labels[mu], cfg.k) for mu in cols_level],
            "entries": entries_level,
        },
        "simple_dims": simple_block,
    }


def report_to_csv(report: dict, which: str = "level") -> str:
    """Dense CSV rendering of one of the report matrices."""
    import csv
    import io

    mat = report["matrix_level" if which == "level" else "matrix_full"]
    dense: dict[tuple[int, int], int] = {(i, j): v for i, j, v in mat["entries"]}
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["cell\\tilting", *mat["cols"]])
    for i, row_label in enumerate(mat["rows"]):
        writer.writerow([row_label, *[dense.get((i, j), 0) for j in range(len(mat["cols"]))]])
    return buf.getvalue()
