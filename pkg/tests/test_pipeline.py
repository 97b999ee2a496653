"""Verma flags, content cross-check, tilting peel, and report assembly."""

import json
from fractions import Fraction

import pytest

from brauer_kl.combinat import LambdaIndex, enumerate_lambda, updown_count
from brauer_kl.params import build_config, u_from_delta
from brauer_kl.pipeline import (
    SaturationNotEstablished,
    content_consistency_check,
    content_mismatches,
    decomposition_report,
    level_label,
    report_to_csv,
    simple_dimensions,
    tilting_decomposition,
    truncated_verma_flag,
    verma_flag,
)
from brauer_kl.weights import in_F_rk, tilde

F = Fraction

# flag multiplicities for k = 1, r = 3, q = (10), keyed by (f, shape)
FROZEN_FLAG_K1_R3 = {
    (0, ((3,), ())): 1,
    (0, ((2, 1), ())): 2,
    (0, ((1, 1, 1), ())): 1,
    (0, ((2,), (1,))): 3,
    (0, ((1, 1), (1,))): 3,
    (0, ((1,), (2,))): 3,
    (0, ((1,), (1, 1))): 3,
    (0, ((), (3,))): 1,
    (0, ((), (2, 1))): 2,
    (0, ((), (1, 1, 1))): 1,
    (1, ((1,), ())): 6,
    (1, ((), (1,))): 6,
}


def test_verma_flag_frozen_k1_r3():
    cfg = build_config([F(0)], 3, q=[10])
    flag = verma_flag(cfg)
    labeled = {tuple(tilde(mu, cfg)): m for mu, m in flag.items()}
    assert labeled == FROZEN_FLAG_K1_R3
    assert sorted(flag.values()) == [1, 1, 1, 1, 2, 2, 3, 3, 3, 3, 6, 6]


def test_flag_counts_walks_of_the_double_level():
    cfg = build_config([F(1, 3)], 2)
    for mu, m in verma_flag(cfg).items():
        idx = tilde(mu, cfg)
        assert m == updown_count(2, 2, idx.shape)


def test_truncated_flag_equals_level_k_walk_counts():
    cfg = build_config([F(0)], 3, q=[10])
    t = truncated_verma_flag(cfg)
    assert set(t) == {mu for mu in verma_flag(cfg) if in_F_rk(mu, cfg)}
    labeled = {tuple(tilde(mu, cfg)): m for mu, m in t.items()}
    assert labeled == {
        (0, ((3,), ())): 1,
        (0, ((2, 1), ())): 2,
        (0, ((1, 1, 1), ())): 1,
        (1, ((1,), ())): 3,
    }
    assert sum(t.values()) == sum(
        updown_count(1, 3, idx.shape) for idx in enumerate_lambda(1, 3)
    )


@pytest.mark.parametrize("u, r", [([F(0)], 1), ([F(0)], 2), ([F(0)], 3), ([F(1, 3)], 3)])
def test_content_consistency_level_one(u, r):
    assert content_consistency_check(build_config(u, r)) is True


def test_content_consistency_level_two():
    assert content_consistency_check(build_config([F(1, 3), F(7, 2)], 2)) is True


def test_content_mismatches_empty_means_consistent():
    cfg = build_config([F(1, 3)], 2)
    assert content_mismatches(cfg) == []


def test_generic_decomposition_is_the_flag():
    # all singleton blocks: every Verma is simple and tilting
    cfg = build_config([F(1, 3)], 2)
    res = tilting_decomposition(cfg)
    assert all(b.is_singleton for b in res.blocks)
    assert res.multiplicities == {mu: m for mu, m in res.flag.items() if m}
    assert set(res.multiplicities.values()) == {1, 2}  # walk counts at r = 2


def test_generic_k1_r2_simple_dimensions_are_ones():
    # semisimple case: the three level cells are the simples, each of walk
    # count one, so the solved dimensions come out all 1
    cfg = build_config([F(1, 3)], 2)
    dims = simple_dimensions(tilting_decomposition(cfg))
    assert sorted(dims.values()) == [1, 1, 1]
    assert set(dims) == {mu for mu in verma_flag(cfg) if in_F_rk(mu, cfg)}


FROZEN_TILTING_DELTA1_R3 = {
    (0, ((3,), ())): 1,
    (0, ((2, 1), ())): 2,
    (0, ((1, 1, 1), ())): 1,
    (0, ((2,), (1,))): 3,
    (0, ((1, 1), (1,))): 3,
    (0, ((1,), (2,))): 3,
    (0, ((1,), (1, 1))): 3,
    (0, ((), (3,))): 1,
    (0, ((), (2, 1))): 2,
    (0, ((), (1, 1, 1))): 1,
    (1, ((1,), ())): 4,  # the flag value 6 loses two copies to T at (2,1)
    (1, ((), (1,))): 6,
}


def test_delta_one_r3_tilting_multiplicities_frozen():
    cfg = build_config([u_from_delta(F(1))], 3)
    res = tilting_decomposition(cfg)
    labeled = {tuple(tilde(mu, cfg)): m for mu, m in res.multiplicities.items()}
    assert labeled == FROZEN_TILTING_DELTA1_R3


def test_peel_is_order_independent():
    cfg = build_config([u_from_delta(F(1))], 3)
    a = tilting_decomposition(cfg)
    b = tilting_decomposition(cfg, reverse_ties=True)
    assert a.multiplicities == b.multiplicities


FROZEN_SIMPLE_DIMS = {
    # delta -> dims over level rows [f0:3, f0:2,1, f0:1,1,1, f1:1]
    F(1): [1, 2, 1, 1],
    F(-2): [1, 2, 1, 2],
    F(2): [1, 2, 1, 3],
}


@pytest.mark.parametrize("delta", sorted(FROZEN_SIMPLE_DIMS))
def test_simple_dimensions_frozen_r3(delta):
    cfg = build_config([u_from_delta(delta)], 3)
    rep = decomposition_report(cfg)
    assert rep["simple_dims"]["labels"] == ["f0:3", "f0:2,1", "f0:1,1,1", "f1:1"]
    assert rep["simple_dims"]["dims"] == FROZEN_SIMPLE_DIMS[delta]


@pytest.mark.parametrize("delta", [F(1), F(-2)])
def test_simple_dimensions_match_oracle_gram_ranks(delta):
    # the simple of a cell module is the quotient by the Gram radical, so
    # its dimension is the rank of the Gram form
    from brauer_kl.linalg import rank
    from brauer_kl.oracle import CellModule, transpose_partition

    cfg = build_config([u_from_delta(delta)], 3)
    dims = simple_dimensions(tilting_decomposition(cfg))
    for mu, d in dims.items():
        idx = tilde(mu, cfg)
        cell = CellModule(3, idx.f, transpose_partition(idx.shape[0]), delta)
        assert rank(cell.gram_matrix()) == d


def test_matrix_entry_orientation():
    cfg = build_config([u_from_delta(F(1))], 3)
    res = tilting_decomposition(cfg)
    lam = next(mu for mu in res.family if tilde(mu, cfg) == LambdaIndex(1, ((1,), ())))
    mu_t = next(mu for mu in res.family if tilde(mu, cfg) == LambdaIndex(0, ((2, 1), ())))
    assert res.matrix_entry(lam, mu_t) == 1  # (T(2,1) : M(f=1, (1)))
    assert res.matrix_entry(mu_t, lam) == 0
    assert res.matrix_entry(lam, lam) == 1


def test_report_structure_and_frozen_level_matrix():
    cfg = build_config([u_from_delta(F(1))], 3)
    rep = decomposition_report(cfg)
    assert rep["schema"] == "brauer-kl/1"
    assert rep["kl_convention"] == "mirror"
    assert rep["conjugate_convention"] == "transpose"
    assert rep["flags"]["omega_condition"] is True
    assert rep["flags"]["phiA_ok"] is True
    assert rep["flags"]["saturated"] is True
    assert rep["flags"]["generic"] is False
    assert rep["flags"]["cell_data_only"] is False
    assert rep["matrix_level"]["rows"] == ["f0:3", "f0:2,1", "f0:1,1,1", "f1:1"]
    assert rep["matrix_level"]["entries"] == [
        [0, 0, 1],
        [1, 1, 1],
        [2, 2, 1],
        [3, 1, 1],
        [3, 3, 1],
    ]
    assert rep["verma_flag"] == [FROZEN_FLAG_K1_R3[tuple(_parse(lab))] for lab in rep["family"]]


def _parse(label):
    """family labels look like 'f0:2,1|-'; invert them to (f, shape)."""
    head, _, body = label.partition(":")
    comps = body.split("|")
    shape = tuple(
        tuple(int(c) for c in comp.split(",")) if comp not in ("", "-") else ()
        for comp in comps
    )
    return int(head[1:]), shape


def test_generic_report_matrix_is_identity():
    cfg = build_config([F(1, 3)], 2)
    rep = decomposition_report(cfg)
    assert rep["flags"]["generic"] is True
    n = len(rep["matrix_level"]["rows"])
    assert n == 3
    assert rep["matrix_level"]["entries"] == [[i, i, 1] for i in range(n)]


def test_level_matrix_is_a_submatrix_of_the_full_one():
    cfg = build_config([u_from_delta(F(1))], 3)
    rep = decomposition_report(cfg)
    full = rep["matrix_full"]
    level = rep["matrix_level"]
    full_dense = {(full["rows"][i], full["cols"][j]): v for i, j, v in full["entries"]}
    for i, j, v in level["entries"]:
        row = level["rows"][i] + "|-"
        col = level["cols"][j] + "|-"
        assert full_dense.get((row, col), 0) == v


def test_reports_are_deterministic():
    cfg = build_config([u_from_delta(F(1))], 3)
    a = json.dumps(decomposition_report(cfg), sort_keys=True)
    b = json.dumps(decomposition_report(cfg), sort_keys=True)
    assert a == b


def test_singular_reduction_appears_at_delta_minus_two():
    cfg = build_config([u_from_delta(F(-2))], 3)
    rep = decomposition_report(cfg)
    assert rep["flags"]["singular_blocks"]  # wall weights exist
    assert any("reduced" in s for s in rep["flags"]["singular_reduced"])


def test_saturation_gate_level_two():
    # u_1 - u_2 integral: cross-block hyperplanes are integral, Phi_A fails
    cfg = build_config([F(5), F(1)], 2)
    with pytest.raises(SaturationNotEstablished):
        decomposition_report(cfg)
    rep = decomposition_report(cfg, assume_saturated=True)
    assert rep["flags"]["phiA_ok"] is False
    assert rep["flags"]["saturated"] is True


def test_level_one_never_needs_saturation_waiver():
    for delta in (F(1), F(2), F(-2)):
        cfg = build_config([u_from_delta(delta)], 2)
        rep = decomposition_report(cfg)  # must not raise
        assert rep["flags"]["phiA_ok"] is True


def test_report_to_csv_shape():
    cfg = build_config([F(1, 3)], 2)
    rep = decomposition_report(cfg)
    text = report_to_csv(rep)
    lines = text.strip().split("\n")
    assert lines[0].startswith("cell\\tilting,")
    assert len(lines) == 1 + len(rep["matrix_level"]["rows"])
    assert lines[1].split(",")[1] == "1"  # identity diagonal


def test_level_label_format():
    assert level_label(LambdaIndex(0, ((2, 1), ())), 1) == "f0:2,1"
    assert level_label(LambdaIndex(1, ((), ())), 1) == "f1:-"
