import itertools

import numpy as np
import pytest

from t2stable import linalg as la
from t2stable.bridge import (
    TStructurePair,
    compare_contexts_report,
    decompose_tstructure,
    functor_F,
    functor_F_map,
    in_class,
    quotient_hom_dim,
    roundtrip_report,
    sample_closure,
    stabilization_depth,
    stable_cm_of_t2,
    standard_seeds,
    verify_stable_tstructure,
    verify_triangle_of_recollements,
    z1_lambda,
    z1_lambda_data,
)
from t2stable.complexes import BoundedComplex, complete_resolution_spliced, is_null_homotopic, spliced_from_bounded, stalk
from t2stable.errors import ContextMismatch, StabilizationFailed
from t2stable.frobenius import is_member, make_context
from t2stable.modules import indecomposable_projective, is_projective, simple_module, truncated_projectives
from t2stable.morphisms import (
    MorE,
    MorMap,
    identity_mor_map,
    is_stably_trivial,
    mor_hom_basis,
    mor_stable_hom,
    mor_stably_isomorphic,
)


@pytest.fixture(scope="module")
def a9_samples(ctx_a9):
    return sample_closure(standard_seeds(ctx_a9, truncated_projectives(ctx_a9.algebra)), cap=18)


def test_F_shapes(mor_r2):
    for a in mor_r2.values():
        F = functor_F(a)
        assert F.window.comp(0).dim == a.source.cover.P.dim
        assert is_projective(F.window.comp(1))
        assert in_class(F, "K+") == is_projective(F.left)
        assert F is functor_F(a)


def test_F_of_kk_is_acyclic(mor_r2):
    assert in_class(functor_F(mor_r2["kk"]), "Kac")
    assert not in_class(functor_F(mor_r2["Rk"]), "Kac")


def test_F_map_identity(mor_r2):
    for a in mor_r2.values():
        h = functor_F_map(identity_mor_map(a))
        assert h.is_chain_map()
        diff = h - type(h)(h.source, h.target, {i: la.identity(h.source.comp(i).dim) for i in h.source.degrees()})
        assert is_null_homotopic(diff) is not None


def test_F_map_of_factoring_map_is_null(mor_r2):
    a = mor_r2["Rk"]
    for u in mor_hom_basis(a, a):
        h = functor_F_map(u)
        assert h.is_chain_map()
    z = MorMap(a, a, la.zeros(a.source.dim, a.source.dim), la.zeros(a.target.dim, a.target.dim))
    assert is_null_homotopic(functor_F_map(z)) is not None


def test_z1_lambda_roundtrip_r2(mor_r2):
    for a in mor_r2.values():
        assert mor_stably_isomorphic(z1_lambda(functor_F(a)), a)


def test_complete_resolution(ctx_r2, k, mor_r2):
    CR = complete_resolution_spliced(k, ctx_r2)
    assert in_class(CR, "Kac")
    assert mor_stably_isomorphic(z1_lambda(CR), mor_r2["kk"])


def test_stalk_is_trivial(ctx_r2, R):
    assert is_stably_trivial(z1_lambda(stalk(ctx_r2, R, 0)))
    assert quotient_hom_dim(stalk(ctx_r2, R, 2), stalk(ctx_r2, R, 2)) == 0


def test_qhom_matches_stable_hom(mor_r2):
    for a, b in itertools.product(mor_r2.values(), repeat=2):
        assert quotient_hom_dim(functor_F(a), functor_F(b)) == mor_stable_hom(a, b)[0]


def test_qhom_context_mismatch(mor_r2, ctx_a9, a9):
    other = stalk(ctx_a9, indecomposable_projective(a9, 0))
    with pytest.raises(ContextMismatch):
        quotient_hom_dim(functor_F(mor_r2["kk"]), other)


def test_z1_data_maps_are_chain_maps(mor_r2, a9_samples):
    from t2stable.complexes import ChainMap

    for a in list(mor_r2.values()) + a9_samples[:6]:
        d = z1_lambda_data(functor_F(a))
        assert ChainMap(d.Xw, d.Sw, d.xi).is_chain_map()
        assert ChainMap(d.Sw, d.Tw, d.zeta).is_chain_map()
        assert in_class(d.X, "Kac") and in_class(d.T, "Kac")


def test_stable_cm_of_t2(mor_r2, ctx_t6):
    M = stable_cm_of_t2(functor_F(mor_r2["Rk"]))
    assert M.dim == 3 and is_member(M, ctx_t6) and not is_projective(M)


def test_stabilization_depth_t6(ctx_t6, t6):
    assert stabilization_depth(simple_module(t6, 0), ctx_t6) == 1
    assert stabilization_depth(simple_module(t6, 1), ctx_t6) == 0


def test_stabilization_failure(ctx_atfr4, a9):
    with pytest.raises(StabilizationFailed):
        stabilization_depth(simple_module(a9, 1), ctx_atfr4)


def test_t6_roundtrip(ctx_t6):
    seeds = standard_seeds(ctx_t6, truncated_projectives(ctx_t6.algebra))
    objs = sample_closure(seeds, cap=8)
    assert objs
    for a in objs:
        assert mor_stably_isomorphic(z1_lambda(functor_F(a)), a)


@pytest.mark.parametrize("pair", list(TStructurePair))
def test_decompositions_r2(mor_r2, ctx_r2, k, pair):
    samples = [functor_F(a) for a in mor_r2.values()] + [complete_resolution_spliced(k, ctx_r2)]
    c1, c2 = pair.classes
    for S in samples:
        dec = decompose_tstructure(S, pair)
        assert in_class(dec.U, c1) and in_class(dec.V, c2)
        assert dec.u.is_chain_map() and dec.v.is_chain_map()


def test_plus_minus_of_bounded(ctx_r2, R, r2):
    X = BoundedComplex(r2, {0: R, 1: R}, {0: np.array([[0, 0], [1, 0]])})
    S = spliced_from_bounded(ctx_r2, X)
    dec = decompose_tstructure(S, TStructurePair.PlusMinus)
    assert in_class(dec.U, "K+") and in_class(dec.V, "K-")
    assert is_stably_trivial(z1_lambda(S))


def test_acyclic_decompositions_trivial(ctx_r2, k):
    CR = complete_resolution_spliced(k, ctx_r2)
    dec = decompose_tstructure(CR, TStructurePair.MinusAcyclic)
    assert is_stably_trivial(z1_lambda(dec.U))
    dec = decompose_tstructure(CR, TStructurePair.AcyclicPlus)
    assert is_stably_trivial(z1_lambda(dec.V))


def test_suites_r2(mor_r2, ctx_r2):
    samples = [functor_F(a) for a in mor_r2.values()]
    rep = verify_triangle_of_recollements(ctx_r2, samples, list(mor_r2.values()))
    assert rep.passed, rep.table()
    assert roundtrip_report(ctx_r2, list(mor_r2.values()), samples).passed


def test_suites_a9(ctx_a9, a9_samples):
    samples = [functor_F(a) for a in a9_samples]
    rep = verify_triangle_of_recollements(ctx_a9, samples, a9_samples)
    assert rep.passed, rep.table()


def test_swapped_control_fails(mor_r2, ctx_r2):
    samples = [functor_F(a) for a in mor_r2.values()]
    rep = verify_stable_tstructure(ctx_r2, TStructurePair.PlusMinus, samples, swapped=True)
    assert not rep.passed
    assert rep.failures[0].witness["dim"] > 0


def test_empty_samples_vacuous(ctx_r2):
    rep = verify_triangle_of_recollements(ctx_r2, [], [])
    assert rep.passed
    assert all(c.status == "vacuous" for c in rep.checks)
    assert roundtrip_report(ctx_r2, []).checks[0].status == "vacuous"


def test_report_json_shape(mor_r2, ctx_r2):
    rep = roundtrip_report(ctx_r2, list(mor_r2.values()))
    for row in rep.to_json():
        assert set(row) <= {"check", "status", "witness"}
    assert rep.table().splitlines()[-1].startswith("roundtrip: PASS")


def test_sampling_deterministic(ctx_a9):
    seeds = standard_seeds(ctx_a9, truncated_projectives(ctx_a9.algebra))
    a = sample_closure(seeds, cap=10, seed=3)
    b = sample_closure(seeds, cap=10, seed=3)
    assert [x.alpha.tolist() for x in a] == [x.alpha.tolist() for x in b]


def test_context_comparison(ctx_atfr4, ctx_a9, b4):
    a9 = ctx_a9.algebra
    rep = compare_contexts_report(ctx_atfr4, ctx_a9, make_context(b4), truncated_projectives(a9),
                                  truncated_projectives(b4))
    assert rep.passed, rep.table()
    assert rep.data["table"] == [[1, 0], [0, 1]]
