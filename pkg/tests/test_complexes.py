import numpy as np
import pytest

from t2stable import linalg as la
from t2stable.bridge import functor_F
from t2stable.complexes import (
    BoundedComplex,
    ChainMap,
    complete_resolution_spliced,
    cone,
    dualize_complex,
    identity_map,
    is_null_homotopic,
    stalk,
    truncate,
    truncation_cone_equivalence,
    truncation_triangle,
    zero_map,
)
from t2stable.modules import direct_sum, is_isomorphic, simple_module


def two_term(r2, R, a=0):
    x = r2.labels.index("x")
    return BoundedComplex(r2, {a: R, a + 1: R}, {a: R.act[x]})


def test_d_squared_checked(r2, R):
    with pytest.raises(ValueError):
        BoundedComplex(r2, {0: R, 1: R, 2: R}, {0: la.identity(2), 1: la.identity(2)})


def test_cone_of_identity_contractible(r2, R):
    X = two_term(r2, R)
    C = cone(identity_map(X))
    assert is_null_homotopic(identity_map(C)) is not None


def test_cone_of_zero_is_sum(r2, R):
    X = two_term(r2, R)
    Y = BoundedComplex(r2, {0: R})
    C = cone(zero_map(X, Y))
    SX = X.shift(1)
    for i in range(-2, 2):
        assert C.comp(i).dim == SX.comp(i).dim + Y.comp(i).dim
    assert C.homology_dim(-1) == SX.homology_dim(-1)
    assert C.homology_dim(0) == SX.homology_dim(0) + Y.homology_dim(0)


def test_cone_of_x(r2, R):
    x = r2.labels.index("x")
    X = BoundedComplex(r2, {0: R})
    f = ChainMap(X, X, {0: R.act[x]})
    C = cone(f)
    assert [C.homology_dim(i) for i in (-1, 0)] == [1, 1]
    assert is_null_homotopic(f) is None


def test_zero_map_homotopy(r2, R):
    X = two_term(r2, R)
    h = is_null_homotopic(zero_map(X, X))
    assert h is not None and all(not m.any() for m in h.values())


def test_homotopy_is_correct(r2, R):
    # identity of a contractible complex R -> R (id)
    X = BoundedComplex(r2, {0: R, 1: R}, {0: la.identity(2)})
    h = is_null_homotopic(identity_map(X))
    assert h is not None
    for i in X.degrees():
        lhs = (la.matmul(X.diff(i - 1), h.get(i, la.zeros(X.comp(i - 1).dim, X.comp(i).dim)), 2)
               + la.matmul(h.get(i + 1, la.zeros(X.comp(i).dim, X.comp(i + 1).dim)), X.diff(i), 2)) % 2
        assert np.array_equal(lhs, la.identity(X.comp(i).dim))


def test_brutal_truncations(r2, R):
    X = two_term(r2, R)
    assert truncate(X, "ge", 5).is_zero()
    assert truncate(truncate(X, "le", 0), "ge", 1).is_zero()


def test_truncation_of_resolution(ctx_r2, k):
    S = complete_resolution_spliced(k, ctx_r2)
    tri = truncation_triangle(S, 0)
    le = tri.le
    assert le.is_bounded_above() and not le.is_bounded_below()
    assert [le.homology_dim(i) for i in range(-3, 2)] == [0, 0, 0, 1, 0]
    ge = tri.ge
    assert ge.is_bounded_below() and ge.m == 1


@pytest.mark.parametrize("n", [-1, 0, 1, 2])
def test_truncation_cone_equivalence(ctx_r2, k, n):
    S = complete_resolution_spliced(k, ctx_r2)
    phi, psi, h = truncation_cone_equivalence(S, n, -3, 4)
    assert phi.is_chain_map() and psi.is_chain_map()


def test_extend_window(mor_r2):
    S = functor_F(mor_r2["Rk"])
    assert S.extend_window(S.m, S.n) is S
    T = S.extend_window(-1, 1)
    assert T.comp(-1).dim == 0
    for i in S.homology_range():
        assert T.homology_dim(i) == S.homology_dim(i)


def test_stalk_is_bounded(ctx_a9, a9):
    from t2stable.modules import indecomposable_projective

    S = stalk(ctx_a9, indecomposable_projective(a9, 0), 2)
    assert S.is_bounded() and S.homology_dim(2) == 3


def test_dual_of_contractible(r2, R):
    X = BoundedComplex(r2, {0: R, 1: R}, {0: la.identity(2)})
    D = dualize_complex(X)
    assert is_null_homotopic(identity_map(D)) is not None


def test_dual_of_resolution_self_dual(ctx_r2, k):
    W = complete_resolution_spliced(k, ctx_r2).materialize(-3, 3)
    D = dualize_complex(W)
    for i in range(-2, 3):
        assert D.comp(i).dim == 2 and D.homology_dim(i) == 0
    # the cocycles of the dual are again the simple module
    assert la.rank(D.diff(0), 2) == 1


def test_double_dual(ctx_a9, m1):
    W = complete_resolution_spliced(m1, ctx_a9).materialize(-2, 2)
    DD = dualize_complex(dualize_complex(W))
    assert DD.algebra is W.algebra
    for i in range(-2, 3):
        assert is_isomorphic(DD.comp(i), W.comp(i))
        assert la.rank(DD.diff(i), 2) == la.rank(W.diff(i), 2)
