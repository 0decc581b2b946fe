"""Morphism objects over R2 against exhaustively enumerated T2(R2)-modules."""
import pytest

from oracle_utils import brute_hom, iso_classes, r2_modules, t2_modules
from t2stable import linalg as la
from t2stable.errors import NotInjective
from t2stable.frobenius import is_member
from t2stable.modules import is_isomorphic
from t2stable.morphisms import MorM, from_t2_module, morphism_to_t2, mor_isomorphic, to_t2_module


@pytest.fixture(scope="module")
def t6_modules(t6):
    return t2_modules(t6, 4)


@pytest.fixture(scope="module")
def morm_objects(r2, ctx_r2):
    """Every morphism between R2-modules of dim <= 2, split by injectivity."""
    mods = r2_modules(r2, 2)
    monos, others = [], []
    for Z in mods:
        for X in mods:
            for v in brute_hom(Z, X):
                alpha = v.reshape(X.dim, Z.dim)
                try:
                    monos.append(MorM(ctx_r2, Z, X, alpha))
                except NotInjective:
                    others.append((Z, X, alpha))
    return monos, others


def test_enumeration_size(t6_modules):
    assert len(t6_modules) == 969


def test_roundtrip_and_cm(t6_modules, ctx_r2, ctx_t6):
    for _, M in t6_modules:
        o = from_t2_module(M, ctx_r2)
        assert is_isomorphic(morphism_to_t2(o.source, o.target, o.alpha), M)
        injective = la.rank(o.alpha, 2) == o.source.dim
        assert is_member(M, ctx_t6) == injective


def test_from_to_on_morm(morm_objects, ctx_r2, ctx_t6):
    monos, others = morm_objects
    for m in monos:
        M = to_t2_module(m)
        assert is_member(M, ctx_t6)
        assert mor_isomorphic(from_t2_module(M, ctx_r2), m)
    for Z, X, alpha in others:
        assert not is_member(morphism_to_t2(Z, X, alpha), ctx_t6)


def test_iso_class_bijection(morm_objects, t6_modules, ctx_t6):
    monos, _ = morm_objects
    mor_reps = iso_classes(monos, mor_isomorphic)
    images = [to_t2_module(m) for m in mor_reps]
    cm = [M for (a, b), M in t6_modules if a <= 2 and b <= 2 and is_member(M, ctx_t6)]
    cm_reps = iso_classes(cm, is_isomorphic)
    # injective on classes
    for i, x in enumerate(images):
        for y in images[i + 1:]:
            assert not is_isomorphic(x, y)
    # surjective on classes
    for M in cm_reps:
        assert sum(is_isomorphic(M, x) for x in images) == 1
    assert len(mor_reps) == len(cm_reps)
