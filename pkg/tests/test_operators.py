from itertools import product

import pytest
import sympy

from oracles import dense_of
from qsglab import corpus
from qsglab.core import (
    CHECKLIST,
    FiniteSemigroup,
    FunctionAlgebra,
    Functional,
    PreconditionFailed,
    build_delta_from_w,
    coassoc_check,
    counit_projections,
    counit_solve,
    delta_map,
    kac_takesaki,
    pentagon_check,
    pentagon_witness,
    trivial_left,
)
from qsglab.core.operators import _pentagon_sides
from qsglab.linalg import LinearMap, SparseVector, TensorShape, flip, is_isometry, is_unitary


def indicator(n, *pairs):
    return SparseVector(n * n, {a * n + b: 1 for a, b in pairs})


def sympy_pentagon(w, d):
    """Leg embeddings built from sympy Kronecker products and a permutation matrix."""
    m = dense_of(w)
    eye = sympy.eye(d)
    w12 = sympy.kronecker_product(m, eye)
    w23 = sympy.kronecker_product(eye, m)
    swap = sympy.zeros(d ** 3)
    for a, b, c in product(range(d), repeat=3):
        swap[a * d * d + c * d + b, a * d * d + b * d + c] = 1
    w13 = swap * w12 * swap
    return w12 * w13 * w23 == w23 * w12


# Kac-Takesaki operator


def test_kac_g2_example():
    u = kac_takesaki(corpus.load("g2"))
    assert u @ indicator(2, (1, 1)) == indicator(2, (0, 1))


def test_kac_n2_example():
    u = kac_takesaki(corpus.load("n2"))
    assert u @ indicator(2, (0, 1)) == indicator(2, (0, 1), (1, 1))
    assert (u @ indicator(2, (1, 1))).is_zero()
    assert not is_isometry(u)


def test_kac_trivial():
    assert kac_takesaki(corpus.load("m1")) == LinearMap.identity(1)


def test_kac_is_composition_operator(semigroup):
    n = semigroup.order
    u = kac_takesaki(semigroup)
    # (u f)(s, t) = f(st, t) for f = indicator of (a, b)
    for a, b in product(range(n), repeat=2):
        image = u @ indicator(n, (a, b))
        expected = [(s, t) for s, t in product(range(n), repeat=2) if (semigroup.mul(s, t), t) == (a, b)]
        assert image == indicator(n, *expected)


def test_kac_pentagon_on_corpus(semigroup):
    assert pentagon_check(kac_takesaki(semigroup))


@pytest.mark.parametrize("name", ["g2", "m2", "n2", "rz2", "lz2"])
def test_kac_pentagon_sympy_oracle(name):
    s = corpus.load(name)
    assert sympy_pentagon(kac_takesaki(s), s.order)


def test_kac_unitary_iff_right_translations_bijective(semigroup):
    assert is_unitary(kac_takesaki(semigroup)) == semigroup.report.right_translations_bijective


def test_kac_on_product_semigroups():
    for a, b in [("g2", "m2"), ("n2", "rz2"), ("lz2", "g2")]:
        p = corpus.load(a).direct_product(corpus.load(b))
        u = kac_takesaki(p)
        assert pentagon_check(u)
        assert is_unitary(u) == p.report.right_translations_bijective


# pentagon checker


def test_identity_is_pentagonal():
    assert pentagon_check(LinearMap.identity(9))
    assert pentagon_witness(LinearMap.identity(9)) is None


def test_flip_is_not_pentagonal():
    sigma = flip((2, 2))
    assert not pentagon_check(sigma)
    assert not sympy_pentagon(sigma, 2)
    lhs, rhs, _ = _pentagon_sides(sigma)
    col = TensorShape((2, 2, 2)).encode((0, 1, 0))
    assert lhs.column(col) != rhs.column(col)
    assert pentagon_witness(sigma) is not None


def test_pentagon_needs_square_of_leg_dimension():
    with pytest.raises(ValueError):
        pentagon_check(LinearMap.identity(5))
    with pytest.raises(ValueError):
        pentagon_check(LinearMap.zero(4, 2))


# comultiplication from W


def test_identity_gives_trivial_comultiplication():
    built = build_delta_from_w(LinearMap.identity(9))
    assert built.delta == trivial_left(3)
    assert built.coassociative and built.unital_star_hom


def test_kac_lift_reproduces_delta(semigroup):
    built = build_delta_from_w(kac_takesaki(semigroup), "left")
    assert built.coassociative and built.unital_star_hom
    assert built.delta == delta_map(semigroup)


def test_counit_wl_reproduces_delta():
    for name in ("g2", "m2"):
        s = corpus.load(name)
        alg, delta = FunctionAlgebra.of(s), delta_map(s)
        suite = counit_projections(alg, delta, counit_solve(alg, delta))
        built = build_delta_from_w(suite.w_l, "left")
        assert built.delta == delta and built.coassociative


def test_right_variant_with_flipped_wr():
    s = corpus.load("m2")
    alg, delta = FunctionAlgebra.of(s), delta_map(s)
    suite = counit_projections(alg, delta, counit_solve(alg, delta))
    sigma = flip((2, 2))
    built = build_delta_from_w(sigma @ suite.w_r @ sigma, "right")
    assert built.delta == delta and built.coassociative and built.unital_star_hom


def test_rejects_non_homomorphism():
    w = LinearMap.identity(4).scale(2)
    with pytest.raises(PreconditionFailed) as info:
        build_delta_from_w(w)
    assert info.value.witness == "unit not preserved"


def test_rejects_non_pentagonal_homomorphism():
    with pytest.raises(PreconditionFailed) as info:
        build_delta_from_w(flip((2, 2)))
    assert len(info.value.witness) == 3


def test_rejects_unknown_side():
    with pytest.raises(ValueError):
        build_delta_from_w(LinearMap.identity(4), "middle")


# counit operators


def suite_for(name):
    s = corpus.load(name)
    alg, delta = FunctionAlgebra.of(s), delta_map(s)
    return counit_projections(alg, delta, counit_solve(alg, delta))


@pytest.mark.parametrize("name", ["m2", "g2", "g3", "s3", "klein", "m1"])
def test_counit_suite(name):
    suite = suite_for(name)
    assert list(suite.checklist) == list(CHECKLIST)
    assert suite.derivable_hold
    assert suite.details["pentagon_flipped_wr"]


@pytest.mark.parametrize("name", ["m2", "g2", "s3"])
def test_wr_pentagon_fails_for_nontrivial_comultiplication(name):
    # left side: eps(a) eps(b) (Delta (x) id) Delta(c); right side: eps(a) b (x) Delta(c)
    suite = suite_for(name)
    assert not suite.details["pentagon_wr"]
    assert not suite.all_hold


def test_one_element_suite_is_trivial():
    suite = suite_for("m1")
    one = LinearMap.identity(1)
    assert (suite.w_l, suite.w_r, suite.w_l_prime, suite.w_r_prime) == (one, one, one, one)
    assert suite.all_hold


def test_m2_operators_explicit():
    suite = suite_for("m2")
    # W^L(delta_a (x) delta_b) = [b == 1] Delta(delta_a)
    delta = delta_map(corpus.load("m2"))
    for a, b in product(range(2), repeat=2):
        expected = delta.column(a) if b == 1 else SparseVector(4)
        assert suite.w_l @ indicator(2, (a, b)) == expected


def test_counit_projections_rejects_non_counit():
    s = corpus.load("m2")
    alg, delta = FunctionAlgebra.of(s), delta_map(s)
    with pytest.raises(PreconditionFailed):
        counit_projections(alg, delta, Functional.evaluation(2, 0))


def test_flipped_wr_is_wl_of_opposite_comultiplication():
    s = corpus.load("s3")
    opposite = FiniteSemigroup([list(col) for col in zip(*s.table)])
    alg = FunctionAlgebra.of(s)
    sigma = flip((6, 6))
    mine = suite_for("s3")
    theirs = counit_projections(alg, delta_map(opposite), counit_solve(alg, delta_map(opposite)))
    assert sigma @ mine.w_r @ sigma == theirs.w_l
    assert coassoc_check(delta_map(opposite), 6)
