"""Exact-arithmetic core: oracle tests against sympy plus property tests."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf
from hypothesis import given, settings
from hypothesis import strategies as st

from supercusp.exact import (
    Cyclo,
    FinAbGrpAut,
    RatFunc,
    RF_ONE,
    RF_Q,
    RF_T,
    RF_ZERO,
    cyclotomic_poly,
    euler_phi,
    group_from_presentation,
    integer_kernel,
    mat_identity,
    mat_mul,
    smith_normal_form,
)

_t = sympy.Symbol("t")


def to_sympy(r):
    num = sum(c * _t**i for i, c in enumerate(r.num))
    den = sum(c * _t**i for i, c in enumerate(r.den))
    return sympy.together(sympy.Rational(1) * num / den)


def poly_strategy():
    return st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=5)


# ---------------------------------------------------------------------------
# RatFunc
# ---------------------------------------------------------------------------


class TestRatFunc:
    def test_canonical_zero(self):
        assert RatFunc((0, 0), (3, 1)).num == (0,)
        assert RatFunc((0, 0), (3, 1)).den == (1,)

    def test_reduction_common_factor(self):
        # (t^2 - 1)/(t - 1) = t + 1
        r = RatFunc((-1, 0, 1), (-1, 1))
        assert r == RatFunc((1, 1), (1,))

    def test_denominator_sign(self):
        r = RatFunc((1,), (-2,))
        assert r.den[-1] > 0
        assert r == RatFunc((-1,), (2,))

    def test_integer_content(self):
        assert RatFunc((2, 4), (6,)) == RatFunc((1, 2), (3,))

    @given(poly_strategy(), poly_strategy(), poly_strategy())
    @settings(max_examples=60, deadline=None)
    def test_field_ops_match_sympy(self, a, b, c):
        if all(x == 0 for x in b):
            b = [1]
        if all(x == 0 for x in c):
            c = [1]
        x = RatFunc(tuple(a), tuple(b))
        y = RatFunc(tuple(c), (1,))
        assert sympy.simplify(to_sympy(x + y) - (to_sympy(x) + to_sympy(y))) == 0
        assert sympy.simplify(to_sympy(x * y) - to_sympy(x) * to_sympy(y)) == 0
        if not y.is_zero():
            assert sympy.simplify(to_sympy(x / y) - to_sympy(x) / to_sympy(y)) == 0

    @given(poly_strategy(), poly_strategy())
    @settings(max_examples=60, deadline=None)
    def test_add_mul_roundtrip(self, a, b):
        if all(x == 0 for x in b):
            b = [1]
        x = RatFunc(tuple(a), tuple(b))
        assert x + RF_ZERO == x
        assert x * RF_ONE == x
        assert x - x == RF_ZERO
        if not x.is_zero():
            assert x / x == RF_ONE

    def test_pow(self):
        assert RF_T**4 == RF_Q * RF_Q
        assert RF_Q**-1 == RF_ONE / RF_Q
        assert (RF_Q + 1) ** 3 == (RF_Q + 1) * (RF_Q + 1) * (RF_Q + 1)

    def test_t_and_q_powers(self):
        assert RatFunc.t_power(2) == RF_Q
        assert RatFunc.t_power(-2) == RF_ONE / RF_Q
        assert RatFunc.q_power(3) == RF_Q**3

    def test_subst_t_power(self):
        r = (RF_Q - 1) / (RF_Q + 1)
        s = r.subst_t_power(3)
        assert s == (RF_Q**3 - 1) / (RF_Q**3 + 1)

    @given(poly_strategy(), st.integers(min_value=1, max_value=4))
    @settings(max_examples=40, deadline=None)
    def test_subst_matches_evaluation(self, a, d):
        r = RatFunc(tuple(a), (1,))
        s = r.subst_t_power(d)
        for tv in (Fraction(2), Fraction(3), Fraction(5, 2)):
            assert s.eval_t(tv) == r.eval_t(tv**d)

    def test_eval(self):
        r = (RF_Q**2 - 1) / (RF_Q - 1)
        assert r.eval_t(Fraction(3)) == Fraction(10)  # q = 9, q + 1 = 10

    def test_in_q_detection(self):
        assert (RF_Q + 1).in_q() == ((1, 1), (1,))
        assert RF_T.in_q() is None

    def test_str_in_q(self):
        assert str(RF_Q**2 - RF_Q) == "-q + q^2"
        assert "t" in str(RF_T)

    def test_positive_for_large_q(self):
        assert (RF_Q - 7).positive_for_large_q()
        assert not (1 - RF_Q).positive_for_large_q()

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            RF_ONE / RF_ZERO
        with pytest.raises(ZeroDivisionError):
            RatFunc((1,), (0,))


# ---------------------------------------------------------------------------
# Cyclo
# ---------------------------------------------------------------------------


class TestCyclo:
    @pytest.mark.parametrize("m", list(range(1, 25)))
    def test_cyclotomic_poly_matches_sympy(self, m):
        mine = cyclotomic_poly(m)
        ref = sympy.Poly(sympy.cyclotomic_poly(m, _t), _t).all_coeffs()[::-1]
        assert list(mine) == [int(c) for c in ref]

    @pytest.mark.parametrize("m", list(range(1, 30)))
    def test_phi(self, m):
        assert euler_phi(m) == int(sympy.totient(m))

    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 8, 9, 12])
    def test_root_power_identity(self, m):
        z = Cyclo.root_of_unity(m)
        acc = Cyclo.rational(1)
        for _ in range(m):
            acc = acc * z
        assert acc == Cyclo.rational(1)

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7, 8, 9, 10, 12])
    def test_root_sum_vanishes(self, m):
        total = Cyclo.rational(0)
        for j in range(m):
            total = total + Cyclo.root_of_unity(m, j)
        assert total.is_zero()

    def test_conductor_reduction(self):
        # zeta_4^2 = -1 lives in conductor 1
        z = Cyclo.root_of_unity(4)
        sq = z * z
        assert sq.is_rational()
        assert sq.as_fraction() == -1
        # zeta_6 = -zeta_3^2, conductor normalizes on construction
        assert Cyclo.root_of_unity(6, 2) == Cyclo.root_of_unity(3)

    def test_mixed_conductor_arithmetic(self):
        z3 = Cyclo.root_of_unity(3)
        z4 = Cyclo.root_of_unity(4)
        w = z3 * z4
        acc = Cyclo.rational(1)
        for _ in range(12):
            acc = acc * w
        assert acc == Cyclo.rational(1)

    def test_conjugation_involutive(self):
        z = Cyclo.root_of_unity(5, 2) + Cyclo.rational(Fraction(1, 3))
        assert z.conj().conj() == z

    def test_conj_times_self_on_roots(self):
        for m in (3, 4, 5, 7, 8):
            z = Cyclo.root_of_unity(m)
            assert z * z.conj() == Cyclo.rational(1)

    def test_galois_requires_coprime(self):
        with pytest.raises(ValueError):
            Cyclo.root_of_unity(6).galois(2)

    @given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=24))
    @settings(max_examples=60, deadline=None)
    def test_root_of_unity_exponent_arithmetic(self, m, k):
        z = Cyclo.root_of_unity(m, k)
        direct = Cyclo.root_of_unity(m)
        acc = Cyclo.rational(1)
        for _ in range(k % m if m > 1 else 0):
            acc = acc * direct
        assert z == acc


# ---------------------------------------------------------------------------
# Smith normal form and presentations
# ---------------------------------------------------------------------------


def random_matrix(rng, m, n, bound=6):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)]


class TestSmith:
    @pytest.mark.parametrize("seed", range(25))
    def test_snf_matches_sympy(self, seed):
        rng = random.Random(seed)
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        A = random_matrix(rng, m, n)
        U, D, V = smith_normal_form([row[:] for row in A])
        # U A V == D
        assert mat_mul(mat_mul(U, A), V) == D
        # diagonal, nonnegative, divisibility chain
        diag = [D[i][i] for i in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert D[i][j] == 0
        for i in range(len(diag) - 1):
            if diag[i]:
                assert diag[i + 1] % diag[i] == 0
            else:
                assert diag[i + 1] == 0
        ref = sympy_snf(sympy.Matrix(A))
        ref_diag = [abs(int(ref[i, i])) for i in range(min(m, n))]
        assert [abs(d) for d in diag] == ref_diag

    @pytest.mark.parametrize("seed", range(10))
    def test_kernel(self, seed):
        rng = random.Random(100 + seed)
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        A = random_matrix(rng, m, n)
        for v in integer_kernel(A):
            assert all(sum(A[i][j] * v[j] for j in range(n)) == 0 for i in range(m))
        ker_rank = len(integer_kernel(A))
        assert ker_rank == n - sympy.Matrix(A).rank()


class TestPresentation:
    def test_cyclic_quotient(self):
        pres = group_from_presentation(1, [[5]])
        grp, proj = pres.group, pres.project
        assert grp.orders == (5,)
        assert proj([7]) == proj([2])
        lifted = pres.lift(proj([3]))
        assert proj(lifted) == proj([3])

    def test_klein_vs_cyclic4(self):
        g1 = group_from_presentation(2, [[2, 0], [0, 2]]).group
        assert g1.orders == (2, 2)
        g2 = group_from_presentation(2, [[2, -1], [0, 2]]).group
        assert g2.orders == (4,)

    def test_weight_mod_root_lattice_for_rank2(self):
        # Z^2 / <(2,-1), (-1,2)> is cyclic of order 3
        pres = group_from_presentation(2, [[2, -1], [-1, 2]])
        grp, proj = pres.group, pres.project
        assert grp.orders == (3,)
        gen = proj([1, 0])
        assert grp.element_order(gen) == 3

    def test_theta_transport(self):
        # swap action on Z^2 descends to Z^2/<(2,0),(0,2)>
        pres = group_from_presentation(
            2, [[2, 0], [0, 2]], theta=[[0, 1], [1, 0]])
        grp, proj = pres.group, pres.project
        a, b = proj([1, 0]), proj([0, 1])
        assert grp.apply_theta(a) == b
        assert grp.apply_theta(b) == a

    def test_infinite_quotient_rejected(self):
        with pytest.raises(ValueError):
            group_from_presentation(2, [[2, 0]])


# ---------------------------------------------------------------------------
# FinAbGrpAut
# ---------------------------------------------------------------------------


def group_strategy():
    chains = st.sampled_from([
        (), (2,), (3,), (4,), (2, 2), (2, 4), (3, 3), (2, 6), (5,), (2, 2, 2),
    ])

    @st.composite
    def build(draw):
        orders = draw(chains)
        k = len(orders)
        while True:
            theta = [[draw(st.integers(min_value=0, max_value=11)) for _ in range(k)]
                     for _ in range(k)]
            try:
                return FinAbGrpAut(orders, tuple(tuple(r) for r in theta))
            except ValueError:
                continue

    return build()


class TestFinAbGrpAut:
    def test_validation(self):
        with pytest.raises(ValueError):
            FinAbGrpAut((4, 2), ((1, 0), (0, 1)))  # wrong chain order
        with pytest.raises(ValueError):
            FinAbGrpAut((2, 4), ((0, 0), (1, 0)))  # Z/2 -> Z/4 by odd multiplier

    def test_trivial_group(self):
        g = FinAbGrpAut.trivial()
        assert g.order() == 1
        assert g.elements() == [()]
        assert g.invariant_subgroup() == frozenset([()])
        assert g.coinvariant_structure().order() == 1

    def test_cyclic_inverse_action(self):
        g = FinAbGrpAut.cyclic(5, -1)
        inv = g.invariant_subgroup()
        assert len(inv) == 1
        coinv = g.coinvariant_structure()
        assert coinv.order() == 1

    def test_cyclic6_squaring_is_rejected(self):
        # x -> 2x on Z/6 is a valid endomorphism, not an automorphism;
        # still accepted as endomorphism data
        g = FinAbGrpAut.cyclic(6, 2)
        assert g.apply_theta((1,)) == (2,)

    @given(group_strategy())
    @settings(max_examples=80, deadline=None)
    def test_invariants_match_coinvariants_for_automorphisms(self, g):
        # |G^theta| = |G_theta| whenever theta is bijective
        elems = g.elements()
        if len({g.apply_theta(e) for e in elems}) != len(elems):
            return
        inv = g.invariant_subgroup()
        coinv = g.coinvariant_structure()
        assert len(inv) == coinv.order()

    @given(group_strategy())
    @settings(max_examples=80, deadline=None)
    def test_double_dual_identity(self, g):
        assert g.dual().dual() == g

    def test_dual_adjoint_on_mixed_orders(self):
        # theta: Z/2 x Z/4, e1 -> 2*e2, e2 -> e1 + e2
        g = FinAbGrpAut((2, 4), ((0, 1), (2, 1)))
        d = g.dual()
        # adjoint transposes with the d_i/d_j weights
        assert d.theta == ((0, 1), (2, 1))
        assert d.dual() == g

    def test_subgroup_generated(self):
        g = FinAbGrpAut((2, 4), ((1, 0), (0, 1)))
        h = g.subgroup_generated([(0, 2)])
        assert h == frozenset({(0, 0), (0, 2)})
        assert g.subgroup_structure([(0, 2)]) == (2,)
        assert g.subgroup_structure([(1, 0), (0, 1)]) == (2, 4)

    def test_quotient_structure(self):
        g = FinAbGrpAut((4,), ((1,),))
        q = g.quotient_structure([(2,)])
        assert q.orders == (2,)

    def test_quotient_requires_theta_stable(self):
        # swap on Z/2 x Z/2; subgroup <(1,0)> is not stable
        g = FinAbGrpAut((2, 2), ((0, 1), (1, 0)))
        with pytest.raises(ValueError):
            g.quotient_structure([(1, 0)])
        q = g.quotient_structure([(1, 1)])
        assert q.orders == (2,)
        assert q.is_theta_trivial()

    @given(group_strategy())
    @settings(max_examples=60, deadline=None)
    def test_quotient_order_multiplicativity(self, g):
        elems = g.elements()
        if not elems:
            return
        gen = elems[len(elems) // 2]
        h = g.subgroup_generated([gen, g.apply_theta(gen)])
        if not g.theta_stable(h):
            return
        q = g.quotient_structure([gen, g.apply_theta(gen)])
        assert q.order() * len(h) == g.order()

    def test_swap_action_invariants(self):
        g = FinAbGrpAut((2, 2), ((0, 1), (1, 0)))
        assert g.invariant_subgroup() == frozenset({(0, 0), (1, 1)})
        assert g.coinvariant_structure().orders == (2,)

    def test_theta_order(self):
        g = FinAbGrpAut.cyclic(7, 2)  # 2^3 = 1 mod 7
        assert g.theta_order() == 3
        assert FinAbGrpAut.cyclic(5, -1).theta_order() == 2
        assert FinAbGrpAut.trivial().theta_order() == 1
