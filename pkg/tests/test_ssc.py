import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from jlcs import csa, expsum, ff, ssc
from jlcs import locfield as lf
from jlcs.chars import MultChar
from jlcs.errors import (BudgetExceeded, DecompositionError, DomainError,
                         ValidationError)


def param_q3_21(**kw):
    """(m, r) = (2, 1) over F_3 with zeta = 1 and chi of exponent 1."""
    kw.setdefault("zeta_dlog", 0)
    kw.setdefault("chi_j", 1)
    return ssc.make_param(3, 1, 2, 1, None, **kw)


def param_q3_12(**kw):
    kw.setdefault("zeta_dlog", 0)
    kw.setdefault("chi_j", 1)
    return ssc.make_param(3, 1, 1, 2, 1, **kw)


SMALL_CONFIGS = [
    (3, 1, 2, 1, None),
    (3, 1, 1, 2, 1),
    (3, 1, 2, 2, 1),
    (3, 1, 3, 1, None),
    (2, 1, 1, 3, 2),
    (2, 2, 1, 2, 1),
    (5, 1, 1, 2, 1),
]


class TestScalarModes:
    def test_exact_unit_roundtrip(self):
        c = ssc.CUnit(order=4, power=3)
        assert c.is_exact
        assert abs(c.complex_value() - complex(0, -1)) < 1e-12
        assert c.to_json() == {"order": 4, "power": 3}

    def test_float_unit_must_have_modulus_one(self):
        ssc.CUnit(approx=complex(0.6, 0.8))
        with pytest.raises(ValidationError):
            ssc.CUnit(approx=complex(0.5, 0.5))
        with pytest.raises(ValidationError):
            ssc.CUnit(order=3, approx=1.0 + 0j)
        with pytest.raises(ValidationError):
            ssc.CUnit()
        with pytest.raises(ValidationError):
            ssc.CUnit(order=0)

    def test_values_match_modes(self):
        eta = param_q3_21()
        one = eta.chi.ring.one()
        assert ssc.values_match(one, one)
        assert ssc.values_match(1 + 0j, 1 + 1e-12j)
        assert not ssc.values_match(1 + 0j, 1 + 1e-6j)
        with pytest.raises(ValidationError):
            ssc.values_match(one, 1 + 0j)


class TestParamValidation:
    def test_zeta_must_be_a_unit_of_k(self):
        eta = param_q3_21()
        with pytest.raises(ValidationError):
            ssc.SscParam(eta.k.zero(), eta.chi, eta.c, eta.psi, eta.alg)
        k9 = ff.make_field(3, 2)
        with pytest.raises(ValidationError):
            ssc.SscParam(k9.one(), eta.chi, eta.c, eta.psi, eta.alg)

    def test_value_ring_must_contain_c(self):
        eta = param_q3_21()
        with pytest.raises(ValidationError):
            ssc.SscParam(eta.zeta, eta.chi, ssc.CUnit(order=5), eta.psi,
                         eta.alg)

    def test_characters_share_a_ring(self):
        from jlcs import cyc
        eta = param_q3_21()
        other = MultChar(eta.k, 1, cyc.ring_for(3, 2, 4))
        with pytest.raises(ValidationError):
            ssc.SscParam(eta.zeta, other, eta.c, eta.psi, eta.alg)

    def test_conductor_and_json(self):
        eta = param_q3_12()
        assert eta.conductor == 3
        blob = eta.to_json()
        assert blob["q"] == 3 and blob["side"] == {"m": 1, "r": 2, "s": 1}
        json.dumps(blob)


class TestDecomposition:
    def test_roundtrip_against_factors(self):
        eta = param_q3_21()
        rng = random.Random(11)
        phi = eta.phi()
        for _ in range(8):
            g = ssc.random_group_element(eta, rng, 6)
            v, xbar, u = ssc.decompose(eta.alg, eta.zeta, g)
            back = (phi ** v) * eta.alg.scalar_series(lf.teichmuller(xbar)) * u
            assert back == g

    def test_unit_part_equal_to_one_at_precision_decomposes(self):
        # the 1-unit factor may be indistinguishable from 1 at the working
        # precision; the decomposition is still certified and theta sees 1
        eta = param_q3_21()
        phi = eta.phi()
        g = phi * (eta.alg.identity() + (phi * eta.alg.zero()).truncate(4))
        v, xbar, _ = ssc.decompose(eta.alg, eta.zeta, g)
        assert (v, xbar) == (1, eta.k.one())
        assert ssc.theta_eval(eta, g) == ssc.theta_eval(eta, phi)

    def test_valuation_is_read_off_phi_power(self):
        eta = param_q3_12()
        phi = eta.phi()
        for v in range(4):
            got, xbar, u = ssc.decompose(eta.alg, eta.zeta, phi ** v)
            assert got == v and xbar == eta.k.one()
            assert u == eta.alg.identity()

    def test_singular_element_is_rejected(self):
        eta = param_q3_21()
        with pytest.raises(DecompositionError):
            ssc.decompose(eta.alg, eta.zeta, eta.alg.zero())

    def test_non_scalar_unit_part_is_rejected(self):
        # diag(1, g) is invertible but phi^0-reduction is not a k-scalar
        # times a 1-unit, so it lies outside the domain of theta
        eta = param_q3_21()
        D = eta.alg.D
        z = D.zero()
        g = eta.alg.elem([[D.one(), z], [z, D.teich(eta.k.gen())]])
        with pytest.raises(DecompositionError):
            ssc.decompose(eta.alg, eta.zeta, g)

    def test_nontrivial_residue_extension_unit_is_rejected(self):
        eta = param_q3_12()
        g = eta.alg.elem([[eta.alg.D.teich(eta.alg.D.kr.gen())]])
        with pytest.raises(DecompositionError):
            ssc.decompose(eta.alg, eta.zeta, g)


class TestThetaOracles:
    def test_theta_at_phi_is_signed_c(self):
        # theta(phi) = (-1)^{m-1} c across forms of the same degree
        for m, r, s in [(2, 1, None), (1, 2, 1)]:
            eta = ssc.make_param(3, 1, m, r, s, zeta_dlog=1, chi_j=1,
                                 c=ssc.CUnit(order=4, power=1))
            got = ssc.theta_eval(eta, eta.phi())
            want = eta.chi.ring.zeta(4, 1)
            if (m - 1) % 2:
                want = -want
            assert got == want

    def test_theta_on_teichmuller_scalars_is_chi(self):
        for eta in (param_q3_21(chi_j=2), param_q3_12(chi_j=1)):
            for x in ff.enumerate_mu(eta.k, eta.k.order):
                g = eta.alg.scalar_series(lf.teichmuller(x))
                assert ssc.theta_eval(eta, g) == eta.chi.eval(x)

    def test_theta_on_one_units_frozen(self):
        # theta(1 + w E_11) = 1 and theta(1 + w E_21) = psi(1/zeta):
        # only the entry that phi^{-1} moves onto the diagonal survives
        eta = param_q3_21(zeta_dlog=1)
        D = eta.alg.D
        z = D.zero()
        w = D.from_base_series(lf.uniformizer(eta.k))
        I = eta.alg.identity()
        g11 = I + eta.alg.elem([[w, z], [z, z]])
        g21 = I + eta.alg.elem([[z, z], [w, z]])
        assert ssc.theta_eval(eta, g11) == eta.chi.ring.one()
        assert ssc.theta_eval(eta, g21) == eta.psi.eval(
            eta.k.one() / eta.zeta)

    def test_theta_is_multiplicative(self):
        rng = random.Random(5)
        for p, f, m, r, s in SMALL_CONFIGS[:4]:
            eta = ssc.make_param(p, f, m, r, s, zeta_dlog=1, chi_j=1)
            for _ in range(4):
                g1 = ssc.random_group_element(eta, rng, 6)
                g2 = ssc.random_group_element(eta, rng, 6)
                assert ssc.theta_eval(eta, g1 * g2) == \
                    ssc.theta_eval(eta, g1) * ssc.theta_eval(eta, g2)

    def test_theta_is_trivial_past_the_first_congruence_level(self):
        # theta factors through U^1/U^2: the reduced trace of phi^{-1} x
        # lands in the maximal ideal once x is in the square of the radical
        rng = random.Random(17)
        for eta in (param_q3_21(zeta_dlog=1), param_q3_12(zeta_dlog=1)):
            phi = eta.phi()
            one = eta.chi.ring.one()
            for _ in range(5):
                y = (phi * phi * eta.alg.random_in_order(rng, 6)).truncate(6)
                assert ssc.theta_eval(eta, eta.alg.identity() + y) == one


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL_CONFIGS), st.integers(0, 10 ** 6))
def test_rnorm_valuation_matches_radical_valuation(cfg, seed):
    # on the group where theta lives, the w-valuation of the reduced norm
    # computes the radical valuation, which decompose() relies on
    p, f, m, r, s = cfg
    eta = ssc.make_param(p, f, m, r, s, zeta_dlog=1, chi_j=1)
    rng = random.Random(seed)
    g = ssc.random_group_element(eta, rng, 6)
    assert csa.rnorm(g).valuation() == g.radical_valuation()


class TestEllipticFamily:
    def test_closed_value_at_traceless_u(self):
        # chi is nontrivial on mu_2, so the restricted Gauss sum at 0 dies
        eta = param_q3_21(chi_j=1)
        got = ssc.char_at_gu_closed(eta, eta.alg.zero())
        assert got == eta.chi.ring.zero()

    def test_closed_value_at_trivial_chi_counts_cosets(self):
        # chi of exponent 2 restricts trivially to mu_2: the sum counts
        # n_q cosets with the uniform sign (-1)^{m-1}
        eta = param_q3_21(chi_j=2)
        got = ssc.char_at_gu_closed(eta, eta.alg.zero())
        assert got == -eta.chi.ring.from_int(2)

    def test_closed_value_frozen_at_unit_trace(self):
        # -(psi(1) - psi(-1)) = zeta_3^2 - zeta_3
        eta = param_q3_21(chi_j=1)
        D = eta.alg.D
        z = D.zero()
        u = eta.alg.elem([[D.one(), z], [z, z]])
        got = ssc.char_at_gu_closed(eta, u)
        ring = eta.chi.ring
        assert got == ring.zeta(3, 2) - ring.zeta(3, 1)

    def test_direct_sum_agrees_with_closed_form(self):
        rng = random.Random(23)
        for p, f, m, r, s in SMALL_CONFIGS:
            eta = ssc.make_param(p, f, m, r, s, zeta_dlog=1, chi_j=1)
            us = [eta.alg.zero(), eta.alg.random_in_order(rng, 5)]
            us += [eta.alg.scalar_series(lf.teichmuller(x))
                   for x in (eta.k.one(), eta.k.gen())]
            for u in us:
                closed = ssc.char_at_gu_closed(eta, u)
                direct = ssc.char_at_gu_direct(eta, u)
                assert closed == direct, (p, f, m, r, s)

    def test_value_depends_only_on_trace_residue(self):
        # a Frobenius conjugate has the same relative trace, hence the
        # same character value, without being the same element
        eta = param_q3_12(zeta_dlog=1)
        D = eta.alg.D
        w = D.kr.gen()
        u1 = eta.alg.elem([[D.teich(w)]])
        u2 = eta.alg.elem([[D.teich(ff.frobenius(w, 1, eta.k))]])
        assert u1 != u2
        assert csa.rtrace(u1).residue() == csa.rtrace(u2).residue()
        assert ssc.char_at_gu_direct(eta, u1) == \
            ssc.char_at_gu_direct(eta, u2)

    def test_membership_is_enforced(self):
        eta = param_q3_21()
        with pytest.raises(ValidationError):
            ssc.char_at_gu_closed(eta, param_q3_12().alg.zero())
        bad = eta.alg.scalar_series(lf.uniformizer(eta.k).shift(-2))
        with pytest.raises(ValidationError):
            ssc.char_at_gu_closed(eta, bad)


class TestGuCosets:
    def test_cosets_enumerate_mu_nq(self):
        import math
        for p, f, m, r, s in SMALL_CONFIGS:
            k = ff.make_field(p, f)
            alg = csa.matrix_algebra(csa.div_algebra(k, r, s), m)
            reps = ssc.gu_cosets(alg)
            n_q = math.gcd(alg.n, k.order)
            assert [lam for lam, _, _ in reps] == ff.enumerate_mu(k, n_q)

    def test_representatives_scale_phi(self):
        for p, f, m, r, s in SMALL_CONFIGS:
            k = ff.make_field(p, f)
            alg = csa.matrix_algebra(csa.div_algebra(k, r, s), m)
            for zeta in (k.one(), k.gen()):
                phi = csa.make_phi_zeta(m, alg.D, zeta)
                for lam, x, x_inv in ssc.gu_cosets(alg):
                    scaled = phi.scale_base_series(lf.teichmuller(lam))
                    assert x_inv * phi * x == scaled

    def test_every_scalar_choice_gives_the_same_conjugate_value(self):
        # solutions d of d^{q^s - 1} = lambda^m differ by elements of k,
        # which are central, so the summand cannot depend on the choice
        eta = ssc.make_param(3, 1, 1, 2, 1, zeta_dlog=1, chi_j=1)
        k, kr = eta.k, eta.alg.D.kr
        g = csa.make_g_u(1, eta.alg.D, eta.zeta,
                         eta.alg.scalar_series(lf.one(k)))
        for lam in ff.enumerate_mu(k, 2):
            target = ff.dlog(ff.embed(lam, kr)) if lam != k.one() else 0
            vals = set()
            for t in range(kr.order):
                if ((k.size ** 1 - 1) * t - target) % kr.order:
                    continue
                d = kr.from_dlog(t)
                x = eta.alg.elem([[eta.alg.D.teich(d)]])
                x_inv = eta.alg.elem([[eta.alg.D.teich(kr.one() / d)]])
                vals.add(str(ssc.theta_eval(eta, x_inv * g * x)))
            assert len(vals) == 1


class TestUnipotentFamily:
    def test_frozen_values_q3(self):
        # K_{2,1} = psi(2) + psi(1) = -1; the split form keeps it, the
        # quaternionic form flips the sign
        k = ff.make_field(3, 1)
        eta21 = param_q3_21()
        eta12 = param_q3_12()
        m_one = -eta21.chi.ring.one()
        assert ssc.char_at_unipotent_closed(eta21, k.one()) == m_one
        assert ssc.char_at_unipotent_direct(eta21, k.one()) == m_one
        assert ssc.char_at_unipotent_closed(eta12, k.one()) == -m_one
        assert ssc.char_at_unipotent_direct(eta12, k.one()) == -m_one

    def test_direct_sum_agrees_with_closed_form(self):
        for p, f, m, r, s in SMALL_CONFIGS:
            eta = ssc.make_param(p, f, m, r, s, zeta_dlog=1, chi_j=1)
            for lam in ff.enumerate_mu(eta.k, eta.k.order):
                closed = ssc.char_at_unipotent_closed(eta, lam)
                direct = ssc.char_at_unipotent_direct(eta, lam)
                assert closed == direct, (p, f, m, r, s, ff.dlog(lam))

    def test_deep_route_agrees_for_every_norm_preimage(self):
        for pf, m, r, s in [((3, 1), 2, 1, None), ((3, 1), 1, 2, 1)]:
            eta = ssc.make_param(*pf, m, r, s, zeta_dlog=1, chi_j=1)
            for lam in ff.enumerate_mu(eta.k, eta.k.order):
                closed = ssc.char_at_unipotent_closed(eta, lam)
                deep = ssc.char_at_unipotent_deep(eta, lam, all_c0=True)
                assert closed == deep

    def test_deep_route_medium_config(self):
        eta = ssc.make_param(3, 1, 2, 2, 1, zeta_dlog=1, chi_j=2,
                             c=ssc.CUnit(order=4, power=1))
        lam = eta.k.gen()
        assert ssc.char_at_unipotent_deep(eta, lam) == \
            ssc.char_at_unipotent_closed(eta, lam)

    def test_lambda_must_be_a_unit(self):
        eta = param_q3_21()
        with pytest.raises(ValidationError):
            ssc.char_at_unipotent_closed(eta, eta.k.zero())
        with pytest.raises(ValidationError):
            ssc.char_at_unipotent_direct(eta, eta.k.zero())

    def test_budget_aborts_enumeration(self):
        eta = ssc.make_param(3, 1, 2, 2, 1, zeta_dlog=0, chi_j=1)
        with pytest.raises(BudgetExceeded):
            ssc.char_at_unipotent_direct(eta, eta.k.one(), budget=3)
        with pytest.raises(BudgetExceeded):
            ssc.char_at_unipotent_deep(eta, eta.k.one(), budget=3)


class TestCharTable:
    def test_rows_carry_both_routes(self):
        eta = param_q3_21(zeta_dlog=1)
        us = [eta.alg.zero()]
        lambdas = [eta.k.one(), eta.k.gen()]
        rows = ssc.char_table(eta, us=us, lambdas=lambdas, deep=True)
        kinds = [row.kind for row in rows]
        assert kinds == ["g_u", "one_plus_phi", "one_plus_phi",
                         "one_plus_phi", "one_plus_phi"]
        assert all(row.match for row in rows)
        deep_rows = [row for row in rows
                     if row.params.get("route") == "deep"]
        assert len(deep_rows) == 2
        json.dumps([row.to_json() for row in rows])

    def test_float_mode_rows_match_at_tolerance(self):
        c = ssc.CUnit(approx=complex(0.28, 0.96))
        exact = param_q3_21(zeta_dlog=1)
        eta = ssc.SscParam(exact.zeta, exact.chi, c, exact.psi, exact.alg)
        rows = ssc.char_table(eta, us=[eta.alg.zero()],
                              lambdas=[eta.k.one()], deep=True)
        assert all(isinstance(row.closed_form, complex) for row in rows)
        assert all(row.match for row in rows)
        json.dumps([row.to_json() for row in rows])


class TestTransferRelation:
    def test_transfer_lands_on_the_split_form(self):
        eta = ssc.make_param(2, 1, 1, 3, 2, zeta_dlog=0, chi_j=1)
        out = ssc.jl_transfer(eta)
        assert out.param.alg.D.r == 1 and out.param.alg.m == eta.n
        assert out.sign == (-1) ** (eta.n - eta.alg.m)
        assert out.conductor == eta.n + 1
        assert out.param.zeta == eta.zeta and out.param.chi == eta.chi
        json.dumps(out.to_json())

    def test_relation_holds_on_both_families(self):
        rng = random.Random(31)
        for p, f, m, r, s in [(3, 1, 1, 2, 1), (2, 1, 1, 3, 2),
                              (3, 1, 2, 2, 1), (2, 2, 1, 2, 1)]:
            eta = ssc.make_param(p, f, m, r, s, zeta_dlog=1, chi_j=1)
            us = [eta.alg.zero(), eta.alg.random_in_order(rng, 5)]
            lambdas = ff.enumerate_mu(eta.k, eta.k.order)
            rows = ssc.character_relation_check(eta, us=us, lambdas=lambdas)
            assert len(rows) == len(lambdas) + len(us)
            assert all(row.match for row in rows), (p, f, m, r, s)
            assert all(row.params["route"] == "relation" for row in rows)

    def test_relation_on_the_split_form_is_trivial_sign(self):
        eta = param_q3_21(zeta_dlog=1)
        rows = ssc.character_relation_check(eta, lambdas=[eta.k.one()])
        assert rows[0].match
        assert ssc.jl_transfer(eta).sign == 1


class TestLocalConstants:
    def test_epsilon_frozen(self):
        eta = param_q3_21(c=ssc.CUnit(order=4, power=1))
        # (-1)^{n-1} c = -i
        assert ssc.epsilon(eta) == -eta.chi.ring.zeta(4, 1)

    def test_trivial_twist_fixes_epsilon(self):
        eta = param_q3_12(zeta_dlog=1)
        xi = ssc.TameChar(MultChar(eta.k, 0, eta.chi.ring),
                          ssc.CUnit(order=1))
        assert ssc.epsilon_twisted(eta, xi) == ssc.epsilon(eta)

    def test_unramified_quadratic_twist_flips_even_degree(self):
        # xi unramified with xi(w) = -1 scales by xi((-1)^{n-1} zeta w),
        # which for even n and zeta = 1 is exactly -1
        eta = param_q3_21(zeta_dlog=0)
        xi = ssc.TameChar(MultChar(eta.k, 0, eta.chi.ring),
                          ssc.CUnit(order=2, power=1))
        assert ssc.epsilon_twisted(eta, xi) == -ssc.epsilon(eta)

    def test_twist_value_tracks_zeta_and_sign(self):
        eta = param_q3_21(zeta_dlog=1)
        xi = ssc.TameChar(MultChar(eta.k, 1, eta.chi.ring),
                          ssc.CUnit(order=1))
        ybar = -eta.zeta
        assert ssc.epsilon_twisted(eta, xi) == \
            xi.unit_part.eval(ybar) * ssc.epsilon(eta)

    def test_normalized_tau_reproduces_twisted_epsilon(self):
        for p, f, m, r, s in SMALL_CONFIGS:
            eta = ssc.make_param(p, f, m, r, s, zeta_dlog=1, chi_j=1,
                                 c=ssc.CUnit(order=4, power=3))
            for j in range(eta.k.order):
                for w_pow in range(3):
                    xi = ssc.TameChar(MultChar(eta.k, j, eta.chi.ring),
                                      ssc.CUnit(order=4, power=w_pow))
                    tau = ssc.normalized_tau(eta, xi)
                    want = ssc.epsilon_twisted(eta, xi)
                    if (eta.n - eta.alg.m) % 2:
                        tau = -tau
                    assert tau == want

    def test_normalized_tau_rejects_degree_one(self):
        eta = ssc.make_param(3, 1, 1, 1, None, zeta_dlog=1)
        xi = ssc.TameChar(MultChar(eta.k, 0, eta.chi.ring),
                          ssc.CUnit(order=1))
        with pytest.raises(DomainError):
            ssc.normalized_tau(eta, xi)

    def test_exact_mode_rejects_float_twist(self):
        eta = param_q3_21()
        xi = ssc.TameChar(MultChar(eta.k, 0, eta.chi.ring),
                          ssc.CUnit(approx=1 + 0j))
        with pytest.raises(ValidationError):
            ssc.epsilon_twisted(eta, xi)

    def test_float_mode_constants(self):
        exact = param_q3_21(zeta_dlog=1, c=ssc.CUnit(order=4, power=1))
        c = ssc.CUnit(approx=exact.c.complex_value())
        eta = ssc.SscParam(exact.zeta, exact.chi, c, exact.psi, exact.alg)
        xi = ssc.TameChar(MultChar(eta.k, 1, eta.chi.ring),
                          ssc.CUnit(order=2, power=1))
        got = ssc.epsilon_twisted(eta, xi)
        want = ssc.epsilon_twisted(exact, xi).complex_value()
        assert ssc.values_match(got, want)
        assert ssc.values_match(ssc.normalized_tau(eta, xi),
                                ssc.normalized_tau(exact, xi).complex_value())


class TestCentralCharacter:
    def test_agrees_with_theta_on_scalars(self):
        for p, f, m, r, s in [(3, 1, 2, 1, None), (3, 1, 1, 2, 1),
                              (2, 2, 1, 2, 1)]:
            eta = ssc.make_param(p, f, m, r, s, zeta_dlog=1, chi_j=1,
                                 c=ssc.CUnit(order=4, power=1))
            omega = ssc.central_char(eta)
            for t in range(eta.k.order):
                for v in (-2, -1, 0, 1, 2):
                    x = lf.teichmuller(eta.k.from_dlog(t)).shift(v)
                    assert omega.at(x) == ssc.theta_eval(
                        eta, eta.alg.scalar_series(x))

    def test_uniformizer_value_closed_form(self):
        eta = param_q3_12(zeta_dlog=1, c=ssc.CUnit(order=4, power=1))
        omega = ssc.central_char(eta)
        assert omega.varpi_value() == omega.at(lf.uniformizer(eta.k))

    def test_one_units_matter_only_for_degree_one(self):
        eta = param_q3_21(zeta_dlog=1)
        omega = ssc.central_char(eta)
        x = lf.one(eta.k) + lf.uniformizer(eta.k, prec=6)
        assert omega.at(x) == eta.chi.ring.one()

        eta1 = ssc.make_param(3, 1, 1, 1, None, zeta_dlog=1, chi_j=1)
        omega1 = ssc.central_char(eta1)
        got = omega1.at(lf.one(eta1.k) + lf.uniformizer(eta1.k, prec=6))
        assert got == eta1.psi.eval(eta1.k.one() / eta1.zeta)

    def test_zero_is_rejected(self):
        eta = param_q3_21()
        with pytest.raises(DomainError):
            ssc.central_char(eta).at(lf.zero(eta.k))


class TestEndoclass:
    def test_label_is_transfer_invariant_and_ignores_chi_and_c(self):
        eta = ssc.make_param(2, 1, 1, 3, 2, zeta_dlog=0, chi_j=0)
        other = ssc.make_param(2, 1, 3, 1, None, zeta_dlog=0, chi_j=1,
                               c=ssc.CUnit(order=2, power=1))
        assert ssc.endoclass_label(eta) == ssc.endoclass_label(other)
        assert ssc.endoclass_label(eta) == \
            ssc.endoclass_label(ssc.jl_transfer(eta).param)

    def test_label_separates_zeta(self):
        a = ssc.make_param(3, 1, 2, 1, None, zeta_dlog=0)
        b = ssc.make_param(3, 1, 2, 1, None, zeta_dlog=1)
        assert ssc.endoclass_label(a) != ssc.endoclass_label(b)
