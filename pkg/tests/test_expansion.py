import math
from fractions import Fraction as Q

import pytest

from paper_values import TABLE2, TABLE4, X_VALUES
from uniasym.errors import DomainError, RegimeError
from uniasym.expansion import (
    Method,
    eval_appendix,
    eval_F1,
    eval_oracle,
    eval_theorem1,
    eval_theorem2,
)
from uniasym.oracle import PrecisionConfig, reference_value
from uniasym.phase import Params, Regime
from uniasym.scalar import WORKING, LogScaled, erfcx, extended

CTX = extended(60)


def P(x="0.3", lam=50, **kw):
    base = dict(a="0.5", c=2, eps=2, lam=lam, x=x)
    base.update(kw)
    return Params(**base)


_ORACLE = {}


def oracle(params):
    key = (params.x, params.lam, params.m)
    if key not in _ORACLE:
        _ORACLE[key] = LogScaled.from_real(reference_value(params, PrecisionConfig(digits=60)).value)
    return _ORACLE[key]


def error(result, params):
    return float(result.value.relative_difference(oracle(params)))


class TestTheorem1:
    @pytest.mark.parametrize("x,lam,K", [("0.30", 50, 5), ("0.70", 100, 0), ("0.55", 50, 0)])
    def test_table2_cells(self, x, lam, K):
        params = P(x, lam)
        err = error(eval_theorem1(params, K, CTX), params)
        printed = TABLE2[(lam, x)][K]
        assert printed / 5 < err < printed * 5

    def test_working_precision_reaches_table_scale(self):
        params = P("0.30", 50)
        err = error(eval_theorem1(params, 5, WORKING), params)
        assert err < 9.81e-14 * 1.5

    @pytest.mark.parametrize("x", X_VALUES)
    @pytest.mark.parametrize("lam", [50, 100])
    def test_error_decreases_with_K(self, x, lam):
        params = P(x, lam)
        errs = [error(eval_theorem1(params, K, CTX), params) for K in range(6)]
        assert all(errs[k + 1] <= errs[k] for k in range(5))

    @pytest.mark.parametrize("x", X_VALUES)
    @pytest.mark.parametrize("K", [0, 2, 5])
    def test_error_decreases_with_lambda(self, x, K):
        e50 = error(eval_theorem1(P(x, 50), K, CTX), P(x, 50))
        e100 = error(eval_theorem1(P(x, 100), K, CTX), P(x, 100))
        assert e100 < e50

    def test_result_fields(self):
        r = eval_theorem1(P("0.3"), 3)
        assert r.method is Method.THEOREM1 and r.regime is Regime.UPPER
        assert r.terms_used == 4 and r.last_term_magnitude >= 0
        assert eval_theorem1(P("0.7"), 3).regime is Regime.LOWER

    def test_exact_coalescence_rejected(self):
        with pytest.raises(RegimeError):
            eval_theorem1(P("0.5"), 2)

    def test_truncation_bound(self):
        with pytest.raises(DomainError):
            eval_theorem1(P("0.3"), 7)

    def test_large_lambda_overflow_free(self):
        r = eval_theorem1(P("0.7", 10**6), 2)
        assert math.isfinite(float(r.value.log_magnitude)) and r.value.sign == 1

    def test_large_lambda_limit(self):
        # F -> (1 - eps x)^-1 as lam -> infinity with eps x < 1
        assert float(eval_theorem1(P("0.30", 10**4), 5).value) == pytest.approx(2.5, rel=0.01)


class TestAppendix:
    @pytest.mark.parametrize("x", X_VALUES)
    @pytest.mark.parametrize("lam", [50, 100])
    def test_identity_with_theorem1(self, x, lam):
        params = P(x, lam)
        for K in (0, 3, 5):
            t1 = eval_theorem1(params, K, CTX).value
            ap = eval_appendix(params, K, CTX).value
            assert ap.relative_difference(t1) < CTX.real(10) ** -40

    def test_identity_at_working_precision_is_roundoff_limited(self):
        t1 = eval_theorem1(P("0.30", 50), 5).value
        ap = eval_appendix(P("0.30", 50), 5).value
        assert float(ap.relative_difference(t1)) < 1e-10

    def test_erfc_asymptotic_normalisation(self):
        # sqrt(pi) x erfcx(x) = 1 - 1/(2x^2) + ...
        assert math.sqrt(math.pi) * 5 * erfcx(5) == pytest.approx(1.0, abs=0.025)

    def test_coalescence_rejected(self):
        with pytest.raises(RegimeError):
            eval_appendix(P("0.5"), 1)


class TestTheorem2:
    @pytest.mark.parametrize("lam,K", [(50, 2), (150, 0), (100, 1)])
    def test_table4_cells(self, lam, K):
        params = P("0.5", lam)
        err = error(eval_theorem2(params, K, CTX), params)
        printed = TABLE4[lam][K]
        assert printed / 5 < err < printed * 5

    def test_lambda_scaling(self):
        e = [error(eval_theorem2(P("0.5", lam), 0, CTX), P("0.5", lam)) for lam in (50, 150)]
        assert e[1] / e[0] == pytest.approx((50 / 150) ** 1.5, rel=0.15)

    def test_explicit_and_generic_agree(self):
        params = P("0.5", 100)
        a = eval_theorem2(params, 2, CTX, source="explicit").value
        b = eval_theorem2(params, 2, CTX, source="generic").value
        assert a.relative_difference(b) < CTX.real(10) ** -40

    def test_explicit_limited_to_three_terms(self):
        with pytest.raises(DomainError):
            eval_theorem2(P("0.5"), 3, source="explicit")
        assert eval_theorem2(P("0.5"), 5).terms_used == 6

    def test_off_coalescence_rejected(self):
        with pytest.raises(RegimeError):
            eval_theorem2(P("0.3"), 1)


class TestDispatcher:
    def test_coalescent_point(self):
        r = eval_F1(P("0.5"), 2)
        assert r.method is Method.THEOREM2 and r.regime is Regime.COALESCENT

    def test_upper_point(self):
        r = eval_F1(P("0.3"), 2)
        assert r.method is Method.THEOREM1 and r.regime is Regime.UPPER

    def test_forced_methods(self):
        assert eval_F1(P("0.3"), 2, "appendix").method is Method.APPENDIX
        with pytest.raises(RegimeError):
            eval_F1(P("0.3"), 2, "theorem2")
        with pytest.raises(RegimeError):
            eval_F1(P("0.5"), 2, "theorem1")

    def test_requires_m_one(self):
        with pytest.raises(DomainError):
            eval_F1(P("0.3", m=2), 2)

    def test_oracle_pass_through(self):
        r = eval_F1(P("0.3"), 2, "oracle", CTX)
        assert r.method is Method.ORACLE
        assert r.extras["tail_bound"] > 0
        assert r.value.relative_difference(oracle(P("0.3"))) < CTX.real(10) ** -50
        assert eval_oracle(P("0.3")).terms_used > 1

    def test_continuity_across_coalescence(self):
        xs = [Q(1, 2) - Q(1, 1000), Q(1, 2), Q(1, 2) + Q(1, 1000)]
        values = []
        for x in xs:
            params = P(x, 100)
            r = eval_F1(params, 2, ctx=CTX)
            assert error(r, params) < 1e-4
            values.append(float(r.value))
        assert values[0] < values[1] < values[2]
        assert (values[2] - values[0]) / values[1] < 0.1

    def test_near_threshold_uses_theorem1_with_escalation(self):
        params = P(1 / (2 + Q(1, 10**6)), 100)
        r = eval_F1(params, 3, ctx=CTX)
        assert r.method is Method.THEOREM1
        assert error(r, params) < 1e-6
