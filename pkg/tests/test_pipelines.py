"""End-to-end pipeline statuses and sweep semantics."""
import json

import pytest

from duorth import (DiffOperator, Polynomial, Rational, run_identities_rc,
                    run_identities_operator, run_sweep, run_theorem4,
                    run_theorem5)
from duorth.pipelines import PASSED, UNMET, VIOLATED
from duorth.poly import ONE

R = Rational


def family4(a0, c0, c1, a3_const=1):
    return DiffOperator([Polynomial([a0]), Polynomial([c0, c1]),
                         Polynomial.zero(), Polynomial([a3_const])])


class TestTheorem4Pipeline:
    def test_qualifying_passes(self):
        res = run_theorem4(family4(R(2), R(-1), R(3)),
                           moment_order=28, check_order=14, hahn_n=8)
        assert res.status == PASSED
        tags = {item["tag"] for item in res.report.items}
        for tag in ("Eq-p1=0", "Eq-p0", "Eq-phi-1,1", "Eq-phi-2,2",
                    "Eq-EqClassic-1", "Eq-EqClassic-2", "Eq-9.1", "Eq-7.2",
                    "Eq-8.2", "Eq-Da2u0", "Eq-Dcomplete", "Hahn",
                    "biorthogonality", "Eq-rr-2orto-fit"):
            assert tag in tags, tag

    def test_scale_miss_is_unmet(self):
        # a3 = 2 gives a 2-orthogonal eigen-MPS whose gamma_1 differs from
        # the value implied by a1
        res = run_theorem4(family4(R(2), R(-1), R(3), a3_const=2),
                           moment_order=20, check_order=8, hahn_n=6)
        assert res.status == UNMET
        assert "outside theorem scope" in res.failure["reason"]

    def test_generic_cubic_is_unmet(self):
        J = DiffOperator([Polynomial([2]), Polynomial([-1, 3]),
                          Polynomial.zero(), Polynomial([1, 1, 0, 1])])
        res = run_theorem4(J, moment_order=20, check_order=8, hahn_n=6)
        assert res.status == UNMET
        assert "not 2-orthogonal" in res.failure["reason"]

    def test_non_isomorphism_is_unmet(self):
        J = DiffOperator([Polynomial.zero(), Polynomial([0, 1]),
                          Polynomial.zero(), ONE])
        res = run_theorem4(J, moment_order=20, check_order=8, hahn_n=6)
        assert res.status == UNMET


class TestTheorem5Pipeline:
    def test_qualifying_passes(self):
        s0 = R(3, 2)
        J = DiffOperator([Polynomial([5]), Polynomial([R(1, 2), -2]),
                          Polynomial([s0]), ONE])
        res = run_theorem5(J, 1 / s0, moment_order=28, check_order=14, hahn_n=8)
        assert res.status == PASSED
        tags = {item["tag"] for item in res.report.items}
        assert {"Table-1-varpi11", "Table-1-varpi22", "Eq-EqClassic-2",
                "Hahn"} <= tags

    def test_tau_offscale_is_unmet(self):
        s0 = R(3, 2)
        J = DiffOperator([Polynomial([5]), Polynomial([R(1, 2), -2]),
                          Polynomial([s0]), Polynomial([7]) ])
        res = run_theorem5(J, 7 / s0, moment_order=20, check_order=8, hahn_n=6)
        assert res.status == UNMET


class TestIdentitySuites:
    def test_rc_route(self, sampler):
        rc = sampler.recurrence(26)
        res = run_identities_rc(rc, moment_order=24, check_order=12)
        assert res.status == PASSED
        tags = {item["tag"] for item in res.report.items}
        assert "round-trip" in tags and "Eq-u5" in tags

    def test_operator_route(self):
        res = run_identities_operator(family4(R(1), R(0), R(1)),
                                      moment_order=24, check_order=12)
        assert res.status == PASSED

    def test_shallow_rc_rejected(self):
        from duorth import RecurrenceCoeffs
        rc = RecurrenceCoeffs([0, 0], [1, 1], [1, 1])
        with pytest.raises(ValueError):
            run_identities_rc(rc, moment_order=20, check_order=8)


class TestSweep:
    def test_counts_and_dumps(self):
        tree = run_sweep("verify-theorem4", seed=5, draws=6,
                         moment_order=24, check_order=12)
        s = tree["summary"]
        assert s[PASSED] + s[UNMET] + s[VIOLATED] == 6
        assert s[VIOLATED] == 0
        assert s[PASSED] >= 1
        assert len(tree["entries"]) == 6

    def test_deterministic(self):
        a = run_sweep("verify-theorem5", seed=9, draws=4,
                      moment_order=24, check_order=12)
        b = run_sweep("verify-theorem5", seed=9, draws=4,
                      moment_order=24, check_order=12)
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_identities_target(self):
        tree = run_sweep("verify-identities", seed=3, draws=3,
                         moment_order=20, check_order=8)
        assert tree["summary"][PASSED] == 3

    def test_single_draw(self):
        tree = run_sweep("verify-theorem4", seed=1, draws=1,
                         moment_order=20, check_order=8)
        assert len(tree["entries"]) == 1
        s = tree["summary"]
        assert s[PASSED] + s[UNMET] + s[VIOLATED] == 1

    def test_unknown_target(self):
        with pytest.raises(ValueError):
            run_sweep("verify-nothing", seed=0, draws=1)
