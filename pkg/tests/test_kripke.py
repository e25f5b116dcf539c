"""The two-node forcing model: EF axioms hold at the root, MP does not."""

from fractions import Fraction

import pytest

from geokernel.field import NA, eps
from geokernel.kripke import (
    EF_AXIOMS, MP, M0, M1, DomainViolation, FEq, FExists, FNot, FP, TOp,
    TVar, check_ef_axioms, forces, mp_counterexample, na_classify,
    report_to_json, tconst,
)

X = TVar("x")


class TestClassify:
    def test_rational(self):
        c = na_classify(NA(Fraction(3, 2)))
        assert (c.sign, c.infinitesimal, c.finitely_bounded) == (1, False,
                                                                True)

    def test_infinitesimal(self):
        c = na_classify(eps())
        assert c.sign == 1 and c.infinitesimal and c.finitely_bounded

    def test_unbounded(self):
        c = na_classify(NA(1) / eps())
        assert not c.finitely_bounded

    def test_zero(self):
        c = na_classify(NA(0))
        assert c.sign == 0 and c.finitely_bounded


class TestForcing:
    def test_p_is_node_relative(self):
        env = {"x": eps()}
        assert not forces(M0, FP(X), env)
        assert forces(M1, FP(X), env)

    def test_not_checks_both_nodes(self):
        # P(eps) fails at M0 but holds at M1, so not-P(eps) is not forced
        env = {"x": eps()}
        assert not forces(M0, FNot(FP(X)), env)
        assert forces(M0, FNot(FNot(FP(X))), env)

    def test_monotonicity_on_samples(self):
        # anything forced at the root stays forced above
        for v in (NA(2), eps(), NA(0), NA(-3) + eps()):
            env = {"x": v, "y": -v}
            for phi in EF_AXIOMS.values():
                if forces(M0, phi, env):
                    assert forces(M1, phi, env)

    def test_domain_violation(self):
        with pytest.raises(DomainViolation):
            forces(M0, FP(X), {"x": NA(1) / eps()})
        assert forces(M1, FP(X), {"x": NA(1) / eps()})

    def test_exists_witness_must_be_bounded(self):
        # 1/x escapes the root domain when x is infinitesimal, so the
        # inverse axiom is only vacuously forced there (P(eps) fails first)
        phi = FExists("y", TOp("inv", (X,)), FEq(TVar("y"), TVar("y")))
        assert not forces(M0, phi, {"x": eps()})
        assert forces(M1, phi, {"x": eps()})


class TestEFAxioms:
    def test_stability_with_infinitesimal_difference(self):
        # x and y differing by eps: not-not-(x=y) fails at M1, so EF0 holds
        env = {"x": NA(1), "y": NA(1) + eps()}
        assert forces(M0, EF_AXIOMS["EF0"], env)

    def test_ef5_square_root_witness(self):
        env = {"x": NA(4) + eps(), "y": -(NA(4) + eps())}
        assert forces(M0, EF_AXIOMS["EF5"], env)

    def test_ef1_inverse_witness(self):
        env = {"x": NA(Fraction(2, 3)), "y": NA(0)}
        assert forces(M0, EF_AXIOMS["EF1"], env)

    def test_sampled_report(self):
        rep = check_ef_axioms(samples=40, seed=3)
        assert rep["failures"] == 0
        verdicts = {e["verdict"] for e in rep["entries"]}
        assert verdicts == {"forced", "domain-rejected"}
        report_to_json(rep)  # serializable

    def test_deterministic(self):
        a = check_ef_axioms(samples=20, seed=5)
        b = check_ef_axioms(samples=20, seed=5)
        assert report_to_json(a) == report_to_json(b)


class TestMP:
    def test_counterexample(self):
        d = mp_counterexample()
        assert d["notnot_P_forced_at_M0"]
        assert not d["P_forced_at_M0"]
        assert d["P_forced_at_M1"]
        assert not d["MP_forced_at_M0"]
        assert d["sanity_P_of_1_at_M0"]

    def test_mp_forced_above(self):
        assert forces(M1, MP, {"x": eps()})
