import cmath
import json

import numpy as np
import pytest

from chebydyn.analysis import (
    antenna_check,
    boundary_point,
    cat_membership,
    verification_report_json,
    verify_special_cases,
)
from chebydyn.exceptions import OutOfAntennaRange
from chebydyn.orbits import IterationConfig

LONG = IterationConfig(max_iter=2000)


class TestCatMembership:
    def test_body_center_strange_fixed(self):
        v = cat_membership(3.0)
        assert v.verdict == "strange" and v.strange_kind == "fixed-point"

    def test_super_halley_roots_only(self):
        assert cat_membership(1.0).verdict == "roots_only"

    def test_head_strange(self):
        assert cat_membership(2.0).verdict == "strange"

    def test_bulb_strange_cycle(self):
        v = cat_membership(3.55, LONG)
        assert v.verdict == "strange"
        assert v.strange_kind == "cycle" and v.period == 2

    def test_antenna_orbits_decide_after_leaving_the_circle(self):
        # rounding ejects the on-circle critical orbits into the two basins
        v = cat_membership(0.25)
        assert v.verdict == "roots_only"

    def test_conjugation_invariance(self):
        rng = np.random.default_rng(59)
        for _ in range(12):
            a = complex(rng.uniform(0, 4), rng.uniform(-1.5, 1.5))
            assert cat_membership(a).verdict == cat_membership(a.conjugate()).verdict

    def test_evidence_carried(self):
        v = cat_membership(3.0)
        assert v.evidence and len(v.evidence) == 2
        doc = v.to_json_dict()
        json.dumps(doc)
        assert doc["verdict"] == "strange"


class TestBoundaryPoint:
    def test_head_theta_pi(self):
        alpha, mult = boundary_point("head", cmath.pi)
        assert abs(alpha - 11 / 6) < 1e-12
        assert abs(mult + 1) < 1e-10

    def test_head_theta_zero_triple_point(self):
        alpha, mult = boundary_point("head", 0.0)
        assert abs(alpha - 2.5) < 1e-12
        assert abs(abs(mult) - 1) < 1e-10

    def test_body_theta_zero(self):
        alpha, mult = boundary_point("body", 0.0)
        assert abs(alpha - 3.5) < 1e-12
        assert abs(abs(mult) - 1) < 1e-10

    @pytest.mark.parametrize("region", ["head", "body"])
    def test_boundary_multiplier_modulus_one(self, region):
        for k in range(64):
            theta = 2 * cmath.pi * k / 64
            _, mult = boundary_point(region, theta)
            assert abs(abs(mult) - 1) < 1e-10

    def test_head_multiplier_formula(self):
        for k in range(64):
            theta = 2 * cmath.pi * k / 64
            _, mult = boundary_point("head", theta)
            w = cmath.exp(1j * theta)
            assert abs(mult - (2 * w + 1) / (2 + w)) < 1e-10

    def test_unknown_region(self):
        with pytest.raises(ValueError):
            boundary_point("tail", 0.0)


class TestAntennaCheck:
    def test_alpha_zero(self):
        rep = antenna_check(0.0)
        assert abs(rep.critical_modulus - 1) < 1e-12
        assert abs(rep.pole_modulus - 0.5) < 1e-12

    @pytest.mark.parametrize("alpha", [0.1, 0.25, 0.4])
    def test_left_antenna(self, alpha):
        rep = antenna_check(alpha)
        assert abs(rep.critical_modulus - 1) < 1e-10
        assert rep.pole_modulus < 1
        assert len(rep.fates) == 2

    def test_right_antenna(self):
        rep = antenna_check(1.75)
        assert abs(rep.critical_modulus - 1) < 1e-10
        assert rep.pole_modulus < 1

    @pytest.mark.parametrize("alpha", [-0.1, 0.5, 1.0, 1.5, 2.0, 3.0])
    def test_out_of_range(self, alpha):
        with pytest.raises(OutOfAntennaRange):
            antenna_check(alpha)

    def test_json(self):
        json.dumps(antenna_check(0.2).to_json_dict())


class TestVerifySpecialCases:
    def test_zero_failures(self):
        rows = verify_special_cases()
        failures = [r.case for r in rows if not r.passed]
        assert failures == []

    def test_reduction_rows_coefficient_exact(self):
        rows = {r.case: r for r in verify_special_cases()}
        for key in list(rows):
            if "reduces to" in key:
                assert rows[key].residual < 1e-12

    def test_report_json_schema(self):
        report = verification_report_json()
        assert all(set(r) == {"case", "expected", "observed", "residual", "pass"}
                   for r in report)
        json.dumps(report)
