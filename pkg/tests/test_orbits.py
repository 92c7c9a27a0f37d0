import numpy as np
import pytest

from chebydyn.fixed_points import critical_points, strange_roots
from chebydyn.orbits import (
    AttractorEntry,
    AttractorSet,
    IterationConfig,
    find_attractors,
    find_cycles,
    iterate_orbit,
    seed_attractors,
)
from chebydyn.rational import RationalMap, build_operator
from chebydyn.sphere import INFINITY, SpherePoint, chart_distance


class TestIterationConfig:
    def test_defaults_valid(self):
        cfg = IterationConfig()
        assert cfg.max_iter == 500 and cfg.transient == 200

    @pytest.mark.parametrize("kw", [
        {"max_iter": 100, "transient": 200},
        {"max_period": 0},
        {"eps_converge": 0.0},
        {"confirm_steps": 0},
    ])
    def test_invalid_rejected(self, kw):
        with pytest.raises(ValueError):
            IterationConfig(**kw)


class TestIterateOrbit:
    def test_z4_inside_unit_disk(self):
        op = build_operator(1.0)
        fate = iterate_orbit(op, 0.5, seed_attractors(1.0))
        assert fate.kind == "converged" and fate.label == "zero"

    def test_z4_outside_unit_disk(self):
        op = build_operator(1.0)
        fate = iterate_orbit(op, 2.0, seed_attractors(1.0))
        assert fate.kind == "converged" and fate.label == "infinity"

    def test_critical_orbit_lands_on_superattractor(self):
        op = build_operator(3.0)
        atts = seed_attractors(3.0)
        c1, c2 = critical_points(3.0).free
        f1 = iterate_orbit(op, c1, atts)
        f2 = iterate_orbit(op, c2, atts)
        assert {f1.label, f2.label} == {"s1", "s2"}

    def test_head_interior_critical_orbits_reach_one(self):
        op = build_operator(2.2)
        atts = seed_attractors(2.2)
        for c in critical_points(2.2).free:
            assert iterate_orbit(op, c, atts).label == "one"

    def test_indeterminate_is_undecided(self):
        op = build_operator(0.5)
        fate = iterate_orbit(op, -1.0, seed_attractors(0.5))
        assert fate.kind == "undecided"

    def test_starting_at_infinity(self):
        fate = iterate_orbit(build_operator(2.0), INFINITY, seed_attractors(2.0))
        assert fate.label == "infinity"

    def test_exact_landing_on_repelling_point_stays_undecided(self):
        # alpha=0: the critical point -1 maps straight onto the repelling z=1
        cfg = IterationConfig(max_iter=400, transient=100)
        fate = iterate_orbit(build_operator(0.0), -1.0, seed_attractors(0.0), cfg)
        assert fate.kind == "undecided"


class TestReciprocalInvolution:
    SWAP = {"zero": "infinity", "infinity": "zero", "s1": "s2", "s2": "s1", "one": "one"}

    @pytest.mark.parametrize("alpha", [3.0, 2.2, 1 + 0.3j, 3.55, 0.3 - 0.8j])
    def test_fates_swap_labels(self, alpha):
        op = build_operator(alpha)
        atts = find_attractors(alpha)
        rng = np.random.default_rng(41)
        for _ in range(100):
            z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if abs(z) < 0.05:
                continue
            f = iterate_orbit(op, z, atts)
            g = iterate_orbit(op, 1 / z, atts)
            assert f.kind == g.kind
            if f.kind == "converged" and f.label in self.SWAP:
                assert g.label == self.SWAP[f.label]
            if f.kind == "cycle":
                assert g.period == f.period


class TestFindAttractors:
    def test_alpha3(self):
        assert sorted(find_attractors(3.0).labels()) == ["infinity", "s1", "s2", "zero"]

    def test_alpha1(self):
        assert sorted(find_attractors(1.0).labels()) == ["infinity", "zero"]

    def test_alpha2(self):
        assert sorted(find_attractors(2.0).labels()) == ["infinity", "one", "zero"]

    def test_bulb_alpha_includes_cycles(self):
        labels = find_attractors(3.55, IterationConfig(max_iter=1000)).labels()
        assert any(lab.startswith("cycle2") for lab in labels)

    def test_deterministic(self):
        a = find_attractors(3.55, IterationConfig(max_iter=800))
        b = find_attractors(3.55, IterationConfig(max_iter=800))
        assert a.labels() == b.labels()
        for ea, eb in zip(a.entries, b.entries):
            assert ea.points == eb.points


class TestFindCycles:
    def test_period2_left_of_head_bifurcation(self):
        recs = find_cycles(1.80, IterationConfig(max_iter=1000))
        assert recs and recs[0].period == 2
        assert recs[0].modulus < 1

    def test_period2_right_of_body_bifurcation(self):
        recs = find_cycles(3.55, IterationConfig(max_iter=1000))
        assert recs
        assert all(r.period == 2 and r.modulus < 1 for r in recs)

    def test_no_cycles_at_alpha3(self):
        assert find_cycles(3.0) == []

    def test_cycle_points_return(self):
        cfg = IterationConfig(max_iter=1000)
        for rec in find_cycles(3.55, cfg):
            op = build_operator(3.55)
            z = rec.points[0]
            for _ in range(rec.period):
                z = op.eval(z)
            assert chart_distance(z, rec.points[0]) < 10 * cfg.eps_converge


class TestGenericEngineAgreesWithKernel:
    @pytest.mark.parametrize("alpha", [3.0, 2.2, 1.8, 1 + 0.3j])
    def test_same_fates_for_family_map(self, alpha):
        fam = build_operator(alpha)
        generic = RationalMap(fam.numer, fam.denom, alpha=fam.alpha)  # family=False
        assert not generic.family
        atts = find_attractors(alpha, IterationConfig(max_iter=1000))
        rng = np.random.default_rng(43)
        cfg = IterationConfig(max_iter=1000)
        for _ in range(40):
            z = complex(rng.uniform(-1.8, 1.8), rng.uniform(-1.8, 1.8))
            f = iterate_orbit(fam, z, atts, cfg)
            g = iterate_orbit(generic, z, atts, cfg)
            assert (f.kind, f.label, f.period) == (g.kind, g.label, g.period)


class TestAttractorSet:
    def test_requires_zero_and_infinity(self):
        with pytest.raises(ValueError):
            AttractorSet((AttractorEntry("zero", (SpherePoint(0j),)),))

    def test_rejects_near_duplicates(self):
        entries = (
            AttractorEntry("zero", (SpherePoint(0j),)),
            AttractorEntry("infinity", (INFINITY,)),
            AttractorEntry("x", (SpherePoint(0.5),)),
            AttractorEntry("y", (SpherePoint(0.5 + 1e-9j),)),
        )
        with pytest.raises(ValueError):
            AttractorSet(entries, eps=1e-8)

    def test_flatten_round_trip(self):
        atts = find_attractors(3.0)
        v, p, idx = atts.flatten()
        assert len(v) == len(p) == len(idx) == 4
        assert atts.nearest(SpherePoint(0j), 1e-6) == 0
        assert atts.nearest(INFINITY, 1e-6) == 1

    def test_cycle_entry_period(self):
        atts = find_attractors(3.55, IterationConfig(max_iter=1000))
        cyc = [e for e in atts.entries if e.kind == "cycle"]
        assert cyc and all(e.period == 2 for e in cyc)
        assert all(e.provenance == "critical-orbit" for e in cyc)


class TestThreadCountInvariance:
    def test_tags_identical_across_worker_counts(self, monkeypatch):
        from chebydyn.estimators import ParameterPlaneClassifier

        alphas = np.linspace(1.7, 3.6, 130) + 0.05j
        monkeypatch.setenv("CHEBYDYN_THREADS", "1")
        t1 = ParameterPlaneClassifier().fit().predict(alphas)
        monkeypatch.setenv("CHEBYDYN_THREADS", "2")
        t2 = ParameterPlaneClassifier().fit().predict(alphas)
        assert np.array_equal(t1, t2)
