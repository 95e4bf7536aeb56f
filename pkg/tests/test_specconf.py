import math
from fractions import Fraction as Fr

import numpy as np
import pytest

from lpkit.specconf import (
    ArcSet,
    EmptyMeetError,
    SpectralConfiguration,
    canonically_equivalent,
    classify,
    closure_union,
    fpsigma_norm,
    lattice_inf,
    lattice_sup,
    leq,
    membership_probe,
    order,
    roots_of_unity_set,
    saturate,
)
from lpkit.zline import LaurentPolynomial, fpz_norm, norm_l1

from conftest import random_laurent


def points_config(slots):
    return SpectralConfiguration({n: ArcSet(tuple(pts)) for n, pts in slots.items()})


def minimal(zeta):
    return SpectralConfiguration({1: ArcSet((zeta,))})


class TestArcSet:
    def test_normalization_merges_overlaps(self):
        a = ArcSet(arcs=((0, Fr(1, 4)), (Fr(1, 8), Fr(3, 8))))
        assert a.arcs == ((Fr(0), Fr(3, 8)),)

    def test_abutting_closed_arcs_merge(self):
        a = ArcSet(arcs=((0, Fr(1, 4)), (Fr(1, 4), Fr(1, 2))))
        assert a.arcs == ((Fr(0), Fr(1, 2)),)

    def test_point_on_arc_absorbed(self):
        a = ArcSet(points=(Fr(1, 8), Fr(2, 3)), arcs=((0, Fr(1, 4)),))
        assert a.points == (Fr(2, 3),)

    def test_cover_becomes_full(self):
        # two closed half-circles meeting at both ends cover the circle
        assert ArcSet(arcs=((0, Fr(1, 2)), (Fr(1, 2), Fr(1, 1)))).full
        assert ArcSet(arcs=((0, Fr(3, 4)), (Fr(1, 2), Fr(1, 4)))).full
        # overlapping but short of covering: merged, not full
        a = ArcSet(arcs=((0, Fr(1, 2)), (Fr(1, 4), Fr(3, 4))))
        assert not a.full and a.arcs == ((Fr(0), Fr(3, 4)),)
        # an arc with equal endpoints degenerates to a point, not the circle
        b = ArcSet(arcs=((Fr(1, 2), Fr(1, 2)),))
        assert not b.full and b.points == (Fr(1, 2),)

    def test_wraparound_merge(self):
        a = ArcSet(arcs=((Fr(7, 8), Fr(1, 8)), (0, Fr(1, 16))))
        assert len(a.arcs) == 1
        assert a.contains(Fr(15, 16)) and a.contains(Fr(1, 32))
        assert not a.contains(Fr(1, 2))

    def test_rational_snapping(self):
        a = ArcSet(points=(1 / 3,))
        assert a.points == (Fr(1, 3),)

    def test_rotation_exact(self):
        a = roots_of_unity_set(6)
        assert a.rotated(Fr(1, 6)).same_as(a)
        assert not a.rotated(Fr(1, 5)).same_as(a)

    def test_subset(self):
        small = ArcSet(points=(Fr(1, 8),), arcs=((Fr(1, 2), Fr(5, 8)),))
        big = ArcSet(arcs=((0, Fr(1, 4)), (Fr(1, 2), Fr(3, 4))))
        assert small.subset_of(big)
        assert not big.subset_of(small)
        assert small.subset_of(ArcSet(full=True))

    def test_intersection(self):
        a = ArcSet(arcs=((0, Fr(1, 2)),))
        b = ArcSet(arcs=((Fr(1, 4), Fr(3, 4)),))
        c = a.intersection(b)
        assert c.arcs == ((Fr(1, 4), Fr(1, 4)),)
        d = a.intersection(ArcSet(points=(Fr(1, 8), Fr(3, 4))))
        assert d.points == (Fr(1, 8),)
        # closed arcs touching at a single point intersect in that point
        e = ArcSet(arcs=((0, Fr(1, 4)),)).intersection(ArcSet(arcs=((Fr(1, 4), Fr(1, 2)),)))
        assert e.points == (Fr(1, 4),) and not e.arcs


class TestConfigurationBasics:
    def test_validation_rotation_invariance(self):
        with pytest.raises(ValueError):
            SpectralConfiguration({2: ArcSet(points=(0,))})
        SpectralConfiguration({2: ArcSet(points=(0, Fr(1, 2)))})

    def test_at_least_one_slot(self):
        with pytest.raises(ValueError):
            SpectralConfiguration({})
        SpectralConfiguration({}, infinity_full=True)

    def test_order(self):
        assert order(points_config({2: (0, Fr(1, 2))})) == 2
        assert order(SpectralConfiguration({}, infinity_full=True)) == math.inf
        assert order(points_config({1: (0,), 3: tuple(Fr(j, 3) for j in range(3))})) == 3

    def test_json_round_trip(self):
        cfg = SpectralConfiguration(
            {2: ArcSet(points=(0, Fr(1, 2)), arcs=())}, infinity_full=False)
        back = SpectralConfiguration.from_json(cfg.to_json())
        assert canonically_equivalent(cfg, back)
        m = SpectralConfiguration.maximal_configuration()
        assert SpectralConfiguration.from_json(m.to_json()).maximal


class TestSaturation:
    def test_divisor_closure(self):
        sat = saturate(points_config({2: (0, Fr(1, 2))}))
        assert sorted(sat.finite_slots) == [1, 2]
        assert sat.finite_slots[1].points == (Fr(0), Fr(1, 2))

    def test_six_roots(self):
        sat = saturate(SpectralConfiguration({6: roots_of_unity_set(6)}))
        assert sorted(sat.finite_slots) == [1, 2, 3, 6]
        for n in (1, 2, 3, 6):
            assert sat.finite_slots[n].same_as(roots_of_unity_set(6))

    def test_idempotent_and_monotone(self, rng):
        for k in range(20):
            cfg = random_points_config(rng)
            sat = saturate(cfg)
            assert sat.is_saturated
            assert canonically_equivalent(sat, saturate(sat))
            assert leq(cfg, sat)

    def test_minimality(self, rng):
        for k in range(10):
            cfg = random_points_config(rng)
            sat = saturate(cfg)
            extra = random_points_config(rng)
            bigger = lattice_sup([sat, extra])
            assert leq(sat, bigger)

    def test_infinite_order_saturates_maximal(self):
        cfg = SpectralConfiguration({2: ArcSet(points=(0, Fr(1, 2)))}, infinity_full=True)
        assert saturate(cfg).maximal


def random_points_config(rng):
    slots = {}
    for n in rng.choice([1, 2, 3, 4, 6], size=int(rng.integers(1, 4)), replace=False):
        n = int(n)
        base = Fr(int(rng.integers(0, 12)), 12)
        slots[n] = roots_of_unity_set(n, base)
    return SpectralConfiguration(slots)


class TestLattice:
    def test_minimal_below_everything_containing_it(self):
        sigma = saturate(points_config({2: (0, Fr(1, 2))}))
        assert leq(minimal(0), sigma)
        assert leq(sigma, SpectralConfiguration.maximal_configuration())
        assert not leq(sigma, minimal(0))

    def test_sup_of_minimals(self):
        sup = lattice_sup([minimal(0), minimal(Fr(1, 2))])
        assert sorted(sup.finite_slots) == [1]
        assert sup.finite_slots[1].points == (Fr(0), Fr(1, 2))

    def test_inf(self):
        sigma = saturate(points_config({2: (0, Fr(1, 2))}))
        assert canonically_equivalent(lattice_inf([sigma, sigma]), sigma)
        with pytest.raises(EmptyMeetError):
            lattice_inf([minimal(0), minimal(Fr(1, 2))])

    def test_closure_union(self):
        assert closure_union(points_config({2: (0, Fr(1, 2))})).points == (Fr(0), Fr(1, 2))
        assert closure_union(SpectralConfiguration({}, infinity_full=True)).full
        mixed = SpectralConfiguration({1: ArcSet(arcs=((0, Fr(1, 4)),), points=(Fr(1, 2),))})
        u = closure_union(mixed)
        assert u.arcs and u.points


class TestCanonicalEquivalence:
    def test_maximal_vs_all_roots(self):
        maximal = SpectralConfiguration.maximal_configuration()
        tau = SpectralConfiguration(
            {n: roots_of_unity_set(n) for n in (1, 2, 3, 4, 5)}, infinity_full=True)
        assert canonically_equivalent(maximal, tau)

    def test_config_vs_its_saturation(self, rng):
        cfg = random_points_config(rng)
        assert canonically_equivalent(cfg, saturate(cfg))

    def test_distinct_minimals(self):
        assert not canonically_equivalent(minimal(0), minimal(Fr(1, 2)))


class TestClassify:
    def test_branches(self):
        assert classify(SpectralConfiguration.maximal_configuration(), 1).kind == "fpz"
        arc1 = SpectralConfiguration({1: ArcSet(arcs=((0, Fr(1, 3)),))})
        res = classify(arc1, 1)
        assert res.kind == "continuous" and res.order == 1 and res.isometric_to_sup
        res = classify(points_config({2: (0, Fr(1, 2))}), 3)
        assert res.kind == "continuous" and res.order == 2 and not res.isometric_to_sup
        assert classify(points_config({2: (0, Fr(1, 2))}), 2).isometric_to_sup


class TestFpsigmaNorm:
    def test_generator_norm_one(self, rng):
        gen = LaurentPolynomial(((1, 1),))
        inv = LaurentPolynomial(((-1, 1),))
        configs = [
            points_config({2: (0, Fr(1, 2))}),
            SpectralConfiguration({1: ArcSet(arcs=((0, Fr(1, 4)),))}),
            SpectralConfiguration({}, infinity_full=True),
        ]
        for cfg in configs:
            for p in (1.0, 1.7, 2.0, 3.0):
                for f in (gen, inv):
                    est = fpsigma_norm(f, cfg, p, n_max=16)
                    assert est.lower == pytest.approx(1.0, abs=1e-8)

    def test_slot_two_value(self):
        f = LaurentPolynomial(((0, (1 + 1j) / 2), (1, (1 - 1j) / 2)))
        est = fpsigma_norm(f, points_config({2: (0, Fr(1, 2))}), 1)
        assert est.lower == pytest.approx(math.sqrt(2), rel=1e-12)
        assert est.upper == pytest.approx(math.sqrt(2), rel=1e-12)

    def test_order_one_point_slot_is_sup(self, rng):
        f = random_laurent(rng, span=3)
        cfg = points_config({1: (Fr(1, 5), Fr(2, 5))})
        est = fpsigma_norm(f, cfg, 3, seed=0)
        expected = max(abs(f(np.exp(2j * np.pi / 5))), abs(f(np.exp(4j * np.pi / 5))))
        assert est.lower == pytest.approx(expected, rel=1e-9)

    def test_arc_slot_brackets_sup(self, rng):
        f = random_laurent(rng, span=3)
        cfg = SpectralConfiguration({1: ArcSet(arcs=((0, Fr(1, 2)),))})
        est = fpsigma_norm(f, cfg, 1, resolution=1 / 512)
        theta = np.linspace(0, np.pi, 2001)
        brute = float(np.max(np.abs(f(np.exp(1j * theta)))))
        assert est.lower >= brute - 1e-3
        assert est.upper <= norm_l1(f) + 1e-12

    def test_saturation_invariance(self, rng):
        for k in range(6):
            cfg = random_points_config(rng)
            sat = saturate(cfg)
            f = random_laurent(rng, span=3)
            for p in (1.0, 3.0):
                e1 = fpsigma_norm(f, cfg, p, seed=k)
                e2 = fpsigma_norm(f, sat, p, seed=k)
                assert e1.overlaps(e2, 1e-6)
                if p == 1.0:
                    assert abs(e1.lower - e2.lower) <= 1e-6

    def test_full_infinity_matches_fpz(self, rng):
        cfg = SpectralConfiguration({}, infinity_full=True)
        for k in range(3):
            f = random_laurent(rng, span=3)
            for p in (1.5,):
                es = fpsigma_norm(f, cfg, p, n_max=32, seed=k)
                ez = fpz_norm(f, p, n_max=32, seed=k)
                assert es.overlaps(ez, 1e-9)

    def test_dominates_gelfand_sup(self, rng):
        f = random_laurent(rng, span=3)
        cfg = points_config({2: (0, Fr(1, 2)), 1: (Fr(1, 4),)})
        est = fpsigma_norm(f, cfg, 1.6, seed=0)
        pts = [1.0, -1.0, 1j]
        assert est.lower >= max(abs(f(z)) for z in pts) - 1e-8

    def test_leq_implies_norm_leq(self, rng):
        for k in range(5):
            small = saturate(random_points_config(rng))
            big = lattice_sup([small, random_points_config(rng)])
            f = random_laurent(rng, span=3)
            for p in (1.0, 3.0):
                e_small = fpsigma_norm(f, small, p, seed=k)
                e_big = fpsigma_norm(f, big, p, seed=k)
                assert e_small.lower <= e_big.upper + 1e-6


class TestMembershipProbe:
    def setup_method(self):
        self.sigma = saturate(points_config({2: (0, Fr(1, 2))}))

    def test_member(self):
        res = membership_probe(0, 2, self.sigma, 1)
        assert res.verdict == "member"
        assert res.trace[-1][1] == pytest.approx(math.sqrt(2), rel=1e-9)

    def test_not_member(self):
        res = membership_probe(Fr(1, 4), 2, self.sigma, 1)
        assert res.verdict == "not-member"
        assert res.trace[-1][1] == pytest.approx(0.0, abs=1e-12)

    def test_point_membership_slot_one(self):
        assert membership_probe(Fr(1, 2), 1, self.sigma, 1).verdict == "member"
        assert membership_probe(Fr(1, 3), 1, self.sigma, 1).verdict == "not-member"

    def test_preconditions(self):
        with pytest.raises(ValueError):
            membership_probe(0, 2, self.sigma, 2)
        with pytest.raises(ValueError):
            membership_probe(0, 2, points_config({2: (0, Fr(1, 2))}), 1)  # not saturated
        with pytest.raises(ValueError):
            membership_probe(0, 2, SpectralConfiguration({}, infinity_full=True), 1)
        with pytest.raises(ValueError):
            membership_probe(0, 2, self.sigma, 1, k_schedule=(4, 4))

    def test_probe_on_six_slot_config(self):
        sigma = saturate(SpectralConfiguration({3: roots_of_unity_set(3)}))
        assert membership_probe(0, 3, sigma, 1).verdict == "member"
        assert membership_probe(Fr(1, 6), 3, sigma, 1).verdict == "not-member"
        # slot 2 is empty here: probing order 2 at a slot-1 point must not fire
        assert membership_probe(0, 2, sigma, 1).verdict != "member"
