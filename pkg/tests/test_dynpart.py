from fractions import Fraction

import pytest

from dynpart import (DynamicsError, EmptyDiscontinuitySet, EmptyInterval, IdocViolation, NotTypeW,
                     PartitionSweep, bad_approx_stat, build_tower, idoc_check, lin_rec_stat,
                     loop_towers, partition, proposition_check)
from iet import build_iet
from oracle import agree, bad_approx_min, lin_rec_min
from perm import parse_permutation
from scalar import ONE, ZERO, parse_scalar

S = parse_scalar


@pytest.fixture(scope="module")
def identity():
    return build_iet([1], parse_permutation("1"))


class TestIdoc:
    def test_rational_rotation_fails_at_three(self, third):
        result = idoc_check(third, 10)
        assert not result.passed
        assert result.n == 3
        assert result.point == S("2/3")
        assert result.to_json()["status"] == "fail"

    def test_golden_passes(self, golden):
        assert idoc_check(golden, 1000).passed

    def test_single_interval_passes_vacuously(self, identity):
        assert idoc_check(identity, 1).to_json() == {"status": "pass", "horizon": 1}

    def test_horizon_must_be_positive(self, golden):
        with pytest.raises(DynamicsError):
            idoc_check(golden, 0)


class TestPartition:
    def test_third_one_step(self, third):
        part = partition(third, 1)
        assert part.points == (S("1/3"), S("2/3"))
        assert part.eps == S("1/3")
        assert not part.collided

    def test_golden_one_step(self, golden):
        assert partition(golden, 1).eps == S("sqrt(5)-2")

    def test_zero_steps_is_the_discontinuity_set(self, fhz):
        assert partition(fhz, 0).points == fhz.betas

    def test_point_at_zero_merges_with_boundary(self, third):
        # T^-2 (2/3) = 0
        part = partition(third, 2)
        assert part.points == (S("1/3"), S("2/3"))
        assert not part.collided

    def test_collision_sets_eps_to_zero(self, third):
        part = partition(third, 3)
        assert part.collided
        assert part.collision["n"] == 3
        assert part.eps == ZERO
        assert part.min_gap == S("1/3")

    def test_single_interval(self, identity):
        part = partition(identity, 4)
        assert part.points == ()
        assert part.eps == ONE

    def test_cells_tile_unit_interval(self, fhz):
        cells = partition(fhz, 15).cells()
        assert cells[0][0] == 0 and cells[-1][1] == 1
        assert all(cells[k][1] == cells[k + 1][0] for k in range(len(cells) - 1))
        assert min(right - left for left, right in cells) == partition(fhz, 15).eps

    def test_sweep_matches_fresh_partition(self, golden):
        sweep = PartitionSweep(golden)
        for n in range(1, 30):
            sweep.advance()
            assert sweep.snapshot() == partition(golden, n)

    def test_negative_n(self, golden):
        with pytest.raises(DynamicsError):
            partition(golden, -1)


class TestLinRec:
    def test_rational_rotation_hits_zero(self, third):
        stats = lin_rec_stat(third, 5)
        assert stats.first_collision == 3
        assert stats.running_min == ZERO
        assert stats.argmin() == 3
        assert [row[1] for row in stats.rows[:2]] == [S("1/3"), S("1/3")]

    @pytest.mark.parametrize("name", ["third", "golden", "fhz"])
    def test_n_eps_bounded_by_one(self, catalog, name):
        stats = lin_rec_stat(catalog[name].iet(), 1000)
        assert stats.bounded_by_one
        assert all(n_eps <= 1 for _, _, n_eps, _ in stats.rows)

    def test_eps_nonincreasing_and_halving_time_strict(self, golden):
        stats = lin_rec_stat(golden, 1000)
        eps = {n: e for n, e, _, _ in stats.rows}
        assert all(eps[n + 1] <= eps[n] for n in range(1, 1000))
        assert all(eps[2 * n] < eps[n] for n in range(1, 501))

    def test_running_min_column(self, fhz):
        stats = lin_rec_stat(fhz, 60)
        best = None
        for _, _, n_eps, running in stats.rows:
            best = n_eps if best is None else min(best, n_eps)
            assert running == best

    @pytest.mark.slow
    def test_golden_linear_recurrence_constant(self, golden, regression_constants):
        stats = lin_rec_stat(golden, 10_000)
        value, _ = lin_rec_min(golden, 10_000)
        assert stats.running_min > 0
        assert agree(stats.running_min, value, 50)
        frozen = regression_constants["c_emp"]
        assert stats.running_min == S(frozen["value"])
        assert stats.argmin() == frozen["n"]


class TestBadApprox:
    def test_rational_rotation(self, third):
        result = bad_approx_stat(third, 5)
        assert result.value == ZERO
        assert (result.n, result.p, result.q) == (3, S("2/3"), S("2/3"))

    def test_single_interval(self, identity):
        with pytest.raises(EmptyDiscontinuitySet):
            bad_approx_stat(identity, 10)

    def test_collision_gives_zero_by_that_time(self, third):
        idoc = idoc_check(third, 10)
        assert bad_approx_stat(third, idoc.n).value == ZERO

    def test_golden_positive(self, golden, regression_constants):
        result = bad_approx_stat(golden, 1000)
        value, _ = bad_approx_min(golden, 1000)
        assert result.value > 0
        assert agree(result.value, value, 50)
        frozen = regression_constants["b_emp"]
        assert result.value == S(frozen["value"])
        assert result.n == frozen["n"]


class TestProposition:
    @pytest.mark.parametrize("name", ["third", "golden", "fhz"])
    def test_consistent_on_catalog(self, catalog, name):
        result = proposition_check(catalog[name].iet(), 500)
        assert result["consistent"]

    def test_golden_premise_holds(self, golden):
        result = proposition_check(golden, 500)
        assert result["bad_approx_positive"] and result["idoc_pass"]
        assert result["lin_rec_min_positive"]


class TestTower:
    def test_discontinuity_in_interior_blocks_forward(self, third):
        delta = S("1/12")
        tower = build_tower(third, (S("2/3") - delta, S("2/3") + delta))
        assert tower.q == 0

    def test_golden_small_interval(self, golden):
        eps = partition(golden, 5).eps
        tower = build_tower(golden, (ZERO, eps / 2), n=5)
        assert tower.p + tower.q >= 4
        assert tower.reaches_height
        assert tower.is_disjoint()
        assert tower.measure == tower.width * (tower.p + tower.q + 1)

    def test_empty_interval(self, golden):
        with pytest.raises(EmptyInterval):
            build_tower(golden, (S("1/2"), S("1/2")))

    def test_interval_outside_unit(self, golden):
        with pytest.raises(DynamicsError):
            build_tower(golden, (S("9/10"), S("11/10")))

    @pytest.mark.parametrize("name", ["golden", "fhz"])
    @pytest.mark.parametrize("n", [5, 20, 100])
    def test_cells_of_shortest_length_give_full_towers(self, catalog, name, n):
        T = catalog[name].iet()
        part = partition(T, n)
        shortest = [cell for cell in part.cells() if cell[1] - cell[0] == part.eps]
        assert shortest
        for cell in shortest:
            tower = build_tower(T, cell, n=n)
            assert tower.p + tower.q >= n - 1
            assert tower.is_disjoint()
            assert tower.is_translate_stack()
            for k, shift in enumerate(tower.shifts(), 1):
                assert tower.floors[k][0] == tower.floors[k - 1][0] + shift

    def test_floors_are_images_under_t(self, fhz):
        eps = partition(fhz, 20).eps
        tower = build_tower(fhz, (S("1/3"), S("1/3") + eps), n=20)
        for k in range(len(tower.floors) - 1):
            assert fhz.evaluate(tower.floors[k][0]) == tower.floors[k + 1][0]

    def test_truncate(self, golden):
        part = partition(golden, 10)
        cell = next(c for c in part.cells() if c[1] - c[0] == part.eps)
        tower = build_tower(golden, cell, n=10)
        short = tower.truncate(10)
        assert short.p + short.q == 9
        assert short.J == tower.J
        assert short.J in short.floors
        with pytest.raises(DynamicsError):
            short.truncate(50)


class TestLoopTowers:
    def test_golden_is_not_type_w(self, golden):
        with pytest.raises(NotTypeW):
            loop_towers(golden, 5)

    def test_collision_rejected(self):
        T = build_iet([Fraction(1, 3)] * 3, parse_permutation("3 2 1"))
        with pytest.raises(IdocViolation):
            loop_towers(T, 5)

    def test_fhz_two_towers(self, fhz):
        n = 20
        eps = partition(fhz, n).eps
        towers = loop_towers(fhz, n)
        assert [t["vertex"] for t in towers] == [0, 2]
        assert towers[0]["tower"].top_floor == (ZERO, eps / 2)
        zeta = fhz.betas[1]
        assert towers[1]["tower"].top_floor == (zeta - eps / 2, zeta + eps / 2)
        for t in towers:
            tower = t["tower"]
            assert tower.q == 0
            assert tower.p <= n - 1
            assert tower.is_disjoint()
            assert t["measure"] == tower.width * (tower.p + 1)
            assert t["complete"] == (tower.p == n - 1)

    @pytest.mark.parametrize("n", [5, 20, 100])
    def test_fhz_towers_reach_full_height(self, fhz, n):
        eps = partition(fhz, n).eps
        for t in loop_towers(fhz, n):
            assert t["complete"]
            assert t["tower"].p == n - 1
            assert t["measure_bound"] == (n * eps / 2 if t["vertex"] == 0 else n * eps)
            assert t["meets_bound"]
            assert t["measure"] >= t["measure_bound"]
