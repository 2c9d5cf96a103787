import numpy as np
import pytest

from catalog import build_qutrit_triple, build_reachability_instances, build_two_time_scenario
from measurement import (
    Povm,
    coin_flip_povm,
    lueders_instrument,
    random_instrument,
    random_povm,
    replacement_channel,
    trivial_povm,
    unitary_channel,
)
from qmat import random_density
from sequence import (
    Scenario,
    Slot,
    adroitness_level,
    all_orders_conditions,
    aot_check,
    chain_conditions,
    channel_exists,
    eigenvalue_obstruction,
    identity_defect,
    nsit_check,
    nsit_verdicts_agree,
    prob_table,
    time_dependent_check,
    triple_conditions,
)
from catalog.constructions import SIGMA_Z_TO_X
from utils.config import DEFAULT_TOLERANCES
from utils.errors import CompletenessError, DimensionMismatchError

GROUND = np.diag([1.0, 0.0])


def max_defect(reports):
    return max(r.defect for r in reports)


def diagonal_povm(dim, outcomes, rng):
    weights = rng.dirichlet(np.ones(outcomes), size=dim)
    return Povm([np.diag(weights[:, k]) for k in range(outcomes)])


def random_scenario(n, rng, dim=2, commuting=False):
    """Random POVMs, states and instruments; ``commuting`` gives diagonal POVMs with Lueders instruments"""
    slots = []
    for _ in range(n):
        outcomes = int(rng.integers(2, 4))
        if commuting:
            povm = diagonal_povm(dim, outcomes, rng)
            slots.append(Slot(povm, lueders_instrument(povm)))
        else:
            povm = random_povm(dim, outcomes, rng)
            slots.append(Slot(povm, random_instrument(povm, rng)))
    return Scenario(slots, random_density(dim, rng))


class TestScenario:
    def test_wrong_instrument_rejected(self, sigma_z, sigma_x):
        with pytest.raises(CompletenessError):
            Scenario([Slot(sigma_x, lueders_instrument(sigma_z))], GROUND)

    def test_dimension_mismatch(self, sigma_z):
        with pytest.raises(DimensionMismatchError):
            Scenario.from_povms([sigma_z, coin_flip_povm(3)], GROUND)

    def test_evolution_count(self, sigma_z):
        with pytest.raises(ValueError):
            Scenario.from_povms([sigma_z, sigma_z], GROUND, evolutions=[None, None])

    def test_subnormalized_state(self, sigma_z, sigma_x):
        table = prob_table(Scenario.from_povms([sigma_z, sigma_x], 0.5 * GROUND))
        assert sum(table.distribution((1, 1)).values()) == pytest.approx(0.5)


class TestProbTable:
    def test_two_time_entries(self):
        table = prob_table(build_two_time_scenario("x"))
        assert table.normalization_defect() < 1e-12
        assert table.p((0, 1), (0, 1)) == pytest.approx(1.0)
        assert table.p((1, 1), (1, 1)) == pytest.approx(0.25)
        assert table.p((1, 0), (-1, 0)) == pytest.approx(0.5)

    def test_threads_match_serial(self, sigma_z, sigma_x):
        sc = Scenario.from_povms([sigma_z, sigma_x, sigma_z], 0.5 * np.eye(2) + 0.2 * np.diag([1, -1]))
        serial, parallel = prob_table(sc), prob_table(sc, threads=3)
        for s, q, value in serial.items():
            assert parallel.p(s, q) == value

    def test_csv(self):
        text = prob_table(build_two_time_scenario("z")).to_csv()
        lines = text.splitlines()
        assert lines[0] == "settings,outcomes,probability"
        rows = {tuple(line.split(",")[:2]): float(line.split(",")[2]) for line in lines[1:]}
        assert rows[("11", "1 1")] == pytest.approx(0.5)
        assert rows[("00", "0 0")] == pytest.approx(1.0)


class TestConditions:
    def test_two_time_defects(self):
        """sigma_z then sigma_x: the first measurement shows from |1>_x but not from |1>_z"""
        assert max_defect(nsit_check(prob_table(build_two_time_scenario("x")))) == pytest.approx(0.5, abs=1e-12)
        assert max_defect(nsit_check(prob_table(build_two_time_scenario("z")))) < 1e-12

    def test_measure_prepare_hides_measurement(self):
        table = prob_table(build_two_time_scenario("x", measure_prepare=True))
        assert max_defect(nsit_check(table)) < 1e-12

    def test_explicit_evolution_reproduces(self):
        table = prob_table(build_two_time_scenario("x", explicit_evolution=True))
        assert max_defect(nsit_check(table)) == pytest.approx(0.5, abs=1e-12)

    def test_aot_holds_on_physical_tables(self, sigma_z, sigma_x):
        sc = Scenario.from_povms([sigma_x, sigma_z, sigma_x], GROUND)
        reports = aot_check(prob_table(sc))
        assert len(reports) == 6
        assert max_defect(reports) < 1e-10

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_aot_holds_on_random_scenarios(self, n):
        rng = np.random.default_rng(100 + n)
        for _ in range(20):
            reports = aot_check(prob_table(random_scenario(n, rng)))
            assert max_defect(reports) < 1e-10

    def test_condition_counts(self, sigma_z, sigma_x):
        table = prob_table(Scenario.from_povms([sigma_z, sigma_x, sigma_z], GROUND))
        assert len(nsit_check(table)) == 5
        assert len(nsit_check(table, reduced=True)) == 3
        assert [r.condition_id for r in nsit_check(table, reduced=True)] == [
            "nsit[i=1;s=111]", "nsit[i=2;s=011]", "nsit[i=2;s=111]"]

    def test_reduced_and_full_agree(self, sigma_z, sigma_x):
        for state in (GROUND, np.full((2, 2), 0.5)):
            table = prob_table(Scenario.from_povms([sigma_z, sigma_x, sigma_z], state))
            assert nsit_verdicts_agree(table)

    def test_reduced_and_full_agree_on_random_scenarios(self):
        rng = np.random.default_rng(2024)
        verdicts = set()
        for trial in range(1000):
            table = prob_table(random_scenario(3, rng, commuting=trial % 4 == 0))
            assert nsit_verdicts_agree(table)
            verdicts.add(all(r.satisfied for r in nsit_check(table)))
        assert verdicts == {True, False}

    def test_report_dict(self):
        report = nsit_check(prob_table(build_two_time_scenario("x")))[0]
        out = report.to_dict()
        assert out["id"] == "nsit[i=1;s=11]"
        assert out["satisfied"] is False


class TestChains:
    def test_four_slots_one_failure(self, sigma_z, sigma_x):
        """Two coin flips between sigma_z and sigma_x: only the head condition fails"""
        coin = coin_flip_povm(2)
        povms = [sigma_z, coin, coin, sigma_x]
        report = chain_conditions(povms, [lueders_instrument(p) for p in povms[:3]])
        assert len(report.conditions) == 3
        assert report.failed_ids() == ["nd[1->234]"]
        assert report.conditions[0].defect == pytest.approx(0.125, abs=1e-12)

    def test_missing_instrument(self, sigma_z, sigma_x):
        with pytest.raises(ValueError):
            chain_conditions([sigma_z, sigma_x, sigma_z], [None, lueders_instrument(sigma_x)])

    def test_optimized_head(self, sigma_z, sigma_x):
        report = chain_conditions([sigma_z, sigma_x], [None], optimize_head=True)
        assert report.head_value == pytest.approx(1.0, abs=1e-5)
        assert not report.satisfied

    def test_qutrit_triple(self):
        tri = build_qutrit_triple()
        assert identity_defect(tri.instrument_a, [e.data for e in tri.c.elements]) < 1e-10
        report = triple_conditions(tri.b, tri.instrument_a, tri.c)
        assert report.satisfied
        assert report.to_dict()["order"] == [1, 2, 3]

    @pytest.mark.parametrize("triple", ["qutrit", "commuting"])
    def test_passing_triple_satisfies_nsit(self, triple, sigma_z):
        if triple == "qutrit":
            tri = build_qutrit_triple()
            q1, i2, q3 = tri.b, tri.instrument_a, tri.c
        else:
            q1, i2, q3 = sigma_z, lueders_instrument(coin_flip_povm(2)), sigma_z
        report = triple_conditions(q1, i2, q3)
        assert report.satisfied
        slots = [Slot(q1, report.head_instrument), Slot(i2.induced_povm(), i2), Slot(q3, lueders_instrument(q3))]
        # the head instrument carries solver accuracy
        loose = DEFAULT_TOLERANCES.with_overrides(completeness=1e-6, psd=1e-6)
        rng = np.random.default_rng(17)
        for _ in range(100):
            sc = Scenario(slots, random_density(q1.dim, rng), tolerances=loose)
            reports = nsit_check(prob_table(sc), tol=DEFAULT_TOLERANCES.nondisturbance)
            assert all(r.satisfied for r in reports)

    def test_all_orders(self, sigma_z, sigma_x):
        povms = [sigma_z, sigma_x]
        report = all_orders_conditions(povms, [lueders_instrument(p) for p in povms], names=("Z", "X"))
        assert set(report.orders) == {("Z", "X"), ("X", "Z")}
        assert not report.satisfied

    def test_adroitness(self, sigma_z, sigma_x):
        coin = coin_flip_povm(2)
        assert adroitness_level([sigma_z, sigma_x], [lueders_instrument(sigma_z), lueders_instrument(sigma_x)]) == 1
        commuting = [sigma_z, coin, sigma_z]
        assert adroitness_level(commuting, [lueders_instrument(p) for p in commuting]) == 3


class TestTimeDependent:
    def test_without_evolution(self, sigma_z):
        report = time_dependent_check(Scenario.from_povms([sigma_z] * 3, GROUND))
        assert report.satisfied
        assert [c.condition_id for c in report.conditions] == ["td_nd[1->23]", "td_nd[2->3;full]"]

    def test_rotation_before_last(self, sigma_z):
        sc = Scenario.from_povms([sigma_z] * 3, GROUND, evolutions=[None, unitary_channel(SIGMA_Z_TO_X)])
        report = time_dependent_check(sc)
        assert not report.conditions[1].satisfied
        assert report.conditions[1].defect == pytest.approx(0.5, abs=1e-10)

    def test_channel_image_restricts_states(self, sigma_z):
        """Only |0><0| reaches the middle slot, where the dephasing cannot be seen"""
        sc = Scenario.from_povms([sigma_z] * 3, GROUND,
                                 evolutions=[replacement_channel(GROUND), unitary_channel(SIGMA_Z_TO_X)])
        report = time_dependent_check(sc, "channel_image")
        assert report.conditions[1].satisfied

    def test_needs_three_slots(self):
        with pytest.raises(ValueError):
            time_dependent_check(build_two_time_scenario("x"))

    def test_unknown_state_set(self, sigma_z):
        with pytest.raises(ValueError):
            time_dependent_check(Scenario.from_povms([sigma_z] * 3, GROUND), "pure")


class TestReachability:
    @pytest.mark.parametrize("instance", build_reachability_instances(), ids=lambda i: i.name)
    def test_instances(self, instance):
        result = channel_exists(instance.source, instance.target, allow_relabel=True)
        assert result.feasible == instance.feasible

    @pytest.mark.parametrize("instance", [i for i in build_reachability_instances() if not i.feasible],
                             ids=lambda i: i.name)
    def test_solver_certificate(self, instance):
        result = channel_exists(instance.source, instance.target, allow_relabel=True, prefilter=False)
        assert not result.feasible
        assert result.prefiltered == 0

    def test_prefilter_skips_solver(self):
        low = Povm([np.diag([0.5, 0.25]), np.diag([0.5, 0.75])])
        high = Povm([np.diag([0.75, 0.25]), np.diag([0.25, 0.75])])
        assert "largest eigenvalue" in eigenvalue_obstruction(low, high, (0, 1))
        result = channel_exists(low, high, allow_relabel=True)
        assert result.tried == 2 and result.prefiltered == 2

    def test_unitary_channel_found(self, sigma_z, sigma_x):
        result = channel_exists(sigma_z, sigma_x)
        assert result.feasible
        np.testing.assert_allclose(result.channel.adjoint(sigma_z.element(1).data), sigma_x.element(1).data,
                                   atol=1e-5)

    def test_outcome_count_mismatch(self, sigma_z):
        with pytest.raises(ValueError):
            channel_exists(sigma_z, trivial_povm(2))
