"""Channel-stage tests: FSPL, gas, scintillation, excess loss, totals."""

import math
import random
import statistics

import pytest

from ntnsim import (
    AtmosphereTable,
    DomainError,
    LinkGeometry,
    LossBreakdown,
    Scenario,
    TableDomainError,
    TableFormatError,
    default_atmosphere_fraction,
    excess_loss_db,
    fspl_db,
    gas_attenuation_db,
    scintillation_db,
    total_path_loss,
)
from ntnsim.channel import (
    parse_atmosphere_table,
    parse_scenario_table,
    scintillation_elevation_scale,
)

SCENARIOS_ORDERED = [
    Scenario.DENSE_URBAN,
    Scenario.URBAN,
    Scenario.SUBURBAN,
    Scenario.RURAL,
]


class TestFspl:
    def test_reference_point(self):
        assert fspl_db(1, 1) == pytest.approx(92.45, abs=1e-12)

    def test_leo_ka_band(self):
        assert fspl_db(1160.1, 20) == pytest.approx(179.7605084491342, rel=1e-12)

    def test_doubling_distance_adds_6db(self):
        delta = fspl_db(2468.2, 20) - fspl_db(1234.1, 20)
        assert delta == pytest.approx(20 * math.log10(2), rel=1e-12)

    @pytest.mark.parametrize("d,f", [(0, 1), (-1, 1), (1, 0), (1, -2)])
    def test_domain(self, d, f):
        with pytest.raises(DomainError):
            fspl_db(d, f)


class TestGasAttenuation:
    def test_zenith_identity(self, atm_table):
        for fc in [2, 20, 60, 90]:
            assert gas_attenuation_db(fc, 90, atm_table) == pytest.approx(
                atm_table.zenith_gas(fc), rel=1e-12
            )

    def test_cosecant_scaling_at_10deg(self, atm_table):
        csc10 = 1 / math.sin(math.radians(10))
        assert csc10 == pytest.approx(5.758770483143634, rel=1e-12)
        for fc in [2, 20, 50]:
            assert gas_attenuation_db(fc, 10, atm_table) == pytest.approx(
                atm_table.zenith_gas(fc) * csc10, rel=1e-12
            )

    def test_oxygen_peak(self, atm_table):
        assert gas_attenuation_db(60, 30, atm_table) > gas_attenuation_db(50, 30, atm_table)
        assert gas_attenuation_db(60, 30, atm_table) > gas_attenuation_db(70, 30, atm_table)

    def test_frequency_outside_grid(self, atm_table):
        with pytest.raises(TableDomainError) as err:
            gas_attenuation_db(150, 45, atm_table)
        assert "0.5" in str(err.value) and "100" in str(err.value)


class TestScintillation:
    def test_reference_unchanged_at_10deg(self, atm_table):
        assert scintillation_elevation_scale(10) == pytest.approx(1.0, rel=1e-12)
        assert scintillation_db(20, 10, atm_table) == pytest.approx(
            atm_table.scintillation_ref(20), rel=1e-12
        )

    def test_monotone_in_elevation(self, atm_table):
        for fc in [2, 20, 90]:
            assert (
                scintillation_db(fc, 10, atm_table)
                >= scintillation_db(fc, 45, atm_table)
                >= scintillation_db(fc, 90, atm_table)
            )

    def test_zenith_cap(self, atm_table):
        assert scintillation_db(20, 90, atm_table) <= 0.25 * scintillation_db(
            20, 10, atm_table
        )


class TestExcessLoss:
    def test_expected_mode_mixture(self, scen_table):
        # dense_urban at 10 deg: p=0.28, los=4, nlos=36
        expected = 0.28 * 4.0 + 0.72 * 36.0
        got = excess_loss_db(Scenario.DENSE_URBAN, 20, 10, scen_table)
        assert got == pytest.approx(expected, rel=1e-12)

    def test_rural_zenith_is_table_minimum(self, scen_table):
        floor = excess_loss_db(Scenario.RURAL, 20, 90, scen_table)
        for scenario in Scenario:
            for elev in scen_table.elevation_grid_deg:
                assert excess_loss_db(scenario, 20, elev, scen_table) >= floor

    def test_scenario_ordering_everywhere(self, scen_table):
        for elev in range(10, 91, 10):
            losses = [excess_loss_db(s, 20, elev, scen_table) for s in SCENARIOS_ORDERED]
            assert losses == sorted(losses, reverse=True)

    def test_elevation_interpolation(self, scen_table):
        # midway between the 10 and 20 deg rows of dense_urban
        lo = excess_loss_db(Scenario.DENSE_URBAN, 20, 10, scen_table)
        hi = excess_loss_db(Scenario.DENSE_URBAN, 20, 20, scen_table)
        mid = excess_loss_db(Scenario.DENSE_URBAN, 20, 15, scen_table)
        assert hi < mid < lo

    def test_sampled_mode_deterministic_per_seed(self, scen_table):
        a = excess_loss_db(Scenario.URBAN, 20, 30, scen_table, sampled_seed=123)
        b = excess_loss_db(Scenario.URBAN, 20, 30, scen_table, sampled_seed=123)
        c = excess_loss_db(Scenario.URBAN, 20, 30, scen_table, sampled_seed=124)
        assert a == b
        assert a != c

    def test_sampled_shadowing_std(self, scen_table):
        # dense_urban at 10 deg separates cleanly: LOS cluster around 4 dB,
        # NLOS around 36 dB, sigma 4. Estimate sigma from the NLOS cluster.
        draws = [
            excess_loss_db(Scenario.DENSE_URBAN, 20, 10, scen_table, sampled_seed=i)
            for i in range(10_000)
        ]
        nlos = [d for d in draws if d > 20]
        assert len(nlos) > 6000
        est = statistics.stdev(nlos)
        assert abs(est - 4.0) / 4.0 < 0.10

    def test_sampled_never_negative(self, scen_table):
        draws = [
            excess_loss_db(Scenario.RURAL, 20, 90, scen_table, sampled_seed=i)
            for i in range(500)
        ]
        assert min(draws) >= 0.0

    def test_unknown_scenario(self, scen_table):
        with pytest.raises(DomainError):
            excess_loss_db("megacity", 20, 30, scen_table)
        with pytest.raises(DomainError):
            Scenario.from_name("megacity")


class TestLossBreakdown:
    def test_total_is_enforced(self):
        with pytest.raises(DomainError):
            LossBreakdown(
                fspl_db=100, gas_db=1, scintillation_db=1, excess_db=1, total_db=104
            )
        ok = LossBreakdown.from_stages(100, 1, 1, 1)
        assert ok.total_db == 103.0

    def test_negative_component_rejected(self):
        with pytest.raises(DomainError):
            LossBreakdown.from_stages(100, -0.5, 0, 0)
        with pytest.raises(DomainError):
            LossBreakdown.from_stages(-100, 0, 0, 0)

    def test_additivity_over_random_inputs(self):
        rng = random.Random(11)
        for _ in range(1000):
            stages = (
                rng.uniform(50, 250),
                rng.uniform(0, 40),
                rng.uniform(0, 5),
                rng.uniform(0, 40),
            )
            b = LossBreakdown.from_stages(*stages)
            assert b.total_db == b.fspl_db + b.gas_db + b.scintillation_db + b.excess_db


class TestTotalPathLoss:
    def test_zero_fraction_leaves_fspl_and_excess(self, atm_table, scen_table):
        g = LinkGeometry.from_endpoints(0, 600, 30)
        b = total_path_loss(g, 20, Scenario.URBAN, atm_table, 0.0, scen_table)
        assert b.gas_db == 0.0
        assert b.scintillation_db == 0.0
        assert b.total_db == b.fspl_db + b.excess_db

    def test_component_composition(self, atm_table, scen_table):
        g = LinkGeometry.from_endpoints(0, 300, 10)
        b = total_path_loss(g, 20, Scenario.DENSE_URBAN, atm_table, 1.0, scen_table)
        assert b.fspl_db == pytest.approx(179.76034597016428, rel=1e-12)
        assert b.fspl_db == fspl_db(g.slant_range_km, 20)
        assert b.gas_db == pytest.approx(gas_attenuation_db(20, 10, atm_table), rel=1e-12)
        assert b.scintillation_db == pytest.approx(
            scintillation_db(20, 10, atm_table), rel=1e-12
        )
        assert b.excess_db == pytest.approx(27.04, rel=1e-12)

    def test_none_scenario_means_zero_excess(self, atm_table, scen_table):
        g = LinkGeometry.from_endpoints(20, 1200, 10)
        b = total_path_loss(g, 20, None, atm_table, 0.1, scen_table)
        assert b.excess_db == 0.0

    def test_elevation_monotonicity(self, atm_table, scen_table):
        for scenario in Scenario:
            for fc in [2, 20, 60, 90]:
                totals = [
                    total_path_loss(
                        LinkGeometry.from_endpoints(0, 600, e),
                        fc,
                        scenario,
                        atm_table,
                        1.0,
                        scen_table,
                    ).total_db
                    for e in range(10, 91, 5)
                ]
                assert all(a >= b for a, b in zip(totals, totals[1:]))

    def test_scenario_ordering_pointwise(self, atm_table, scen_table):
        for fc in [2, 20, 90]:
            for e in range(10, 91, 10):
                g = LinkGeometry.from_endpoints(0, 600, e)
                totals = [
                    total_path_loss(g, fc, s, atm_table, 1.0, scen_table).total_db
                    for s in SCENARIOS_ORDERED
                ]
                assert totals == sorted(totals, reverse=True)

    def test_oxygen_peak_in_total_vs_frequency(self, atm_table, scen_table):
        g = LinkGeometry.from_endpoints(0, 600, 30)
        freqs = [50 + 0.5 * i for i in range(41)]  # 50..70 GHz
        totals = [
            total_path_loss(g, f, Scenario.RURAL, atm_table, 1.0, scen_table).total_db
            for f in freqs
        ]
        peak_freq = freqs[totals.index(max(totals))]
        assert 55 <= peak_freq <= 65
        assert max(totals) > totals[0] and max(totals) > totals[-1]

    def test_fraction_domain(self, atm_table, scen_table):
        g = LinkGeometry.from_endpoints(0, 600, 30)
        for bad in [-0.1, 1.1]:
            with pytest.raises(DomainError):
                total_path_loss(g, 20, Scenario.RURAL, atm_table, bad, scen_table)

    def test_additivity_over_random_inputs(self, atm_table, scen_table):
        rng = random.Random(5)
        for _ in range(1000):
            g = LinkGeometry.from_endpoints(
                0, rng.uniform(200, 2000), rng.uniform(10, 90)
            )
            b = total_path_loss(
                g,
                rng.uniform(0.5, 100),
                rng.choice(list(Scenario)),
                atm_table,
                rng.random(),
                scen_table,
            )
            assert b.total_db == b.fspl_db + b.gas_db + b.scintillation_db + b.excess_db


class TestDefaultAtmosphereFraction:
    @pytest.mark.parametrize(
        "low,expected",
        [(0, 1.0), (5, 1.0), (16.9, 1.0), (17, 0.1), (20, 0.1), (99, 0.1), (100, 0.0), (300, 0.0)],
    )
    def test_bands(self, low, expected):
        assert default_atmosphere_fraction(low) == expected


class TestTableParsing:
    def _atm_text(self, rows, checksum=None):
        import hashlib

        data = "\n".join(rows)
        digest = checksum or hashlib.sha256(data.encode()).hexdigest()
        return f"# version: 1\n# checksum: sha256={digest}\n{data}\n"

    def test_checksum_mismatch(self):
        text = self._atm_text(["0.5 0.1 0.1", "100 0.2 0.2"], checksum="0" * 64)
        with pytest.raises(TableFormatError) as err:
            parse_atmosphere_table(text)
        assert "checksum" in str(err.value)

    def test_missing_version(self):
        with pytest.raises(TableFormatError):
            parse_atmosphere_table("# checksum: sha256=00\n0.5 0.1 0.1\n")

    def test_bad_column_count(self):
        text = self._atm_text(["0.5 0.1", "100 0.2"])
        with pytest.raises(TableFormatError):
            parse_atmosphere_table(text)

    def test_oxygen_peak_required(self):
        rows = [f"{f} 1.0 0.5" for f in (0.5, 40, 60, 80, 100)]
        with pytest.raises(TableFormatError) as err:
            parse_atmosphere_table(self._atm_text(rows))
        assert "oxygen" in str(err.value)

    def test_grid_must_ascend(self):
        rows = ["0.5 0.1 0.1", "60 5 0.5", "59 0.1 0.1", "100 0.2 0.2"]
        with pytest.raises(TableFormatError):
            parse_atmosphere_table(self._atm_text(rows))

    def test_grid_must_cover_band(self):
        rows = ["1 0.1 0.1", "60 5 0.5", "100 0.2 0.2"]
        with pytest.raises(TableFormatError):
            parse_atmosphere_table(self._atm_text(rows))

    def test_valid_roundtrip(self):
        rows = ["0.5 0.1 0.1", "50 1 0.5", "60 10 0.6", "70 2 0.7", "100 3 0.8"]
        table = parse_atmosphere_table(self._atm_text(rows))
        assert isinstance(table, AtmosphereTable)
        assert table.zenith_gas(55) == pytest.approx(5.5, rel=1e-12)

    def test_scenario_missing_scenario(self):
        rows = ["rural 10 0.8 0.5 14 2.5", "rural 90 0.97 0.2 9 2.5"]
        with pytest.raises(TableFormatError):
            parse_scenario_table(self._atm_text(rows))
