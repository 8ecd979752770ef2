import pytest

from ntnsim import RadioConfig, load_atmosphere_table, load_scenario_table


@pytest.fixture(scope="session")
def atm_table():
    return load_atmosphere_table()


@pytest.fixture(scope="session")
def scen_table():
    return load_scenario_table()


@pytest.fixture
def got_radio():
    """G/T-form radio matching the shipped fixture values."""
    def make(fc_ghz=20.0, g_over_t=15.9, tx_power_dbm=18.0, **kwargs):
        return RadioConfig(
            fc_ghz=fc_ghz,
            tx_power_dbm=tx_power_dbm,
            g_over_t_dbi_per_k=g_over_t,
            **kwargs,
        )
    return make
