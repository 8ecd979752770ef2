"""Physical constants shared across modules."""

# Mean Earth radius, spherical model (km).
EARTH_RADIUS_KM = 6371.0

# Speed of light (km/s).
SPEED_OF_LIGHT_KM_S = 299792.458

# Boltzmann's constant expressed in dBm/K/Hz: 10*log10(k_B * 1000 W/mW).
BOLTZMANN_DBM_PER_K_HZ = -198.6
