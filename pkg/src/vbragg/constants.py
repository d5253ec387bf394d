"""Physical constants (CODATA 2018 exact/recommended values)."""

C_LIGHT = 299_792_458.0           # speed of light, m/s
PLANCK_H = 6.626_070_15e-34       # Planck constant, J s
HBAR = 1.054_571_817e-34          # reduced Planck constant, J s
EPSILON_0 = 8.854_187_8128e-12    # vacuum permittivity, F/m
BOLTZMANN_K = 1.380_649e-23       # Boltzmann constant, J/K
