"""Physical constants used throughout the package (SI, CODATA 2018).

All quantities are carried internally in SI units: energies in joules,
frequencies in rad/s, conductivities in siemens (sheet conductance),
impedances in ohms, polarizabilities in F m^2. The table below is the
single source of truth; no other module hard-codes a constant.

============  =======================  ==============
symbol        value (9 sig. digits)    unit
============  =======================  ==============
HBAR          1.05457182e-34           J s
E_CHARGE      1.60217663e-19           C
K_B           1.38064900e-23           J/K
C_LIGHT       2.99792458e8             m/s
EPS0          8.85418781e-12           F/m
MU0           1.25663706e-6            N/A^2
ETA0          376.730314               ohm (vacuum impedance)
ALPHA_AU      1.64880000e-41           F m^2 per atomic unit
============  =======================  ==============

ETA0 satisfies ETA0**2 == MU0/EPS0 to the precision of the table.
ALPHA_AU is the conversion factor applied when polarizability tables are
declared in atomic units.
"""
import math

HBAR = 1.054571817e-34
E_CHARGE = 1.602176634e-19
K_B = 1.380649e-23
C_LIGHT = 299792458.0
EPS0 = 8.8541878128e-12
MU0 = 1.25663706212e-6

ETA0_SQ = MU0 / EPS0
ETA0 = math.sqrt(ETA0_SQ)

# conversion of electric polarizability from atomic units to F m^2
ALPHA_AU = 1.6488e-41

# electronvolt in joules, for config values given in eV
EV = E_CHARGE
