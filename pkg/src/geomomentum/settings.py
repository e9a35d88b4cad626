import os

from dotenv import load_dotenv

load_dotenv()

# Physical constants default to the dimensionless mode (hbar = mu = 1).
HBAR = float(os.environ.get("GEOMOMENTUM_HBAR", "1.0"))
MASS = float(os.environ.get("GEOMOMENTUM_MASS", "1.0"))

# Basis truncation for the operator-algebra checks. 12 leaves an interior
# margin of two above the l = 10 state shown in the oscillator comparison.
LMAX = int(os.environ.get("GEOMOMENTUM_LMAX", "12"))

# Default momentum grid in k = p_z / hbar.
KMAX = float(os.environ.get("GEOMOMENTUM_KMAX", "20"))
KSTEP = float(os.environ.get("GEOMOMENTUM_KSTEP", "0.02"))

RESULTS_DIR = os.environ.get("GEOMOMENTUM_RESULTS_DIR", "")

# Bohr radius in angstrom (CODATA 2018).
BOHR_RADIUS_ANGSTROM = 0.529177210903
