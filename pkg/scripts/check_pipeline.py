"""Smoke check of the full pipeline: spectrum -> prediction -> master equation -> statistics."""
import sys
import traceback
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

print("=" * 50)
print("Checking Pair Correlator Pipeline")
print("=" * 50)

failures = 0

# Check 1: Imports and defaults
print("\n[1] Checking imports...")
try:
    from src.config import PHYSICS_DEFAULTS
    from src.spectrum import synthesize_spectrum
    from src.pairing import predict_g2_curve
    from src.master_equation import ModelConfig, scan_resonance
    from src.statistics import bose_einstein, cauchy_schwarz_check
    print(f"  Defaults: threshold={PHYSICS_DEFAULTS['threshold']}, n_max={PHYSICS_DEFAULTS['n_max']}")
except Exception as e:
    print(f"  ERROR: {type(e).__name__}: {e}")
    sys.exit(1)

# Check 2: Perturbative curve for water
print("\n[2] Predicting water g2 curve...")
try:
    curve = predict_g2_curve(synthesize_spectrum("water"), 100.0, "tophat", range(1000, 3701, 50))
    print(f"  Points: {len(curve.points)}")
    print(f"  Peak normalized g2 at: {curve.peak_shift():g} cm^-1")
except Exception as e:
    failures += 1
    print(f"  ERROR: {type(e).__name__}: {e}")
    traceback.print_exc()

# Check 3: Single-mode master equation
print("\n[3] Scanning single-mode resonance...")
try:
    template = ModelConfig(nu=1640.0, shift=1640.0, g_s=0.1, g_as=0.1, t1=0.5, n_max=2, pulse_duration=4.0)
    result = scan_resonance(template, [1600.0, 1640.0, 1680.0], [0.5])
    for point in result.curves[0].points:
        print(f"  shift={point.shift:g}: g2={point.g2:.4g} ({point.regime})")
    print(f"  RK4 steps: {result.rk4_steps}")
except Exception as e:
    failures += 1
    print(f"  ERROR: {type(e).__name__}: {e}")
    traceback.print_exc()

# Check 4: Statistics
print("\n[4] Checking statistics...")
try:
    print(f"  n_BE(1640 cm^-1, 295 K) = {bose_einstein(1640.0, 295.0):.4g}")
    print(f"  Cauchy-Schwarz (100, 2, 2): {cauchy_schwarz_check(100.0, 2.0, 2.0).status}")
except Exception as e:
    failures += 1
    print(f"  ERROR: {type(e).__name__}: {e}")
    traceback.print_exc()

print("\n" + "=" * 50)
print("Check Complete" if not failures else f"[WARN] {failures} check(s) failed")
print("=" * 50)
sys.exit(1 if failures else 0)
