"""Circular arrays and the phase-mode beamspace.

A ring array covers all 360 degrees of azimuth without the mirror
ambiguity of a line array, but its steering vector lacks the vandermonde
structure that polynomial rooting and rotational invariance need. The
phase-mode beamformer fixes that: each DFT row of the ring excites one
spatial harmonic, and after equalizing the Bessel amplitudes the ring
behaves like a virtual 2h+1 element line array.

Run:  python demos/04_uca_beamspace.py
"""

import numpy as np

from wsnloc.arrays import SourceSet, UniformCircularArray, sample_covariance, synthesize_snapshots
from wsnloc.doa import music, uca_esprit, uca_root_music
from wsnloc.pme import bessel_j, build_transform, max_mode, vula_steering

rng = np.random.default_rng(5)

ring = UniformCircularArray(n=9, radius=0.6, elevation=np.radians(40.0), wavelength=1.0)
print(f"ring: N={ring.n}, r={ring.radius} wavelengths, zeta={ring.zeta:.3f}")
print(f"highest usable phase mode: h = {max_mode(ring.radius, ring.wavelength)}")

transform = build_transform(ring)
print(f"virtual array size: {transform.vula_size}")
print("mode amplitudes |J_p(zeta)|:",
      np.round([abs(bessel_j(p, transform.zeta)) for p in range(transform.h + 1)], 4))

# ---------------------------------------------------------------------------
# How vandermonde is the mapped steering vector?
# ---------------------------------------------------------------------------
grid = np.radians(np.arange(-180.0, 180.0, 5.0))
mapped = transform.Tv @ ring.steering(grid)
ideal = vula_steering(grid, transform)
resid = np.linalg.norm(mapped - ideal, axis=0) / np.linalg.norm(ideal, axis=0)
print(f"\nmapped-steering residual over azimuth: max {resid.max():.2e} "
      f"(sampling the ring with N={ring.n} elements)")

# ---------------------------------------------------------------------------
# Full-circle coverage: a source behind the array is no problem
# ---------------------------------------------------------------------------
for truth_deg in (30.0, 150.0, -120.0):
    src = SourceSet(azimuths=[np.radians(truth_deg)])
    x = synthesize_snapshots(ring, src, 500, 20.0, rng)
    m = music(sample_covariance(x), ring, 1)[1].azimuths[0]
    rm = uca_root_music(x, transform, 1).azimuths[0]
    es = uca_esprit(x, transform, 1).azimuths[0]
    print(
        f"source {truth_deg:+7.1f} deg -> MUSIC {np.degrees(m):+8.2f}, "
        f"beamspace root-MUSIC {np.degrees(rm):+8.2f}, "
        f"beamspace ESPRIT {np.degrees(es):+8.2f}"
    )

print(
    "\nThe beamspace estimators skip the spectral search entirely; their"
    "\nsmall bias against MUSIC is the ring-sampling residual shown above."
)
