"""Subspace DOA estimation: MUSIC spectral search, Root-MUSIC polynomial
rooting, ESPRIT rotational invariance, and their circular-array variants
operating in the phase-mode beamspace.

All estimators are deterministic functions of their inputs. Estimates are
reported inside the geometry's unambiguous field of view: (-90, 90) degrees
for linear arrays (a cone ambiguity mirrors angles about the array axis),
(-180, 180] for circular and virtual arrays.

References: Schmidt (1986) for MUSIC, Barabell (1983) for Root-MUSIC,
Roy & Kailath (1989) for ESPRIT, Mathews & Zoltowski (1994) for the
beamspace circular-array forms.
"""

from dataclasses import dataclass

import numpy as np

from .arrays import UniformLinearArray, sample_covariance
from .errors import (
    ArcsinOutOfRange,
    NoPeaksFound,
    RankDeficientSubspace,
    RootSolveFailure,
    TooFewSources,
    TooManySources,
    WrongGeometry,
)
from .numerics import herm_eig, inv_sqrt_psd, poly_roots
from .pme import PmeTransform, to_vula

DEFAULT_GRID_STEP = np.radians(0.1)


@dataclass(frozen=True)
class SubspaceSplit:
    """Signal/noise eigenvector split of a covariance matrix."""

    signal: np.ndarray  # (N, M)
    noise: np.ndarray  # (N, N-M)
    eigenvalues: np.ndarray  # descending, real


@dataclass(frozen=True)
class Spectrum:
    """Angular pseudospectrum sampled on a strictly increasing grid."""

    grid: np.ndarray  # radians
    power_db: np.ndarray


@dataclass(frozen=True)
class DoaEstimate:
    """Sorted azimuth estimates (radians) and the method that produced them."""

    azimuths: np.ndarray
    method: str


def eig_split(r: np.ndarray, n_sources: int) -> SubspaceSplit:
    """Split a Hermitian covariance into signal and noise subspaces."""
    if n_sources < 1:
        raise TooFewSources("need at least one source")
    w, q = herm_eig(r)
    if n_sources >= w.size:
        raise TooManySources(f"{n_sources} sources with dimension {w.size}")
    return SubspaceSplit(signal=q[:, :n_sources], noise=q[:, n_sources:], eigenvalues=w)


def _angle_grid(geometry, step: float) -> np.ndarray:
    lo, hi = geometry.fov
    if step <= 0:
        raise ValueError("grid step must be positive")
    # Circular fields of view include the +180 degree endpoint.
    stop = hi + step / 2 if np.isclose(hi, np.pi) else hi - step / 2
    return np.arange(lo + step, stop, step)


def _pick_peaks(grid: np.ndarray, power: np.ndarray, n_sources: int) -> np.ndarray:
    interior = power[1:-1]
    is_peak = (interior > power[:-2]) & (interior > power[2:])
    peaks = np.nonzero(is_peak)[0] + 1
    if peaks.size < n_sources:
        raise NoPeaksFound(f"found {peaks.size} spectral peaks, need {n_sources}")
    # Largest power first; equal powers resolve toward the smaller angle.
    order = np.lexsort((grid[peaks], -power[peaks]))
    chosen = peaks[order[:n_sources]]
    return np.sort(grid[chosen])


def music(
    r: np.ndarray,
    geometry,
    n_sources: int,
    grid_step: float = DEFAULT_GRID_STEP,
) -> tuple[Spectrum, DoaEstimate]:
    """MUSIC pseudospectrum and the angles of its n_sources largest peaks.

    P(theta) = (a^H a) / (a^H Vn Vn^H a) evaluated on a regular grid over
    the geometry's field of view. Works for any geometry that provides a
    steering model (linear, circular, or beamspace virtual arrays).
    """
    if n_sources >= geometry.size:
        raise TooManySources(f"{n_sources} sources with {geometry.size} elements")
    split = eig_split(r, n_sources)
    grid = _angle_grid(geometry, grid_step)
    a = geometry.steering(grid)
    num = np.sum(np.abs(a) ** 2, axis=0)
    den = np.sum(np.abs(split.noise.conj().T @ a) ** 2, axis=0)
    power = num / np.maximum(den, 1e-300)
    spectrum = Spectrum(grid=grid, power_db=10.0 * np.log10(power))
    estimate = DoaEstimate(
        azimuths=_pick_peaks(grid, power, n_sources), method="music"
    )
    return spectrum, estimate


def _lag_polynomial(c: np.ndarray) -> np.ndarray:
    """Descending coefficients of sum_k trace(C, k) z^(k + dim - 1)."""
    n = c.shape[0]
    return np.array([np.trace(c, offset=k) for k in range(n - 1, -n, -1)])


def _roots_inside_unit_circle(coeffs: np.ndarray, n_sources: int) -> np.ndarray:
    roots = poly_roots(coeffs).roots
    inside = roots[np.abs(roots) < 1.0]
    if inside.size < n_sources:
        raise RootSolveFailure(
            f"only {inside.size} roots inside the unit circle, need {n_sources}"
        )
    order = np.argsort(-np.abs(inside))
    return inside[order[:n_sources]]


def _ula_angles_from_phases(phases: np.ndarray, geometry: UniformLinearArray) -> np.ndarray:
    sin_arg = phases * geometry.wavelength / (2.0 * np.pi * geometry.spacing)
    if np.any(np.abs(sin_arg) > 1.0):
        raise ArcsinOutOfRange("recovered phase outside the arcsin domain")
    return np.sort(np.arcsin(sin_arg))


def root_music(r: np.ndarray, geometry, n_sources: int) -> DoaEstimate:
    """Root-MUSIC on a uniform linear array.

    The MUSIC denominator is a Laurent polynomial in z on the unit circle;
    its 2(N-1) roots come in conjugate-reciprocal pairs, and the n_sources
    members inside the circle with the largest modulus sit next to the
    signal zeros. Angles follow from arcsin(arg(z) lambda / (2 pi d)).
    """
    if not isinstance(geometry, UniformLinearArray):
        raise WrongGeometry("root_music needs a UniformLinearArray")
    if n_sources >= geometry.size:
        raise TooManySources(f"{n_sources} sources with {geometry.size} elements")
    split = eig_split(r, n_sources)
    c = split.noise @ split.noise.conj().T
    # The physical steering phase decreases along the array, so conjugate
    # the lag polynomial to place signal roots at exp(+j phi).
    coeffs = np.conj(_lag_polynomial(c))
    roots = _roots_inside_unit_circle(coeffs, n_sources)
    return DoaEstimate(
        azimuths=_ula_angles_from_phases(np.angle(roots), geometry),
        method="root-music",
    )


def _invariance_eigs(vs: np.ndarray, n_sources: int) -> np.ndarray:
    v1 = vs[:-1, :]
    v2 = vs[1:, :]
    if np.linalg.matrix_rank(v1) < n_sources:
        raise RankDeficientSubspace("leading subarray subspace lost rank")
    psi, *_ = np.linalg.lstsq(v1, v2, rcond=None)
    return np.linalg.eigvals(psi)


def esprit(x: np.ndarray, geometry, n_sources: int) -> DoaEstimate:
    """ESPRIT on a uniform linear array from raw snapshots.

    The two maximally overlapping (N-1)-element subarrays see signal
    subspaces related by V2 = V1 Psi; the eigenvalue phases of the
    least-squares Psi are the inter-element phase shifts of the sources.
    """
    if not isinstance(geometry, UniformLinearArray):
        raise WrongGeometry("esprit needs a UniformLinearArray")
    if n_sources < 1:
        raise TooFewSources("need at least one source")
    if n_sources >= geometry.size - 1:
        raise TooManySources(
            f"{n_sources} sources need more than {geometry.size} elements"
        )
    split = eig_split(sample_covariance(x), n_sources)
    eigs = _invariance_eigs(split.signal, n_sources)
    # Steering phase decreases along the array, so negate before arcsin.
    return DoaEstimate(
        azimuths=_ula_angles_from_phases(-np.angle(eigs), geometry),
        method="esprit",
    )


def uca_root_music(x: np.ndarray, transform: PmeTransform, n_sources: int) -> DoaEstimate:
    """Root-MUSIC for a circular array through the prewhitened beamspace.

    Snapshots are mapped with the row-orthonormal transform so the noise
    stays white; the rooted polynomial carries the (Tv Tv^H)^(-1/2)
    equalizer on both sides of the noise projector, and each selected root
    gives the azimuth directly as its phase.
    """
    if n_sources < 1:
        raise TooFewSources("need at least one source")
    if n_sources >= transform.vula_size:
        raise TooManySources(
            f"{n_sources} sources with a {transform.vula_size}-element virtual array"
        )
    xv = to_vula(x, transform, prewhitened=True)
    split = eig_split(sample_covariance(xv), n_sources)
    whiten = inv_sqrt_psd(transform.Tv @ transform.Tv.conj().T)
    c = whiten @ (split.noise @ split.noise.conj().T) @ whiten
    roots = _roots_inside_unit_circle(_lag_polynomial(c), n_sources)
    return DoaEstimate(azimuths=np.sort(np.angle(roots)), method="uca-root-music")


def _centro_hermitian_unitary(n: int) -> np.ndarray:
    """Unitary Q with Q = J Q* (J the exchange matrix), Q Q^H = I."""
    m = n // 2
    eye = np.eye(m)
    exch = np.fliplr(eye)
    q = np.zeros((n, n), dtype=complex)
    if n % 2:
        q[:m, :m] = eye
        q[:m, m + 1 :] = 1j * eye
        q[m, m] = np.sqrt(2.0)
        q[m + 1 :, :m] = exch
        q[m + 1 :, m + 1 :] = -1j * exch
    else:
        q[:m, :m] = eye
        q[:m, m:] = 1j * eye
        q[m:, :m] = exch
        q[m:, m:] = -1j * exch
    return q / np.sqrt(2.0)


def uca_esprit(x: np.ndarray, transform: PmeTransform, n_sources: int) -> DoaEstimate:
    """ESPRIT for a circular array through the beamspace transform.

    The virtual-array noise is colored by the mode equalizer (covariance
    proportional to Tv Tv^H), which would bias an eigendecomposition of
    the plain-mapped covariance. The signal subspace is therefore
    estimated from the prewhitened mapping and carried back into the
    plain (vandermonde) basis with (Tv Tv^H)^(1/2); a per-row whitening
    of the doublets themselves would destroy the shift invariance the
    rotation relation depends on. The unitary centro-Hermitian
    conjugation applied around the covariance is a real-arithmetic
    device and leaves the recovered subspace unchanged; its unitarity is
    the only contract.
    """
    if n_sources < 1:
        raise TooFewSources("need at least one source")
    if n_sources >= transform.vula_size - 1:
        raise TooManySources(
            f"{n_sources} sources with a {transform.vula_size}-element virtual array"
        )
    xv = to_vula(x, transform, prewhitened=True)
    qc = _centro_hermitian_unitary(transform.vula_size)
    r = sample_covariance(qc @ xv)
    split = eig_split(r, n_sources)
    w, q = herm_eig(transform.Tv @ transform.Tv.conj().T)
    color = (q * np.sqrt(w)) @ q.conj().T  # (Tv Tv^H)^(1/2)
    vs = color @ (qc.conj().T @ split.signal)
    eigs = _invariance_eigs(vs, n_sources)
    return DoaEstimate(azimuths=np.sort(np.angle(eigs)), method="uca-esprit")
