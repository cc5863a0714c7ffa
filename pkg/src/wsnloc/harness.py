"""Seeded Monte-Carlo experiment harness.

A scenario is a JSON document validated against :data:`CONFIG_SCHEMA`
(unknown keys are rejected). Four experiment kinds exist, matching the CLI
subcommands:

* ``rss``    - trilateration from RSS ranging, position RMSE vs SNR.
* ``doa``    - array DOA estimation, angular RMSE vs SNR.
* ``hybrid`` - RSS+DOA fusion around one hybrid node, position RMSE vs SNR.
* ``spectrum`` - one seeded MUSIC spectrum dump (angle_deg, power_db).

Randomness: every trial owns an independent PCG64 stream derived as
``SeedSequence(entropy=seed, spawn_key=(snr_index, trial_index))``, so
results are bit-identical across reruns and across serial/parallel
execution. The SNR axis drives both the array noise floor and the RSS
shadowing std through ``sigma_db = sigma_ref_db * 10^(-snr/20)``.

A failed trial (a spectrum without enough peaks at low SNR, a ray with no
forward intersection, ...) is counted per SNR row and excluded from the
RMSE; only a row where every trial fails raises :class:`AllTrialsFailed`.
"""

import csv
import dataclasses
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any

import jsonschema
import numpy as np

from . import decorrelate
from .arrays import (
    SourceSet,
    UniformCircularArray,
    UniformLinearArray,
    sample_covariance,
    synthesize_snapshots,
)
from .channel import (
    ChannelModel,
    invert_distance,
    path_loss,
    sigma_from_snr,
    wavelength_from_frequency,
)
from .channel import RssMeasurement
from .doa import Spectrum, esprit, music, root_music, uca_esprit, uca_root_music
from .errors import AllTrialsFailed, ConfigError, WsnlocError
from .geometry import bearing_to, build_lop_system, distance
from .hybrid import (
    HybridNode,
    hybrid_anchor_fusion,
    hybrid_single_node,
    hybrid_with_fbss,
    two_lines,
)
from .pme import VandermondeArray, build_transform
from .rss import huber_irls, ls_solve, wls_solve, wls_weights

_XY = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

CONFIG_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "wsnloc scenario",
    "type": "object",
    "additionalProperties": False,
    "required": ["seed", "trials", "snr_grid_db"],
    "properties": {
        "seed": {"type": "integer", "minimum": 0, "maximum": 2**64 - 1},
        "trials": {"type": "integer", "minimum": 1},
        "snr_grid_db": {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 1,
        },
        "region": {
            "type": "array",
            "items": {"type": "number", "exclusiveMinimum": 0},
            "minItems": 2,
            "maxItems": 2,
        },
        "target": {
            "oneOf": [{"const": "random"}, _XY],
        },
        "channel": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "d0_m": {"type": "number", "exclusiveMinimum": 0},
                "eta": {"type": "number", "exclusiveMinimum": 0},
                "eta_true": {"type": "number", "exclusiveMinimum": 0},
                "sigma_ref_db": {"type": "number", "minimum": 0},
                "wavelength_m": {"type": "number", "exclusiveMinimum": 0},
                "frequency_hz": {"type": "number", "exclusiveMinimum": 0},
            },
        },
        "anchors": {"type": "array", "items": _XY, "minItems": 1},
        "array": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind", "n_elements"],
            "properties": {
                "kind": {"enum": ["ula", "uca"]},
                "n_elements": {"type": "integer", "minimum": 2},
                "spacing_wavelengths": {"type": "number", "exclusiveMinimum": 0},
                "radius_wavelengths": {"type": "number", "exclusiveMinimum": 0},
                "elevation_deg": {"type": "number", "minimum": 0, "maximum": 90},
            },
        },
        "sources": {
            "type": "object",
            "additionalProperties": False,
            "required": ["azimuths_deg"],
            "properties": {
                "azimuths_deg": {
                    "type": "array",
                    "items": {"type": "number"},
                    "minItems": 1,
                },
                "amplitudes": {
                    "type": "array",
                    "items": {"type": "number", "exclusiveMinimum": 0},
                },
                "coherent": {"type": "boolean"},
                "snapshots": {"type": "integer", "minimum": 1},
            },
        },
        "hybrid_node": {
            "type": "object",
            "additionalProperties": False,
            "required": ["center", "n_elements", "radius_wavelengths"],
            "properties": {
                "center": _XY,
                "n_elements": {"type": "integer", "minimum": 2},
                "radius_wavelengths": {"type": "number", "exclusiveMinimum": 0},
                "elevation_deg": {"type": "number", "minimum": 0, "maximum": 90},
            },
        },
        "interferers_deg": {"type": "array", "items": {"type": "number"}},
        "interferer_amplitudes": {
            "type": "array",
            "items": {"type": "number", "exclusiveMinimum": 0},
        },
        "snapshots": {"type": "integer", "minimum": 1},
        "method": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "estimator": {"enum": ["ls", "wls", "huber"]},
                "doa": {
                    "enum": [
                        "music",
                        "root-music",
                        "esprit",
                        "uca-root-music",
                        "uca-esprit",
                    ]
                },
                "decorrelate": {"enum": ["none", "fss", "fbss", "toeplitz"]},
                "hybrid": {"enum": ["single", "fbss", "ls", "wls", "two-lines"]},
                "grid_step_deg": {"type": "number", "exclusiveMinimum": 0},
                "huber_epsilon": {"type": "number", "exclusiveMinimum": 0},
                "subarray_len": {"type": "integer", "minimum": 2},
            },
        },
    },
}

_DEFAULT_METHOD = {
    "estimator": "ls",
    "doa": "music",
    "decorrelate": "none",
    "hybrid": "single",
    "grid_step_deg": 0.1,
    "huber_epsilon": 1e-3,
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Parsed scenario: everything a pipeline needs, plus the raw document."""

    seed: int
    trials: int
    snr_grid_db: tuple[float, ...]
    region: tuple[float, float] | None
    target: np.ndarray | str | None
    d0: float
    eta: float
    eta_true: float | None
    sigma_ref_db: float
    wavelength: float
    anchors: np.ndarray | None
    array_spec: dict | None
    sources_spec: dict | None
    hybrid_spec: dict | None
    interferers_deg: tuple[float, ...]
    interferer_amplitudes: tuple[float, ...] | None
    snapshots: int
    method: dict

    @classmethod
    def from_dict(cls, raw: dict) -> "ScenarioConfig":
        try:
            jsonschema.validate(raw, CONFIG_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise ConfigError(f"invalid scenario config: {exc.message}") from exc

        channel = raw.get("channel", {})
        if "wavelength_m" in channel and "frequency_hz" in channel:
            raise ConfigError("give wavelength_m or frequency_hz, not both")
        if "frequency_hz" in channel:
            wavelength = wavelength_from_frequency(channel["frequency_hz"])
        else:
            wavelength = channel.get("wavelength_m", wavelength_from_frequency(1e9))

        region = tuple(raw["region"]) if "region" in raw else None
        target: np.ndarray | str | None = raw.get("target")
        if isinstance(target, list):
            target = np.asarray(target, dtype=float)
            if region is not None and not (
                0 <= target[0] <= region[0] and 0 <= target[1] <= region[1]
            ):
                raise ConfigError("target lies outside the region")
        elif target == "random" and region is None:
            raise ConfigError("random target needs a region")

        method = dict(_DEFAULT_METHOD)
        method.update(raw.get("method", {}))

        sources = raw.get("sources")
        if sources is not None and "amplitudes" in sources:
            if len(sources["amplitudes"]) != len(sources["azimuths_deg"]):
                raise ConfigError("amplitudes must match azimuths_deg in length")

        return cls(
            seed=raw["seed"],
            trials=raw["trials"],
            snr_grid_db=tuple(float(s) for s in raw["snr_grid_db"]),
            region=region,
            target=target,
            d0=channel.get("d0_m", 1.0),
            eta=channel.get("eta", 2.0),
            eta_true=channel.get("eta_true"),
            sigma_ref_db=channel.get("sigma_ref_db", 8.0),
            wavelength=wavelength,
            anchors=np.asarray(raw["anchors"], dtype=float) if "anchors" in raw else None,
            array_spec=raw.get("array"),
            sources_spec=sources,
            hybrid_spec=raw.get("hybrid_node"),
            interferers_deg=tuple(raw.get("interferers_deg", ())),
            interferer_amplitudes=tuple(raw["interferer_amplitudes"])
            if "interferer_amplitudes" in raw
            else None,
            snapshots=raw.get("snapshots", raw.get("sources", {}).get("snapshots", 100)),
            method=method,
        )

    def with_method(self, **overrides) -> "ScenarioConfig":
        method = dict(self.method)
        method.update({k: v for k, v in overrides.items() if v is not None})
        return dataclasses.replace(self, method=method)

    # -- derived pieces -----------------------------------------------------

    def channel_at(self, snr_db: float, eta: float | None = None) -> ChannelModel:
        return ChannelModel(
            d0=self.d0,
            eta=self.eta if eta is None else eta,
            sigma_db=sigma_from_snr(snr_db, self.sigma_ref_db),
            wavelength=self.wavelength,
        )

    def build_array(self):
        spec = self.array_spec
        if spec is None:
            raise ConfigError("scenario needs an 'array' section")
        if spec["kind"] == "ula":
            if "spacing_wavelengths" not in spec:
                raise ConfigError("ula array needs spacing_wavelengths")
            return UniformLinearArray(
                n=spec["n_elements"],
                spacing=spec["spacing_wavelengths"] * self.wavelength,
                wavelength=self.wavelength,
            )
        if "radius_wavelengths" not in spec:
            raise ConfigError("uca array needs radius_wavelengths")
        return UniformCircularArray(
            n=spec["n_elements"],
            radius=spec["radius_wavelengths"] * self.wavelength,
            elevation=math.radians(spec.get("elevation_deg", 90.0)),
            wavelength=self.wavelength,
        )

    def build_sources(self) -> SourceSet:
        spec = self.sources_spec
        if spec is None:
            raise ConfigError("scenario needs a 'sources' section")
        return SourceSet(
            azimuths=np.radians(spec["azimuths_deg"]),
            amplitudes=np.asarray(spec["amplitudes"], dtype=float)
            if "amplitudes" in spec
            else None,
            coherent=spec.get("coherent", False),
        )

    def build_hybrid_node(self) -> HybridNode:
        spec = self.hybrid_spec
        if spec is None:
            raise ConfigError("scenario needs a 'hybrid_node' section")
        geometry = UniformCircularArray(
            n=spec["n_elements"],
            radius=spec["radius_wavelengths"] * self.wavelength,
            elevation=math.radians(spec.get("elevation_deg", 90.0)),
            wavelength=self.wavelength,
        )
        return HybridNode(center=np.asarray(spec["center"], dtype=float), geometry=geometry)


def load_config(path) -> ScenarioConfig:
    """Read and validate a scenario JSON file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return ScenarioConfig.from_dict(raw)


@dataclass(frozen=True)
class TrialResult:
    estimate: np.ndarray
    truth: np.ndarray
    error: float


@dataclass(frozen=True)
class MonteCarloRow:
    snr_db: float
    rmse: float
    trials: int
    failures: int
    mean_runtime_ms: float


@dataclass(frozen=True)
class MonteCarloResult:
    unit: str  # "m" or "deg"
    rows: tuple[MonteCarloRow, ...]


def rng_for_trial(seed: int, snr_index: int, trial_index: int) -> np.random.Generator:
    """The documented per-trial stream: PCG64 keyed by (snr_index, trial_index)."""
    seq = np.random.SeedSequence(entropy=seed, spawn_key=(snr_index, trial_index))
    return np.random.Generator(np.random.PCG64(seq))


def _draw_target(cfg: ScenarioConfig, rng: np.random.Generator, keep_clear_of) -> np.ndarray:
    if isinstance(cfg.target, np.ndarray):
        return cfg.target
    if cfg.target != "random":
        raise ConfigError("scenario needs a 'target' (coordinates or 'random')")
    width, height = cfg.region
    points, clearance = keep_clear_of
    for _ in range(1000):
        cand = np.array([rng.uniform(0, width), rng.uniform(0, height)])
        if all(distance(cand, p) >= c for p, c in zip(points, clearance)):
            return cand
    raise ConfigError("could not place a random target clear of the ranging nodes")


def _range_to(point, target, gen_model, inv_model, rng) -> RssMeasurement:
    pl = float(path_loss(distance(point, target), gen_model, rng))
    return RssMeasurement(path_loss_db=pl, est_distance=float(invert_distance(pl, inv_model)))


# --- pipelines ---------------------------------------------------------------


def _rss_trial(cfg: ScenarioConfig, snr_db: float, rng) -> TrialResult:
    if cfg.anchors is None or cfg.anchors.shape[0] < 3:
        raise ConfigError("rss scenario needs at least 3 anchors")
    inv_model = cfg.channel_at(snr_db)
    gen_model = cfg.channel_at(snr_db, eta=cfg.eta_true) if cfg.eta_true else inv_model
    clearance = [(a, cfg.d0) for a in cfg.anchors]
    target = _draw_target(cfg, rng, ([p for p, _ in clearance], [c for _, c in clearance]))
    meas = [_range_to(a, target, gen_model, inv_model, rng) for a in cfg.anchors]
    est_d = [m.est_distance for m in meas]
    system = build_lop_system(cfg.anchors, est_d)
    kind = cfg.method["estimator"]
    if kind == "ls":
        est = ls_solve(system)
    elif kind == "wls":
        est = wls_solve(system, wls_weights(inv_model, est_d))
    else:
        weights = wls_weights(inv_model, est_d) if inv_model.sigma_db > 0 else None
        est = huber_irls(
            system, epsilon=cfg.method["huber_epsilon"], initial_weights=weights
        ).position
    return TrialResult(estimate=est, truth=target, error=distance(est, target))


def _smoothing_plan(cfg, n_elements, n_sources, forward_backward):
    return decorrelate.SmoothingPlan.design(
        n_elements,
        n_sources,
        subarray_len=cfg.method.get("subarray_len"),
        forward_backward=forward_backward,
    )


def _spectral_covariance(cfg: ScenarioConfig, geometry, n_sources: int, x):
    """Apply the configured decorrelation; return (R, geometry to scan).

    Linear arrays smooth (or Toeplitz-rebuild) their own covariance;
    circular arrays reach spatial smoothing only through the phase-mode
    beamspace, and Toeplitz reconstruction is not offered for them.
    """
    prep = cfg.method["decorrelate"]
    is_ula = isinstance(geometry, UniformLinearArray)
    if prep == "toeplitz" and not is_ula:
        raise ConfigError("toeplitz preprocessing is only supported on ula arrays")

    if is_ula or prep == "none":
        r = sample_covariance(x)
        if prep in ("fss", "fbss"):
            plan = _smoothing_plan(cfg, geometry.size, n_sources, prep == "fbss")
            r = decorrelate.fss(r, plan) if prep == "fss" else decorrelate.fbss(r, plan)
            return r, UniformLinearArray(
                n=plan.subarray_len,
                spacing=geometry.spacing,
                wavelength=geometry.wavelength,
            )
        if prep == "toeplitz":
            return decorrelate.toeplitz_reconstruct(r), geometry
        return r, geometry

    # circular array with smoothing: map into the beamspace first
    transform = build_transform(geometry)
    plan = _smoothing_plan(cfg, transform.vula_size, n_sources, prep == "fbss")
    rv = sample_covariance(np.asarray(transform.Tv @ x))
    r = decorrelate.fss(rv, plan) if prep == "fss" else decorrelate.fbss(rv, plan)
    return r, VandermondeArray(plan.subarray_len)


def _doa_estimate(cfg: ScenarioConfig, geometry, src: SourceSet, x) -> np.ndarray:
    """Run the configured estimator/preprocessing chain, return sorted radians."""
    method = cfg.method["doa"]
    prep = cfg.method["decorrelate"]
    m = src.count
    is_ula = isinstance(geometry, UniformLinearArray)

    if method in ("uca-root-music", "uca-esprit"):
        if is_ula:
            raise ConfigError(f"{method} needs a uca array")
        if prep != "none":
            raise ConfigError(f"{method} does not combine with decorrelate={prep}")
        transform = build_transform(geometry)
        est = (
            uca_root_music(x, transform, m)
            if method == "uca-root-music"
            else uca_esprit(x, transform, m)
        )
        return est.azimuths

    if method == "esprit":
        if not is_ula:
            raise ConfigError("esprit needs a ula array (use uca-esprit for rings)")
        if prep != "none":
            raise ConfigError("esprit operates on raw snapshots; decorrelate must be none")
        return esprit(x, geometry, m).azimuths

    r, sub_geometry = _spectral_covariance(cfg, geometry, m, x)
    if method == "music":
        _, est = music(r, sub_geometry, m, math.radians(cfg.method["grid_step_deg"]))
        return est.azimuths
    if method == "root-music":
        if not isinstance(sub_geometry, UniformLinearArray):
            raise ConfigError("root-music needs a ula array (use uca-root-music for rings)")
        return root_music(r, sub_geometry, m).azimuths
    raise ConfigError(f"unknown doa method {method!r}")


def _doa_trial(cfg: ScenarioConfig, snr_db: float, rng) -> TrialResult:
    geometry = cfg.build_array()
    src = cfg.build_sources()
    x = synthesize_snapshots(geometry, src, cfg.snapshots, snr_db, rng)
    est = _doa_estimate(cfg, geometry, src, x)
    truth = np.sort(src.azimuths)
    err = math.degrees(math.sqrt(float(np.mean((est - truth) ** 2))))
    return TrialResult(estimate=np.degrees(est), truth=np.degrees(truth), error=err)


def _music_bearing(cfg, node, bearing, snr_db, rng) -> float:
    src = SourceSet(azimuths=np.array([bearing]))
    x = synthesize_snapshots(node.geometry, src, cfg.snapshots, snr_db, rng)
    _, est = music(
        sample_covariance(x),
        node.geometry,
        1,
        math.radians(cfg.method["grid_step_deg"]),
    )
    return float(est.azimuths[0])


def _hybrid_trial(cfg: ScenarioConfig, snr_db: float, rng) -> TrialResult:
    node = cfg.build_hybrid_node()
    model = cfg.channel_at(snr_db)
    scheme = cfg.method["hybrid"]
    clear_pts = [node.center]
    clear_rad = [max(cfg.d0, 3.0 * node.geometry.radius)]
    if cfg.anchors is not None:
        clear_pts += [a for a in cfg.anchors]
        clear_rad += [cfg.d0] * cfg.anchors.shape[0]
    target = _draw_target(cfg, rng, (clear_pts, clear_rad))
    bearing = bearing_to(node.center, target)

    if scheme == "fbss":
        azimuths = np.concatenate([[bearing], np.radians(cfg.interferers_deg)])
        amps = None
        if cfg.interferer_amplitudes is not None:
            if len(cfg.interferer_amplitudes) != len(cfg.interferers_deg):
                raise ConfigError("interferer_amplitudes must match interferers_deg")
            amps = np.concatenate([[1.0], cfg.interferer_amplitudes])
        src = SourceSet(azimuths=azimuths, amplitudes=amps, coherent=True)
        x = synthesize_snapshots(node.geometry, src, cfg.snapshots, snr_db, rng)
        element_rss = [_range_to(p, target, model, model, rng) for p in node.element_positions]
        transform = build_transform(node.geometry)
        est = hybrid_with_fbss(
            node,
            x,
            element_rss,
            transform,
            src.count,
            subarray_len=cfg.method.get("subarray_len"),
        )
    elif scheme == "single":
        doa_hat = _music_bearing(cfg, node, bearing, snr_db, rng)
        element_rss = [_range_to(p, target, model, model, rng) for p in node.element_positions]
        est = hybrid_single_node(node, doa_hat, element_rss)
    elif scheme in ("ls", "wls"):
        if cfg.anchors is None or cfg.anchors.shape[0] < 2:
            raise ConfigError("anchor fusion needs at least 2 RSS anchors")
        doa_hat = _music_bearing(cfg, node, bearing, snr_db, rng)
        points = list(cfg.anchors) + [node.center]
        dists = [_range_to(p, target, model, model, rng).est_distance for p in points]
        est = hybrid_anchor_fusion(
            node, cfg.anchors, dists, doa_hat, estimator=scheme, model=model
        )
    elif scheme == "two-lines":
        if cfg.anchors is None or cfg.anchors.shape[0] < 1:
            raise ConfigError("two-lines fusion needs one RSS anchor")
        doa_hat = _music_bearing(cfg, node, bearing, snr_db, rng)
        d_anchor = _range_to(cfg.anchors[0], target, model, model, rng).est_distance
        # The hybrid node's own range pools its per-element measurements
        # (the ring radius is negligible against the node-target distance).
        d_hybrid = float(
            np.mean(
                [
                    _range_to(p, target, model, model, rng).est_distance
                    for p in node.element_positions
                ]
            )
        )
        est = two_lines(node, cfg.anchors[0], d_anchor, d_hybrid, doa_hat)
    else:
        raise ConfigError(f"unknown hybrid scheme {scheme!r}")
    return TrialResult(estimate=est, truth=target, error=distance(est, target))


_PIPELINES = {"rss": _rss_trial, "doa": _doa_trial, "hybrid": _hybrid_trial}


def run_trial(
    cfg: ScenarioConfig, kind: str, snr_index: int, trial_index: int
) -> TrialResult:
    """One deterministic trial of the configured pipeline."""
    if kind not in _PIPELINES:
        raise ConfigError(f"unknown experiment kind {kind!r}")
    rng = rng_for_trial(cfg.seed, snr_index, trial_index)
    return _PIPELINES[kind](cfg, cfg.snr_grid_db[snr_index], rng)


def monte_carlo(cfg: ScenarioConfig, kind: str, workers: int = 1) -> MonteCarloResult:
    """RMSE over seeded trials for every SNR in the grid.

    ``workers > 1`` fans trials out to a thread pool; per-trial RNG streams
    make the result identical to the serial run.
    """
    if kind not in _PIPELINES:
        raise ConfigError(f"unknown experiment kind {kind!r}")
    jobs = [(si, ti) for si in range(len(cfg.snr_grid_db)) for ti in range(cfg.trials)]

    def one(job):
        si, ti = job
        start = time.perf_counter()
        try:
            res = run_trial(cfg, kind, si, ti)
            return si, res.error, time.perf_counter() - start
        except WsnlocError:
            return si, None, time.perf_counter() - start

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, jobs))
    else:
        outcomes = [one(job) for job in jobs]

    rows = []
    for si, snr in enumerate(cfg.snr_grid_db):
        errors = [e for s, e, _ in outcomes if s == si and e is not None]
        runtimes = [t for s, _, t in outcomes if s == si]
        failures = cfg.trials - len(errors)
        if not errors:
            raise AllTrialsFailed(f"all {cfg.trials} trials failed at snr={snr} dB")
        rows.append(
            MonteCarloRow(
                snr_db=snr,
                rmse=math.sqrt(float(np.mean(np.square(errors)))),
                trials=cfg.trials,
                failures=failures,
                mean_runtime_ms=1e3 * float(np.mean(runtimes)),
            )
        )
    return MonteCarloResult(unit="deg" if kind == "doa" else "m", rows=tuple(rows))


def compute_spectrum(cfg: ScenarioConfig) -> Spectrum:
    """The seeded MUSIC spectrum for trial 0 at the first grid SNR."""
    if cfg.method["doa"] != "music":
        raise ConfigError("spectrum dumps need method.doa == 'music'")
    geometry = cfg.build_array()
    src = cfg.build_sources()
    rng = rng_for_trial(cfg.seed, 0, 0)
    x = synthesize_snapshots(geometry, src, cfg.snapshots, cfg.snr_grid_db[0], rng)
    r, sub_geometry = _spectral_covariance(cfg, geometry, src.count, x)
    spectrum, _ = music(
        r, sub_geometry, src.count, math.radians(cfg.method["grid_step_deg"])
    )
    return spectrum


def dump_spectrum(cfg: ScenarioConfig, out) -> None:
    """Write the seeded spectrum as CSV with header ``angle_deg,power_db``."""
    spectrum = compute_spectrum(cfg)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["angle_deg", "power_db"])
        for angle, power in zip(spectrum.grid, spectrum.power_db):
            writer.writerow([f"{math.degrees(angle):.6f}", f"{power:.10g}"])


def write_rmse_csv(result: MonteCarloResult, out) -> None:
    """Write the per-SNR table with header ``snr_db,rmse,trials,failures``."""
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["snr_db", "rmse", "trials", "failures"])
        for row in result.rows:
            writer.writerow(
                [f"{row.snr_db:g}", f"{row.rmse:.12g}", row.trials, row.failures]
            )
