"""Named, seeded experiments that regenerate the canonical figure and
table datasets as CSV artifacts.

Every experiment writes a single CSV: a ``#``-prefixed header block
(name, artifact version, seed, every parameter) followed by one or more
sections, each introduced by ``# section: <name>`` and a column header
row.  Reruns with the same spec are byte-identical; no timestamps are
written.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import mpmath
import numpy as np

from . import __version__
from .estimators import (
    aic_order,
    covariance_determinants,
    hokalman_order,
    plateau_onset,
)
from .hankel import BOTTOM, RIGHT, build_augmented, build_hankel, build_rectangular_hankel, row_echelon
from .rank import default_policy, numerical_rank, singular_values
from .signals import Mode, ModeSum, NoiseSpec, add_noise, add_offset, gen_high_order, gen_mode_sum, gen_nonhomogeneous, gen_y5, pole_pair_modes

__all__ = ["ExperimentSpec", "ExperimentSummary", "list_experiments", "run_experiment"]


@dataclass(frozen=True)
class ExperimentSpec:
    """A registered experiment name plus parameter overrides and a seed."""

    name: str
    parameters: dict = field(default_factory=dict)
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.name not in _REGISTRY:
            known = ", ".join(_REGISTRY)
            raise ValueError(f"unknown experiment {self.name!r}; registered: {known}")


@dataclass(frozen=True)
class ExperimentSummary:
    name: str
    headline: str
    status: str
    output_path: Path

    def line(self) -> str:
        return f"{self.name},{self.headline},{self.status}"


Section = tuple[str, str, list[str]]  # (section name, column header, data rows)


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _rank_of(entries: np.ndarray) -> int:
    spectrum = singular_values(entries)
    return numerical_rank(spectrum, default_policy(entries.shape)).rank


def _sweep_rows(sweep) -> list[str]:
    return [
        f"{p.n},{p.rank},{_fmt(p.decision_gap)},{_fmt(p.condition)}"
        for p in sweep.points
    ]


def _order_str(estimate) -> str:
    return str(estimate.order) if estimate.conclusive else "inconclusive"


# ---------------------------------------------------------------------------
# runners: each takes (params, seed) and returns (headline, sections)


def _run_fig2(params: dict, seed: int) -> tuple[str, list[Section]]:
    spec = ModeSum([Mode(params["b"], params["q"])])
    signal = gen_mode_sum(spec, params["count"])
    est, sweep = hokalman_order(signal, params["n_max"])
    return f"order={_order_str(est)}", [("sweep", "n,rank,gap,condition", _sweep_rows(sweep))]


def _run_fig3(params: dict, seed: int) -> tuple[str, list[Section]]:
    p = params["p"]
    count = params["count"]
    levels = [0.0, params["noise_rel_small"], params["noise_rel_large"]]
    rows: list[str] = []
    for level_idx, rel in enumerate(levels):
        for q in range(params["q_min"], params["q_max"] + 1):
            clean = gen_mode_sum(pole_pair_modes(p, q), count)
            if rel > 0.0:
                amp = rel * float(np.abs(clean.samples).max())
                sig = add_noise(clean, NoiseSpec(amp, seed + 97 * q + level_idx))
            else:
                sig = clean
            for n in range(params["n_min"], params["n_max"] + 1):
                rank = _rank_of(build_hankel(sig, n).entries)
                rows.append(f"{_fmt(rel)},{q},{n},{rank}")
    # empirical q0: first q at which the noise-free rank at n_max drops below 2
    q0 = None
    for q in range(1, params["q_scan_max"] + 1):
        clean = gen_mode_sum(pole_pair_modes(p, q), count)
        if _rank_of(build_hankel(clean, params["n_max"]).entries) < 2:
            q0 = q
            break
    headline = f"q0={q0 if q0 is not None else 'none'}"
    return headline, [("rank_grid", "noise,q,n,rank", rows)]


def _run_fig1_table1(params: dict, seed: int) -> tuple[str, list[Section]]:
    signal = gen_y5(params["count"])
    est, sweep = hokalman_order(signal, params["n_max"])
    _, aic_report = aic_order(signal, params["p_max"])
    cov = covariance_determinants(signal, range(params["m_min"], params["m_max"] + 1))
    sections = [
        ("hokalman_sweep", "n,rank,gap,condition", _sweep_rows(sweep)),
        ("aic", "p,rss,aic", [f"{p},{_fmt(r)},{_fmt(a)}" for p, r, a in aic_report.per_order]),
        ("covdet", "m,det", [f"{m},{_fmt(d)}" for m, d in cov.per_order]),
    ]
    return f"order={_order_str(est)}", sections


def _run_fig4(params: dict, seed: int) -> tuple[str, list[Section]]:
    signal = gen_high_order("sinusoid", params["n0"], params["count"], params["m"])
    est, sweep = hokalman_order(signal, params["n_max"])
    return f"order={_order_str(est)}", [("sweep", "n,rank,gap,condition", _sweep_rows(sweep))]


def _exp_family_conditions(n0: int, m: int, n_values: Sequence[int], dps: int) -> list[tuple[int, float]]:
    """True condition numbers of the square matrices of the exponential
    superposition family, computed in extended precision.

    Double precision saturates near cond ~ 1e16..1e17 (both the SVD and
    the float64 quantization of the samples), so samples, matrices and
    spectra are all evaluated at ``dps`` decimal digits.
    """
    terms = m * n0
    out = []
    with mpmath.workdps(dps):
        count = 2 * max(n_values) - 1
        vals = []
        for n in range(count):
            acc = mpmath.mpf(0)
            for k in range(1, terms + 1):
                acc += mpmath.e ** (mpmath.mpf(-n) / k)
            vals.append(acc / n0)
        for n in n_values:
            mat = mpmath.matrix([[vals[i + j] for j in range(n)] for i in range(n)])
            svals = mpmath.svd_r(mat, compute_uv=False)
            out.append((n, float(svals[0] / svals[n - 1])))
    return out


def _run_fig5(params: dict, seed: int) -> tuple[str, list[Section]]:
    signal = gen_high_order("exponential", params["n0"], params["count"], params["m"])
    est, sweep = hokalman_order(signal, params["n_max"])
    conds = _exp_family_conditions(
        params["n0"], params["m"], range(2, params["cond_n_max"] + 1), params["cond_dps"]
    )
    sections = [
        ("sweep", "n,rank,gap,condition", _sweep_rows(sweep)),
        ("condition_extended", "n,condition", [f"{n},{_fmt(c)}" for n, c in conds]),
    ]
    return f"order={_order_str(est)}", sections


def _run_sec33(params: dict, seed: int) -> tuple[str, list[Section]]:
    n = params["n"]
    y, u = gen_nonhomogeneous(params["count"], params["sample_period"])
    unaug = _rank_of(build_hankel(y, n).entries)
    bottom = _rank_of(build_augmented(y, u, n, BOTTOM).entries)
    right = _rank_of(build_augmented(y, u, n, RIGHT).entries)
    rows = [
        f"unaugmented,{n},{n},{unaug}",
        f"augmented_bottom,{n + 1},{n},{bottom}",
        f"augmented_right,{n},{n + 1},{right}",
    ]
    headline = f"rank={unaug};aug_bottom={bottom};aug_right={right}"
    return headline, [("ranks", "matrix,rows,cols,rank", rows)]


def _run_offset(params: dict, seed: int) -> tuple[str, list[Section]]:
    count = params["count"]
    base = gen_mode_sum(ModeSum([Mode(1.0, params["q"])]), count)
    shifted = add_offset(base, params["offset"])
    n_max = params["n_max"]

    sections: list[Section] = []
    rows_free = []
    for label, sig in (("plain", base), ("offset", shifted)):
        _, sweep = hokalman_order(sig, n_max)
        rows_free += [f"{label},{p.n},{p.rank}" for p in sweep.points]
    sections.append(("noise_free_sweep", "variant,n,rank", rows_free))

    rms = float(np.sqrt(np.mean(base.samples**2)))
    amp = float(np.sqrt(3.0)) * rms / (10.0 ** (params["snr_db"] / 20.0))
    rows_onsets = []
    favourable = 0
    for t in range(params["trials"]):
        noise = NoiseSpec(amp, seed + t)
        _, sw_plain = hokalman_order(add_noise(base, noise), n_max)
        _, sw_off = hokalman_order(add_noise(shifted, noise), n_max)
        on_p, on_o = plateau_onset(sw_plain), plateau_onset(sw_off)
        favourable += on_o <= on_p
        rows_onsets.append(f"{t},{on_p},{on_o}")
    sections.append(("onsets", "trial,onset_plain,onset_offset", rows_onsets))
    headline = f"offset_onset<=plain:{favourable}/{params['trials']}"
    return headline, sections


def _run_echelon(params: dict, seed: int) -> tuple[str, list[Section]]:
    count = params["count"]
    base = gen_mode_sum(ModeSum([Mode(1.0, params["q"])]), count)
    rms = float(np.sqrt(np.mean(base.samples**2)))
    amp = float(np.sqrt(3.0)) * rms / (10.0 ** (params["snr_db"] / 20.0))
    noisy = add_noise(base, NoiseSpec(amp, seed))
    rows = []
    last = None
    for n in range(2, params["n_max"] + 1):
        mat = build_rectangular_hankel(noisy, n, count - n + 1)
        svd_rank = _rank_of(mat.entries)
        _, pivots = row_echelon(mat.entries, params["echelon_tol"])
        rows.append(f"{n},{svd_rank},{pivots}")
        last = (svd_rank, pivots)
    headline = f"svd_rank={last[0]};echelon_rank={last[1]}"
    return headline, [("comparison", "n,svd_rank,echelon_rank", rows)]


@dataclass(frozen=True)
class _Experiment:
    name: str
    description: str
    defaults: dict
    default_seed: int
    runner: Callable[[dict, int], tuple[str, list[Section]]]


_REGISTRY: dict[str, _Experiment] = {}


def _register(exp: _Experiment) -> None:
    _REGISTRY[exp.name] = exp


_register(_Experiment(
    "fig2_first_order",
    "Rank sweep of a noise-free first-order exponential response (fig2 dataset; rank stays 1)",
    {"b": 1.0, "q": 0.5, "count": 40, "n_max": 10},
    20,
    _run_fig2,
))
_register(_Experiment(
    "fig3_pole_proximity",
    "Rank grid over matrix size and pole proximity q (dp = 2^-q), noise-free and at two noise amplitudes (fig3 dataset)",
    {
        "p": 10.0, "count": 40, "q_min": 1, "q_max": 16, "n_min": 2, "n_max": 8,
        "noise_rel_small": 1e-6, "noise_rel_large": 1e-5, "q_scan_max": 60,
    },
    30,
    _run_fig3,
))
_register(_Experiment(
    "fig1_table1_y5",
    "Five-mode benchmark: rank sweep, AIC report and covariance determinants (fig1/table1 dataset)",
    {"count": 40, "n_max": 8, "p_max": 10, "m_min": 2, "m_max": 8},
    10,
    _run_fig1_table1,
))
_register(_Experiment(
    "fig4_high_order_sin",
    "Rank sweep for a 50-term sinusoidal superposition (fig4 dataset)",
    {"n0": 50, "m": 1, "count": 119, "n_max": 60},
    40,
    _run_fig4,
))
_register(_Experiment(
    "fig5_high_order_exp",
    "Rank sweep for a 50-term exponential superposition with an extended-precision condition log (fig5 dataset)",
    {"n0": 50, "m": 1, "count": 119, "n_max": 60, "cond_n_max": 10, "cond_dps": 50},
    50,
    _run_fig5,
))
_register(_Experiment(
    "sec33_nonhomogeneous",
    "Forced first-order system: square rank plus bottom/right input-augmented ranks (sec33 dataset; all 2)",
    {"count": 40, "n": 10, "sample_period": 1.0},
    0,
    _run_sec33,
))
_register(_Experiment(
    "offset_effect",
    "Noisy first-order sweeps with and without a unit offset, comparing plateau onsets (offset study)",
    {"q": 0.5, "count": 40, "offset": 1.0, "snr_db": 40.0, "trials": 50, "n_max": 10},
    80,
    _run_offset,
))
_register(_Experiment(
    "echelon_effect",
    "Noisy sweep comparing SVD-policy rank against row-echelon pivot count (echelon study)",
    {"q": 0.5, "count": 40, "snr_db": 40.0, "echelon_tol": 1e-6, "n_max": 10},
    90,
    _run_echelon,
))


def list_experiments() -> list[tuple[str, str, dict]]:
    """Registered experiments in stable order: (name, description, defaults)."""
    return [(e.name, e.description, dict(e.defaults)) for e in _REGISTRY.values()]


def run_experiment(spec: ExperimentSpec, output_path: str | Path) -> ExperimentSummary:
    """Run a registered experiment and write its CSV artifact.

    Unknown experiment names and unknown parameter overrides are
    rejected with the list of valid choices.
    """
    if spec.name not in _REGISTRY:
        known = ", ".join(_REGISTRY)
        raise ValueError(f"unknown experiment {spec.name!r}; registered: {known}")
    exp = _REGISTRY[spec.name]
    unknown = set(spec.parameters) - set(exp.defaults)
    if unknown:
        raise ValueError(
            f"unknown parameter(s) {sorted(unknown)} for {spec.name}; "
            f"valid: {sorted(exp.defaults)}"
        )
    params = dict(exp.defaults)
    for key, value in spec.parameters.items():
        params[key] = type(exp.defaults[key])(value)
    seed = exp.default_seed if spec.seed is None else int(spec.seed)

    headline, sections = exp.runner(params, seed)

    lines = [
        f"# experiment: {exp.name}",
        f"# artifact_version: {__version__}",
        f"# seed: {seed}",
    ]
    for key in sorted(params):
        lines.append(f"# param {key}: {_fmt(params[key])}")
    for sec_name, columns, rows in sections:
        lines.append(f"# section: {sec_name}")
        lines.append(columns)
        lines.extend(rows)
    output_path = Path(output_path)
    output_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return ExperimentSummary(exp.name, headline, "ok", output_path)
