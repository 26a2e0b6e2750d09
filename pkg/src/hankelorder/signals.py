"""Synthesis of the response families used throughout the toolkit.

Every generator is a pure, deterministic function of its arguments.  A
response is represented as a :class:`Signal`: a finite sampled sequence,
its sample period, and a provenance string describing how it was made.
Signals built from explicit exponential/oscillatory modes also carry the
mode list, so the true model order of the generating system is known and
survives operations (such as adding an offset) that change it in a
predictable way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Mode",
    "ModeSum",
    "NoiseSpec",
    "Signal",
    "gen_mode_sum",
    "gen_y5",
    "gen_high_order",
    "gen_nonhomogeneous",
    "pole_pair_modes",
    "add_noise",
    "add_offset",
    "snr_db",
    "rational_mode_sum",
    "write_signal_csv",
    "write_pair_csv",
    "read_signal_csv",
]


@dataclass(frozen=True)
class Mode:
    """One term ``c * exp(-d*t) * cos(w*t)`` of a mode sum.

    ``decay_rate`` and ``angular_frequency`` are per unit time; with the
    default sample period of 1 they are per-sample quantities.
    """

    coefficient: float
    decay_rate: float
    angular_frequency: float = 0.0

    def __post_init__(self) -> None:
        for name in ("coefficient", "decay_rate", "angular_frequency"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"mode {name} must be finite")
        # cos is even, so the sign of the frequency carries no information
        object.__setattr__(self, "angular_frequency", abs(self.angular_frequency))

    @property
    def order_contribution(self) -> int:
        """1 for a pure exponential, 2 for an oscillatory (conjugate-pair) mode."""
        return 1 if self.angular_frequency == 0.0 else 2


@dataclass(frozen=True)
class ModeSum:
    """A canonical set of modes.

    Construction merges modes that share the same (decay_rate,
    angular_frequency) pair by summing their coefficients, then drops
    any mode whose coefficient is exactly zero.  The stored tuple is
    sorted, so two mode lists that differ only by permutation construct
    equal ModeSums.
    """

    modes: tuple[Mode, ...]

    def __init__(self, modes: Iterable[Mode | tuple]) -> None:
        groups: dict[tuple[float, float], list[float]] = {}
        for m in modes:
            if not isinstance(m, Mode):
                m = Mode(*m)
            key = (m.decay_rate, m.angular_frequency)
            groups.setdefault(key, []).append(m.coefficient)
        merged = []
        for (d, w), coeffs in groups.items():
            c = math.fsum(coeffs)
            if c != 0.0:
                merged.append(Mode(c, d, w))
        merged.sort(key=lambda m: (m.decay_rate, m.angular_frequency, m.coefficient))
        object.__setattr__(self, "modes", tuple(merged))

    @property
    def true_order(self) -> int:
        """Model order of the generating system (a cos pair counts as 2)."""
        return sum(m.order_contribution for m in self.modes)

    @property
    def description(self) -> str:
        if not self.modes:
            return "0"
        parts = []
        for m in self.modes:
            term = f"{m.coefficient:g}*exp(-{m.decay_rate:g}*t)"
            if m.angular_frequency != 0.0:
                term += f"*cos({m.angular_frequency:g}*t)"
            parts.append(term)
        return " + ".join(parts)


@dataclass(frozen=True)
class NoiseSpec:
    """Zero-mean uniform noise on [-amplitude, +amplitude], seeded."""

    amplitude: float
    seed: int = 0

    def __post_init__(self) -> None:
        if not (self.amplitude >= 0.0 and math.isfinite(self.amplitude)):
            raise ValueError("noise amplitude must be finite and >= 0")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")


@dataclass(frozen=True)
class Signal:
    """A finite real sampled sequence.

    ``true_order`` is the model order of the noise-free synthesis when it
    is known (noise does not reset it; it refers to the underlying
    system).  ``modes`` carries the exact mode structure when the samples
    are a pure mode sum, and is None otherwise.
    """

    samples: np.ndarray
    sample_period: float = 1.0
    provenance: str = ""
    true_order: int | None = None
    modes: ModeSum | None = None

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("samples must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must all be finite")
        if not (self.sample_period > 0.0 and math.isfinite(self.sample_period)):
            raise ValueError("sample_period must be finite and > 0")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    def __len__(self) -> int:
        return int(self.samples.size)


def _validate_count(count: int) -> None:
    if count < 1:
        raise ValueError("count must be >= 1")


def gen_mode_sum(spec: ModeSum, count: int, sample_period: float = 1.0) -> Signal:
    """Sample ``sum_i c_i exp(-d_i t) cos(w_i t)`` at t = n*sample_period.

    Each mode is evaluated as ``c * r**n`` with ``r = exp(-d*T)``, which
    keeps dyadic cases (e.g. r = 1/2) exact in floating point.
    """
    _validate_count(count)
    n = np.arange(count, dtype=float)
    out = np.zeros(count)
    for m in spec.modes:
        term = m.coefficient * np.power(math.exp(-m.decay_rate * sample_period), n)
        if m.angular_frequency != 0.0:
            term = term * np.cos(m.angular_frequency * sample_period * n)
        out += term
    return Signal(
        samples=out,
        sample_period=sample_period,
        provenance=f"mode_sum[{spec.description}], T={sample_period:g}",
        true_order=spec.true_order,
        modes=spec,
    )


def gen_y5(count: int) -> Signal:
    """The five-mode benchmark response.

    y[n] = (1/7) * sum_{k=1..7} (-1)^(k+1) sin(2*pi*k/3) exp(-n/(10k)).
    The k = 3 and k = 6 terms have sin(2*pi*k/3) = 0 exactly and are
    dropped at construction, leaving 5 distinct exponential modes.
    """
    _validate_count(count)
    half_sqrt3 = math.sqrt(3.0) / 2.0
    modes = []
    for k in range(1, 8):
        rem = k % 3
        s = 0.0 if rem == 0 else (half_sqrt3 if rem == 1 else -half_sqrt3)
        modes.append(Mode((-1.0) ** (k + 1) * s / 7.0, 1.0 / (10.0 * k)))
    spec = ModeSum(modes)
    sig = gen_mode_sum(spec, count)
    return replace(sig, provenance=f"y5_benchmark[{spec.description}], T=1")


def pole_pair_modes(p: float = 10.0, q: int = 1) -> ModeSum:
    """Near-coincident pole pair: 0.5*exp(-n/p) + (0.5+dp)*exp(-n/(p+dp)).

    dp = 2**(-q); as q grows the two poles merge.  Once p + dp rounds to
    p in floating point the two modes coincide and are merged into one.
    """
    if p <= 0:
        raise ValueError("p must be > 0")
    dp = 2.0 ** (-q)
    return ModeSum([
        Mode(0.5, 1.0 / p),
        Mode(0.5 + dp, 1.0 / (p + dp)),
    ])


def gen_high_order(
    f0: str,
    n0: int,
    count: int,
    m: int = 1,
    schedule: Sequence[float] | None = None,
    sample_period: float = 1.0,
) -> Signal:
    """Superposition of m*n0 scaled copies of a base function.

    y[n] = (1/n0) * sum_{k=1..m*n0} f0(n*T / s_k), with f0 either a
    decaying exponential exp(-x) or a sinusoid sin(x).  The default time
    scale schedule is s_k = k.
    """
    _validate_count(count)
    if f0 not in ("sinusoid", "exponential"):
        raise ValueError(f"f0 must be 'sinusoid' or 'exponential', got {f0!r}")
    if n0 < 1 or m < 1:
        raise ValueError("n0 and m must be >= 1")
    terms = m * n0
    default_schedule = [float(k) for k in range(1, terms + 1)]
    if schedule is None:
        scales = default_schedule
    else:
        if len(schedule) < terms:
            raise ValueError(f"schedule must supply at least m*n0 = {terms} entries")
        scales = [float(s) for s in schedule[:terms]]
    if any(s <= 0 for s in scales):
        raise ValueError("every schedule entry must be > 0")

    sched_desc = "k" if scales == default_schedule else "custom"
    prov = f"high_order[f0={f0}, n0={n0}, m={m}, s_k={sched_desc}], T={sample_period:g}"
    if f0 == "exponential":
        spec = ModeSum([Mode(1.0 / n0, 1.0 / s) for s in scales])
        sig = gen_mode_sum(spec, count, sample_period)
        return replace(sig, provenance=prov)
    t = np.arange(count, dtype=float) * sample_period
    out = np.zeros(count)
    for s in scales:
        out += np.sin(t / s)
    out /= n0
    return Signal(
        samples=out,
        sample_period=sample_period,
        provenance=prov,
        true_order=2 * len(set(scales)),
        modes=None,
    )


def gen_nonhomogeneous(count: int, sample_period: float = 1.0) -> tuple[Signal, Signal]:
    """Sampled solution of y'(t) + 0.9 y(t) = exp(-t/8) with y(0) = 0.

    The closed form is y(t) = A exp(-t/8) - A exp(-0.9 t) with
    A = 1/(0.9 - 1/8); the excitation is u[n] = exp(-n*T/8).  The output
    consists of exactly two exponential modes (one pole, one zero).
    """
    _validate_count(count)
    amp = 1.0 / (0.9 - 0.125)
    y_modes = ModeSum([Mode(amp, 0.125), Mode(-amp, 0.9)])
    u_modes = ModeSum([Mode(1.0, 0.125)])
    y = gen_mode_sum(y_modes, count, sample_period)
    u = gen_mode_sum(u_modes, count, sample_period)
    y = replace(y, provenance=f"nonhomogeneous_output[{y_modes.description}], T={sample_period:g}")
    u = replace(u, provenance=f"nonhomogeneous_input[exp(-t/8)], T={sample_period:g}")
    return y, u


def add_noise(signal: Signal, noise: NoiseSpec) -> Signal:
    """Add an independent seeded uniform draw to every sample.

    Zero amplitude is a bit-identical pass-through.  The underlying true
    order is kept (it describes the noise-free synthesis), but the exact
    mode structure no longer applies and is dropped.
    """
    if noise.amplitude == 0.0:
        return signal
    rng = np.random.default_rng(noise.seed)
    draws = rng.uniform(-noise.amplitude, noise.amplitude, len(signal))
    return Signal(
        samples=signal.samples + draws,
        sample_period=signal.sample_period,
        provenance=f"{signal.provenance} + uniform_noise(amp={noise.amplitude:g}, seed={noise.seed})",
        true_order=signal.true_order,
        modes=None,
    )


def add_offset(signal: Signal, offset: float) -> Signal:
    """Shift every sample by a constant.

    A non-zero offset adds a constant (decay-rate-0) mode; when the mode
    structure is known the new true order is re-derived from the merged
    mode set, so offsetting an order-1 decaying response yields order 2
    and offsetting back restores the original order.
    """
    if offset == 0.0:
        return signal
    if not math.isfinite(offset):
        raise ValueError("offset must be finite")
    if signal.modes is not None:
        merged = ModeSum(signal.modes.modes + (Mode(offset, 0.0),))
        true_order: int | None = merged.true_order
    else:
        merged = None
        true_order = None
    return Signal(
        samples=signal.samples + offset,
        sample_period=signal.sample_period,
        provenance=f"{signal.provenance} + offset({offset:g})",
        true_order=true_order,
        modes=merged,
    )


def snr_db(signal: Signal, noisy: Signal) -> float:
    """20*log10(rms(signal) / rms(noisy - signal)); +inf for identical inputs."""
    if len(signal) != len(noisy):
        raise ValueError("signals must have equal lengths")
    diff = noisy.samples - signal.samples
    rms_diff = math.sqrt(float(np.mean(diff**2)))
    if rms_diff == 0.0:
        return math.inf
    rms_sig = math.sqrt(float(np.mean(signal.samples**2)))
    if rms_sig == 0.0:
        return -math.inf
    return 20.0 * math.log10(rms_sig / rms_diff)


def rational_mode_sum(
    modes: Sequence[tuple[Fraction | int, Fraction | int]], count: int
) -> list[Fraction]:
    """Exact-arithmetic companion generator: samples[n] = sum_i c_i * r_i**n.

    All arithmetic is done with Fractions, so the output is suitable for
    the exact rational rank oracle without any float-to-rational
    laundering.
    """
    _validate_count(count)
    pairs = [(Fraction(c), Fraction(r)) for c, r in modes]
    out = []
    for n in range(count):
        out.append(sum((c * r**n for c, r in pairs), start=Fraction(0)))
    return out


# ---------------------------------------------------------------------------
# CSV serialization: header "n,value" (or "n,y,u"), 17 significant digits,
# provenance in a one-line sidecar next to the data file.


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_sidecar(path: Path, signals: Sequence[Signal]) -> None:
    parts = []
    for s in signals:
        line = s.provenance or "unspecified"
        line += f" | sample_period={_fmt(s.sample_period)}"
        if s.true_order is not None:
            line += f" | true_order={s.true_order}"
        parts.append(line)
    sidecar = path.with_name(path.name + ".provenance.txt")
    sidecar.write_text(" ;; ".join(parts) + "\n", encoding="utf-8")


def write_signal_csv(signal: Signal, path: str | Path, sidecar: bool = True) -> Path:
    """Write one sample per row as ``n,value``."""
    path = Path(path)
    lines = ["n,value"]
    lines += [f"{n},{_fmt(v)}" for n, v in enumerate(signal.samples)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    if sidecar:
        _write_sidecar(path, [signal])
    return path


def write_pair_csv(y: Signal, u: Signal, path: str | Path, sidecar: bool = True) -> Path:
    """Write an output/input pair as ``n,y,u``."""
    if len(y) != len(u):
        raise ValueError("paired signals must have equal lengths")
    path = Path(path)
    lines = ["n,y,u"]
    lines += [f"{n},{_fmt(a)},{_fmt(b)}" for n, (a, b) in enumerate(zip(y.samples, u.samples))]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    if sidecar:
        _write_sidecar(path, [y, u])
    return path


def read_signal_csv(path: str | Path) -> Signal:
    """Load a signal written by :func:`write_signal_csv`.

    Pair files (``n,y,u``) are accepted too; the output column ``y`` is
    loaded.  Comment lines starting with ``#`` are skipped.
    """
    path = Path(path)
    rows = [
        line.strip()
        for line in path.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    ]
    if not rows:
        raise ValueError(f"{path}: empty signal file")
    header = [c.strip() for c in rows[0].split(",")]
    if header[:2] == ["n", "value"]:
        col = 1
    elif header[:2] == ["n", "y"]:
        col = 1
    else:
        raise ValueError(f"{path}: expected header 'n,value' or 'n,y,u', got {rows[0]!r}")
    values = [float(r.split(",")[col]) for r in rows[1:]]
    return Signal(samples=np.asarray(values), provenance=f"loaded:{path.name}")
