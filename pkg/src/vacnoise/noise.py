"""Mode-sum synthesis of conformal-vacuum noise and its Monte Carlo checks.

A finite set of plane-wave modes with Gaussian random complex amplitudes
is summed along a comoving line: field(t, x) = sum_k Re[c_k N_k
exp(i(k_x x - omega_k tau(t)))], with omega = |k| in natural units and
tau the conformal time. Expansion enters only through tau, which is how
the stretching of wavelengths and the light-cone organization of the
noise show up in the space-time diagrams.

Wavevectors sit on the cubic lattice of a periodic box, taken
isotropically in three dimensions and sampled along one axis; transverse
components mix into the frequency and give the two-point function the
correct interval structure (anti-correlation inside the light cone,
correlation outside) that a purely one-dimensional spectrum cannot
produce. Mode count, box size and the normalization N_k =
1/sqrt(n_modes omega_k) are visualization conventions, not physics.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import synth_grid
from .errors import DomainError
from .expansion import conformal_time
from .models import ExpansionHistory
from .numerics import GaussianComplexStream

__all__ = [
    "NoiseGrid",
    "mode_set",
    "mode_normalization",
    "synthesize",
    "mode_covariance",
    "field_samples",
    "EmpiricalCorrelation",
    "empirical_correlation",
    "export_grid",
    "read_grid_csv",
]

DEFAULT_N_MODES = 64
DEFAULT_BOX = 2.0 * math.pi


def mode_set(n_modes: int, box_length: float = DEFAULT_BOX) -> np.ndarray:
    """First n_modes nonzero wavevectors of the box lattice, shape (n, 3).

    Lattice vectors m * (2 pi / L) are ordered by (|m|^2, mx, my, mz) so
    the set is deterministic and fills isotropic shells from the inside
    out. n_modes = 1 yields the axis-aligned (-1, 0, 0) mode, a single
    traveling wave along the sampling line.
    """
    if n_modes < 1:
        raise DomainError("need at least one mode")
    if box_length <= 0:
        raise DomainError("box length must be positive")
    reach = max(2, int(math.ceil((n_modes / 4.0) ** (1.0 / 3.0))) + 2)
    rng = range(-reach, reach + 1)
    ms = [m for m in itertools.product(rng, rng, rng) if m != (0, 0, 0)]
    ms.sort(key=lambda m: (m[0] ** 2 + m[1] ** 2 + m[2] ** 2, m))
    if len(ms) < n_modes:
        raise DomainError(f"internal lattice reach too small for {n_modes} modes")
    k0 = 2.0 * math.pi / box_length
    return np.array(ms[:n_modes], dtype=float) * k0


def mode_normalization(modes: np.ndarray) -> np.ndarray:
    """N_k = 1 / sqrt(n omega_k): canonical 1/sqrt(omega) weighting with the
    1/sqrt(n) keeping the summed variance O(1) for plotting."""
    omega = np.linalg.norm(modes, axis=1)
    return 1.0 / np.sqrt(len(modes) * omega)


@dataclass(frozen=True)
class NoiseGrid:
    """Sampled field realization on a (t, x) grid, reproducible from seed."""

    t_axis: np.ndarray
    x_axis: np.ndarray
    values: np.ndarray
    seed: int
    n_modes: int
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.values.shape != (len(self.t_axis), len(self.x_axis)):
            raise DomainError("grid values shape does not match axes")


def _conformal_taus(history: ExpansionHistory, ts: np.ndarray) -> np.ndarray:
    lo, hi = history.domain
    ref = 0.0 if lo <= 0.0 <= hi else float(ts[0])
    return np.array([conformal_time(history, ref, float(t)) for t in ts])


def synthesize(
    history: ExpansionHistory,
    t_axis,
    x_axis,
    n_modes: int = DEFAULT_N_MODES,
    seed: int = 0,
    box_length: float = DEFAULT_BOX,
    amplitudes=None,
) -> NoiseGrid:
    """One noise realization on the grid.

    Amplitudes are standard complex Gaussians from the seeded stream
    times the mode normalization; pass amplitudes explicitly (length
    n_modes, pre-normalization) to force a deterministic configuration
    such as a single unit-amplitude wave. Conformal time is measured
    from epoch t = 0 when the history covers it, else from the grid
    start.
    """
    t_axis = np.asarray(t_axis, dtype=float)
    x_axis = np.asarray(x_axis, dtype=float)
    for t in (t_axis[0], t_axis[-1]):
        history.check_domain(float(t))
    modes = mode_set(n_modes, box_length)
    omega = np.linalg.norm(modes, axis=1)
    norm = mode_normalization(modes)
    if amplitudes is None:
        amps = GaussianComplexStream(seed).draw(n_modes)
    else:
        amps = np.asarray(amplitudes, dtype=complex)
        if amps.shape != (n_modes,):
            raise DomainError("amplitudes must have length n_modes")
    taus = _conformal_taus(history, t_axis)
    values = synth_grid(taus, x_axis, modes[:, 0], omega, amps * norm)
    return NoiseGrid(
        t_axis=t_axis,
        x_axis=x_axis,
        values=values,
        seed=seed,
        n_modes=n_modes,
        meta={"box_length": box_length, "history": history.kind},
    )


def mode_covariance(modes: np.ndarray, d_tau: float, d_x: float) -> float:
    """Exact ensemble covariance of the mode sum between two samples.

    <F1 F2> = (1/2) sum_k N_k^2 cos(k_x dx - omega_k dtau); the closed
    form behind the Monte Carlo estimator.
    """
    omega = np.linalg.norm(modes, axis=1)
    n2 = 1.0 / (len(modes) * omega)
    return 0.5 * float(np.sum(n2 * np.cos(modes[:, 0] * d_x - omega * d_tau)))


def field_samples(
    history: ExpansionHistory,
    points,
    n_modes: int = DEFAULT_N_MODES,
    seed: int = 0,
    n_realizations: int = 100,
    box_length: float = DEFAULT_BOX,
) -> np.ndarray:
    """Field values at the given (t, x) points over many realizations.

    Returns an (n_realizations, n_points) array. Realization i draws its
    amplitudes from the stream split at i, so subsets are reproducible
    independently of batching.
    """
    pts = [(float(t), float(x)) for t, x in points]
    modes = mode_set(n_modes, box_length)
    omega = np.linalg.norm(modes, axis=1)
    norm = mode_normalization(modes)
    taus = _conformal_taus(history, np.array([p[0] for p in pts]))
    xs = np.array([p[1] for p in pts])
    # phases[k, p] = exp(i (kx x_p - omega tau_p))
    phases = np.exp(1j * (np.outer(modes[:, 0], xs) - np.outer(omega, taus)))
    weighted = norm[:, None] * phases
    base = GaussianComplexStream(seed)
    out = np.empty((n_realizations, len(pts)))
    for i in range(n_realizations):
        c = base.split(i).draw(len(modes))
        out[i] = np.real(c @ weighted)
    return out


@dataclass(frozen=True)
class EmpiricalCorrelation:
    mean: float
    stderr: float
    n_realizations: int


def empirical_correlation(
    history: ExpansionHistory,
    point1,
    point2,
    n_realizations: int = 10_000,
    n_modes: int = DEFAULT_N_MODES,
    seed: int = 0,
    box_length: float = DEFAULT_BOX,
) -> EmpiricalCorrelation:
    """Monte Carlo two-point correlation <F(p1) F(p2)> with its standard error."""
    if n_realizations < 100:
        raise DomainError("need at least 100 realizations for a meaningful error bar")
    samples = field_samples(
        history, [point1, point2], n_modes, seed, n_realizations, box_length
    )
    prod = samples[:, 0] * samples[:, 1]
    return EmpiricalCorrelation(
        mean=float(np.mean(prod)),
        stderr=float(np.std(prod, ddof=1) / math.sqrt(n_realizations)),
        n_realizations=n_realizations,
    )


# ---------------------------------------------------------------------------
# exporters

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def export_grid(grid: NoiseGrid, path: str, format: str = "csv") -> str:
    """Write the grid as csv, pgm or svg-heatmap; returns the path.

    csv: header 't,x,value', one row per sample, full double precision.
    pgm: plain P2, 8 bit, min-max normalized; a constant grid maps to
    mid-gray 128 by convention. svg-heatmap: one rect per cell with
    grayscale fill and labeled axis corners.
    """
    if format == "csv":
        lines = ["t,x,value"]
        for i, t in enumerate(grid.t_axis):
            for j, x in enumerate(grid.x_axis):
                lines.append(f"{_fmt(t)},{_fmt(x)},{_fmt(grid.values[i, j])}")
        payload = "\n".join(lines) + "\n"
    elif format == "pgm":
        lo = float(np.min(grid.values))
        hi = float(np.max(grid.values))
        if hi > lo:
            pix = np.rint((grid.values - lo) / (hi - lo) * 255.0).astype(int)
        else:
            pix = np.full(grid.values.shape, 128, dtype=int)
        rows = [" ".join(str(v) for v in row) for row in pix]
        payload = f"P2\n{grid.values.shape[1]} {grid.values.shape[0]}\n255\n" + "\n".join(rows) + "\n"
    elif format == "svg-heatmap":
        payload = _svg_heatmap(grid)
    else:
        raise DomainError(f"unknown export format {format!r}")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    except OSError as exc:
        raise OSError(f"cannot write grid to {path}: {exc}") from exc
    return path


def _svg_heatmap(grid: NoiseGrid, cell: int = 4, margin: int = 34) -> str:
    ny, nx = grid.values.shape
    lo = float(np.min(grid.values))
    hi = float(np.max(grid.values))
    span = hi - lo
    width = nx * cell + 2 * margin
    height = ny * cell + 2 * margin
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i in range(ny):
        for j in range(nx):
            if span > 0:
                g = int(round((grid.values[i, j] - lo) / span * 255.0))
            else:
                g = 128
            y = margin + (ny - 1 - i) * cell  # time increases upward
            parts.append(
                f'<rect x="{margin + j * cell}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="rgb({g},{g},{g})"/>'
            )
    labels = [
        (margin, height - 8, f"x={_fmt(grid.x_axis[0])}", "start"),
        (width - margin, height - 8, f"x={_fmt(grid.x_axis[-1])}", "end"),
        (8, height - margin, f"t={_fmt(grid.t_axis[0])}", "start"),
        (8, margin, f"t={_fmt(grid.t_axis[-1])}", "start"),
    ]
    for x, y, text, anchor in labels:
        parts.append(
            f'<text x="{x}" y="{y}" font-size="10" font-family="monospace" '
            f'text-anchor="{anchor}">{text}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def read_grid_csv(path: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Parse a csv written by export_grid back into (t_axis, x_axis, values)."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "t,x,value":
            raise DomainError(f"unexpected csv header {header!r}")
        ts, xs, vals = [], [], []
        for line in fh:
            t, x, v = line.strip().split(",")
            ts.append(float(t))
            xs.append(float(x))
            vals.append(float(v))
    t_axis = np.array(sorted(set(ts)))
    x_axis = np.array(sorted(set(xs)))
    values = np.array(vals).reshape(len(t_axis), len(x_axis))
    return t_axis, x_axis, values
