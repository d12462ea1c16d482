"""Figure-equivalent numeric artifacts: histograms and density grids.

Nothing here draws anything.  Each builder returns a plain container of
numbers that a plotting tool (or a golden test) can consume:

* :func:`histogram_artifact` — bins a positive sample with equal-width bins
  in either the Euclidean metric (arithmetic edges) or the line's own
  log-ratio metric (geometric edges), and attaches both fitted density
  curves, each against its own reference measure.
* :func:`ternary_density_grid` — evaluates a three-part simplex law on a
  barycentric lattice and locates its strict local maxima, which is how the
  Lebesgue-referred density reveals its spurious multimodality.
* :func:`coordinate_density_grid` — the same law evaluated on a rectangular
  grid in coordinate space, where it is just a normal surface.
"""

from __future__ import annotations

import math

import numpy as np

from . import simplex
from .errors import (
    BadIntervalError,
    DimensionMismatchError,
    InsufficientDataError,
    NonPositivePartError,
)
from .inference import RPlusSample, fit_nrp
from .laws import (
    AlnLaw,
    LognormalLaw,
    NormalOnSimplex,
    _SimplexGaussian,
    aln_pdf_rows,
    lognormal_pdf,
    nrp_pdf,
    nsd_logpdf_coords,
    nsd_pdf_rows,
)

__all__ = [
    "HistogramArtifact",
    "TernaryDensityGrid",
    "CoordinateDensityGrid",
    "histogram_artifact",
    "ternary_density_grid",
    "coordinate_density_grid",
]


class HistogramArtifact:
    """Binned positive data plus the two fitted density curves.

    ``bin_measure`` holds each bin's size in the chosen metric (constant
    across bins by construction); ``empirical_density`` is
    ``count / (n * bin_measure)``, directly comparable to ``nrp_density``
    for the log-ratio metric and to ``lognormal_density`` for the Euclidean
    one.
    """

    __slots__ = (
        "metric",
        "edges",
        "midpoints",
        "counts",
        "bin_measure",
        "empirical_density",
        "nrp_density",
        "lognormal_density",
        "n",
        "law",
    )

    def __init__(self, metric, edges, midpoints, counts, bin_measure,
                 empirical_density, nrp_density, lognormal_density, n, law):
        self.metric = metric
        self.edges = edges
        self.midpoints = midpoints
        self.counts = counts
        self.bin_measure = bin_measure
        self.empirical_density = empirical_density
        self.nrp_density = nrp_density
        self.lognormal_density = lognormal_density
        self.n = n
        self.law = law

    def __repr__(self):
        return (
            f"HistogramArtifact(metric={self.metric!r}, bins={self.counts.size}, "
            f"n={self.n})"
        )


def histogram_artifact(sample: RPlusSample, metric, bins=20) -> HistogramArtifact:
    """Bin ``sample`` with equal-width bins in the chosen ``metric``.

    ``metric='euclidean'`` gives arithmetic-progression edges,
    ``metric='logratio'`` geometric-progression edges (equal length in the
    line's own distance).  The fitted law provides the two density columns.
    """
    if metric not in ("euclidean", "logratio"):
        raise BadIntervalError(f"metric must be 'euclidean' or 'logratio', got {metric!r}")
    bins = int(bins)
    if bins < 2:
        raise InsufficientDataError(f"need at least 2 bins, got {bins}")
    law = fit_nrp(sample)  # also rejects constant samples
    values = np.exp(sample.logs)
    lo, hi = float(values.min()), float(values.max())
    if metric == "euclidean":
        edges = np.linspace(lo, hi, bins + 1)
        midpoints = 0.5 * (edges[:-1] + edges[1:])
        measure = np.diff(edges)
    else:
        edges = np.geomspace(lo, hi, bins + 1)
        midpoints = np.sqrt(edges[:-1] * edges[1:])
        measure = np.diff(np.log(edges))
    counts, _ = np.histogram(values, edges)
    nrp_density = np.array([nrp_pdf(law, m) for m in midpoints])
    ln_law = LognormalLaw(law.mu, law.sigma2)
    ln_density = np.array([lognormal_pdf(ln_law, m) for m in midpoints])
    empirical = counts / (sample.n * measure)
    return HistogramArtifact(
        metric, edges, midpoints, counts, measure, empirical,
        nrp_density, ln_density, sample.n, law,
    )


class TernaryDensityGrid:
    """Density values of a three-part law on a barycentric lattice.

    ``resolution`` is the number of lattice steps per axis, so parts move in
    increments of ``1/resolution``; points with any part below ``margin``
    are excluded.  ``maxima`` holds one ``(parts, density)`` pair per local
    maximum: a lattice point no smaller than all its first- and second-ring
    triangular-lattice neighbours, with ties grouped so a flat peak is
    reported once (see ``_lattice_maxima``).
    """

    __slots__ = ("resolution", "margin", "i_index", "j_index", "points",
                 "values", "maxima", "law")

    def __init__(self, resolution, margin, i_index, j_index, points, values,
                 maxima, law):
        self.resolution = resolution
        self.margin = margin
        self.i_index = i_index
        self.j_index = j_index
        self.points = points
        self.values = values
        self.maxima = maxima
        self.law = law

    def matrix(self) -> np.ndarray:
        """Dense ``(resolution+1)**2`` value matrix, NaN off the lattice."""
        r = self.resolution
        m = np.full((r + 1, r + 1), np.nan)
        m[self.i_index, self.j_index] = self.values
        return m

    def __repr__(self):
        return (
            f"TernaryDensityGrid(resolution={self.resolution}, "
            f"points={self.values.size}, maxima={len(self.maxima)})"
        )


def ternary_density_grid(law, resolution=400, margin=1e-4) -> TernaryDensityGrid:
    """Evaluate a three-part simplex law on the barycentric lattice and find
    its local maxima."""
    if not isinstance(law, _SimplexGaussian):
        raise TypeError(f"expected a simplex law, got {type(law).__name__}")
    if law.D != 3:
        raise DimensionMismatchError(f"ternary grid needs 3 parts, law has {law.D}")
    resolution = int(resolution)
    if resolution < 4:
        raise InsufficientDataError(f"resolution must be at least 4, got {resolution}")
    margin = float(margin)
    if not 0.0 < margin < 1.0 / 3.0:
        raise NonPositivePartError(f"margin must be in (0, 1/3), got {margin!r}")

    r = resolution
    lo = int(math.ceil(margin * r))
    i, j = np.meshgrid(np.arange(r + 1), np.arange(r + 1), indexing="ij")
    keep = (i >= lo) & (j >= lo) & (i + j <= r - lo)
    ii = i[keep]
    jj = j[keep]
    points = np.column_stack([ii, jj, r - ii - jj]) / r
    if isinstance(law, AlnLaw):
        values = aln_pdf_rows(law, points)
    else:
        values = nsd_pdf_rows(law, points)

    maxima = _lattice_maxima(r, ii, jj, points, values)
    return TernaryDensityGrid(r, margin, ii, jj, points, values, maxima, law)


# Neighborhood on the barycentric lattice: steps whose integer barycentric
# displacement (di, dj, -di-dj) is a permutation of (1, -1, 0) — the six
# nearest neighbors — or of (2, -1, -1) / (1, 1, -2) — the second ring.
# The second ring matters: a density ridge running along a lattice symmetry
# line advances by such steps, and comparing only nearest neighbors would
# report every ridge sample as a separate maximum.
_NEIGHBOR_STEPS = [
    (1, -1), (-1, 1), (1, 0), (-1, 0), (0, 1), (0, -1),
    (2, -1), (-2, 1), (1, -2), (-1, 2), (1, 1), (-1, -1),
]


def _lattice_maxima(r, ii, jj, points, values):
    """Local maxima of a sampled field on the barycentric lattice.

    A cell qualifies when no neighbor exceeds it; neighboring qualifying
    cells are grouped so a plateau (e.g. a symmetric mode falling exactly
    between lattice points) is reported once, at its highest cell.
    """
    field = np.full((r + 5, r + 5), -np.inf)
    field[ii + 2, jj + 2] = values
    core = field[2: r + 3, 2: r + 3]
    best_neighbor = np.full((r + 1, r + 1), -np.inf)
    for di, dj in _NEIGHBOR_STEPS:
        shifted = field[2 + di: r + 3 + di, 2 + dj: r + 3 + dj]
        np.maximum(best_neighbor, shifted, out=best_neighbor)
    candidate = core >= best_neighbor
    cand_cells = {(int(i), int(j)) for i, j in zip(ii[candidate[ii, jj]],
                                                   jj[candidate[ii, jj]])}
    maxima = []
    seen = set()
    for cell in sorted(cand_cells):
        if cell in seen:
            continue
        # flood the connected group of qualifying cells around this one
        group = [cell]
        seen.add(cell)
        queue = [cell]
        while queue:
            ci, cj = queue.pop()
            for di, dj in _NEIGHBOR_STEPS:
                nb = (ci + di, cj + dj)
                if nb in cand_cells and nb not in seen:
                    seen.add(nb)
                    group.append(nb)
                    queue.append(nb)
        gi, gj = max(group, key=lambda c: core[c])
        parts = np.array([gi, gj, r - gi - gj], dtype=float) / r
        maxima.append((simplex.Composition(parts), float(core[gi, gj])))
    maxima.sort(key=lambda pair: -pair[1])
    return maxima


class CoordinateDensityGrid:
    """Coordinate-space density surface of a two-coordinate simplex law."""

    __slots__ = ("x_axis", "y_axis", "values", "law")

    def __init__(self, x_axis, y_axis, values, law):
        self.x_axis = x_axis
        self.y_axis = y_axis
        self.values = values
        self.law = law

    def __repr__(self):
        return f"CoordinateDensityGrid(shape={self.values.shape})"


def coordinate_density_grid(law, resolution=200, reach=4.0) -> CoordinateDensityGrid:
    """Evaluate the coordinate normal density of a two-coordinate law on a
    rectangular grid spanning ``mu +/- reach`` standard deviations."""
    if not isinstance(law, _SimplexGaussian):
        raise TypeError(f"expected a simplex law, got {type(law).__name__}")
    if law.dim != 2:
        raise DimensionMismatchError(
            f"coordinate grid needs 2 coordinates, law has {law.dim}"
        )
    resolution = int(resolution)
    if resolution < 2:
        raise InsufficientDataError(f"resolution must be at least 2, got {resolution}")
    reach = float(reach)
    if reach <= 0.0:
        raise NonPositivePartError(f"reach must be positive, got {reach!r}")
    sd = np.sqrt(np.diag(law.sigma))
    x = np.linspace(law.mu[0] - reach * sd[0], law.mu[0] + reach * sd[0], resolution)
    y = np.linspace(law.mu[1] - reach * sd[1], law.mu[1] + reach * sd[1], resolution)
    gx, gy = np.meshgrid(x, y, indexing="ij")
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    values = np.exp(nsd_logpdf_coords(law, pts)).reshape(resolution, resolution)
    return CoordinateDensityGrid(x, y, values, law)
