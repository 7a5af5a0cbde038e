"""Resonance counting asymptotics and Weyl/non-Weyl classification.

For an open graph the number of resonances with Re k <= R grows like
``(L_eff / pi) R + O(1)``.  The coefficient carries the headline physics:
it equals the total length L unless the graph has a balanced vertex (as many
leads as internal edges), in which case the shorter effective size takes
over and resonances go missing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import C0, STRIP_DEPTH
from .graph import MetricGraph, balance_report, effective_size, total_length
from .scattering import build_bond_system
from .zeros import SearchBox, counting_function, find_zeros

WEYL = "Weyl"
NON_WEYL = "non-Weyl"

# relative gates on the fitted slope: 2% against the matching prediction is
# asserted by tests; 5% is the consistency alarm in classify()
SLOPE_FIT_TOL = 0.02
SLOPE_GATE = 0.05

CSV_HEADER = "graph,band_min_ghz,band_max_ghz,measured,weyl_pred,nonweyl_pred,slope,classification"


class ClassificationError(RuntimeError):
    """Geometric and spectral classifications disagree."""


@dataclass(frozen=True)
class CountReport:
    band: tuple[float, float]      # Hz
    measured_count: int
    weyl_prediction: float
    nonweyl_prediction: float
    fitted_slope: float
    classification: str
    slope_relative_error: float


def round_half_up(x: float) -> int:
    """.5 always rounds up; plain round() would go to even."""
    return math.floor(x + 0.5)


def predicted_count(graph: MetricGraph, band: tuple[float, float]) -> tuple[float, float]:
    """Expected resonance counts in the band: (L-based, effective-size-based).

    Both equal ``2 * length * (nu_max - nu_min) / c``; round half-up to get
    integer expectations.
    """
    nu_min, nu_max = band
    if not (0.0 <= nu_min < nu_max):
        raise ValueError(f"empty or inverted band {band}")
    graph.validate()
    dk = 2.0 * np.pi * (nu_max - nu_min) / C0
    return (
        total_length(graph) * dk / np.pi,
        effective_size(graph) * dk / np.pi,
    )


def fit_slope(counts) -> tuple[float, float, float]:
    """Least-squares line through (R, N(R)); returns (slope, intercept, max residual)."""
    pts = list(counts)
    R = np.array([p[0] for p in pts], dtype=float)
    N = np.array([p[1] for p in pts], dtype=float)
    if R.size < 2 or np.ptp(R) == 0.0:
        raise ValueError("need at least two distinct R values to fit")
    slope, intercept = np.polyfit(R, N, 1)
    residual = float(np.max(np.abs(N - (slope * R + intercept))))
    return float(slope), float(intercept), residual


def classify(graph: MetricGraph, fitted_slope: float) -> str:
    """Geometric class, cross-checked against the fitted counting slope.

    non-Weyl iff some vertex is balanced.  The fitted slope must agree with
    the matching prediction (L/pi or L_eff/pi) to within 5%; disagreement is
    an error, never a silent reinterpretation.
    """
    graph.validate()
    geometric = NON_WEYL if balance_report(graph).balanced_vertices else WEYL
    expected = (
        total_length(graph) if geometric == WEYL else effective_size(graph)
    ) / np.pi
    err = abs(fitted_slope - expected) / abs(expected)
    if err > SLOPE_GATE:
        raise ClassificationError(
            f"graph is geometrically {geometric} (slope should be "
            f"{expected:.4f} 1/m) but the fitted slope is {fitted_slope:.4f} "
            f"({100 * err:.1f}% off)"
        )
    return geometric


def count_report(
    graph: MetricGraph,
    band: tuple[float, float],
    depth: float = STRIP_DEPTH,
    fit_range: tuple[float, float] = (6.0, 400.0),
    fit_points: int = 120,
) -> CountReport:
    """Measure, predict, fit, and classify in one pass."""
    weyl_pred, nonweyl_pred = predicted_count(graph, band)
    system = build_bond_system(graph)
    measured = len(find_zeros(system, SearchBox.from_band(*band, depth=depth)))
    grid = np.linspace(fit_range[0], fit_range[1], fit_points)
    slope, _, _ = fit_slope(counting_function(system, grid, depth=depth))
    classification = classify(graph, slope)
    expected = (
        total_length(graph) if classification == WEYL else effective_size(graph)
    ) / np.pi
    rel_err = abs(slope - expected) / expected
    return CountReport(
        band=band,
        measured_count=measured,
        weyl_prediction=weyl_pred,
        nonweyl_prediction=nonweyl_pred,
        fitted_slope=slope,
        classification=classification,
        slope_relative_error=rel_err,
    )


def report_csv_row(name: str, report: CountReport) -> str:
    ghz = (report.band[0] / 1e9, report.band[1] / 1e9)
    return (
        f"{name},{ghz[0]:g},{ghz[1]:g},{report.measured_count},"
        f"{report.weyl_prediction:.2f},{report.nonweyl_prediction:.2f},"
        f"{report.fitted_slope:.6f},{report.classification}"
    )
