"""Shared verification engines.

Half-line quadrature, ODE residual scans, overlap matrices, a finite
difference eigensolver used as an independent oracle, and degeneracy
grouping. The finite-difference solver only ever sees potential
functions; it never touches the closed-form states.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import roots_genlaguerre, roots_legendre

from .errors import SolverError

TAIL_WARN_FRACTION = 1e-6
RELATIVE_FLOOR = 1e-12
DEFAULT_ORDER = 60


class AccuracyWarning(UserWarning):
    pass


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    order: int
    variant: str


def laguerre_rule(order: int, alpha: float = 0.0, scale: float = 1.0) -> QuadratureRule:
    """Half-line rule exact for x^alpha e^(-x/scale) times polynomials of degree < 2*order.

    Weights are rescaled so the rule integrates plain f(x) dx.
    """
    x, w = roots_genlaguerre(order, alpha)
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        logw = np.log(w) + x - alpha * np.log(x)
        weights = scale * np.exp(logw)
    weights = np.where(np.isfinite(weights), weights, 0.0)
    return QuadratureRule(scale * x, weights, order, "gauss-laguerre-weighted")


def gaussian_rule(order: int, alpha: float = 0.0, rate: float = 1.0) -> QuadratureRule:
    """Rule exact for Y^(2 alpha + 1) e^(-rate Y^2) times polynomials in Y^2.

    Built from the generalized Laguerre rule through x = rate * Y^2.
    """
    x, w = roots_genlaguerre(order, alpha)
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        logw = np.log(w) + x - alpha * np.log(x) - 0.5 * np.log(4.0 * rate * x)
        weights = np.exp(logw)
    weights = np.where(np.isfinite(weights), weights, 0.0)
    return QuadratureRule(np.sqrt(x / rate), weights, order, "gauss-laguerre-weighted")


def legendre_rule(order: int = 400, scale: float = 1.0) -> QuadratureRule:
    """Gauss-Legendre on (0, 1) pulled back through Y = scale * t / (1 - t)."""
    t, w = roots_legendre(order)
    t = 0.5 * (t + 1.0)
    w = 0.5 * w
    nodes = scale * t / (1.0 - t)
    weights = w * scale / (1.0 - t) ** 2
    return QuadratureRule(nodes, weights, order, "mapped-gauss-legendre")


def integrate_halfline(f, rule: QuadratureRule):
    """Integral of f over (0, inf) with the given rule.

    Warns when the outermost node carries more than TAIL_WARN_FRACTION of the
    absolute mass, which means the decay class was declared wrongly.
    """
    values = rule.weights * np.asarray(f(rule.nodes))
    mass = np.sum(np.abs(values))
    if mass > 0 and abs(values[-1]) > TAIL_WARN_FRACTION * mass:
        warnings.warn(
            f"tail node holds {abs(values[-1]) / mass:.2e} of the integral ({rule.variant})",
            AccuracyWarning,
            stacklevel=2,
        )
    return np.sum(values)


def pair_rule(first, second, order: int = DEFAULT_ORDER) -> QuadratureRule:
    """Pick the exact rule for the product of two states from their metadata."""
    kind1, rate1 = first.tail
    kind2, rate2 = second.tail
    if kind1 != kind2:
        return legendre_rule(scale=1.0 / max(rate1, rate2))
    power = first.power + second.power
    if kind1 == "exp":
        return laguerre_rule(order, alpha=power, scale=1.0 / (rate1 + rate2))
    return gaussian_rule(order, alpha=0.5 * (power - 1.0), rate=rate1 + rate2)


def inner_product(first, second, rule: QuadratureRule | None = None) -> float:
    rule = rule or pair_rule(first, second)
    return float(np.real(integrate_halfline(lambda x: first(x) * second(x), rule)))


def norm(state, rule: QuadratureRule | None = None) -> float:
    return math.sqrt(inner_product(state, state, rule))


def overlap_matrix(states, rule: QuadratureRule | None = None) -> np.ndarray:
    """Gram matrix of the states. Each pair gets its own exact rule unless one is given."""
    size = len(states)
    gram = np.empty((size, size))
    for a in range(size):
        for b in range(a, size):
            gram[a, b] = inner_product(states[a], states[b], rule)
    upper = np.triu(gram)
    gram = upper + upper.T - np.diag(np.diag(gram))
    return 0.5 * (gram + gram.T)


def identity_deviation(gram: np.ndarray) -> float:
    return float(np.max(np.abs(gram - np.eye(len(gram)))))


@dataclass
class ResidualReport:
    max_abs: float
    max_rel: float
    grid_lo: float
    grid_hi: float
    points: int
    label: str = ""

    def to_dict(self):
        return asdict(self)


def residual_scan(operator, state, grid, label: str = "") -> ResidualReport:
    """Apply a radial operator to a state on a grid; relative means over max|state|."""
    grid = np.asarray(grid, dtype=float)
    f, fp, fpp = state.derivs(grid)
    res = np.abs(operator(grid, f, fp, fpp))
    scale = float(np.max(np.abs(f)))
    worst = float(np.max(res))
    return ResidualReport(
        max_abs=worst,
        max_rel=worst / scale if scale > 0 else math.inf,
        grid_lo=float(grid[0]),
        grid_hi=float(grid[-1]),
        points=len(grid),
        label=label or getattr(state, "label", ""),
    )


def proportionality_error(target, candidate) -> tuple[complex, float]:
    """Least-squares constant c with candidate ~ c * target, and the residual
    max|candidate - c target| / max|candidate|. Zeros of either function are harmless."""
    target = np.asarray(target)
    candidate = np.asarray(candidate)
    c = np.vdot(target, candidate) / np.vdot(target, target)
    err = np.max(np.abs(candidate - c * target)) / np.max(np.abs(candidate))
    return complex(c), float(err)


@dataclass
class FDResult:
    eigenvalues: np.ndarray
    grid_points: int
    y_max: float
    spacing: float


def fd_eigensolve(potential, y_max: float, count: int, grid_points: int) -> FDResult:
    """Lowest eigenvalues of -f'' + V f on (0, y_max) with Dirichlet ends.

    Second-order central differences on the offset grid y_k = (k+1) h so the
    singular barrier is never evaluated at the origin.
    """
    if count < 1 or grid_points <= count:
        raise SolverError(f"need 1 <= count < grid_points, got {count}, {grid_points}")
    h = y_max / (grid_points + 1)
    y = h * np.arange(1, grid_points + 1)
    v = np.asarray(potential(y), dtype=float)
    if not np.all(np.isfinite(v)):
        raise SolverError("potential is not finite on the grid")
    diag = 2.0 / h**2 + v
    off = np.full(grid_points - 1, -1.0 / h**2)
    try:
        vals = eigh_tridiagonal(diag, off, eigvals_only=True, select="i",
                                select_range=(0, count - 1))
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"tridiagonal solve failed: {exc} (n={grid_points}, h={h:.3g})") from exc
    return FDResult(np.sort(vals), grid_points, y_max, h)


@dataclass
class SpectrumComparison:
    rows: list
    grid_points: int
    y_max: float

    @property
    def max_rel(self) -> float:
        return max(r[2] for r in self.rows)

    def to_dict(self):
        return {
            "rows": [{"analytic": a, "numeric": b, "rel_error": e} for a, b, e in self.rows],
            "grid_points": self.grid_points,
            "y_max": self.y_max,
            "max_rel_error": self.max_rel,
        }


def compare_spectra(analytic, fd: FDResult) -> SpectrumComparison:
    analytic = sorted(float(a) for a in analytic)
    rows = []
    for a, b in zip(analytic, fd.eigenvalues):
        rows.append((a, float(b), abs(b - a) / max(abs(a), RELATIVE_FLOOR)))
    return SpectrumComparison(rows, fd.grid_points, fd.y_max)


def convergence_ratio(potential, y_max, count, coarse_points, analytic) -> float:
    """Error ratio between grids with spacing h and h/2 (about 4 for second order)."""
    fine_points = 2 * coarse_points + 1
    coarse = compare_spectra(analytic, fd_eigensolve(potential, y_max, count, coarse_points))
    fine = compare_spectra(analytic, fd_eigensolve(potential, y_max, count, fine_points))
    errs_c = np.array([abs(r[1] - r[0]) for r in coarse.rows])
    errs_f = np.array([abs(r[1] - r[0]) for r in fine.rows])
    return float(np.max(errs_c) / np.max(errs_f))


def degeneracy_report(spectra: dict, tol: float = 1e-12) -> list:
    """Cluster eigenvalues from labelled stacks.

    ``spectra`` maps a stack label to a list of (quantum numbers, value).
    Returns clusters sorted by value; each is a list of (label, qn, value).
    """
    items = sorted(
        ((value, label, qn) for label, entries in spectra.items() for qn, value in entries),
        key=lambda t: t[0],
    )
    clusters = []
    for value, label, qn in items:
        if clusters and abs(value - clusters[-1][-1][2]) <= tol * max(1.0, abs(value)):
            clusters[-1].append((label, qn, value))
        else:
            clusters.append([(label, qn, value)])
    return clusters


def pairings(clusters, first: str, second: str):
    """Split clusters into (paired, unpaired_first, unpaired_second) across two stacks."""
    paired, lone_first, lone_second = [], [], []
    for cluster in clusters:
        a = [c for c in cluster if c[0] == first]
        b = [c for c in cluster if c[0] == second]
        if a and b:
            paired.append((a[0][1], b[0][1], a[0][2]))
        else:
            lone_first += [c[1] for c in a]
            lone_second += [c[1] for c in b]
    return paired, lone_first, lone_second
