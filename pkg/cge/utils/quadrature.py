"""Gauss-Legendre quadrature on panels.

Two integrators are provided:

* :func:`escalating_gauss_legendre` integrates a vectorised function over a
  finite interval, doubling the order until two successive orders agree.
* :func:`integrate_rows` integrates a family of functions ("rows") over
  ``(0, inf)`` on geometrically growing panels. Every row converges on its own
  data only, so a row's value does not depend on which other rows were
  evaluated alongside it.

Gauss nodes are interior points, so neither integrator evaluates an endpoint.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np

from cge.exceptions import IntegrationError

logger = logging.getLogger(__name__)

# A panel whose contribution falls below this fraction of rel_tol * |sum|
# (past min_extent) ends its row.
_TAIL_FRACTION = 1e-3


@lru_cache(maxsize=None)
def gauss_legendre(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``order``-point rule on [-1, 1]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def mapped_rule(lo: float, hi: float, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped onto [lo, hi]."""
    nodes, weights = gauss_legendre(order)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return mid + half * nodes, half * weights


def escalating_gauss_legendre(
    func: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    rel_tol: float,
    start_order: int = 16,
    max_order: int = 2048,
) -> np.ndarray:
    """
    Integrate ``func`` over [lo, hi] with order doubling.

    Args:
        func: maps nodes of shape (N,) to values of shape (..., N)
        lo, hi: interval
        rel_tol: agreement required between successive orders
        start_order: first Gauss-Legendre order
        max_order: largest order tried

    Returns:
        Integrals of shape (...), each taken at the first order where it
        agreed with the previous one.
    """
    nodes, weights = mapped_rule(lo, hi, start_order)
    previous = func(nodes) @ weights
    result = previous.copy()
    settled = np.zeros(previous.shape, dtype=bool)
    order = start_order
    while order < max_order:
        order *= 2
        nodes, weights = mapped_rule(lo, hi, order)
        current = func(nodes) @ weights
        agree = np.abs(current - previous) <= rel_tol * np.abs(current)
        fresh = agree & ~settled
        result[fresh] = current[fresh]
        settled |= agree
        if settled.all():
            return result
        result[~settled] = current[~settled]
        previous = current
    logger.warning(
        "Gauss-Legendre did not settle at order %d for %d of %d integrals",
        max_order, int((~settled).sum()), settled.size,
    )
    return result


@dataclass
class RowIntegrals:
    """Values and error estimates of :func:`integrate_rows`."""

    value: np.ndarray
    error: np.ndarray
    extent: np.ndarray


def _panel(func, rows: np.ndarray, lo: float, hi: float, order: int) -> np.ndarray:
    nodes, weights = mapped_rule(lo, hi, order)
    return func(rows, nodes) @ weights


def integrate_rows(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    n_rows: int,
    rel_tol: float,
    first_width: float = 1e-3,
    growth: float = 2.0,
    order: int = 16,
    max_order: int = 256,
    min_extent: float = 2.0,
    max_panels: int = 60,
    abs_tol: float = 0.0,
) -> RowIntegrals:
    """
    Integrate ``n_rows`` functions over (0, inf).

    Args:
        func: ``func(rows, t)`` with integer row indices (R,) and nodes (N,)
            returns values of shape (R, N)
        n_rows: number of rows
        rel_tol: relative accuracy per row
        first_width: width of the first panel; later panels grow by ``growth``
        order: Gauss-Legendre order of the coarse estimate (fine = 2 * order)
        max_order: largest order tried on a panel that did not settle
        min_extent: a row may only stop after its panels cover [0, min_extent]
        max_panels: panel budget
        abs_tol: absolute accuracy floor per panel

    Returns:
        RowIntegrals with per-row value, error estimate and covered extent

    Raises:
        IntegrationError: if a panel does not settle at ``max_order`` or a
            row is still active after ``max_panels`` panels
    """
    sums = np.zeros(n_rows)
    errors = np.zeros(n_rows)
    extent = np.zeros(n_rows)
    active = np.arange(n_rows)
    lo, width = 0.0, first_width

    for _ in range(max_panels):
        if active.size == 0:
            break
        hi = lo + width
        coarse = _panel(func, active, lo, hi, order)
        value = _panel(func, active, lo, hi, 2 * order)
        diff = np.abs(value - coarse)

        current = 2 * order
        tol = np.maximum(0.1 * rel_tol * np.abs(sums[active] + value), abs_tol)
        bad = diff > tol
        while bad.any() and current < max_order:
            current *= 2
            finer = _panel(func, active[bad], lo, hi, current)
            diff[bad] = np.abs(finer - value[bad])
            value[bad] = finer
            tol = np.maximum(0.1 * rel_tol * np.abs(sums[active] + value), abs_tol)
            bad = diff > tol
        if bad.any():
            raise IntegrationError(
                f"panel [{lo:.3g}, {hi:.3g}] did not settle at order {max_order}",
                estimate=sums[active] + value,
            )

        sums[active] += value
        errors[active] += diff
        extent[active] = hi
        done = (hi >= min_extent) & (np.abs(value) <= _TAIL_FRACTION * rel_tol * np.abs(sums[active]))
        active = active[~done]
        lo, width = hi, width * growth

    if active.size:
        raise IntegrationError(
            f"{active.size} rows still active after {max_panels} panels",
            estimate=sums.copy(),
        )
    return RowIntegrals(value=sums, error=errors, extent=extent)
