"""
Single ergodic averages
=======================

The mean ergodic theorem along a Følner sequence: averages of ``T_g f``
converge in ``L²(μ)`` to ``E(f | I_T)``.  On a finite system the limit is
the block average over the orbit partition.

.. autosummary::

    ~ergodic_average
    ~ergodic_limit
    ~khintchine_bound
    ~BoundReport
    ~require_nonnegative
"""

import logging
from dataclasses import dataclass

import numpy as np

from ..exceptions import DimensionError
from ..exceptions import NegativeObservableError
from ..systems.actions import invariant_partition
from ..systems.spaces import Observable
from ..systems.spaces import conditional_expectation

logger = logging.getLogger(__name__)
logger.bsdev(__file__)

ARITHMETIC_TOLERANCE = 1e-12


@dataclass
class BoundReport:
    """
    Both sides of a recurrence lower bound ``left ≥ right``.

    ``finite`` holds the finite-stage value of the left side when one was
    requested.
    """

    left: object
    right: object
    tolerance: float = ARITHMETIC_TOLERANCE
    finite: object = None

    @property
    def holds(self):
        """``left ≥ right − tolerance``."""
        return float(self.left) >= float(self.right) - self.tolerance


def require_nonnegative(f):
    """Raise :class:`NegativeObservableError` unless every entry is real and ``≥ 0``."""
    values = f.as_float()
    if np.iscomplexobj(values):
        bad = np.flatnonzero((values.imag != 0) | (values.real < 0))
    else:
        bad = np.flatnonzero(values < 0)
    if len(bad):
        raise NegativeObservableError(bad)


def ergodic_average(a, f, seq, n, *, inverse=False):
    """
    ``(1/|Φ_n|) Σ_{g∈Φ_n} T_g f``.

    With ``inverse=True`` the average of ``T_{g⁻¹} f`` is taken instead;
    it has the same limit.
    """
    if not a.space.compatible(f.space):
        raise DimensionError("observable does not live on the acted space")
    window = seq.window(n)
    group = a.group
    total = np.full(f.space.n, f.space.zero(), dtype=f.values.dtype)
    for g in window:
        g = group.inverse(g) if inverse else g
        total = total + f.values[a.element_map(g)]
    return Observable(f.space, total * f.space.reciprocal(len(window)))


def ergodic_limit(a, f):
    """``E(f | I_T)``, the limit of :func:`ergodic_average`."""
    return conditional_expectation(f, invariant_partition(a))


def khintchine_bound(a, f, seq=None, n=None, *, tolerance=ARITHMETIC_TOLERANCE):
    """
    ``lim (1/|Φ_n|) Σ ∫ f · T_g f dμ`` against ``(∫ f dμ)²``.

    The limit is ``∫ f · E(f | I_T) dμ``.  When ``seq`` and ``n`` are given
    the finite-stage value is reported as well.
    """
    require_nonnegative(f)
    left = (f * ergodic_limit(a, f)).integral()
    right = f.integral() ** 2
    finite = None
    if seq is not None and n is not None:
        finite = (f * ergodic_average(a, f, seq, n)).integral()
    report = BoundReport(left, right, tolerance, finite)
    logger.debug("Khintchine bound: %s >= %s", left, right)
    return report
