"""
Multiple ergodic averages
=========================

Finite-stage averages

    ``A_n(x) = (1/|Φ_n||Ψ_n|) Σ_{g∈Φ_n, h∈Ψ_n} f1(T_g x) f2(S_h x) f3(T_g S_h x)``

and their exact limits.  The limit is computed two ways (through ``I_S``
and through ``I_T``) and as an iterated limit; all three agree.

Finite averages are only used to validate convergence.  Limits always
come from projections.

.. autosummary::

    ~multi_average
    ~multi_limit
    ~multi_limit_dual
    ~iterated_limit
    ~full_period
    ~full_period_sequence
    ~AverageReport
    ~average_report
    ~convergence_bound
    ~four_term_bound
    ~diagonal_average
    ~diagonal_limit
    ~multi_average_family
"""

import logging
import math
from dataclasses import dataclass
from dataclasses import field

import numpy as np

from ..exceptions import DimensionError
from ..systems.actions import composite_action
from ..systems.actions import invariant_partition
from ..systems.actions import product_action
from ..systems.groups import FiniteTable
from ..systems.groups import FolnerSequence
from ..systems.spaces import Observable
from ..systems.spaces import Partition
from ..systems.spaces import conditional_expectation
from ..systems.spaces import relative_product
from ..utils.parallel import ordered_map
from ..utils.parallel import ordered_sum
from .ergodic import ARITHMETIC_TOLERANCE
from .ergodic import BoundReport
from .ergodic import ergodic_average
from .ergodic import require_nonnegative
from .kernels import KernelSpace

logger = logging.getLogger(__name__)
logger.bsdev(__file__)

PERIOD_CAP = 1_000_000


def _check_space(pair, *functions):
    for f in functions:
        if not pair.space.compatible(f.space):
            raise DimensionError("observable does not live on the system's space")


def multi_average(pair, f1, f2, f3, phi, psi, n, *, workers=None):
    """
    ``A_n`` for the commuting pair.

    The sum over ``g`` is split into one chunk per element of ``Φ_n``;
    chunks are evaluated by :func:`~ergavg.utils.parallel.ordered_map` and
    merged in window order, so the result does not depend on ``workers``.
    """
    _check_space(pair, f1, f2, f3)
    T, S = pair.T, pair.S
    outer = phi.window(n)
    inner = psi.window(n)
    s_maps = np.stack([S.element_map(h) for h in inner])
    f1v, f2v, f3v = f1.values, f2.values, f3.values

    def chunk(g):
        t_map = T.element_map(g)
        # f2(S_h x) f3(T_g S_h x) summed over h
        inner_sum = (f2v * f3v[t_map])[s_maps].sum(axis=0)
        return f1v[t_map] * inner_sum

    parts = ordered_map(chunk, outer, workers)
    zero = np.full(pair.space.n, pair.space.zero(), dtype=np.result_type(f1v, f2v, f3v))
    total = ordered_sum(parts, zero)
    scale = pair.space.reciprocal(len(outer) * len(inner))
    return Observable(pair.space, total * scale)


def multi_limit(pair, f1, f2, f3):
    """
    ``L(x) = ∫ f2(z) H(x, z) dμ_{σ(x)}(z)``.

    ``H`` is the projection of ``f1 ⊗ f3`` onto ``T × T``-invariant
    functions on ``μ ×_{I_S} μ`` and ``μ_{σ(x)}`` is the disintegration of
    ``μ`` over ``I_S``.
    """
    _check_space(pair, f1, f2, f3)
    return KernelSpace(pair.S, pair.T).limit(f1, f3, f2)


def multi_limit_dual(pair, f1, f2, f3):
    """
    ``L(x) = ∫ f1(z) K(x, z) dμ_{τ(x)}(z)``.

    ``K`` is the projection of ``f2 ⊗ f3`` onto ``S × S``-invariant
    functions on ``μ ×_{I_T} μ``.  Equal to :func:`multi_limit`.
    """
    _check_space(pair, f1, f2, f3)
    return KernelSpace(pair.T, pair.S).limit(f2, f3, f1)


def iterated_limit(pair, f1, f2, f3):
    """
    ``lim_g avg lim_h avg``: the average over one full ``T``-period of
    ``T_g f1 · E(f2 · T_g f3 | I_S)``.
    """
    _check_space(pair, f1, f2, f3)
    T = pair.T
    i_s = invariant_partition(pair.S)
    window = FolnerSequence.full_period(T.group, T.period).window(1)
    total = np.full(pair.space.n, pair.space.zero(), dtype=np.result_type(f1.values, f2.values, f3.values))
    for g in window:
        t_map = T.element_map(g)
        inner = conditional_expectation(Observable(pair.space, f2.values * f3.values[t_map]), i_s)
        total = total + f1.values[t_map] * inner.values
    return Observable(pair.space, total * pair.space.reciprocal(len(window)))


def _period(pair):
    return math.lcm(pair.T.period, pair.S.period)


def full_period(pair, cap=PERIOD_CAP):
    """
    Common period ``p`` of ``T`` and ``S``: the lcm of all generator orders.

    Over ``[0, p)^d`` every element of the generated permutation group is
    hit equally often, so finite averages there equal the limits.  A
    full-period average sums ``p^(2d)`` terms; returns ``None`` when that
    count exceeds ``cap``.  Finite tables use the whole group at every
    stage and return 1.
    """
    if isinstance(pair.group, FiniteTable):
        return 1
    p = _period(pair)
    terms = p ** (2 * pair.group.rank)
    if terms > cap:
        logger.warning("full-period sum of %d terms (period %d) exceeds the cap %d", terms, p, cap)
        return None
    logger.debug("full period %d", p)
    return p


def full_period_sequence(pair, offset=None, cap=PERIOD_CAP):
    """Box sequence whose stage ``n`` covers ``n`` full periods, or ``None``."""
    p = full_period(pair, cap)
    if p is None:
        return None
    return FolnerSequence.full_period(pair.group, p, offset)


def convergence_bound(pair, f1, f2, f3, n, cap=PERIOD_CAP):
    """
    A-priori bound ``4·d·p·M1·M2·M3 / n`` on ``sup |A_n − L|``.

    Valid for the boxes ``[0, n)^d`` (:meth:`FolnerSequence.initial`) in
    both ``g`` and ``h``: each of the ``2d`` coordinates of a ``p``-periodic
    summand contributes at most ``2·p·M/n``.  ``None`` for finite tables or
    when the period exceeds ``cap``.
    """
    if isinstance(pair.group, FiniteTable):
        return None
    p = _period(pair)
    if p > cap:
        return None
    m = math.prod(float(np.max(np.abs(f.as_float()))) for f in (f1, f2, f3))
    return 4 * pair.group.rank * p * m / n


@dataclass
class AverageReport:
    """
    Finite-stage averages against the exact limit.

    ``stages`` holds ``(n, A_n, ‖A_n − L‖₂)`` in increasing ``n``;
    ``envelope[i]`` is the largest deviation at or after stage ``i``.
    ``bounds`` holds the a-priori bound per stage when it applies.
    """

    limit: Observable
    stages: list = field(default_factory=list)
    envelope: list = field(default_factory=list)
    bounds: list = field(default_factory=list)

    @property
    def deviations(self):
        """Deviation per stage."""
        return [d for _, _, d in self.stages]

    def within_bounds(self, tolerance=ARITHMETIC_TOLERANCE):
        """True if no deviation exceeds its a-priori bound."""
        return all(b is None or d <= b + tolerance for d, b in zip(self.deviations, self.bounds))


def average_report(pair, f1, f2, f3, phi, psi, stages, *, limit=None, workers=None):
    """Compute ``A_n`` at each stage and its deviation from ``L``."""
    limit = multi_limit(pair, f1, f2, f3) if limit is None else limit
    stages = sorted(set(int(n) for n in stages))
    report = AverageReport(limit)
    initial = FolnerSequence.initial(pair.group)
    boxes = phi == initial and psi == initial
    for n in stages:
        a_n = multi_average(pair, f1, f2, f3, phi, psi, n, workers=workers)
        deviation = (a_n - limit).norm()
        report.stages.append((n, a_n, deviation))
        report.bounds.append(convergence_bound(pair, f1, f2, f3, n) if boxes else None)
        logger.debug("stage %d: deviation %.3e", n, deviation)
    running = 0.0
    for d in reversed(report.deviations):
        running = max(running, d)
        report.envelope.insert(0, running)
    return report


def four_term_bound(pair, f, phi=None, psi=None, n=None, *, tolerance=ARITHMETIC_TOLERANCE):
    """
    ``lim avg ∫ f · T_g f · S_h f · T_g S_h f dμ`` against ``(∫ f dμ)⁴``.

    The limit is ``∫ f · L(f, f, f) dμ``.  When ``phi``, ``psi`` and ``n``
    are given the finite-stage value is reported as well.
    """
    require_nonnegative(f)
    left = (f * multi_limit(pair, f, f, f)).integral()
    right = f.integral() ** 4
    finite = None
    if phi is not None and psi is not None and n is not None:
        finite = (f * multi_average(pair, f, f, f, phi, psi, n)).integral()
    logger.debug("four-term bound: %s >= %s", left, right)
    return BoundReport(left, right, tolerance, finite)


def diagonal_average(pair, phi_f, psi_f, seq, n):
    """``(1/|Φ_n|) Σ_g φ(T_g x) ψ(S_g T_g x)``."""
    _check_space(pair, phi_f, psi_f)
    T = pair.T
    R = composite_action(pair.S, pair.T)
    window = seq.window(n)
    total = np.full(pair.space.n, pair.space.zero(), dtype=np.result_type(phi_f.values, psi_f.values))
    for g in window:
        total = total + phi_f.values[T.element_map(g)] * psi_f.values[R.element_map(g)]
    return Observable(pair.space, total * pair.space.reciprocal(len(window)))


def diagonal_limit(pair, phi_f, psi_f):
    """
    Limit of :func:`diagonal_average`.

    Lift to ``(x, x)`` in ``X × X`` and average ``φ ⊗ ψ`` over the orbit of
    ``g ↦ (T_g, S_g T_g)``: the conditional expectation onto the orbits
    of that action under ``μ × μ``, read off on the diagonal.
    """
    _check_space(pair, phi_f, psi_f)
    space = pair.space
    full = relative_product(space, Partition.trivial(space))
    coupled = product_action(pair.T, composite_action(pair.S, pair.T), full)
    projected = conditional_expectation(full.tensor(phi_f, psi_f), invariant_partition(coupled))
    diagonal = full.index[np.arange(space.n), np.arange(space.n)]
    return Observable(space, projected.values[diagonal])


def multi_average_family(pair, f1, f2, f3):
    """The callback ``(g, h) ↦ T_g f1 · S_h f2 · T_g S_h f3``."""
    _check_space(pair, f1, f2, f3)
    T, S = pair.T, pair.S

    def term(g, h):
        t_map, s_map = T.element_map(g), S.element_map(h)
        return Observable(
            pair.space,
            f1.values[t_map] * f2.values[s_map] * f3.values[t_map[s_map]],
        )

    return term
