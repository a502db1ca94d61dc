"""
Characteristic subspaces
========================

``W_{T/S}`` is spanned by the functions

    ``k(x) = ∫ H(x, z) φ(z) dμ_{σ(x)}(z)``

with ``H`` a ``T × T``-invariant kernel on ``μ ×_{I_S} μ``.  ``W_{S/T}``
is the mirror image over ``I_T``.  The two spaces coincide and replacing
``f1`` by ``P f1`` and ``f2`` by ``Q f2`` does not change the limit of the
multiple average.

Projectors are computed in floating point in the coordinates
``u = W^{1/2} f`` (``W`` the diagonal weight matrix), where ``L²(μ)``
orthogonality is the Euclidean one.

.. autosummary::

    ~CharacteristicProjector
    ~wts_subspace
    ~orthonormal_basis
    ~wm_decay_diagnostic
    ~wm_decay_limit
    ~ReductionReport
    ~reduction_check
    ~ConstancyVerdict
    ~constancy_check
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from ..systems.actions import invariant_partition
from ..systems.actions import product_action
from ..systems.factories import random_observable
from ..systems.spaces import Observable
from ..systems.spaces import Partition
from ..systems.spaces import conditional_expectation
from ..systems.spaces import relative_product
from .kernels import KernelSpace
from .multiple import full_period_sequence
from .multiple import multi_average
from .multiple import multi_limit

logger = logging.getLogger(__name__)
logger.bsdev(__file__)

DROP_TOLERANCE = 1e-10
ORTHONORMAL_TOLERANCE = 1e-9


def orthonormal_basis(vectors, dim, drop=DROP_TOLERANCE):
    """
    Modified Gram-Schmidt with re-orthogonalization.

    Each candidate is normalized first; candidates whose residual norm
    falls below ``drop`` are discarded.  Returns a ``dim × r`` array with
    orthonormal columns.
    """
    basis = []
    for v in vectors:
        if len(basis) == dim:
            break
        v = np.asarray(v, dtype=float)
        norm = np.linalg.norm(v)
        if norm == 0:
            continue
        v = v / norm
        for _ in range(2):
            for e in basis:
                v = v - np.dot(e, v) * e
        residual = np.linalg.norm(v)
        if residual < drop:
            continue
        basis.append(v / residual)
    if not basis:
        return np.zeros((dim, 0))
    return np.stack(basis, axis=1)


def _section_basis(kernels, root, drop):
    vectors = []
    for members in kernels.sections():
        v = np.zeros(len(root))
        v[list(members)] = 1.0
        vectors.append(root * v)
    return orthonormal_basis(vectors, len(root), drop)


class CharacteristicProjector:
    """
    Orthogonal projections ``P`` onto ``W_{T/S}`` and ``Q`` onto ``W_{S/T}``.

    ``basis_ts`` and ``basis_st`` hold orthonormal bases in the weighted
    coordinates ``u = W^{1/2} f``.
    """

    def __init__(self, pair, basis_ts, basis_st):
        """Hold the two bases."""
        self.pair = pair
        self.basis_ts = basis_ts
        self.basis_st = basis_st
        self.root = np.sqrt(np.array([float(w) for w in pair.space.weights]))

    @property
    def rank_ts(self):
        """``dim W_{T/S}``."""
        return self.basis_ts.shape[1]

    @property
    def rank_st(self):
        """``dim W_{S/T}``."""
        return self.basis_st.shape[1]

    def _apply(self, basis, f):
        u = self.root * f.as_float()
        projected = basis @ (basis.T @ u)
        return Observable(f.space, projected / self.root)

    def project(self, f):
        """``P f``."""
        return self._apply(self.basis_ts, f)

    def project_dual(self, f):
        """``Q f``."""
        return self._apply(self.basis_st, f)

    def matrix(self, dual=False):
        """``P`` (or ``Q``) as a matrix acting on value vectors."""
        basis = self.basis_st if dual else self.basis_ts
        return (basis @ basis.T) / self.root[:, None] * self.root[None, :]

    def residual(self, f):
        """``‖f − P f‖₂``."""
        return (f - self.project(f)).norm()

    def defects(self):
        """
        Largest of the idempotence and self-adjointness defects of ``P`` and ``Q``,
        measured in the weighted coordinates.
        """
        worst = 0.0
        for basis in (self.basis_ts, self.basis_st):
            pi = basis @ basis.T
            worst = max(worst, np.linalg.norm(pi @ pi - pi, 2), np.linalg.norm(pi - pi.T, 2))
        return float(worst)

    def distance(self):
        """``‖P − Q‖`` as an operator on ``L²(μ)``."""
        diff = self.basis_ts @ self.basis_ts.T - self.basis_st @ self.basis_st.T
        return float(np.linalg.norm(diff, 2))

    def complement(self, drop=DROP_TOLERANCE):
        """Orthonormal basis of ``W_{T/S}^⊥`` as observables."""
        n = len(self.root)
        pi = self.basis_ts @ self.basis_ts.T
        candidates = [np.eye(n)[i] - pi[:, i] for i in range(n)]
        basis = orthonormal_basis(itertools.chain(self.basis_ts.T, candidates), n, drop)
        extra = basis[:, self.rank_ts :]
        return [Observable(self.pair.space, extra[:, j] / self.root) for j in range(extra.shape[1])]


def wts_subspace(pair, *, drop=DROP_TOLERANCE):
    """Compute :class:`CharacteristicProjector` for ``pair``."""
    root = np.sqrt(np.array([float(w) for w in pair.space.weights]))
    basis_ts = _section_basis(KernelSpace(pair.S, pair.T), root, drop)
    basis_st = _section_basis(KernelSpace(pair.T, pair.S), root, drop)
    logger.debug("W_T/S rank %d, W_S/T rank %d", basis_ts.shape[1], basis_st.shape[1])
    return CharacteristicProjector(pair, basis_ts, basis_st)


def wm_decay_diagnostic(pair, f, seq, n, *, squared=False):
    """
    ``(1/|Φ_n|) Σ_g ‖E(f · T_g f | I_S)‖₂`` (squared norms if ``squared``).

    Vanishes at a full period when ``f`` is orthogonal to ``W_{T/S}``.
    """
    i_s = invariant_partition(pair.S)
    window = seq.window(n)
    total = 0.0
    for g in window:
        t_map = pair.T.element_map(g)
        norm = conditional_expectation(Observable(f.space, f.values * f.values[t_map]), i_s).norm()
        total += norm**2 if squared else norm
    return total / len(window)


def wm_decay_limit(pair, f):
    """
    Exact limit of the squared diagnostic:
    ``∫ f(x) ∫ H(x, z) f(z) dμ_{σ(x)}(z) dμ(x)`` with ``H = E(f ⊗ f | T × T)``.
    """
    kernels = KernelSpace(pair.S, pair.T)
    value = (f * kernels.limit(f, f, f)).integral()
    return float(np.real(value))


@dataclass
class ReductionReport:
    """
    Defects of replacing ``f1`` by ``P f1`` and ``f2`` by ``Q f2``.

    ``b1 = ‖A(f1,f2,f3) − A(Pf1,f2,f3)‖``, ``b2 = ‖A(f1,f2,f3) −
    A(f1,Qf2,f3)‖`` and ``c = ‖A(f1,f2,f3) − A(Pf1,Qf2,f3)‖``, all at a
    full period (or at the limit when the period is above the cap).
    """

    b1: float
    b2: float
    c: float
    at_full_period: bool

    def holds(self, tolerance=ORTHONORMAL_TOLERANCE):
        """All three defects within ``tolerance``."""
        return max(self.b1, self.b2, self.c) <= tolerance


def reduction_check(pair, f1, f2, f3, projector=None):
    """Compute a :class:`ReductionReport`."""
    projector = projector or wts_subspace(pair)
    p1 = projector.project(f1)
    q2 = projector.project_dual(f2)
    seq = full_period_sequence(pair)
    if seq is None:

        def average(a, b, c):
            return multi_limit(pair, a, b, c)

    else:

        def average(a, b, c):
            return multi_average(pair, a, b, c, seq, seq, 1)

    base = average(f1, f2, f3)
    report = ReductionReport(
        b1=(base - average(p1, f2, f3)).norm(),
        b2=(base - average(f1, q2, f3)).norm(),
        c=(base - average(p1, q2, f3)).norm(),
        at_full_period=seq is not None,
    )
    logger.debug("reduction defects %s", report)
    return report


@dataclass
class ConstancyVerdict:
    """
    Outcome of :func:`constancy_check`.

    ``consistent`` is true when the limit is constant for all inputs
    exactly when both ``T × T`` and ``S × S`` are ergodic.
    """

    tt_orbits: int
    ss_orbits: int
    limit_constant: bool
    witness: tuple = None
    method: str = ""
    max_spread: float = 0.0

    @property
    def product_ergodic(self):
        """Both product actions are ergodic."""
        return self.tt_orbits == 1 and self.ss_orbits == 1

    @property
    def consistent(self):
        """The verdict agrees with the constancy criterion."""
        return self.product_ergodic == self.limit_constant


def _product_orbits(action, space):
    full = relative_product(space, Partition.trivial(space))
    return invariant_partition(product_action(action, action, full)).blocks


def constancy_check(pair, trials, seed, *, tolerance=ORTHONORMAL_TOLERANCE):
    """
    Decide whether the limit is constant for all ``f1, f2, f3``.

    When both products are ergodic, ``trials`` random triples are checked
    for constant limits.  Otherwise a witness triple is searched for:
    first among the random triples, then over all point masses
    ``(δ_a, δ_b, δ_c)``.  The limit is trilinear, so the point-mass sweep
    finds a witness whenever one exists.
    """
    space = pair.space
    tt = _product_orbits(pair.T, space)
    ss = _product_orbits(pair.S, space)
    kernels = KernelSpace(pair.S, pair.T)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        triple = tuple(random_observable(space, rng) for _ in range(3))
        spread = kernels.limit(triple[0], triple[2], triple[1]).spread()
        worst = max(worst, spread)
        if spread > tolerance and not (tt == 1 and ss == 1):
            logger.debug("random witness, spread %.3e", spread)
            return ConstancyVerdict(tt, ss, False, triple, "random", spread)
    if tt == 1 and ss == 1:
        return ConstancyVerdict(tt, ss, worst <= tolerance, None, "random", worst)
    n = space.n
    deltas = [Observable.indicator(space, [x]) for x in range(n)]
    for a, b, c in itertools.product(range(n), repeat=3):
        triple = (deltas[a], deltas[b], deltas[c])
        spread = kernels.limit(triple[0], triple[2], triple[1]).spread()
        if spread > tolerance:
            logger.debug("point-mass witness (%d, %d, %d)", a, b, c)
            return ConstancyVerdict(tt, ss, False, triple, "point masses", spread)
    logger.warning("no witness found although T×T has %d and S×S %d orbits", tt, ss)
    return ConstancyVerdict(tt, ss, True, None, "point masses", worst)
