"""
Property battery
================

Runs every checkable property of the averages against one system:
exactness at a full period, agreement of the three limit formulas,
independence of the Følner sequence, the recurrence lower bounds, the
λ-measure identities, the characteristic projections and the constancy
criterion.  Each property yields one row ``(name, value, tolerance,
passed)``.

.. autosummary::

    ~CheckRow
    ~run_battery
    ~battery_passed
"""

import logging
from dataclasses import dataclass

from ..systems.actions import invariant_partition
from ..systems.factories import random_observable
from ..systems.groups import FolnerSequence
from ..systems.spaces import conditional_expectation
from .characteristic import DROP_TOLERANCE
from .characteristic import ORTHONORMAL_TOLERANCE
from .characteristic import constancy_check
from .characteristic import reduction_check
from .characteristic import wm_decay_diagnostic
from .characteristic import wts_subspace
from .ergodic import ARITHMETIC_TOLERANCE
from .ergodic import khintchine_bound
from .multiple import PERIOD_CAP
from .multiple import four_term_bound
from .multiple import full_period
from .multiple import full_period_sequence
from .multiple import iterated_limit
from .multiple import multi_average
from .multiple import multi_limit
from .multiple import multi_limit_dual
from .triple import lambda_measure

logger = logging.getLogger(__name__)
logger.bsdev(__file__)


@dataclass
class CheckRow:
    """One property: the worst value seen and whether it is within tolerance."""

    name: str
    value: float
    tolerance: float
    passed: bool

    def as_dict(self):
        """Row for a report table."""
        return {"property": self.name, "value": self.value, "tolerance": self.tolerance, "passed": self.passed}


def _row(name, value, tolerance):
    value = float(value)
    return CheckRow(name, value, tolerance, value <= tolerance)


def run_battery(
    pair,
    rng,
    *,
    functions=25,
    trials=20,
    arithmetic=ARITHMETIC_TOLERANCE,
    orthonormal=ORTHONORMAL_TOLERANCE,
    drop=DROP_TOLERANCE,
    cap=PERIOD_CAP,
):
    """
    Check all properties on ``functions`` random observables.

    Returns a list of :class:`CheckRow`.  Properties that need a full
    period are skipped when the period exceeds ``cap``.
    """
    space = pair.space
    triples = [tuple(random_observable(space, rng) for _ in range(3)) for _ in range(functions)]
    limits = [multi_limit(pair, *t) for t in triples]
    rows = []

    period = full_period(pair, cap)
    if period is not None:
        seq = full_period_sequence(pair, cap=cap)
        rows.append(
            _row(
                "full-period average equals limit",
                max((multi_average(pair, *t, seq, seq, 1) - L).norm() for t, L in zip(triples, limits)),
                arithmetic,
            )
        )
        worst = 0.0
        rank = getattr(pair.group, "rank", 0)
        for t, L in zip(triples[:5], limits[:5]):
            offsets = [tuple(int(v) for v in rng.integers(-7, 8, size=rank)) for _ in range(2)]
            phi = FolnerSequence.full_period(pair.group, period, offsets[0])
            psi = FolnerSequence.full_period(pair.group, period, offsets[1])
            worst = max(worst, (multi_average(pair, *t, phi, psi, 1) - L).norm())
        rows.append(_row("translated full-period windows", worst, arithmetic))

    rows.append(
        _row(
            "limit equals dual limit",
            max((multi_limit_dual(pair, *t) - L).norm() for t, L in zip(triples, limits)),
            orthonormal,
        )
    )
    rows.append(
        _row(
            "limit equals iterated limit",
            max((iterated_limit(pair, *t) - L).norm() for t, L in zip(triples, limits)),
            orthonormal,
        )
    )

    shortfall = 0.0
    for _ in range(functions):
        f = random_observable(space, rng, nonneg=True)
        for report in (four_term_bound(pair, f), khintchine_bound(pair.T, f)):
            shortfall = max(shortfall, float(report.right) - float(report.left))
    rows.append(_row("recurrence lower bounds", max(shortfall, 0.0), arithmetic))

    lam = lambda_measure(pair)
    moved = [lam.pushforward(p, None, p) for p in pair.T.generator_maps()]
    moved += [lam.pushforward(None, p, p) for p in pair.S.generator_maps()]
    rows.append(_row("lambda invariance (mismatches)", sum(m != lam for m in moved), 0))
    rows.append(_row("lambda triple identity", _lambda_identity_defect(pair, lam, triples), arithmetic))

    projector = wts_subspace(pair, drop=drop)
    rows.append(_row("projector defects", projector.defects(), orthonormal))
    rows.append(_row("range of P equals range of Q", projector.distance(), orthonormal))
    rows.append(_row("limits lie in range of P", max(projector.residual(L) for L in limits), orthonormal))
    reduction = [reduction_check(pair, *t, projector=projector) for t in triples[:5]]
    rows.append(_row("reduction defects", max(max(r.b1, r.b2, r.c) for r in reduction), orthonormal))
    if period is not None:
        seq = full_period_sequence(pair, cap=cap)
        decay = [wm_decay_diagnostic(pair, f, seq, 1) for f in projector.complement(drop)]
        rows.append(_row("decay off the characteristic subspace", max(decay, default=0.0), orthonormal))

    verdict = constancy_check(pair, trials, int(rng.integers(2**31)), tolerance=orthonormal)
    rows.append(_row("constancy criterion (inconsistent)", 0 if verdict.consistent else 1, 0))
    for row in rows:
        logger.debug("%s: %s (%s)", row.name, row.value, "pass" if row.passed else "FAIL")
    return rows


def _lambda_identity_defect(pair, lam, triples):
    i_s = invariant_partition(pair.S)
    i_t = invariant_partition(pair.T)
    worst = 0.0
    for f1, f2, f3 in triples:
        direct = (conditional_expectation(f1, i_s) * conditional_expectation(f2, i_t) * f3).integral()
        worst = max(worst, abs(complex(lam.integrate(f1, f2, f3)) - complex(direct)))
    return worst


def battery_passed(rows):
    """True if every row passed."""
    return all(row.passed for row in rows)
