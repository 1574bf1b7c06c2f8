"""Brute-force oracles: exact optimal contracts at desk scale.

These enumerate every action profile under the brute cap, compute for each
agent the exact payment interval that keeps her from deviating, and score the
cheapest inducing contract.  They are the ground truth the polynomial solvers
are tested against.

Paid-set convention for the equal-pay oracle: only active agents whose chosen
actions cost something are paid.  This is without loss for payment-antitone
objectives: an active agent whose actions are all free is stable at zero pay
(every deviation costs at least her current 0, so at zero share none strictly
gains), and moving her from the paid set to zero pay leaves the equilibrium
in place while weakly raising profit and leaving reward unchanged.  Likewise
paying idle agents only burns payment headroom.  So restricting attention to
positive-cost active agents loses no optimum, and it is what makes profiles
of free actions (paid set empty, shared level zero) representable at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import (
    Contract,
    EqualPayContract,
    Instance,
    NonMonotoneObjective,
    Objective,
    SolveResult,
    CapExceeded,
    INF,
    lex_key,
    rat_str,
    resolve_cap,
)
from .equilibrium import deviation_sets, is_nash


@dataclass(frozen=True)
class FeasibleInterval:
    """Payments x >= 0 keeping one agent's chosen set weakly optimal:
    feasible iff lo <= x <= hi (hi may be INF).  When no payment works,
    `feasible` is False and lo/hi hold the contradictory bounds."""

    feasible: bool
    lo: Fraction
    hi: Fraction | float

    def contains(self, x: Fraction) -> bool:
        return self.feasible and self.lo <= x <= self.hi


def min_incentive_interval(
    instance: Instance,
    s: frozenset[int],
    i: int,
    mode: str = "individual",
    cap: int | None = None,
    memo: dict | None = None,
) -> FeasibleInterval:
    """Exact interval of payment shares under which agent i's part of s is a
    best response to the rest of s.

    Each deviation D imposes x * (f(s) - f(D with others fixed)) >=
    c(own part) - c(D); positive reward gaps give lower bounds, negative ones
    upper bounds, and a zero gap with a positive cost gap is unsatisfiable.
    Both modes compute the same interval: an agent's stability constraint
    involves only her own payment, whether that payment is private or a level
    shared with other agents, so "individual" and "shared_t" coincide.
    """
    if mode not in ("individual", "shared_t"):
        raise ValueError(f"unknown interval mode {mode!r}")
    s_i = instance.part(s, i)
    s_minus = s - s_i
    c_own = instance.cost_of(s_i)
    f_cur = instance.value(s) if memo is None else _mvalue(instance, s, memo)
    lo = Fraction(0)
    hi: Fraction | float = INF
    feasible = True
    for dev in deviation_sets(instance, i, cap):
        if dev == s_i:
            continue
        joint = dev | s_minus
        f_dev = instance.value(joint) if memo is None else _mvalue(instance, joint, memo)
        gap_f = f_cur - f_dev
        gap_c = c_own - instance.cost_of(dev)
        if gap_f > 0:
            lo = max(lo, gap_c / gap_f)
        elif gap_f < 0:
            bound = gap_c / gap_f
            hi = bound if hi == INF else min(hi, bound)
        elif gap_c > 0:
            feasible = False
    if hi != INF and lo > hi:
        feasible = False
    return FeasibleInterval(feasible, lo, hi)


def _mvalue(instance, s, memo):
    got = memo.get(s)
    if got is None:
        got = memo[s] = instance.value(s)
    return got


def _profiles(instance: Instance, cap: int | None):
    cap = resolve_cap(cap)
    if instance.m > cap:
        raise CapExceeded(f"{instance.m} actions exceed brute cap {cap}")
    ids = list(instance.actions)
    for mask in range(1 << len(ids)):
        yield frozenset(ids[b] for b in range(len(ids)) if mask >> b & 1)


def _require_antitone(objective: Objective):
    if not objective.alpha_antitone:
        raise NonMonotoneObjective(
            f"objective {objective.kind!r} is not attested payment-antitone; "
            "the minimal-payment search would not be exact"
        )


def brute_optimal_contract(
    instance: Instance, objective: Objective, cap: int | None = None
) -> SolveResult:
    """Exact best (contract, equilibrium) pair over all profiles.

    For each profile, pays every active agent the bottom of her incentive
    interval and scores the objective; requires the objective to be
    payment-antitone so that bottom payments are optimal per profile.
    """
    _require_antitone(objective)
    memo: dict = {}
    best = None  # (value, total pay, size, lexkey, contract, profile)
    examined = 0
    for s in _profiles(instance, cap):
        pays = {}
        ok = True
        for i in sorted(instance.active_agents(s)):
            iv = min_incentive_interval(instance, s, i, "individual", cap, memo)
            if not iv.feasible or iv.lo > 1:
                ok = False
                break
            pays[i] = iv.lo
        if not ok:
            continue
        contract = Contract(pays)
        report = is_nash(instance, contract, s, cap, memo)
        assert report.stable, (
            f"interval-built contract failed the equilibrium recheck at "
            f"{sorted(s)}: agent {report.agent} gains {report.gain}"
        )
        examined += 1
        val = objective.value(instance, contract, s)
        key = (contract.total(), len(s), lex_key(s))
        if best is None or val > best[0] or (val == best[0] and key < best[1]):
            best = (val, key, contract, s)
    assert best is not None, "the empty profile is always inducible"
    return SolveResult(
        contract=best[2],
        equilibrium=best[3],
        objective_value=best[0],
        branch="brute",
        trace={"profiles_inducible": examined, "objective": objective.kind},
    )


def brute_optimal_equal_pay(
    instance: Instance, objective: Objective, cap: int | None = None
) -> SolveResult:
    """Exact best equal-pay (contract, equilibrium) pair over all profiles.

    Pays the positive-cost active agents (see module docstring) one shared
    level, the smallest level inside every such agent's incentive interval.
    """
    _require_antitone(objective)
    memo: dict = {}
    best = None
    examined = 0
    for s in _profiles(instance, cap):
        paid = frozenset(
            i for i in instance.active_agents(s)
            if instance.cost_of(instance.part(s, i)) > 0
        )
        t = Fraction(0)
        ok = True
        for i in sorted(paid):
            iv = min_incentive_interval(instance, s, i, "shared_t", cap, memo)
            if not iv.feasible or iv.lo > 1:
                ok = False
                break
            t = max(t, iv.lo)
        if not ok or t > 1:
            continue
        # the shared level must sit inside EVERY paid interval
        for i in sorted(paid):
            iv = min_incentive_interval(instance, s, i, "shared_t", cap, memo)
            if not iv.contains(t):
                ok = False
                break
        if not ok:
            continue
        ep = EqualPayContract(t, paid)
        contract = ep.expand()
        report = is_nash(instance, contract, s, cap, memo)
        assert report.stable, (
            f"shared level {t} inside every paid interval failed the "
            f"equilibrium recheck at {sorted(s)}: agent {report.agent}"
        )
        examined += 1
        val = objective.value(instance, contract, s)
        key = (t, len(paid), len(s), lex_key(s))
        if best is None or val > best[0] or (val == best[0] and key < best[1]):
            best = (val, key, ep, s)
    assert best is not None, "the empty profile is always inducible"
    ep, s = best[2], best[3]
    return SolveResult(
        contract=ep.expand(),
        equilibrium=s,
        objective_value=best[0],
        branch="brute_equal_pay",
        trace={
            "profiles_inducible": examined,
            "objective": objective.kind,
            "equal_pay": ep.to_json_dict(),
        },
    )


@dataclass(frozen=True)
class PoEReport:
    """Ratio of the unconstrained optimum to the equal-pay optimum."""

    objective: str
    unconstrained: Fraction
    equal_pay: Fraction
    ratio: Fraction | float  # INF when equal pay earns 0 and unconstrained > 0

    def to_json_dict(self) -> dict:
        return {
            "objective": self.objective,
            "unconstrained": rat_str(self.unconstrained),
            "equal_pay": rat_str(self.equal_pay),
            "ratio": "inf" if self.ratio == INF else rat_str(self.ratio),
        }


def poe_ratio(unconstrained: Fraction, equal_pay: Fraction) -> Fraction | float:
    if equal_pay == 0:
        return Fraction(1) if unconstrained == 0 else INF
    return unconstrained / equal_pay


def price_of_equality(
    instance: Instance, objective: Objective, cap: int | None = None
) -> PoEReport:
    """Exact price of equality: optimum over all contracts divided by the
    optimum over equal-pay contracts, both with best-equilibrium semantics.
    Always at least 1 (every equal-pay pair is also unconstrained)."""
    unconstrained = brute_optimal_contract(instance, objective, cap).objective_value
    equal = brute_optimal_equal_pay(instance, objective, cap).objective_value
    report = PoEReport(
        objective=objective.kind,
        unconstrained=unconstrained,
        equal_pay=equal,
        ratio=poe_ratio(unconstrained, equal),
    )
    assert report.ratio == INF or report.ratio >= 1, (
        f"price of equality below 1: {report}"
    )
    return report
