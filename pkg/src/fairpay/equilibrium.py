"""Pure-equilibrium machinery: best responses, stability checks, equilibrium
search, and the two equilibrium-preserving contract transformations (payment
doubling and group scaling).

Stability is always with respect to weak improvement: a profile is stable when
no single agent can STRICTLY gain by replacing her own action set.  Three
nested notions appear, from strongest to weakest: every deviation (Nash),
deviations to subsets of the current set (subset-stable), and dropping out
entirely (dropout-stable).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .core import (
    Contract,
    FairpayError,
    Instance,
    NoConvergence,
    PaymentOverflow,
    PostconditionFailed,
    PreconditionError,
    CapExceeded,
    INF,
    lex_key,
    price_of,
    resolve_cap,
)


class NoPureEquilibrium(FairpayError):
    """Exhaustive search found no pure equilibrium for the contract."""


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of a stability check; on failure carries one witness."""

    stable: bool
    agent: int | None = None
    deviation: frozenset[int] | None = None
    gain: Fraction | None = None

    def __bool__(self):
        return self.stable


def _value(instance: Instance, s: frozenset[int], memo: dict | None) -> Fraction:
    if memo is None:
        return instance.value(s)
    got = memo.get(s)
    if got is None:
        got = memo[s] = instance.value(s)
    return got


def _uniform_cost(instance: Instance, i: int) -> Fraction | None:
    """The common cost of agent i's actions, or None if they differ."""
    costs = {instance.cost(j) for j in instance.actions_of(i)}
    if len(costs) == 1:
        return next(iter(costs))
    return None


def deviation_sets(
    instance: Instance, i: int, cap: int | None = None
) -> Iterator[frozenset[int]]:
    """All candidate action sets for agent i, smallest first, lexicographic
    within a size.

    When the reward value depends only on each agent's action count and the
    agent's costs are uniform, same-size deviations have identical utility in
    every context, so one representative per size is logically exhaustive.
    """
    own = sorted(instance.actions_of(i))
    if instance.reward.per_agent_size_symmetric and _uniform_cost(instance, i) is not None:
        for size in range(len(own) + 1):
            yield frozenset(own[:size])
        return
    cap = resolve_cap(cap)
    if len(own) > cap:
        raise CapExceeded(f"agent {i} has {len(own)} actions, cap {cap}")
    for size in range(len(own) + 1):
        for combo in combinations(own, size):
            yield frozenset(combo)


def best_response(
    instance: Instance,
    i: int,
    share: Fraction,
    s_minus: frozenset[int],
    cap: int | None = None,
    memo: dict | None = None,
) -> frozenset[int]:
    """Agent i's utility-maximizing action set against the fixed profile of
    the others, under payment share `share`.

    Ties resolve toward the principal: larger reward first, then the
    lexicographically smallest set (equal utility and reward pin the cost).
    """
    best = None  # (utility, reward, lex key, set)
    for dev in deviation_sets(instance, i, cap):
        f = _value(instance, dev | s_minus, memo)
        u = share * f - instance.cost_of(dev)
        lex = lex_key(dev)
        if (
            best is None
            or u > best[0]
            or (u == best[0] and f > best[1])
            or (u == best[0] and f == best[1] and lex < best[2])
        ):
            best = (u, f, lex, dev)
    assert best is not None
    return best[3]


def _stability(
    instance: Instance,
    contract: Contract,
    s: frozenset[int],
    devs_for,
    cap: int | None,
    memo: dict | None,
) -> StabilityReport:
    f_cur = _value(instance, s, memo)
    for i in instance.agents:
        s_i = instance.part(s, i)
        share = contract.pay(i)
        u_cur = share * f_cur - instance.cost_of(s_i)
        s_minus = s - s_i
        worst = None
        for dev in devs_for(i, s_i):
            if dev == s_i:
                continue
            u_dev = share * _value(instance, dev | s_minus, memo) - instance.cost_of(dev)
            gain = u_dev - u_cur
            if gain > 0 and (worst is None or gain > worst[0]):
                worst = (gain, dev)
        if worst is not None:
            return StabilityReport(False, i, worst[1], worst[0])
    return StabilityReport(True)


def is_nash(
    instance: Instance,
    contract: Contract,
    s: frozenset[int],
    cap: int | None = None,
    memo: dict | None = None,
) -> StabilityReport:
    """No agent can strictly gain by any replacement of her action set."""
    return _stability(
        instance, contract, s,
        lambda i, s_i: deviation_sets(instance, i, cap),
        cap, memo,
    )


def is_subset_stable(
    instance: Instance,
    contract: Contract,
    s: frozenset[int],
    cap: int | None = None,
    memo: dict | None = None,
) -> StabilityReport:
    """No agent can strictly gain by dropping some of her current actions."""
    def devs(i, s_i):
        own = sorted(s_i)
        for size in range(len(own) + 1):
            for combo in combinations(own, size):
                yield frozenset(combo)
    return _stability(instance, contract, s, devs, cap, memo)


def is_dropout_stable(
    instance: Instance,
    contract: Contract,
    s: frozenset[int],
    cap: int | None = None,
    memo: dict | None = None,
) -> StabilityReport:
    """No agent strictly prefers doing nothing at all."""
    return _stability(
        instance, contract, s, lambda i, s_i: (frozenset(),), cap, memo
    )


def find_equilibrium(
    instance: Instance,
    contract: Contract,
    mode: str = "br_dynamics",
    cap: int | None = None,
) -> frozenset[int]:
    """Find a pure equilibrium of the contract.

    Modes: "br_dynamics" iterates round-robin best responses from the empty
    profile (raises NoConvergence past a budget of 10 * n * 2**max|T_i|
    single-agent updates); "exhaustive_best" / "exhaustive_worst" enumerate
    every profile under the cap and return the equilibrium with the largest /
    smallest reward (ties: fewer actions, then lexicographic), raising
    NoPureEquilibrium when none exists.
    """
    memo: dict = {}
    if mode == "br_dynamics":
        max_t = max((len(instance.actions_of(i)) for i in instance.agents), default=0)
        budget = 10 * max(1, instance.n) * (1 << max_t)
        s = frozenset()
        steps = 0
        while True:
            changed = False
            for i in instance.agents:
                steps += 1
                if steps > budget:
                    raise NoConvergence(
                        f"best-response dynamics exceeded {budget} updates"
                    )
                s_i = instance.part(s, i)
                reply = best_response(
                    instance, i, contract.pay(i), s - s_i, cap, memo
                )
                if reply != s_i:
                    s = (s - s_i) | reply
                    changed = True
            if not changed:
                break
        report = is_nash(instance, contract, s, cap, memo)
        assert report.stable, (
            f"fixed point of best-response dynamics failed the equilibrium "
            f"recheck: agent {report.agent} gains {report.gain}"
        )
        return s
    if mode in ("exhaustive_best", "exhaustive_worst"):
        cap = resolve_cap(cap)
        if instance.m > cap:
            raise CapExceeded(f"{instance.m} actions exceed cap {cap}")
        ids = list(instance.actions)
        best = None  # (preference value, size, lex key, set)
        want_max = mode == "exhaustive_best"
        for mask in range(1 << len(ids)):
            s = frozenset(ids[b] for b in range(len(ids)) if mask >> b & 1)
            if not is_nash(instance, contract, s, cap, memo).stable:
                continue
            f = _value(instance, s, memo)
            pref = f if want_max else -f
            cand = (pref, len(s), lex_key(s))
            if (
                best is None
                or cand[0] > best[0]
                or (cand[0] == best[0] and (cand[1], cand[2]) < (best[1], best[2]))
            ):
                best = (cand[0], cand[1], cand[2], s)
        if best is None:
            raise NoPureEquilibrium("contract admits no pure equilibrium")
        return best[3]
    raise ValueError(f"unknown equilibrium search mode {mode!r}")


def scale_for_existence(
    instance: Instance,
    contract: Contract,
    s: frozenset[int],
    group: Iterable[int],
    gamma: Fraction,
    cap: int | None = None,
) -> tuple[Contract, frozenset[int]]:
    """Scale a dropout-stable pair's payments on an agent group by gamma > 1
    and return a contract that provably HAS an equilibrium, together with one.

    The scaled contract pays gamma * old share inside the group and zero
    elsewhere; its equilibrium is the demanded set at per-action prices
    cost / new share (0/0 = 0, positive/0 = infinite).  Self-verifies both
    postconditions exactly: the result is an equilibrium, and its reward is
    at least (1 - 1/gamma) times the reward of the input profile restricted
    to the group.  Requires an XOS-class reward.
    """
    gamma = Fraction(gamma)
    if gamma <= 1:
        raise PreconditionError(f"gamma must exceed 1, got {gamma}")
    if not instance.reward.xos_class:
        raise PreconditionError(
            f"scaling requires an XOS-class reward, got {instance.reward.kind}"
        )
    report = is_dropout_stable(instance, contract, s, cap)
    if not report.stable:
        raise PreconditionError(
            f"input pair is not dropout-stable: agent {report.agent} "
            f"gains {report.gain} by dropping out"
        )
    group = frozenset(group)
    try:
        scaled = Contract({i: gamma * contract.pay(i) for i in group})
    except PaymentOverflow as exc:
        raise PaymentOverflow(f"scaling by {gamma} overflows: {exc}") from exc
    prices = {}
    for j in instance.actions:
        prices[j] = price_of(instance.cost(j), scaled.pay(instance.owner(j)))
    result = instance.reward.demand(prices, cap)
    report = is_nash(instance, scaled, result, cap)
    if not report.stable:
        raise PostconditionFailed(
            f"demanded set is not an equilibrium of the scaled contract: "
            f"agent {report.agent} gains {report.gain}"
        )
    floor = (1 - 1 / gamma) * instance.value(instance.restrict(s, group))
    got = instance.value(result)
    if got < floor:
        raise PostconditionFailed(
            f"scaled equilibrium reward {got} below the guaranteed {floor}"
        )
    return scaled, result


def double_contract(
    instance: Instance, contract: Contract, s: frozenset[int], cap: int | None = None
) -> Contract:
    """Double every payment of a subset-stable pair whose unpaid agents are
    idle.  Requires a submodular-class reward and headroom (2 * share <= 1);
    every equilibrium of the doubled contract then keeps at least half the
    input profile's reward (checked in tests by exhaustive enumeration).
    """
    if not instance.reward.submodular_class:
        raise PreconditionError(
            f"doubling requires a submodular-class reward, got {instance.reward.kind}"
        )
    report = is_subset_stable(instance, contract, s, cap)
    if not report.stable:
        raise PreconditionError(
            f"input pair is not subset-stable: agent {report.agent} "
            f"gains {report.gain} via {sorted(report.deviation)}"
        )
    for i in instance.active_agents(s):
        if contract.pay(i) == 0:
            raise PreconditionError(f"agent {i} works while unpaid; doubling unsound")
    for i, a in contract.as_dict().items():
        if 2 * a > 1:
            raise PaymentOverflow(f"doubled payment {2 * a} to agent {i} exceeds 1")
    return contract.scaled(Fraction(2))
