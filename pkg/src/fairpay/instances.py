"""Instance families with known structure, plus seeded random generators.

Every generator that hands back a witness (contract, profile) verifies it is
an exact equilibrium before returning; closed-form scans for the structured
families are cross-checked against the brute oracle in tests.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .core import (
    CapExceeded,
    Contract,
    EqualPayContract,
    Instance,
    SolveResult,
    rat,
)
from .equilibrium import is_nash
from .rewards import (
    Additive,
    Coverage,
    HardnessXOS,
    SubadditivePoE,
    XOSExplicit,
)


def _assert_nash(instance: Instance, contract: Contract, profile: frozenset[int]):
    report = is_nash(instance, contract, profile)
    assert report.stable, (
        f"generated witness is not an equilibrium: agent {report.agent} "
        f"gains {report.gain} via {sorted(report.deviation)}"
    )


#### two agents, four actions: equal pay must overshoot

def gen_intro_example(eps: Fraction | str) -> Instance:
    """Two agents with two unit-value actions each and near-identical costs.

    The cheap profile {1, 2} is inducible for total payment 1/2, while any
    profile mixing the two agents' cheap/expensive actions (such as {1, 3})
    needs total payment 1 - 4*eps; with equal pay the cheap asymmetric split
    is unavailable, which is the seed of the whole price-of-equality story.
    """
    eps = rat(eps)
    if not (0 < eps < Fraction(1, 8)):
        raise ValueError(f"eps must lie in (0, 1/8), got {eps}")
    quarter = Fraction(1, 4)
    return Instance(
        action_owner={1: 1, 2: 1, 3: 2, 4: 2},
        action_cost={
            1: Fraction(1, 8) - eps,
            2: Fraction(1, 8),
            3: Fraction(1, 8),
            4: Fraction(1, 8) + eps,
        },
        reward=Additive({1: quarter, 2: quarter, 3: quarter, 4: quarter}, scale=1),
    )


#### harmonic family: equal pay loses a log factor

_HARMONIC: list[Fraction] = [Fraction(0)]


def harmonic_number(k: int) -> Fraction:
    """H_k = 1 + 1/2 + ... + 1/k, exact; prefix-cached."""
    if k < 0:
        raise ValueError("harmonic index must be nonnegative")
    while len(_HARMONIC) <= k:
        i = len(_HARMONIC)
        _HARMONIC.append(_HARMONIC[-1] + Fraction(1, i))
    return _HARMONIC[k]


def gen_harmonic(
    n: int, verify_limit: int = 64
) -> tuple[Instance, Contract, frozenset[int]]:
    """Agent i has one action of value 1/i and cost 1/(2 i^2 H_n), plus the
    witness contract paying agent i the share 1/(2 i H_n) and the full profile.

    Every agent is exactly indifferent between working and dropping out
    (share * weight == cost is asserted for each agent; with binary actions
    that single identity IS a complete Nash proof), and the principal keeps
    H_n / 2.  The generic equilibrium checker re-verifies at small n.
    """
    if n < 1:
        raise ValueError("need at least one agent")
    h = harmonic_number(n)
    inst = Instance(
        action_owner={i: i for i in range(1, n + 1)},
        action_cost={i: Fraction(1, 2 * i * i) / h for i in range(1, n + 1)},
        reward=Additive({i: Fraction(1, i) for i in range(1, n + 1)}, scale=h),
    )
    witness = Contract({i: Fraction(1, 2 * i) / h for i in range(1, n + 1)})
    profile = frozenset(range(1, n + 1))
    for i in range(1, n + 1):
        assert witness.pay(i) * Fraction(1, i) == inst.cost(i)
    if n <= verify_limit:
        _assert_nash(inst, witness, profile)
    return inst, witness, profile


def harmonic_witness_profit(n: int) -> Fraction:
    """Principal utility of the harmonic witness pair: exactly H_n / 2
    (the payments sum to 1/2 and the full profile earns H_n)."""
    inst, witness, profile = gen_harmonic(n, verify_limit=0)
    total = sum((witness.pay(i) for i in range(1, n + 1)), Fraction(0))
    assert total == Fraction(1, 2)
    return inst.principal_utility(witness, profile)


def harmonic_equal_pay_scan(n: int) -> SolveResult:
    """Exact profit-best equal-pay pair for the harmonic family.

    Any equal-pay optimum pays a level t = 1/(2 j H_n) for some agent index j
    and induces a contiguous agent window {j, ..., j+s-1} (agents above j are
    the cheaper-to-incentivize ones, and among incentivized agents the
    heaviest weights form a prefix), so scanning all (j, s) windows with
    prefix sums of H is exhaustive.  Cross-checked against the generic
    additive solver and the brute oracle in tests.
    """
    if n < 1:
        raise ValueError("need at least one agent")
    h = harmonic_number(n)
    best = None  # (profit, j, s)
    for j in range(1, n + 1):
        t = Fraction(1, 2 * j) / h
        for s in range(1, n - j + 2):
            reward = harmonic_number(j + s - 1) - harmonic_number(j - 1)
            profit = (1 - t * s) * reward
            if profit < 0:
                break
            if best is None or profit > best[0]:
                best = (profit, j, s)
    assert best is not None
    profit, j, s = best
    if profit <= 0:
        return SolveResult(
            Contract.zero(), frozenset(), Fraction(0), "closed_form_scan",
            {"family": "harmonic", "n": n, "window": []},
        )
    t = Fraction(1, 2 * j) / harmonic_number(n)
    paid = frozenset(range(j, j + s))
    return SolveResult(
        contract=EqualPayContract(t, paid).expand(),
        equilibrium=frozenset(paid),
        objective_value=profit,
        branch="closed_form_scan",
        trace={"family": "harmonic", "n": n, "window": [j, j + s - 1], "t": t},
    )


def harmonic_equal_pay_reward_bound(n: int, j: int) -> Fraction:
    """Upper bound on the reward any equal-pay optimum at level 1/(2 j H_n)
    can collect: the paid window starting at j has at most 2 j H_n further
    agents before the payment budget is spent, so the reward is at most
    H_{floor(j + 2 j H_n)} - H_{j-1}."""
    top = j + math.floor(2 * j * harmonic_number(n))
    return harmonic_number(top) - harmonic_number(j - 1)


#### subadditive family: equal pay loses a polynomial factor

def gen_subadditive_poe(n: int) -> tuple[Instance, Contract, frozenset[int]]:
    """n binary agents (n a perfect square >= 16), one heavy agent.

    Reward jumps by 1/sqrt(n) when the last agent joins; agent n's cost is
    calibrated so the witness contract (1/(2n) to the small agents, 1/4 to
    agent n) makes everyone exactly indifferent on the full profile.
    """
    reward = SubadditivePoE(n)
    root = reward.root
    cost = {i: Fraction(1, 2 * n * root) for i in range(1, n)}
    cost[n] = Fraction(1, 4 * root)
    inst = Instance(
        action_owner={i: i for i in range(1, n + 1)},
        action_cost=cost,
        reward=reward,
    )
    pays = {i: Fraction(1, 2 * n) for i in range(1, n)}
    pays[n] = Fraction(1, 4)
    witness = Contract(pays)
    profile = frozenset(range(1, n + 1))
    _assert_nash(inst, witness, profile)
    return inst, witness, profile


def _subadditive_config_value(n: int, small: int, include_heavy: bool):
    """Reward and per-kind minimal shares for the profile with `small` small
    workers (+ the heavy agent when asked).  Binary actions mean the only
    deviation is dropping out, so the minimal share is cost over the reward
    drop from leaving."""
    reward = SubadditivePoE(n)
    size = small + (1 if include_heavy else 0)
    if size == 0:
        return Fraction(0), None, None
    f_full = reward.value(frozenset(range(1, size + 1)))
    f_minus = reward.value(frozenset(range(1, size)))
    drop = f_full - f_minus  # same for every member: value depends on |S| only
    assert drop > 0
    root = math.isqrt(n)
    lo_small = (Fraction(1, 2 * n * root) / drop) if small else None
    lo_heavy = (Fraction(1, 4 * root) / drop) if include_heavy else None
    return f_full, lo_small, lo_heavy


def subadditive_equal_pay_scan(
    n: int, objective: str = "profit", unit_budget: bool = True
) -> SolveResult:
    """Exact best equal-pay pair for the subadditive family with the total
    payment capped at 1 (the hypothesis under which the family's equal-pay
    reward is provably at most 2/sqrt(n); without the cap, paying every agent
    the full reward share 1 is an equilibrium and the bound fails).

    Small agents are interchangeable, so profiles are scanned by (number of
    small workers, heavy agent in or out) with closed-form minimal levels.
    """
    if objective not in ("profit", "reward"):
        raise ValueError("scan supports profit and reward objectives")
    best = (Fraction(0), None)  # value, (small, heavy, t, f)
    for include_heavy in (False, True):
        for small in range(0, n):
            size = small + (1 if include_heavy else 0)
            if size == 0:
                continue
            f, lo_small, lo_heavy = _subadditive_config_value(n, small, include_heavy)
            t = max(lo_small or Fraction(0), lo_heavy or Fraction(0))
            if t > 1:
                continue
            if unit_budget and t * size > 1:
                continue
            value = f if objective == "reward" else (1 - t * size) * f
            if value > best[0]:
                best = (value, (small, include_heavy, t, f))
    if best[1] is None:
        return SolveResult(
            Contract.zero(), frozenset(), Fraction(0), "closed_form_scan",
            {"family": "subadditive_poe", "n": n},
        )
    small, include_heavy, t, f = best[1]
    members = list(range(1, small + 1)) + ([n] if include_heavy else [])
    paid = frozenset(members)
    return SolveResult(
        contract=EqualPayContract(t, paid).expand(),
        equilibrium=paid,
        objective_value=best[0],
        branch="closed_form_scan",
        trace={
            "family": "subadditive_poe",
            "n": n,
            "objective": objective,
            "small_workers": small,
            "heavy": include_heavy,
            "t": t,
            "reward": f,
        },
    )


def subadditive_optimal_scan(n: int, objective: str = "profit") -> SolveResult:
    """Exact best unconstrained pair for the subadditive family (per-agent
    minimal shares, no shared level, no budget cap)."""
    if objective not in ("profit", "reward"):
        raise ValueError("scan supports profit and reward objectives")
    best = (Fraction(0), None)
    for include_heavy in (False, True):
        for small in range(0, n):
            size = small + (1 if include_heavy else 0)
            if size == 0:
                continue
            f, lo_small, lo_heavy = _subadditive_config_value(n, small, include_heavy)
            if (lo_small is not None and lo_small > 1) or (
                lo_heavy is not None and lo_heavy > 1
            ):
                continue
            total = (lo_small or Fraction(0)) * small + (lo_heavy or Fraction(0)) * (
                1 if include_heavy else 0
            )
            value = f if objective == "reward" else (1 - total) * f
            if value > best[0]:
                best = (value, (small, include_heavy, lo_small, lo_heavy, f))
    if best[1] is None:
        return SolveResult(
            Contract.zero(), frozenset(), Fraction(0), "closed_form_scan",
            {"family": "subadditive_poe", "n": n},
        )
    small, include_heavy, lo_small, lo_heavy, f = best[1]
    pays = {i: lo_small for i in range(1, small + 1)}
    if include_heavy:
        pays[n] = lo_heavy
    profile = frozenset(pays)
    return SolveResult(
        contract=Contract(pays),
        equilibrium=profile,
        objective_value=best[0],
        branch="closed_form_scan",
        trace={
            "family": "subadditive_poe",
            "n": n,
            "objective": objective,
            "small_workers": small,
            "heavy": include_heavy,
        },
    )


#### hidden-group family: untargeted contracts cannot find the group

@dataclass(frozen=True)
class HardnessParams:
    """Parameters of the hidden-group family: ell >= 2 and a hidden agent
    group of size ell**2 among ell**7 agents."""

    ell: int
    g_agents: frozenset[int]

    def __post_init__(self):
        if self.ell < 2:
            raise ValueError("ell must be at least 2")
        object.__setattr__(self, "g_agents", frozenset(self.g_agents))
        if len(self.g_agents) != self.ell**2:
            raise ValueError(
                f"group must have exactly {self.ell ** 2} agents, "
                f"got {len(self.g_agents)}"
            )
        if not all(1 <= i <= self.ell**7 for i in self.g_agents):
            raise ValueError("group member outside the agent range")

    @property
    def n(self) -> int:
        return self.ell**7

    @property
    def actions_per_agent(self) -> int:
        return self.ell**3

    @property
    def action_cost(self) -> Fraction:
        return Fraction(1, 2 * self.ell**3)


def sample_hidden_group(ell: int, seed: int) -> frozenset[int]:
    """Uniform ell**2-subset of the ell**7 agents, deterministic in the seed."""
    rng = random.Random(seed)
    return frozenset(rng.sample(range(1, ell**7 + 1), ell**2))


def gen_xos_hardness(
    ell: int,
    g_agents: Iterable[int] | None = None,
    seed: int | None = None,
    variant: str = "informed",
) -> Instance:
    """Materialize the hidden-group instance: ell**7 agents, ell**3 actions
    each (action ids laid out agent-major, 1-based), uniform cost 1/(2 ell**3).

    The "informed" variant's reward knows the group; "blind" drops the group
    term entirely.  Only small ell are materializable (ell**10 actions); the
    query-level classifiers below work for any ell without an instance.
    """
    if variant not in ("informed", "blind"):
        raise ValueError(f"unknown variant {variant!r}")
    if variant == "informed":
        if g_agents is None:
            if seed is None:
                raise ValueError("informed variant needs a group or a seed")
            g_agents = sample_hidden_group(ell, seed)
        params = HardnessParams(ell, frozenset(g_agents))
        reward_group = params.g_agents
    else:
        if ell < 2:
            raise ValueError("ell must be at least 2")
        reward_group = None
    if ell > 3:
        raise CapExceeded(
            f"materializing ell={ell} means {ell ** 10} actions; "
            "use the query classifiers instead"
        )
    n = ell**7
    per = ell**3
    owner = {}
    cost = {}
    c = Fraction(1, 2 * per)
    for i in range(1, n + 1):
        for a in range(per):
            j = (i - 1) * per + a + 1
            owner[j] = i
            cost[j] = c
    return Instance(owner, cost, HardnessXOS(ell, reward_group))


def hardness_witness(
    instance: Instance, g_agents: Iterable[int], ell: int
) -> tuple[Contract, frozenset[int]]:
    """The group-aware pair: eqcontract(1/(2 ell**2), G) with the profile of
    all the group's actions.  Verified as an exact equilibrium."""
    g = frozenset(g_agents)
    contract = EqualPayContract(Fraction(1, 2 * ell**2), g).expand()
    profile = frozenset(j for j in instance.actions if instance.owner(j) in g)
    _assert_nash(instance, contract, profile)
    return contract, profile


def cheap_agents(prices, ell: int) -> frozenset[int]:
    """Agents owning at least one action priced at most 1/ell (absent price
    entries are infinite).  Agent of action j is (j-1) // ell**3 + 1."""
    per = ell**3
    threshold = Fraction(1, ell)
    out = set()
    for j, p in prices.items():
        if p != math.inf and rat(p) <= threshold:
            out.add((int(j) - 1) // per + 1)
    return frozenset(out)


def classify_query_informative(
    prices, g_agents: Iterable[int], ell: int
) -> tuple[bool, int, int]:
    """A price query is informative about the hidden group when the set L of
    agents it prices cheaply is small (|L| < 2 ell**4) yet overlaps the group
    in more than ell agents.  Returns (informative, |L|, |L n G|)."""
    g = frozenset(g_agents)
    low = cheap_agents(prices, ell)
    overlap = len(low & g)
    informative = len(low) < 2 * ell**4 and overlap > ell
    return informative, len(low), overlap


def classify_contract_aligned(contract: Contract, g_agents: Iterable[int], ell: int) -> bool:
    """A contract is aligned with the hidden group when it pays more than ell
    of the group's agents at least 1/(2 ell**2) each, within total budget 1."""
    g = frozenset(g_agents)
    threshold = Fraction(1, 2 * ell**2)
    rich = sum(1 for i in g if contract.pay(i) >= threshold)
    return rich > ell and contract.total() <= 1


def hypergeometric_overlap_tail(population: int, marked: int, draws: int, more_than: int) -> Fraction:
    """P[|X n M| > more_than] for a uniform `draws`-subset X of a population
    containing `marked` marked items.  Exact rational."""
    total = math.comb(population, draws)
    acc = 0
    for t in range(more_than + 1, min(marked, draws) + 1):
        acc += math.comb(marked, t) * math.comb(population - marked, draws - t)
    return Fraction(acc, total)


def informative_probability_exact(prices, ell: int) -> Fraction:
    """Probability over a uniformly hidden group that the given price query is
    informative.  Zero when the query prices too many agents cheaply; else the
    exact hypergeometric tail P[|L n G| > ell]."""
    low = cheap_agents(prices, ell)
    if len(low) >= 2 * ell**4:
        return Fraction(0)
    return hypergeometric_overlap_tail(ell**7, len(low), ell**2, ell)


def fixed_subset_probability(ell: int) -> Fraction:
    """P[a fixed (ell+1)-subset of agents lies inside the hidden group]:
    product of (ell^2 - t) / (ell^7 - t) over t = 0..ell."""
    p = Fraction(1)
    for t in range(ell + 1):
        p *= Fraction(ell**2 - t, ell**7 - t)
    return p


#### set systems reduced to coverage instances

@dataclass(frozen=True)
class SetSystem:
    """A k-cover search instance: elements 1..universe, each agent's set has
    exactly universe/k elements."""

    universe: int
    k: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(frozenset(s) for s in self.sets))
        if self.universe % self.k != 0:
            raise ValueError("universe size must be divisible by k")
        size = self.universe // self.k
        for idx, s in enumerate(self.sets):
            if len(s) != size:
                raise ValueError(
                    f"set {idx + 1} has {len(s)} elements, expected {size}"
                )
            if not all(1 <= e <= self.universe for e in s):
                raise ValueError(f"set {idx + 1} leaves the universe")

    def to_json_dict(self) -> dict:
        return {
            "universe": self.universe,
            "k": self.k,
            "sets": [sorted(s) for s in self.sets],
        }


def set_system_from_json_dict(d: dict) -> SetSystem:
    return SetSystem(d["universe"], d["k"], tuple(frozenset(s) for s in d["sets"]))


def gen_matroid_reduction(sys: SetSystem) -> Instance:
    """Each agent i gets one action per element of her set, covering exactly
    that element with weight 1/universe; all costs are 1/(2 k universe).
    Action ids are (i-1)*universe + element."""
    u = sys.universe
    weight = Fraction(1, u)
    owner = {}
    cost = {}
    covers = {}
    c = Fraction(1, 2 * sys.k * u)
    for idx, s in enumerate(sys.sets):
        i = idx + 1
        for e in sorted(s):
            j = (i - 1) * u + e
            owner[j] = i
            cost[j] = c
            covers[j] = frozenset({e})
    reward = Coverage({e: weight for e in range(1, u + 1)}, covers, scale=1)
    return Instance(owner, cost, reward)


def matroid_good_system() -> tuple[SetSystem, tuple[int, ...]]:
    """Three sets over four elements, k=2; sets 1 and 2 form a disjoint cover."""
    sys = SetSystem(4, 2, (frozenset({1, 2}), frozenset({3, 4}), frozenset({1, 3})))
    return sys, (1, 2)


def matroid_bad_system() -> SetSystem:
    """A sunflower: four 2-element sets over sixteen elements sharing element
    1, k=8.  No small union covers much, certified by check_covering_property."""
    return SetSystem(16, 8, tuple(frozenset({1, i + 1}) for i in range(1, 5)))


def check_covering_property(sys: SetSystem) -> list[tuple[int, Fraction, Fraction]]:
    """Certify that every union of b <= 2k sets covers at most the fraction
    1 - e^{-b/k} + 1/100 of the universe, using the exact rational bound
    e^{-1/k} < 1 / (1 + 1/k + 1/(2k^2) + 1/(6k^3)).

    Returns per-size rows (b, worst covered fraction, certified floor of the
    allowance); raises AssertionError naming the first violating union.
    """
    k = sys.k
    taylor = 1 + Fraction(1, k) + Fraction(1, 2 * k * k) + Fraction(1, 6 * k**3)
    decay = 1 / taylor  # certified upper bound on e^{-1/k}
    rows = []
    agents = range(len(sys.sets))
    for b in range(1, min(2 * k, len(sys.sets)) + 1):
        allowance = 1 - decay**b + Fraction(1, 100)
        worst = Fraction(0)
        for combo in combinations(agents, b):
            covered = set()
            for idx in combo:
                covered |= sys.sets[idx]
            frac = Fraction(len(covered), sys.universe)
            worst = max(worst, frac)
            assert frac <= allowance, (
                f"union of sets {[i + 1 for i in combo]} covers {frac}, "
                f"above the allowance {allowance} for b={b}"
            )
        rows.append((b, worst, allowance))
    return rows


#### coverage gap: equal pay forfeits nearly all reward

def gen_coverage_gap(eps: Fraction | str) -> Instance:
    """Agent 1 owns a good and a bait action over a 4-element universe, agent
    2 owns one action.  A targeted contract induces the unique equilibrium
    containing the good action with reward 1 + 3 eps, while every equal-pay
    contract stops at reward 3 eps."""
    eps = rat(eps)
    if not (0 < eps < Fraction(2, 5)):
        raise ValueError(f"eps must lie in (0, 2/5), got {eps}")
    weights = {1: Fraction(1), 2: eps, 3: eps, 4: eps}
    return Instance(
        action_owner={1: 1, 2: 1, 3: 2},
        action_cost={1: 1 + eps / 3, 2: eps, 3: eps**4},
        reward=Coverage(
            weights,
            {1: frozenset({1, 2}), 2: frozenset({2, 3}), 3: frozenset({3, 4})},
            scale=1 + 3 * eps,
        ),
    )


def coverage_gap_witness(eps: Fraction | str) -> tuple[Contract, frozenset[int]]:
    """The targeted pair for the coverage-gap instance: contract
    (1 - eps^2, eps) whose unique equilibrium {1, 3} collects the heavy
    element.  Verified as an exact equilibrium."""
    eps = rat(eps)
    inst = gen_coverage_gap(eps)
    contract = Contract({1: 1 - eps**2, 2: eps})
    profile = frozenset({1, 3})
    _assert_nash(inst, contract, profile)
    return contract, profile


#### seeded random generators

_COST_GRID = [Fraction(g, 64) for g in range(0, 17)]


def gen_random_coverage(
    n: int, actions_per_agent: int, universe_size: int, density: float, seed: int
) -> Instance:
    """Random coverage instance: each action covers each element independently
    with the given density; costs from the dyadic grid {0, 1/64, ..., 1/4};
    element weights from {1/4, 2/4, 3/4, 1}.  Deterministic in the seed."""
    rng = random.Random(seed)
    weights = {e: Fraction(rng.randint(1, 4), 4) for e in range(1, universe_size + 1)}
    owner = {}
    cost = {}
    covers = {}
    j = 0
    for i in range(1, n + 1):
        for _ in range(actions_per_agent):
            j += 1
            owner[j] = i
            cost[j] = rng.choice(_COST_GRID)
            covers[j] = frozenset(
                e for e in range(1, universe_size + 1) if rng.random() < density
            )
    return Instance(owner, cost, Coverage(weights, covers))


def gen_random_additive(n: int, m: int, seed: int, zero_cost_share: float = 0.15) -> Instance:
    """Random additive instance on m actions spread round-robin over n agents;
    weights from the dyadic grid {1/16..1}, costs from {0} with the given
    share else {1/64..1/4}."""
    rng = random.Random(seed)
    owner = {j: (j - 1) % n + 1 for j in range(1, m + 1)}
    weights = {j: Fraction(rng.randint(1, 16), 16) for j in range(1, m + 1)}
    cost = {}
    for j in range(1, m + 1):
        if rng.random() < zero_cost_share:
            cost[j] = Fraction(0)
        else:
            cost[j] = Fraction(rng.randint(1, 16), 64)
    return Instance(owner, cost, Additive(weights))


def gen_random_xos(n: int, m: int, clauses: int, seed: int) -> Instance:
    """Random explicit-XOS instance: each clause gives each action a dyadic
    weight (zero with probability 1/2)."""
    rng = random.Random(seed)
    owner = {j: (j - 1) % n + 1 for j in range(1, m + 1)}
    cost = {j: Fraction(rng.randint(0, 12), 64) for j in range(1, m + 1)}
    cls = []
    for _ in range(clauses):
        cl = {}
        for j in range(1, m + 1):
            if rng.random() < 0.5:
                cl[j] = Fraction(rng.randint(1, 16), 16)
        cls.append(cl)
    return Instance(owner, cost, XOSExplicit(cls))


def gen_random_binary_xos(n: int, clauses: int, seed: int) -> Instance:
    """Random explicit-XOS instance with exactly one action per agent
    (action i belongs to agent i), for the binary-actions solver."""
    rng = random.Random(seed)
    owner = {i: i for i in range(1, n + 1)}
    cost = {i: Fraction(rng.randint(0, 10), 32) for i in range(1, n + 1)}
    cls = []
    for _ in range(clauses):
        cl = {}
        for i in range(1, n + 1):
            if rng.random() < 0.7:
                cl[i] = Fraction(rng.randint(1, 16), 16)
        cls.append(cl)
    return Instance(owner, cost, XOSExplicit(cls))
