"""Core types for multi-agent contract design with combinatorial actions.

Agents own disjoint finite action sets.  Performing a set of actions costs the
sum of per-action costs; the principal observes a monotone set-valued reward
over all performed actions and pays each agent a fixed share of it.  All
numeric state is kept as exact `fractions.Fraction` values; infinite prices use
`INF` (float infinity compares exactly against rationals and is never mixed
into arithmetic).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

INF = float("inf")

DEFAULT_BRUTE_CAP = 20
MAX_BRUTE_CAP = 24
CAP_ENV_VAR = "FAIRPAY_BRUTE_CAP"


class FairpayError(Exception):
    """Base class for library errors."""


class CapExceeded(FairpayError):
    """An exhaustive enumeration would exceed the configured size cap."""


class PreconditionError(FairpayError):
    """An operation was called outside its documented domain."""


class NonAdditiveReward(PreconditionError):
    pass


class NotBinaryActions(PreconditionError):
    pass


class NonGSClass(PreconditionError):
    pass


class NotGammaEqualPay(PreconditionError):
    pass


class NonMonotoneObjective(PreconditionError):
    pass


class PaymentOverflow(FairpayError):
    """A payment share left the [0, 1] range."""


class NoConvergence(FairpayError):
    """Best-response dynamics exhausted its step budget."""


class PostconditionFailed(FairpayError):
    """A self-verifying construction produced output violating its own
    guarantee; surfaces tie-break or model bugs instead of hiding them."""


#### rational helpers

def rat(x: int | str | Fraction) -> Fraction:
    """Coerce ints, Fractions, or 'p/q' strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x: Fraction) -> str:
    """Serialize a Fraction as 'p/q' (denominator always explicit)."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def is_infinite(x) -> bool:
    return x == INF


def price_of(cost: Fraction, share: Fraction) -> Fraction | float:
    """Per-action price cost/share with the conventions 0/0 = 0 and c/0 = INF."""
    if share == 0:
        return Fraction(0) if cost == 0 else INF
    return Fraction(cost, 1) / share


def lex_key(s: Iterable[int]) -> tuple[int, ...]:
    """Canonical sort key for sets of ids: compare as sorted tuples."""
    return tuple(sorted(s))


def profile_key(s: Iterable[int]) -> tuple:
    """Tie-break key preferring smaller sets, then lexicographic."""
    t = tuple(sorted(s))
    return (len(t), t)


def resolve_cap(cap: int | None) -> int:
    """Effective brute-force cap: explicit arg, else env override, else default."""
    if cap is None:
        raw = os.environ.get(CAP_ENV_VAR)
        cap = int(raw) if raw else DEFAULT_BRUTE_CAP
    if not (1 <= cap <= MAX_BRUTE_CAP):
        raise ValueError(
            f"brute cap {cap} outside [1, {MAX_BRUTE_CAP}]"
        )
    return cap


#### run configuration

@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by CLI commands and batch runs."""

    brute_cap: int = DEFAULT_BRUTE_CAP
    seed: int = 0
    fmt: str = "json"
    float_digits: int = 6

    def __post_init__(self):
        if not (1 <= self.brute_cap <= MAX_BRUTE_CAP):
            raise ValueError(f"brute_cap must lie in [1, {MAX_BRUTE_CAP}]")
        if self.fmt not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.fmt!r}")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in 64 bits")


#### instances

class Instance:
    """An environment: agents, their actions, action costs, and the reward.

    Agent and action ids are arbitrary distinct non-negative ints; generators
    in this package use 1-based ids.  Instances are immutable by convention:
    nothing in the library mutates one after construction.
    """

    def __init__(
        self,
        action_owner: Mapping[int, int],
        action_cost: Mapping[int, Fraction | int | str],
        reward,
        agents: Iterable[int] | None = None,
    ):
        self._owner = {int(j): int(i) for j, i in action_owner.items()}
        self._cost = {int(j): rat(c) for j, c in action_cost.items()}
        if set(self._owner) != set(self._cost):
            raise ValueError("action_owner and action_cost must share keys")
        for j, c in self._cost.items():
            if c < 0:
                raise ValueError(f"action {j} has negative cost {c}")
        agent_set = set(self._owner.values())
        if agents is not None:
            extra = agent_set - set(agents)
            if extra:
                raise ValueError(f"actions owned by unlisted agents {sorted(extra)}")
            agent_set = set(agents)
        self.agents: tuple[int, ...] = tuple(sorted(agent_set))
        self.actions: tuple[int, ...] = tuple(sorted(self._owner))
        self._actions_of: dict[int, frozenset[int]] = {
            i: frozenset(j for j, o in self._owner.items() if o == i)
            for i in self.agents
        }
        self.reward = reward
        self._check_reward_range()

    def _check_reward_range(self):
        scale = self.reward.scale
        assert scale > 0, "reward scale must be positive"
        v0 = self.reward.value(frozenset())
        assert v0 == 0, f"reward at the empty set is {v0}, expected 0"
        ground = frozenset(self.actions)
        probes = [ground] + [frozenset({j}) for j in self.actions]
        for s in probes:
            v = self.reward.value(s)
            assert 0 <= v <= scale, (
                f"reward {v} outside [0, {scale}] at {sorted(s)}"
            )

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def m(self) -> int:
        return len(self.actions)

    def owner(self, j: int) -> int:
        return self._owner[j]

    def cost(self, j: int) -> Fraction:
        return self._cost[j]

    def actions_of(self, i: int) -> frozenset[int]:
        return self._actions_of.get(i, frozenset())

    def cost_of(self, s: Iterable[int]) -> Fraction:
        return sum((self._cost[j] for j in s), Fraction(0))

    def part(self, s: frozenset[int], i: int) -> frozenset[int]:
        """Actions of agent i inside profile s."""
        return s & self._actions_of.get(i, frozenset())

    def active_agents(self, s: Iterable[int]) -> frozenset[int]:
        """Agents with at least one action in s."""
        return frozenset(self._owner[j] for j in s)

    def restrict(self, s: Iterable[int], group: Iterable[int]) -> frozenset[int]:
        """Drop from s every action owned outside the agent group."""
        g = set(group)
        return frozenset(j for j in s if self._owner[j] in g)

    def value(self, s: Iterable[int]) -> Fraction:
        return self.reward.value(frozenset(s))

    def agent_utility(self, contract: "Contract", s: frozenset[int], i: int) -> Fraction:
        """Reward share minus own action costs at the joint profile s."""
        return contract.pay(i) * self.value(s) - self.cost_of(self.part(s, i))

    def principal_utility(self, contract: "Contract", s: frozenset[int]) -> Fraction:
        """Residual reward share kept by the principal (may be negative)."""
        return (1 - contract.total()) * self.value(s)

    def validate_actions(self, s: Iterable[int]):
        for j in s:
            if j not in self._owner:
                raise ValueError(f"unknown action id {j}")

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "agents": list(self.agents),
            "actions": [
                {"id": j, "agent": self._owner[j], "cost": rat_str(self._cost[j])}
                for j in self.actions
            ],
            "reward": self.reward.to_json_dict(),
        }

    def __repr__(self):
        return f"Instance(n={self.n}, m={self.m}, reward={self.reward.kind})"


def instance_from_json_dict(d: dict) -> Instance:
    from .rewards import reward_from_json_dict

    owner = {a["id"]: a["agent"] for a in d["actions"]}
    cost = {a["id"]: rat(a["cost"]) for a in d["actions"]}
    reward = reward_from_json_dict(d["reward"])
    return Instance(owner, cost, reward, agents=d.get("agents"))


def load_instance(path: str) -> Instance:
    with open(path) as fh:
        return instance_from_json_dict(json.load(fh))


def dump_instance(instance: Instance, path: str):
    with open(path, "w") as fh:
        json.dump(instance.to_json_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")


#### contracts

class Contract:
    """A payment share in [0, 1] per agent; unlisted agents are paid 0."""

    def __init__(self, payments: Mapping[int, Fraction | int | str]):
        pays = {}
        for i, a in payments.items():
            a = rat(a)
            if not (0 <= a <= 1):
                raise PaymentOverflow(f"payment {a} to agent {i} outside [0, 1]")
            if a != 0:
                pays[int(i)] = a
        self._pay = pays

    @staticmethod
    def zero() -> "Contract":
        return Contract({})

    def pay(self, i: int) -> Fraction:
        return self._pay.get(i, Fraction(0))

    def total(self) -> Fraction:
        return sum(self._pay.values(), Fraction(0))

    def support(self) -> frozenset[int]:
        return frozenset(self._pay)

    def restricted(self, group: Iterable[int]) -> "Contract":
        g = set(group)
        return Contract({i: a for i, a in self._pay.items() if i in g})

    def scaled(self, factor: Fraction) -> "Contract":
        return Contract({i: a * factor for i, a in self._pay.items()})

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self._pay)

    def max_pay(self) -> Fraction:
        return max(self._pay.values(), default=Fraction(0))

    def min_nonzero_pay(self) -> Fraction:
        return min(self._pay.values(), default=Fraction(0))

    def to_json_dict(self) -> dict:
        return {str(i): rat_str(a) for i, a in sorted(self._pay.items())}

    def __eq__(self, other):
        return isinstance(other, Contract) and self._pay == other._pay

    def __repr__(self):
        inner = ", ".join(f"{i}: {a}" for i, a in sorted(self._pay.items()))
        return f"Contract({{{inner}}})"


def contract_from_json_dict(d: Mapping[str, str]) -> Contract:
    return Contract({int(i): rat(a) for i, a in d.items()})


@dataclass(frozen=True)
class EqualPayContract:
    """The same share t for every agent in the paid set, zero elsewhere."""

    t: Fraction
    paid: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "t", rat(self.t))
        object.__setattr__(self, "paid", frozenset(self.paid))
        if not (0 <= self.t <= 1):
            raise PaymentOverflow(f"equal-pay level {self.t} outside [0, 1]")
        if self.t == 0 and self.paid:
            # canonical form: zero payment means nobody is "paid"
            object.__setattr__(self, "paid", frozenset())

    def expand(self) -> Contract:
        return Contract({i: self.t for i in self.paid})

    def to_json_dict(self) -> dict:
        return {"t": rat_str(self.t), "paid": sorted(self.paid)}


def is_equal_pay(contract: Contract) -> bool:
    """True when all nonzero payments are equal."""
    pays = set(contract.as_dict().values())
    return len(pays) <= 1


def gamma_spread(contract: Contract) -> Fraction:
    """Ratio of largest to smallest nonzero payment (1 if at most one level)."""
    pays = sorted(set(contract.as_dict().values()))
    if not pays:
        return Fraction(1)
    return pays[-1] / pays[0]


#### objectives

class Objective:
    """Score assigned to a (contract, equilibrium) pair.

    `alpha_antitone` attests the score never increases when payments rise
    (with the profile fixed); the brute-force oracles rely on it to pick
    minimal payments.  `sandwich` attests the score sits between the
    principal's utility and the reward and decomposes across agents, the
    class the transform guarantees are proven for.
    """

    kind: str = "custom"
    alpha_antitone: bool = False
    sandwich: bool = False

    def value(self, instance: Instance, contract: Contract, s: frozenset[int]) -> Fraction:
        raise NotImplementedError

    def __repr__(self):
        return f"Objective({self.kind})"


class _Profit(Objective):
    kind = "profit"
    alpha_antitone = True
    sandwich = True

    def value(self, instance, contract, s):
        return max(Fraction(0), instance.principal_utility(contract, s))


class _Reward(Objective):
    kind = "reward"
    alpha_antitone = True
    sandwich = True

    def value(self, instance, contract, s):
        return instance.value(s)


class _Welfare(Objective):
    """Reward minus total action cost.  Payment-independent, hence antitone,
    but NOT in the sandwich class: on arbitrary profiles it can undershoot
    the principal's utility, so transform guarantees are not claimed for it."""

    kind = "welfare"
    alpha_antitone = True
    sandwich = False

    def value(self, instance, contract, s):
        return instance.value(s) - instance.cost_of(s)


class CustomObjective(Objective):
    def __init__(
        self,
        fn: Callable[[Instance, Contract, frozenset[int]], Fraction],
        name: str = "custom",
        alpha_antitone: bool = False,
        sandwich: bool = False,
    ):
        self._fn = fn
        self.kind = name
        self.alpha_antitone = alpha_antitone
        self.sandwich = sandwich

    def value(self, instance, contract, s):
        return self._fn(instance, contract, s)


PROFIT = _Profit()
REWARD = _Reward()
WELFARE = _Welfare()

_OBJECTIVES = {"profit": PROFIT, "reward": REWARD, "welfare": WELFARE}


@dataclass(frozen=True)
class SolveResult:
    """A solver's output: the contract, one verified equilibrium of it, the
    objective value there, which branch produced it, and a trace of the
    decisions taken along the way (plain JSON-serializable data)."""

    contract: Contract
    equilibrium: frozenset[int]
    objective_value: Fraction
    branch: str
    trace: dict

    def to_json_dict(self) -> dict:
        return {
            "contract": self.contract.to_json_dict(),
            "equilibrium": sorted(self.equilibrium),
            "objective_value": rat_str(self.objective_value),
            "branch": self.branch,
            "trace": _jsonify(self.trace),
        }


def _jsonify(x):
    """Recursively turn traces into JSON-ready data ('p/q' for rationals)."""
    if isinstance(x, Fraction):
        return rat_str(x)
    if isinstance(x, Contract):
        return x.to_json_dict()
    if isinstance(x, EqualPayContract):
        return x.to_json_dict()
    if isinstance(x, (frozenset, set)):
        return sorted(x)
    if isinstance(x, dict):
        return {str(k): _jsonify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonify(v) for v in x]
    if x == INF:
        return "inf"
    return x


def parse_objective(name: str) -> Objective:
    try:
        return _OBJECTIVES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown objective {name!r}") from None


def objective_eval(
    instance: Instance, objective: Objective, contract: Contract, s: frozenset[int]
) -> Fraction:
    return objective.value(instance, contract, s)
