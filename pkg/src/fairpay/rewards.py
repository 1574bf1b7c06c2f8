"""Reward families and their value / marginal / demand interfaces.

A reward assigns every action set a nonnegative rational value, is monotone,
and vanishes at the empty set.  `scale` records a rational upper bound on the
value (instances check it on cheap probes; lookup tables check exhaustively).

Price mappings are sparse: an action id missing from the mapping is priced at
infinity and never enters a demanded set.  Demanded sets maximize
value(S) - price(S); ties prefer fewer actions, then the lexicographically
smallest id tuple.  Additive, partition-matroid, and explicit-XOS rewards have
exact polynomial demand; the other classes enumerate subsets of the finitely
priced actions under the brute cap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .core import INF, CapExceeded, lex_key, rat, rat_str, resolve_cap

Price = Fraction | float  # Fraction, or INF


def _finite_items(prices: Mapping[int, Price]) -> list[tuple[int, Fraction]]:
    out = []
    for j, p in prices.items():
        if p == INF:
            continue
        out.append((int(j), rat(p)))
    out.sort()
    return out


class RewardSpec:
    """Base reward interface."""

    kind = "abstract"
    # conservative class flags; a flag may be False for a reward that happens
    # to lie in the class, but True always certifies membership
    submodular_class = False
    xos_class = False
    gs_class = False
    subadditive_class = True
    # True when value depends only on each agent's action COUNT (given the
    # other agents' actions), enabling size-representative enumeration
    per_agent_size_symmetric = False

    scale: Fraction

    def value(self, s: frozenset[int]) -> Fraction:
        raise NotImplementedError

    def marginal(self, j: int, s: frozenset[int]) -> Fraction:
        return self.value(s | {j}) - self.value(s)

    def demand(self, prices: Mapping[int, Price], cap: int | None = None) -> frozenset[int]:
        return _exhaustive_demand(self.value, prices, cap)

    def to_json_dict(self) -> dict:
        raise NotImplementedError


def _exhaustive_demand(value_fn, prices, cap) -> frozenset[int]:
    items = _finite_items(prices)
    cap = resolve_cap(cap)
    if len(items) > cap:
        raise CapExceeded(
            f"demand over {len(items)} finitely priced actions exceeds cap {cap}"
        )
    ids = [j for j, _ in items]
    cost = [p for _, p in items]
    best_set: frozenset[int] = frozenset()
    best_surplus = Fraction(0)  # empty set baseline
    best_key = (0, ())
    for mask in range(1, 1 << len(ids)):
        chosen = [ids[b] for b in range(len(ids)) if mask >> b & 1]
        s = frozenset(chosen)
        surplus = value_fn(s) - sum(
            (cost[b] for b in range(len(ids)) if mask >> b & 1), Fraction(0)
        )
        if surplus < best_surplus:
            continue
        key = (len(chosen), tuple(chosen))
        if surplus > best_surplus or key < best_key:
            best_set, best_surplus, best_key = s, surplus, key
    return best_set


#### concrete families

class Additive(RewardSpec):
    """value(S) = sum of per-action weights."""

    kind = "additive"
    submodular_class = True
    xos_class = True
    gs_class = True

    def __init__(self, weights: Mapping[int, Fraction | int | str], scale=None):
        self.weights = {int(j): rat(w) for j, w in weights.items()}
        for j, w in self.weights.items():
            if w < 0:
                raise ValueError(f"negative weight {w} on action {j}")
        total = sum(self.weights.values(), Fraction(0))
        self.scale = rat(scale) if scale is not None else max(total, Fraction(1))
        if total > self.scale:
            raise ValueError("scale below the maximum attainable value")

    def value(self, s):
        return sum((self.weights.get(j, Fraction(0)) for j in s), Fraction(0))

    def marginal(self, j, s):
        return Fraction(0) if j in s else self.weights.get(j, Fraction(0))

    def demand(self, prices, cap=None):
        # strict surplus keeps the set minimal; the maximizer support is unique
        return frozenset(
            j for j, p in _finite_items(prices) if self.weights.get(j, Fraction(0)) > p
        )

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "weights": {str(j): rat_str(w) for j, w in sorted(self.weights.items())},
            "scale": rat_str(self.scale),
        }


class Coverage(RewardSpec):
    """Each action covers a set of weighted elements; value = weight covered."""

    kind = "coverage"
    submodular_class = True
    xos_class = True

    def __init__(
        self,
        element_weights: Mapping,
        covers: Mapping[int, Iterable],
        scale=None,
    ):
        self.element_weights = {e: rat(w) for e, w in element_weights.items()}
        for e, w in self.element_weights.items():
            if w < 0:
                raise ValueError(f"negative weight {w} on element {e!r}")
        self.covers = {int(j): frozenset(es) for j, es in covers.items()}
        for j, es in self.covers.items():
            unknown = es - set(self.element_weights)
            if unknown:
                raise ValueError(f"action {j} covers unknown elements {sorted(unknown)}")
        total = sum(self.element_weights.values(), Fraction(0))
        self.scale = rat(scale) if scale is not None else max(total, Fraction(1))
        if total > self.scale:
            raise ValueError("scale below the maximum attainable value")

    def value(self, s):
        covered = set()
        for j in s:
            covered |= self.covers[j]
        return sum((self.element_weights[e] for e in covered), Fraction(0))

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "element_weights": {
                str(e): rat_str(w) for e, w in sorted(self.element_weights.items())
            },
            "covers": {str(j): sorted(es) for j, es in sorted(self.covers.items())},
            "scale": rat_str(self.scale),
        }


class PartitionMatroidRank(RewardSpec):
    """unit * number of parts touched by S, for a fixed partition of actions."""

    kind = "partition_matroid"
    submodular_class = True
    xos_class = True
    gs_class = True

    def __init__(self, parts: Iterable[Iterable[int]], unit: Fraction | int | str = 1):
        self.parts = tuple(frozenset(int(j) for j in p) for p in parts)
        seen: set[int] = set()
        for p in self.parts:
            if not p:
                raise ValueError("empty part")
            if p & seen:
                raise ValueError("parts must be disjoint")
            seen |= p
        self.unit = rat(unit)
        if self.unit <= 0:
            raise ValueError("unit must be positive")
        self.scale = self.unit * len(self.parts)
        self._part_of = {j: idx for idx, p in enumerate(self.parts) for j in p}

    def value(self, s):
        touched = {self._part_of[j] for j in s}
        return self.unit * len(touched)

    def demand(self, prices, cap=None):
        # within each part only the cheapest action matters; take it only for
        # strictly positive surplus (keeps the maximizer minimal)
        chosen = []
        by_part: dict[int, tuple[Fraction, int]] = {}
        for j, p in _finite_items(prices):
            idx = self._part_of.get(j)
            if idx is None:
                continue
            cur = by_part.get(idx)
            if cur is None or (p, j) < cur:
                by_part[idx] = (p, j)
        for _, (p, j) in sorted(by_part.items()):
            if self.unit - p > 0:
                chosen.append(j)
        return frozenset(chosen)

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "parts": [sorted(p) for p in self.parts],
            "unit": rat_str(self.unit),
        }


class XOSExplicit(RewardSpec):
    """Max over finitely many additive clauses."""

    kind = "xos"
    xos_class = True

    def __init__(self, clauses: Iterable[Mapping[int, Fraction | int | str]], scale=None):
        self.clauses = []
        for cl in clauses:
            cl = {int(j): rat(w) for j, w in cl.items()}
            for j, w in cl.items():
                if w < 0:
                    raise ValueError(f"negative clause weight {w} on action {j}")
            self.clauses.append(cl)
        if not self.clauses:
            self.clauses = [{}]
        best = max(
            (sum(cl.values(), Fraction(0)) for cl in self.clauses), default=Fraction(0)
        )
        self.scale = rat(scale) if scale is not None else max(best, Fraction(1))
        if best > self.scale:
            raise ValueError("scale below the maximum attainable value")

    def value(self, s):
        if not s:
            return Fraction(0)
        return max(
            sum((cl.get(j, Fraction(0)) for j in s), Fraction(0)) for cl in self.clauses
        )

    def demand(self, prices, cap=None):
        # per clause, the minimal clause-optimal set keeps strictly profitable
        # actions; the best of those over clauses is a true global maximizer
        items = _finite_items(prices)
        best_set: frozenset[int] = frozenset()
        best_surplus = Fraction(0)
        best_key = (0, ())
        for cl in self.clauses:
            chosen = [j for j, p in items if cl.get(j, Fraction(0)) > p]
            s = frozenset(chosen)
            surplus = self.value(s) - sum(
                (p for j, p in items if j in s), Fraction(0)
            )
            key = (len(chosen), tuple(sorted(chosen)))
            if surplus > best_surplus or (surplus == best_surplus and key < best_key):
                best_set, best_surplus, best_key = s, surplus, key
        return best_set

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "clauses": [
                {str(j): rat_str(w) for j, w in sorted(cl.items())} for cl in self.clauses
            ],
            "scale": rat_str(self.scale),
        }


class LookupTable(RewardSpec):
    """Explicit table over all subsets of a fixed action tuple.

    Intended for small counterexamples and corrupted-input tests; validation
    enumerates every inclusion to certify monotonicity.
    """

    kind = "table"

    def __init__(
        self,
        order: Iterable[int],
        values,
        scale=None,
        validate=True,
        claim_submodular=False,
        claim_xos=False,
        claim_gs=False,
    ):
        self.order = tuple(int(j) for j in order)
        if len(set(self.order)) != len(self.order):
            raise ValueError("duplicate action ids in table order")
        if len(self.order) > 16:
            raise CapExceeded("lookup tables support at most 16 actions")
        self.values = tuple(rat(v) for v in values)
        if len(self.values) != 1 << len(self.order):
            raise ValueError("table size must be 2**len(order)")
        top = max(self.values, default=Fraction(0))
        self.scale = rat(scale) if scale is not None else max(top, Fraction(1))
        self._bit = {j: b for b, j in enumerate(self.order)}
        # caller-attested class membership (probe_submodular can audit it)
        self.submodular_class = bool(claim_submodular)
        self.gs_class = bool(claim_gs)
        self.xos_class = bool(claim_xos or claim_submodular or claim_gs)
        if validate:
            self.validate()

    @classmethod
    def from_function(cls, order, fn, scale=None, **claims):
        order = tuple(order)
        vals = []
        for mask in range(1 << len(order)):
            s = frozenset(order[b] for b in range(len(order)) if mask >> b & 1)
            vals.append(rat(fn(s)))
        return cls(order, vals, scale=scale, **claims)

    def validate(self):
        """Exhaustive check: empty value 0, range [0, scale], monotone.

        Raises ValueError naming a witness on the first violation.
        """
        if self.values[0] != 0:
            raise ValueError(f"table value at the empty set is {self.values[0]}")
        for mask, v in enumerate(self.values):
            if not (0 <= v <= self.scale):
                raise ValueError(
                    f"table value {v} outside [0, {self.scale}] at mask {mask}"
                )
        for mask in range(len(self.values)):
            for b in range(len(self.order)):
                if mask >> b & 1:
                    continue
                bigger = mask | (1 << b)
                if self.values[bigger] < self.values[mask]:
                    s = sorted(self.order[t] for t in range(len(self.order)) if mask >> t & 1)
                    raise ValueError(
                        f"monotonicity violated: adding action {self.order[b]} to "
                        f"{s} drops value {self.values[mask]} -> {self.values[bigger]}"
                    )

    def _mask(self, s):
        mask = 0
        for j in s:
            mask |= 1 << self._bit[j]
        return mask

    def value(self, s):
        return self.values[self._mask(s)]

    def to_json_dict(self):
        out = {
            "kind": self.kind,
            "order": list(self.order),
            "values": [rat_str(v) for v in self.values],
            "scale": rat_str(self.scale),
        }
        claims = {
            "submodular": self.submodular_class,
            "xos": self.xos_class,
            "gs": self.gs_class,
        }
        if any(claims.values()):
            out["claims"] = claims
        return out


class HardnessXOS(RewardSpec):
    """Closed-form XOS family over a grid of ell**7 agents with ell**3 actions
    each (agent of action j is (j-1) // ell**3 + 1, ids 1-based).

    With a hidden agent group G the value of a nonempty S is
    max(active agents, |S restricted to G's actions| / ell, ell**3); the blind
    variant omits the group term.  Values depend only on per-agent action
    counts, so equilibrium checks may enumerate one deviation per size.
    """

    kind = "hardness_xos"
    xos_class = True
    per_agent_size_symmetric = True

    def __init__(self, ell: int, g_agents: Iterable[int] | None):
        if ell < 2:
            raise ValueError("ell must be at least 2")
        self.ell = ell
        self.g_agents = None if g_agents is None else frozenset(int(i) for i in g_agents)
        if self.g_agents is not None:
            n = ell**7
            bad = [i for i in self.g_agents if not (1 <= i <= n)]
            if bad:
                raise ValueError(f"group agents {bad} outside 1..{n}")
        self.scale = Fraction(ell**7)

    def agent_of(self, j: int) -> int:
        return (j - 1) // self.ell**3 + 1

    def value(self, s):
        if not s:
            return Fraction(0)
        agents = set()
        g_hits = 0
        for j in s:
            i = self.agent_of(j)
            agents.add(i)
            if self.g_agents is not None and i in self.g_agents:
                g_hits += 1
        best = Fraction(max(len(agents), self.ell**3))
        if self.g_agents is not None:
            best = max(best, Fraction(g_hits, self.ell))
        return best

    def to_json_dict(self):
        return {
            "kind": self.kind,
            "ell": self.ell,
            "g_agents": None if self.g_agents is None else sorted(self.g_agents),
        }


class SubadditivePoE(RewardSpec):
    """Closed-form subadditive family on n binary agents (n a perfect square;
    action i belongs to agent i).  Value depends only on |S| with a jump when
    every agent works."""

    kind = "subadditive_poe"
    per_agent_size_symmetric = True

    def __init__(self, n: int):
        import math

        if n < 16 or math.isqrt(n) ** 2 != n:
            raise ValueError("n must be a perfect square >= 16")
        self.n = n
        self.root = math.isqrt(n)
        self.scale = Fraction(2, self.root) + Fraction(n - 1, n)

    def value(self, s):
        k = len(s)
        if k == 0:
            return Fraction(0)
        if k <= self.n - 1:
            return Fraction(1, self.root) + Fraction(k, self.n)
        return Fraction(2, self.root) + Fraction(self.n - 1, self.n)

    def to_json_dict(self):
        return {"kind": self.kind, "n": self.n}


#### module-level operations

def value(reward: RewardSpec, s: Iterable[int]) -> Fraction:
    return reward.value(frozenset(s))


def marginal(reward: RewardSpec, j: int, s: Iterable[int]) -> Fraction:
    return reward.marginal(j, frozenset(s))


def demand(reward: RewardSpec, prices: Mapping[int, Price], cap: int | None = None) -> frozenset[int]:
    return reward.demand(prices, cap)


def capped_share_value(instance, k: int, s: frozenset[int]) -> Fraction:
    """Reward discounted once more than k agents are active:
    value(S) * min(1, k / active agents)."""
    v = instance.value(s)
    a = len(instance.active_agents(s))
    if a <= k:
        return v
    return v * Fraction(k, a)


def approx_demand_regularized(
    instance, prices: Mapping[int, Price], k: int
) -> frozenset[int]:
    """Approximate maximizer of the agent-capped surplus g(S) - price(S),
    g(S) = value(S) * min(1, k / active agents).

    Runs distorted greedy with exact rational distortion ((m-1)/m)**i over the
    m finitely priced actions; for monotone submodular g the result Q is
    guaranteed to satisfy g(Q) - p(Q) >= (1 - (1-1/m)**m) g(S) - p(S) >=
    (1 - 1/e) g(S) - p(S) for every S.  The cap g is not monotone in general,
    so the guarantee is validated exhaustively in tests rather than assumed;
    the empty set (surplus 0) is always an available outcome.
    """
    items = _finite_items(prices)
    mhat = len(items)
    if mhat == 0:
        return frozenset()
    memo: dict[frozenset[int], Fraction] = {}

    def g(s: frozenset[int]) -> Fraction:
        got = memo.get(s)
        if got is None:
            got = memo[s] = capped_share_value(instance, k, s)
        return got

    ratio = Fraction(mhat - 1, mhat)
    chosen: frozenset[int] = frozenset()
    remaining = dict(items)
    for step in range(mhat):
        factor = ratio ** (mhat - step - 1)
        best_j = None
        best_gain = Fraction(0)
        for j in sorted(remaining):
            gain = factor * (g(chosen | {j}) - g(chosen)) - remaining[j]
            if gain > best_gain:
                best_j, best_gain = j, gain
        if best_j is None:
            continue
        chosen = chosen | {best_j}
        del remaining[best_j]
    return chosen


def probe_submodular(
    reward: RewardSpec, actions: Iterable[int], cap: int | None = None
):
    """Exhaustively search for a submodularity violation over the given
    actions: a triple (S, U, j) with S subset of U, j outside U, and
    marginal(j, S) < marginal(j, U).  Returns None or the first witness in
    lexicographic mask order."""
    ids = sorted(set(actions))
    cap = resolve_cap(cap)
    if len(ids) > cap:
        raise CapExceeded(f"{len(ids)} actions exceed cap {cap}")
    msize = len(ids)
    vals = {}
    for mask in range(1 << msize):
        s = frozenset(ids[b] for b in range(msize) if mask >> b & 1)
        vals[mask] = reward.value(s)
    for big in range(1 << msize):
        sub = big
        while True:
            for b in range(msize):
                if big >> b & 1:
                    continue
                bit = 1 << b
                if vals[sub | bit] - vals[sub] < vals[big | bit] - vals[big]:
                    to_set = lambda m: frozenset(ids[t] for t in range(msize) if m >> t & 1)
                    return (to_set(sub), to_set(big), ids[b])
            if sub == 0:
                break
            sub = (sub - 1) & big
    return None


#### serialization

def reward_from_json_dict(d: dict) -> RewardSpec:
    kind = d["kind"]
    if kind == "additive":
        return Additive({int(j): rat(w) for j, w in d["weights"].items()}, d.get("scale"))
    if kind == "coverage":
        weights = {_element_key(e): rat(w) for e, w in d["element_weights"].items()}
        covers = {int(j): frozenset(es) for j, es in d["covers"].items()}
        return Coverage(weights, covers, d.get("scale"))
    if kind == "partition_matroid":
        return PartitionMatroidRank(d["parts"], d["unit"])
    if kind == "xos":
        clauses = [{int(j): rat(w) for j, w in cl.items()} for cl in d["clauses"]]
        return XOSExplicit(clauses, d.get("scale"))
    if kind == "table":
        claims = d.get("claims", {})
        return LookupTable(
            d["order"],
            d["values"],
            d.get("scale"),
            claim_submodular=claims.get("submodular", False),
            claim_xos=claims.get("xos", False),
            claim_gs=claims.get("gs", False),
        )
    if kind == "hardness_xos":
        return HardnessXOS(d["ell"], d.get("g_agents"))
    if kind == "subadditive_poe":
        return SubadditivePoE(d["n"])
    raise ValueError(f"unknown reward kind {kind!r}")


def _element_key(e):
    # coverage element ids round-trip as ints when they look like ints
    if isinstance(e, str) and (e.isdigit() or (e[:1] == "-" and e[1:].isdigit())):
        return int(e)
    return e
