"""Hard instances for the lower bounds, weight presets, and decoders.

Two families are generated:

* ``UNWEIGHTED``: k sources s_i, each joined to a transit u_i by a path of
  h edges, k targets t_j, and a path v ... v' of h edges.  Every s_i is
  adjacent to v, every t_j to v', and u_i t_j is an edge iff bit x_ij is 1.
* ``WEIGHTED``: built around a balanced bipartite graph G of girth >= ell
  whose sides become the transits and the targets.  One bit per edge of G
  decides whether the edge is kept.  The v ... v' path has h - 1 edges,
  edges v' t_j weigh w0, kept u_i t_j edges weigh w1, edges at s_i weigh
  w2 and everything else weighs 1.

Node ids: chain i occupies ``i*(h+1) .. i*(h+1)+h`` (s_i first, u_i
last), targets follow at ``k*(h+1) + j`` and the v-path comes last.
"""

from __future__ import annotations

import json
import math
import random
import warnings
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .graphcore import (
    INF,
    Graph,
    bipartition,
    girth,
    hop_distances,
    shortest_path_counts,
)
from .surd import Surd


class LowerBoundError(ValueError):
    pass


class GirthTooSmall(LowerBoundError):
    pass


class PresetInvalid(LowerBoundError):
    pass


class InfeasibleEpsilon(LowerBoundError):
    pass


class TargetUnreachable(UserWarning):
    """Greedy edge insertion saturated before reaching the requested edge count."""


class Kind(str, Enum):
    UNWEIGHTED = "unweighted"
    WEIGHTED = "weighted"


class Problem(str, Enum):
    ORACLE = "oracle"
    STATELESS = "stateless"
    STATEFUL = "stateful"


Bits = Union[str, Sequence[int]]


def _parse_bits(X: Bits, m: int) -> tuple:
    if isinstance(X, str):
        if set(X) - {"0", "1"}:
            raise LowerBoundError(f"bit string may only contain 0 and 1: {X!r}")
        bits = tuple(int(c) for c in X)
    else:
        bits = tuple(int(b) for b in X)
        if any(b not in (0, 1) for b in bits):
            raise LowerBoundError("bits must be 0 or 1")
    if len(bits) != m:
        raise LowerBoundError(f"expected {m} bits, got {len(bits)}")
    return bits


def random_bits(m: int, seed) -> tuple:
    rng = random.Random(f"bits/{seed}")
    return tuple(rng.getrandbits(1) for _ in range(m))


def _bits_for(X: Optional[Bits], seed, m: int) -> tuple:
    if X is None:
        if seed is None:
            raise LowerBoundError("pass either X or seed")
        return random_bits(m, seed)
    return _parse_bits(X, m)


@dataclass(frozen=True)
class Roles:
    sources: tuple
    transits: tuple
    targets: tuple
    v: int
    v_prime: int
    path: tuple  # v ... v' inclusive
    chains: tuple  # chains[i] = s_i ... u_i inclusive

    def to_dict(self) -> dict:
        return {
            "sources": list(self.sources),
            "transits": list(self.transits),
            "targets": list(self.targets),
            "v": self.v,
            "v_prime": self.v_prime,
            "path": list(self.path),
            "chains": [list(c) for c in self.chains],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Roles":
        return cls(
            tuple(d["sources"]), tuple(d["transits"]), tuple(d["targets"]),
            d["v"], d["v_prime"], tuple(d["path"]), tuple(tuple(c) for c in d["chains"]),
        )


def _layout(k: int, h: int, path_edges: int) -> Roles:
    chains = tuple(tuple(range(i * (h + 1), (i + 1) * (h + 1))) for i in range(k))
    targets = tuple(k * (h + 1) + j for j in range(k))
    base = k * (h + 2)
    path = tuple(range(base, base + path_edges + 1))
    return Roles(
        sources=tuple(c[0] for c in chains),
        transits=tuple(c[-1] for c in chains),
        targets=targets,
        v=path[0],
        v_prime=path[-1],
        path=path,
        chains=chains,
    )


@dataclass
class GammaInstance:
    graph: Graph
    kind: Kind
    k: int
    h: int
    X: tuple
    index: tuple  # index[b] = (i, j): bit b governs edge u_i t_j
    roles: Roles
    ell: Optional[int] = None
    weights: Optional[tuple] = None  # (w0, w1, w2)
    base: Optional[Graph] = None
    sides: Optional[tuple] = None  # base-graph node ids of (transits, targets)

    @property
    def m(self) -> int:
        return len(self.X)

    @property
    def A(self) -> frozenset:
        return frozenset(self.roles.transits) | frozenset(self.roles.targets)

    @property
    def B(self) -> frozenset:
        return frozenset(self.roles.sources)

    def s(self, i: int) -> int:
        return self.roles.sources[i]

    def u(self, i: int) -> int:
        return self.roles.transits[i]

    def t(self, j: int) -> int:
        return self.roles.targets[j]

    def bit(self, i: int, j: int) -> int:
        return self.X[self.index.index((i, j))]

    @property
    def d1(self):
        """Source-target distance when the bit is 1."""
        if self.kind is Kind.UNWEIGHTED:
            return self.h + 1
        w0, w1, w2 = self.weights
        return w2 + w1 + self.h - 1

    @property
    def d0(self):
        """Source-target distance when the bit is 0."""
        if self.kind is Kind.UNWEIGHTED:
            return self.h + 2
        w0, w1, w2 = self.weights
        return w2 + w0 + self.h - 1

    def bitstring(self) -> str:
        return "".join(map(str, self.X))

    def to_dict(self) -> dict:
        d = {
            "graph": self.graph.to_dict(),
            "kind": self.kind.value,
            "k": self.k,
            "h": self.h,
            "ell": self.ell,
            "X": self.bitstring(),
            "index": [list(p) for p in self.index],
            "roles": self.roles.to_dict(),
            "weights": list(self.weights) if self.weights else None,
        }
        if self.base is not None:
            d["base"] = self.base.to_dict()
            d["sides"] = [list(s) for s in self.sides]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GammaInstance":
        base = Graph.from_dict(d["base"]) if d.get("base") else None
        return cls(
            graph=Graph.from_dict(d["graph"]),
            kind=Kind(d["kind"]),
            k=d["k"],
            h=d["h"],
            X=_parse_bits(d["X"], len(d["X"])),
            index=tuple(tuple(p) for p in d["index"]),
            roles=Roles.from_dict(d["roles"]),
            ell=d.get("ell"),
            weights=tuple(d["weights"]) if d.get("weights") else None,
            base=base,
            sides=tuple(tuple(s) for s in d["sides"]) if base is not None else None,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, s: str) -> "GammaInstance":
        return cls.from_dict(json.loads(s))


# ---------------------------------------------------------------- generators


def gen_unweighted(k: int, h: int, X: Optional[Bits] = None, seed=None) -> GammaInstance:
    """Unweighted instance over the complete bipartite pattern; bit (i, j) is at index i*k + j."""
    if k < 1 or h < 1:
        raise LowerBoundError(f"need k >= 1 and h >= 1, got k={k}, h={h}")
    bits = _bits_for(X, seed, k * k)
    roles = _layout(k, h, h)
    edges = []
    for chain in roles.chains:
        edges += [(a, b, 1) for a, b in zip(chain, chain[1:])]
    edges += [(a, b, 1) for a, b in zip(roles.path, roles.path[1:])]
    edges += [(roles.v, s, 1) for s in roles.sources]
    edges += [(roles.v_prime, t, 1) for t in roles.targets]
    index = tuple((i, j) for i in range(k) for j in range(k))
    edges += [(roles.transits[i], roles.targets[j], 1) for b, (i, j) in enumerate(index) if bits[b]]
    g = Graph(k * (h + 2) + h + 1, edges)
    return GammaInstance(g, Kind.UNWEIGHTED, k, h, bits, index, roles)


def _check_weights(ell: int, w0, w1, w2) -> None:
    if not (w1 < w0 < (ell - 1) * w1):
        raise PresetInvalid(f"need w1 < w0 < (ell-1)*w1, got w0={w0}, w1={w1}, ell={ell}")
    if min(w0, w1, w2) < 1:
        raise PresetInvalid("weights must be positive integers")


def gen_weighted(G: Graph, h: int, preset: "WeightPreset", X: Optional[Bits] = None, seed=None,
                 sides: Optional[tuple] = None) -> GammaInstance:
    """Weighted instance around the balanced bipartite graph ``G``.

    ``sides`` fixes which side of ``G`` holds the transits (first) and the
    targets (second); by default the 2-colouring that puts G's smallest
    node among the transits.  Bit b belongs to the b-th edge of
    ``G.edges()``.
    """
    ell = preset.ell
    if h < 2:
        raise LowerBoundError(f"weighted instances need h >= 2, got {h}")
    if ell < 4 or ell % 2:
        raise LowerBoundError(f"ell must be even and >= 4, got {ell}")
    _check_weights(ell, preset.w0, preset.w1, preset.w2)
    if sides is None:
        sides = bipartition(G)
        if sides is None:
            raise LowerBoundError("base graph is not bipartite")
    left, right = (tuple(sorted(s)) for s in sides)
    if len(left) != len(right):
        raise LowerBoundError(f"base graph is not balanced ({len(left)} vs {len(right)})")
    if set(left) | set(right) != set(G.nodes) or set(left) & set(right):
        raise LowerBoundError("sides must partition the base graph's nodes")
    g_girth = girth(G)
    if g_girth < ell:
        raise GirthTooSmall(f"base graph has girth {g_girth} < {ell}")

    k = len(left)
    pos_l = {a: i for i, a in enumerate(left)}
    pos_r = {b: j for j, b in enumerate(right)}
    index = []
    for a, b, _ in G.edges():
        if a in pos_l and b in pos_r:
            index.append((pos_l[a], pos_r[b]))
        elif b in pos_l and a in pos_r:
            index.append((pos_l[b], pos_r[a]))
        else:
            raise LowerBoundError(f"edge ({a}, {b}) does not cross the bipartition")
    index = tuple(index)
    bits = _bits_for(X, seed, len(index))

    w0, w1, w2 = preset.w0, preset.w1, preset.w2
    roles = _layout(k, h, h - 1)
    edges = []
    for chain in roles.chains:
        edges.append((chain[0], chain[1], w2))
        edges += [(a, b, 1) for a, b in zip(chain[1:], chain[2:])]
    edges += [(a, b, 1) for a, b in zip(roles.path, roles.path[1:])]
    edges += [(roles.v, s, w2) for s in roles.sources]
    edges += [(roles.v_prime, t, w0) for t in roles.targets]
    edges += [(roles.transits[i], roles.targets[j], w1) for b, (i, j) in enumerate(index) if bits[b]]
    g = Graph(k * (h + 2) + h, edges)
    return GammaInstance(g, Kind.WEIGHTED, k, h, bits, index, roles, ell=ell,
                         weights=(w0, w1, w2), base=G, sides=(left, right))


# ---------------------------------------------------------------- verification


@dataclass(frozen=True)
class PairRecord:
    i: int
    j: int
    x: int
    measured: object
    expected: object
    via_v_some: bool  # v lies on at least one shortest path
    via_v_all: bool  # v lies on every shortest path

    @property
    def ok(self) -> bool:
        if self.measured != self.expected:
            return False
        return self.via_v_all if self.x == 0 else not self.via_v_some


@dataclass
class VerificationReport:
    records: list
    d0: object
    d1: object
    hop_ab: object
    h: int

    @property
    def failures(self) -> list:
        return [r for r in self.records if not r.ok]

    @property
    def passed(self) -> bool:
        return self.hop_ab == self.h and not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        bad = self.failures
        head = f"{len(self.records) - len(bad)}/{len(self.records)} pairs ok, hop(A,B)={self.hop_ab} (h={self.h})"
        if bad:
            r = bad[0]
            head += f"; first failure (i={r.i}, j={r.j}, x={r.x}): d={r.measured}, expected {r.expected}"
        return head


def hop_separation(inst: GammaInstance):
    d = hop_distances(inst.graph, inst.B)
    return min(d[a] for a in inst.A)


def _verify(inst: GammaInstance) -> VerificationReport:
    g, roles = inst.graph, inst.roles
    dv, cv = shortest_path_counts(g, roles.v)
    by_source: dict = {}
    records = []
    for b, (i, j) in enumerate(inst.index):
        s, t = inst.s(i), inst.t(j)
        if i not in by_source:
            by_source[i] = shortest_path_counts(g, s)
        ds, cs = by_source[i]
        d = ds[t]
        some = d != INF and ds[roles.v] + dv[t] == d
        every = some and cs[roles.v] * cv[t] == cs[t]
        x = inst.X[b]
        records.append(PairRecord(i, j, x, d, inst.d1 if x else inst.d0, some, every))
    return VerificationReport(records, inst.d0, inst.d1, hop_separation(inst), inst.h)


def verify_unweighted(inst: GammaInstance) -> VerificationReport:
    """Check every source-target distance (h+1 for bit 1, h+2 for bit 0) and the via-v orientation."""
    if inst.kind is not Kind.UNWEIGHTED:
        raise LowerBoundError("verify_unweighted needs an unweighted instance")
    return _verify(inst)


def verify_weighted(inst: GammaInstance) -> VerificationReport:
    """Check d(s_i, t_j) = w2 + w{1,0} + h - 1 and the via-v orientation for every edge of G."""
    if inst.kind is not Kind.WEIGHTED:
        raise LowerBoundError("verify_weighted needs a weighted instance")
    return _verify(inst)


# ---------------------------------------------------------------- presets


SQRT2 = Surd.sqrt(2)
SQRT17 = Surd.sqrt(17)

# (w0/t, w1/t, w2/t, stretch before epsilon) for stateful routing
STATEFUL_TABLE = {
    4: (2 * SQRT2 - 1, Surd(1), Surd(1), SQRT2),
    6: (Surd(Fraction(5, 2)), Surd(1), Surd(Fraction(5, 4)), Surd(Fraction(5, 3))),
    8: (Surd(Fraction(35, 11)), Surd(1), Surd(Fraction(21, 11)), Surd(Fraction(7, 4))),
    10: ((3 + SQRT17) / 2, Surd(1), (5 + SQRT17) / 4, (3 + SQRT17) / 4),
}


def stateless_coefficient(ell: int) -> Surd:
    """min(sqrt(ell - 1), 1 + sqrt 2); the square root is the smaller one up to ell = 6."""
    return Surd.sqrt(ell - 1) if ell <= 6 else 1 + SQRT2


def base_stretch(problem: Problem, ell: int) -> Surd:
    problem = Problem(problem)
    if problem is Problem.ORACLE:
        return Surd(ell - 1)
    if problem is Problem.STATELESS:
        return stateless_coefficient(ell)
    return STATEFUL_TABLE[min(ell, 10)][3]


@dataclass(frozen=True)
class WeightPreset:
    problem: Optional[Problem]
    ell: int
    epsilon: Fraction
    t: int
    w0: int
    w1: int
    w2: int
    alpha: Surd

    @property
    def weights(self) -> tuple:
        return (self.w0, self.w1, self.w2)

    @classmethod
    def custom(cls, ell: int, w0: int, w1: int, w2: int, alpha=None,
               problem: Optional[Problem] = None) -> "WeightPreset":
        a = Surd(alpha) if alpha is not None and not isinstance(alpha, Surd) else alpha
        return cls(Problem(problem) if problem else None, ell, Fraction(0), 1, w0, w1, w2,
                   a if a is not None else Surd(1))

    def with_alpha(self, alpha) -> "WeightPreset":
        return replace(self, alpha=alpha if isinstance(alpha, Surd) else Surd(alpha))

    def to_dict(self) -> dict:
        return {
            "problem": self.problem.value if self.problem else None,
            "ell": self.ell,
            "epsilon": str(self.epsilon),
            "t": self.t,
            "weights": [self.w0, self.w1, self.w2],
            "alpha": str(self.alpha),
            "alpha_float": float(self.alpha),
        }


@dataclass
class InequalityReport:
    ok: bool
    slacks: dict  # name -> rhs - lhs (Surd); every entry must be > 0
    d0: int
    d1: int
    d: dict  # d^(1) .. d^(5)

    def __bool__(self) -> bool:
        return self.ok

    def failing(self) -> list:
        return [name for name, s in self.slacks.items() if s <= 0]


def check_inequalities(preset: WeightPreset, h: int, problem: Optional[Problem] = None) -> InequalityReport:
    """Evaluate the strict inequality system of ``problem`` exactly.

    ORACLE: alpha * d1 < d0.  STATELESS: conditions 1 to 3.  STATEFUL:
    conditions 1 to 5.  The weight-ordering precondition is checked for
    every problem.
    """
    problem = Problem(problem or preset.problem or Problem.STATEFUL)
    w0, w1, w2, ell, a = preset.w0, preset.w1, preset.w2, preset.ell, preset.alpha
    d1 = w2 + w1 + h - 1
    d0 = w2 + w0 + h - 1
    d = {
        1: w0 + w2 + h - 1,
        2: (ell - 1) * w1 + w2 + h - 1,
        3: 2 * w0 + w1 + w2 + h - 1,
        4: w0 + 3 * w2 + h - 1,
        5: w1 + 3 * w2 + h - 1,
    }
    slacks = {
        "w1<w0": Surd(w0 - w1),
        "w0<(ell-1)w1": Surd((ell - 1) * w1 - w0),
    }
    if problem is Problem.ORACLE:
        slacks["alpha*d1<d0"] = d0 - a * d1
    else:
        slacks["(1)"] = d[1] - a * d1
        slacks["(2)"] = d[2] - a * d0
        slacks["(3)"] = d[3] - a * d0
        if problem is Problem.STATEFUL:
            slacks["(4)"] = d[4] - a * d0
            slacks["(5)"] = d[5] - a * d1
    ok = all(s > 0 for s in slacks.values())
    return InequalityReport(ok, slacks, d0, d1, d)


def _weights_at(problem: Problem, ell: int, eps: Fraction, t: int) -> tuple:
    if problem is Problem.ORACLE:
        return Surd(ell - 1 - eps / 2).ceil_times(t), t, 1
    if problem is Problem.STATELESS:
        return stateless_coefficient(ell).floor_times(t), t, 1
    c0, c1, c2, _ = STATEFUL_TABLE[min(ell, 10)]
    return c0.round_times(t), c1.round_times(t), c2.round_times(t)


def _initial_t(problem: Problem, ell: int, eps: Fraction, h: int) -> int:
    if problem is Problem.ORACLE:
        return math.floor(2 * (ell - 2 - eps) * h / eps) + 1
    if problem is Problem.STATELESS:
        return math.floor(h / eps) + 1
    return ((SQRT17 - 1) * (h - 1) / (4 * eps)).floor_times(1) + 1


def make_preset(problem, ell: int, epsilon, h: int, max_doublings: int = 64) -> WeightPreset:
    """Integer weights for ``problem`` at girth ``ell`` with stretch target alpha - epsilon.

    The scale t starts at the smallest integer above the analytic bound and
    is doubled until every strict inequality holds exactly.
    """
    problem = Problem(problem)
    eps = Fraction(epsilon) if not isinstance(epsilon, float) else Fraction(repr(epsilon))
    if ell < 4 or ell % 2:
        raise LowerBoundError(f"ell must be even and >= 4, got {ell}")
    if h < 2:
        raise LowerBoundError(f"h must be >= 2, got {h}")
    if eps <= 0:
        raise InfeasibleEpsilon(f"epsilon must be positive, got {epsilon}")
    top = base_stretch(problem, ell)
    alpha = top - eps
    if alpha <= 0:
        raise InfeasibleEpsilon(f"epsilon={epsilon} exceeds the stretch limit {float(top):.4f}")
    t = max(1, _initial_t(problem, ell, eps, h))
    for _ in range(max_doublings):
        w0, w1, w2 = _weights_at(problem, ell, eps, t)
        preset = WeightPreset(problem, ell, eps, t, w0, w1, w2, alpha)
        if check_inequalities(preset, h):
            return preset
        t *= 2
    raise InfeasibleEpsilon(f"no scale t satisfies the {problem.value} inequalities for ell={ell}, epsilon={epsilon}")


# ---------------------------------------------------------------- decoders


def decode_from_oracle(inst: GammaInstance, estimates: Mapping) -> tuple:
    """Bit b is 1 iff the estimate for its pair is below d0."""
    d0 = inst.d0
    return tuple(1 if estimates[p] < d0 else 0 for p in inst.index)


def decode_from_routing(inst: GammaInstance, first_hops: Mapping, unweighted: Optional[bool] = None) -> tuple:
    """Bit b is 0 iff the packet from s_i to t_j leaves through v.

    Both families share this orientation; ``unweighted`` is accepted for
    symmetry with callers that record it and does not change the rule.
    """
    v = inst.roles.v
    return tuple(0 if first_hops[p] == v else 1 for p in inst.index)


def bit_accuracy(X: Sequence[int], X_hat: Sequence[int]) -> float:
    if len(X) != len(X_hat):
        raise ValueError("bit strings differ in length")
    if not X:
        return 1.0
    return sum(a == b for a, b in zip(X, X_hat)) / len(X)


@dataclass
class ReductionResult:
    X_oracle: tuple
    X_routing: tuple
    acc_oracle: float
    acc_routing: float
    estimates: dict = field(repr=False, default_factory=dict)
    first_hops: dict = field(repr=False, default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.acc_oracle == 1.0 and self.acc_routing == 1.0


def reduction_trial(inst: GammaInstance, scheme) -> ReductionResult:
    """Decode X from a scheme's oracle answers and first hops at the sources."""
    estimates = {}
    hops = {}
    for i, j in inst.index:
        s, t = inst.s(i), inst.t(j)
        estimates[(i, j)] = scheme.oracle(s, t)
        hops[(i, j)] = scheme.next_hop(s, t)
    xo = decode_from_oracle(inst, estimates)
    xr = decode_from_routing(inst, hops)
    return ReductionResult(xo, xr, bit_accuracy(inst.X, xo), bit_accuracy(inst.X, xr), estimates, hops)


# ---------------------------------------------------------------- girth graphs


def _within(adj: list, a: int, b: int, limit: int) -> bool:
    """True if b is reachable from a in at most ``limit`` hops."""
    if a == b:
        return True
    seen = {a}
    frontier = deque([(a, 0)])
    while frontier:
        x, d = frontier.popleft()
        if d == limit:
            continue
        for y in adj[x]:
            if y == b:
                return True
            if y not in seen:
                seen.add(y)
                frontier.append((y, d + 1))
    return False


def high_girth_greedy(k: int, ell: int, target_edges: Optional[int] = None, seed=0) -> Graph:
    """Balanced bipartite graph on sides 0..k-1 and k..2k-1 with girth >= ell.

    Candidate edges are tried in a seeded random order and kept whenever
    they close no cycle shorter than ``ell``.  Without ``target_edges`` the
    graph is grown to saturation; with it, :class:`TargetUnreachable` is
    warned if saturation comes first.
    """
    if ell < 4 or ell % 2:
        raise LowerBoundError(f"ell must be even and >= 4, got {ell}")
    if k < 1:
        raise LowerBoundError(f"k must be >= 1, got {k}")
    explicit = target_edges is not None
    if not explicit:
        target_edges = k * k
    cand = [(i, k + j) for i in range(k) for j in range(k)]
    random.Random(f"girth/{seed}").shuffle(cand)
    adj: list = [set() for _ in range(2 * k)]
    edges = []
    for a, b in cand:
        if len(edges) >= target_edges:
            break
        # a new edge a-b closes a cycle of length dist(a, b) + 1
        if _within(adj, a, b, ell - 2):
            continue
        adj[a].add(b)
        adj[b].add(a)
        edges.append((a, b, 1))
    if explicit and len(edges) < target_edges:
        warnings.warn(f"saturated at {len(edges)} < {target_edges} edges for k={k}, ell={ell}",
                      TargetUnreachable, stacklevel=2)
    g = Graph(2 * k, edges)
    assert girth(g) >= ell
    return g


__all__ = [
    "Bits",
    "GammaInstance",
    "GirthTooSmall",
    "InequalityReport",
    "InfeasibleEpsilon",
    "Kind",
    "LowerBoundError",
    "PairRecord",
    "PresetInvalid",
    "Problem",
    "ReductionResult",
    "Roles",
    "STATEFUL_TABLE",
    "TargetUnreachable",
    "VerificationReport",
    "WeightPreset",
    "base_stretch",
    "bit_accuracy",
    "check_inequalities",
    "decode_from_oracle",
    "decode_from_routing",
    "gen_unweighted",
    "gen_weighted",
    "high_girth_greedy",
    "hop_separation",
    "make_preset",
    "random_bits",
    "reduction_trial",
    "stateless_coefficient",
    "verify_unweighted",
    "verify_weighted",
]
