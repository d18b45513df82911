"""Landmark distance oracles and routing schemes built inside the simulator.

Pipeline per scheme (one :class:`~hybrid_oracles.hybridsim.HybridNetwork`):

1. every node joins the landmark set S with probability 1/x;
2. ``explore(h)`` gives each node its h-hop ball;
3. RSSP: every node learns d(v, s) for all s in S;
4. labels are formed locally;
5. one local round exchanges oracle state with the neighbours so the
   routing functions can be evaluated.

Exact labels carry the distances to all of S, approximate labels only the
nearest landmark.  Oracle and routing functions are the min-of-two-routes
estimates; routing forwards to a neighbour whose estimate drops by the
edge weight (exactly, or at least).
"""

from __future__ import annotations

import heapq
import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .graphcore import INF, Graph, hop_limited, shortest_paths
from .hybridsim import (
    HybridConfig,
    HybridNetwork,
    Message,
    NodeProgram,
    RoundStats,
    SimulationError,
    Step,
    clog2,
)


class SchemeError(RuntimeError):
    pass


class SamplingFailure(SchemeError):
    """The landmark set misses the path-cover property on some pair.

    The built scheme is attached as ``.scheme`` so callers can still
    inspect it (estimates stay one-sided) or re-seed.
    """

    def __init__(self, msg: str, scheme=None, pair=None):
        super().__init__(msg)
        self.scheme = scheme
        self.pair = pair


class NoProgress(SchemeError):
    pass


class LoopDetected(SchemeError):
    pass


class HopBudgetExceeded(SchemeError):
    pass


class RsspMode(str, Enum):
    SIMULATED = "simulated"
    COST_MODEL = "cost_model"


# --- sampling --------------------------------------------------------------


@dataclass(frozen=True)
class SamplingConfig:
    n: int
    x: float
    ksi: float = 2.0

    def __post_init__(self):
        if not 1 <= self.x <= max(1, self.n):
            raise ValueError(f"x must lie in [1, n], got {self.x}")

    @property
    def h(self) -> int:
        """Hop radius ceil(ksi * x * ln n), at least 1."""
        return max(1, math.ceil(self.ksi * self.x * math.log(max(self.n, 2))))

    @classmethod
    def from_zeta(cls, n: int, zeta: float = 0.0, ksi: float = 2.0) -> "SamplingConfig":
        """x = n^(1/3 + zeta): labels of about n^(2/3 - zeta) entries."""
        return cls(n, min(float(n), n ** (1 / 3 + zeta)), ksi)


@dataclass(frozen=True)
class SampleSet:
    members: frozenset
    x: float
    seed: int

    def __len__(self):
        return len(self.members)

    def __contains__(self, v):
        return v in self.members


def sample(g: Graph, x: float, seed: int = 0) -> SampleSet:
    """Each node joins independently with probability 1/x."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    rng = random.Random(f"sample/{seed}")
    p = 1.0 / x
    members = frozenset(v for v in sorted(g.nodes) if rng.random() < p)
    return SampleSet(members, x, seed)


def cover_property(g: Graph, S, h: int) -> Optional[tuple[int, int]]:
    """First pair violating the landmark path-cover property, or None.

    A pair (u, w) is covered when some shortest u-w path has at most h
    edges, or some shortest u-w path has no run of h consecutive nodes
    outside S.  Checked exactly on the shortest-path DAG of every source.
    """
    S = set(S)
    for u in sorted(g.nodes):
        dist = shortest_paths(g, u).dist
        order = sorted((d, v) for v, d in enumerate(dist) if d != INF)
        hops = {u: 0}
        run = {u: 0 if u in S else 1}
        for d, w in order:
            if w == u:
                continue
            preds = [p for p, wt in g.adj[w].items() if dist[p] + wt == d]
            hops[w] = min(hops[p] + 1 for p in preds)
            best = INF
            for p in preds:
                if run[p] == INF:
                    continue
                best = min(best, 0 if w in S else run[p] + 1)
            run[w] = best if best <= h - 1 else INF
            if hops[w] > h and run[w] == INF:
                return (u, w)
    return None


# --- RSSP ------------------------------------------------------------------


def rssp_cost_rounds(n: int, x: float, c: float = 1.0, a: float = 1.0) -> int:
    """ceil(c * (n^(1/3) + n / x^2) * log2(n)^a)."""
    return math.ceil(c * (n ** (1 / 3) + n / x**2) * math.log2(max(n, 2)) ** a)


class _SkeletonBroadcast(NodeProgram):
    """All-gather of the skeleton edges over a global ring.

    Node i sends one packed message per round to node i+1 (mod n) and
    forwards every item not originating at its successor.  Items are a
    header (origin, number of entries) or an entry (origin, landmark,
    distance).  A node outputs once it holds every origin's header and all
    announced entries and its forwarding queue is empty.
    """

    def __init__(self, ctx, items, dist_local, S, id_bits, dist_bits, cap):
        super().__init__(ctx)
        self.succ = (ctx.node + 1) % ctx.n
        self.id_bits = id_bits
        self.dist_bits = dist_bits
        self.cap = cap
        self.dist_local = dist_local
        self.S = S
        self.queue = deque(items)
        self.expected = {}
        self.entries = []
        self.got = {}
        self.result = None
        for item in items:
            self._record(item)

    def _bits(self, item) -> int:
        if item[1] == "h":
            return 2 * self.id_bits
        return 2 * self.id_bits + self.dist_bits

    def _record(self, item) -> None:
        origin = item[0]
        if item[1] == "h":
            self.expected[origin] = item[2]
            self.got.setdefault(origin, 0)
        else:
            self.entries.append((origin, item[2], item[3]))
            self.got[origin] = self.got.get(origin, 0) + 1

    def _complete(self) -> bool:
        if len(self.expected) < self.ctx.n:
            return False
        return all(self.got.get(o, 0) == c for o, c in self.expected.items())

    def _next(self) -> Step:
        out = Step()
        if self.queue:
            packed, bits = [], 0
            while self.queue and bits + self._bits(self.queue[0]) <= self.cap:
                item = self.queue.popleft()
                packed.append(item)
                bits += self._bits(item)
            out.glob.append(Message(self.succ, tuple(packed), bits))
        elif self.result is None and self._complete():
            self.result = _landmark_distances(self.ctx.node, self.dist_local, self.entries, self.S)
            out.output = self.result
        return out

    def start(self):
        if self.ctx.n == 1:
            return Step(output=_landmark_distances(self.ctx.node, self.dist_local, [], self.S))
        return self._next()

    def step(self, local, glob):
        for rec in glob:
            for item in rec.payload:
                self._record(item)
                if item[0] != self.succ:
                    self.queue.append(item)
        return self._next()


def _landmark_distances(v, dist_local, entries, S) -> dict:
    """Dijkstra over the skeleton plus v's own h-hop distances to landmarks."""
    adj: dict = {}
    for a, b, d in entries:
        adj.setdefault(a, []).append((b, d))
        adj.setdefault(b, []).append((a, d))
    dist = {v: 0}
    heap = [(0, v)]
    done = set()
    while heap:
        d, a = heapq.heappop(heap)
        if a in done:
            continue
        done.add(a)
        nbrs = adj.get(a, []) if a != v else [(s, dist_local[s]) for s in S if s in dist_local]
        if a == v and a in adj:
            nbrs = nbrs + adj[a]
        for b, w in nbrs:
            nd = d + w
            if nd < dist.get(b, INF):
                dist[b] = nd
                heapq.heappush(heap, (nd, b))
    return {s: dist.get(s, INF) for s in S}


def default_config(g: Graph, c: float = 4.0) -> HybridConfig:
    """Standard config, raised on tiny graphs until one broadcast item fits."""
    std = HybridConfig.standard(g.n, c)
    need = 2 * (2 * clog2(g.n) + clog2(g.n * g.W + 1) + clog2(g.n))
    return std if std.gamma >= need else HybridConfig(gamma=need)


def solve_rssp(
    g: Graph,
    S,
    mode: Union[RsspMode, str] = RsspMode.SIMULATED,
    *,
    net: Optional[HybridNetwork] = None,
    dist_h: Optional[dict] = None,
    h: Optional[int] = None,
    cfg: Optional[HybridConfig] = None,
    x: Optional[float] = None,
    seed: int = 0,
    c: float = 1.0,
    a: float = 1.0,
):
    """Every node learns its distance to every landmark in S.

    Returns ``(dist_to_S, stats)`` with ``dist_to_S[v][s]``.  SIMULATED
    needs the h-hop distances of an earlier ``explore(h)`` (``dist_h``); if
    they are not supplied the exploration is run here and counted.
    COST_MODEL computes the distances centrally and charges
    :func:`rssp_cost_rounds` rounds.
    """
    mode = RsspMode(mode)
    S = frozenset(S)
    if not S:
        raise ValueError("RSSP needs at least one source")
    if net is None:
        net = HybridNetwork(g, cfg or default_config(g), seed)
    if mode is RsspMode.COST_MODEL:
        rows = {s: shortest_paths(g, s).dist for s in S}
        result = {v: {s: rows[s][v] for s in S} for v in g.nodes}
        net.charge_rounds(rssp_cost_rounds(g.n, x if x is not None else g.n ** (1 / 3), c, a), "rssp")
        return result, net.stats
    if dist_h is None:
        if h is None:
            raise ValueError("SIMULATED RSSP needs h (or precomputed dist_h)")
        views = net.explore(h)
        dist_h = {v: _ball_distances(views[v], v, h) for v in g.nodes}
    return _simulate_rssp(g, S, net, dist_h), net.stats


def _simulate_rssp(g: Graph, S: frozenset, net: HybridNetwork, dist_h: dict) -> dict:
    n = g.n
    id_bits = clog2(n)
    dist_bits = clog2(n * g.W + 1)
    cap = net.cfg.gamma // 2 - net.header
    if cap < 2 * id_bits + dist_bits:
        raise SimulationError(
            f"gamma={net.cfg.gamma} too small for skeleton broadcast items "
            f"({2 * id_bits + dist_bits} bits + {net.header} header, twice per round)"
        )
    if len(g.nodes) != n:
        raise ValueError("SIMULATED RSSP needs the vertex set 0..n-1")
    items = {}
    for v in range(n):
        own = [(v, "e", s, dist_h[v][s]) for s in sorted(S) if v in S and s > v and s in dist_h[v]]
        items[v] = [(v, "h", len(own))] + own
    total = sum(len(it) for it in items.values())
    max_rounds = 4 * (total + n) + 16

    def factory(ctx):
        v = ctx.node
        return _SkeletonBroadcast(ctx, items[v], dist_h[v], S, id_bits, dist_bits, cap)

    return net.run(factory, max_rounds, name="rssp")


def _ball_distances(view: Graph, v: int, h: int) -> dict:
    dist = hop_limited(view, v, h).dist_h
    return {u: d for u, d in enumerate(dist) if d != INF}


# --- labels ----------------------------------------------------------------


@dataclass(frozen=True)
class ExactLabel:
    owner: int
    entries: tuple  # ((s, d(s, owner)), ...) sorted by s


@dataclass(frozen=True)
class ApproxLabel:
    owner: int
    s_u: Optional[int]
    dist_to_s: float


Label = Union[ExactLabel, ApproxLabel]


def measure_label_bits(label: Label, n: int, W: int = 1) -> int:
    """Encoded size: owner id plus (id, distance) per landmark entry.

    Ids take ceil(log2 n) bits, distances ceil(log2(n*W)) bits.
    """
    id_bits = clog2(n)
    dist_bits = clog2(n * W)
    if isinstance(label, ExactLabel):
        return id_bits + len(label.entries) * (id_bits + dist_bits)
    return id_bits + id_bits + dist_bits


def nearest_landmark(dists: dict) -> tuple:
    """(s, d) minimising d(s, .), smallest id on ties; (None, INF) if S is empty."""
    best = (None, INF)
    for s in sorted(dists):
        if dists[s] < best[1]:
            best = (s, dists[s])
    return best


# --- per-node state and query functions ------------------------------------


@dataclass
class NodeSchemeState:
    node: int
    dist_h: dict
    dist_to_S: dict
    neighbors: dict
    neighbor_states: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)


def eval_oracle_exact(state: NodeSchemeState, label: ExactLabel):
    """min(d_h(v, u), min over s of d(v, s) + d(s, u))."""
    u = label.owner
    if u == state.node:
        return 0
    key = ("x", u)
    hit = state._cache.get(key)
    if hit is not None:
        return hit
    best = state.dist_h.get(u, INF)
    dS = state.dist_to_S
    for s, d in label.entries:
        est = dS[s] + d
        if est < best:
            best = est
    state._cache[key] = best
    return best


def eval_oracle_approx(state: NodeSchemeState, label: ApproxLabel):
    """min(d_h(v, u), d(v, s_u) + d(s_u, u))."""
    u = label.owner
    if u == state.node:
        return 0
    key = ("a", u)
    hit = state._cache.get(key)
    if hit is not None:
        return hit
    best = state.dist_h.get(u, INF)
    if label.s_u is not None:
        best = min(best, state.dist_to_S[label.s_u] + label.dist_to_s)
    state._cache[key] = best
    return best


def routing_next_exact(state: NodeSchemeState, label: ExactLabel) -> int:
    """Smallest neighbour z with o_z(label) == o_v(label) - w(v, z)."""
    if label.owner == state.node:
        raise ValueError("already at the destination")
    ov = eval_oracle_exact(state, label)
    for z in sorted(state.neighbors):
        if eval_oracle_exact(state.neighbor_states[z], label) == ov - state.neighbors[z]:
            return z
    raise NoProgress(f"no neighbour of {state.node} makes exact progress towards {label.owner}")


def routing_next_approx(state: NodeSchemeState, label: ApproxLabel) -> int:
    """Smallest neighbour z with o_z(label) <= o_v(label) - w(v, z)."""
    if label.owner == state.node:
        raise ValueError("already at the destination")
    ov = eval_oracle_approx(state, label)
    for z in sorted(state.neighbors):
        if eval_oracle_approx(state.neighbor_states[z], label) <= ov - state.neighbors[z]:
            return z
    raise NoProgress(f"no neighbour of {state.node} makes progress towards {label.owner}")


# --- schemes ---------------------------------------------------------------


@dataclass
class Scheme:
    kind: str  # "exact" | "approx"
    graph: Graph
    S: SampleSet
    x: float
    h: int
    radius: int
    ksi: float
    widen: float
    seed: int
    rssp_mode: RsspMode
    labels: dict
    states: dict
    stats: RoundStats
    rssp_rounds: int
    sampling_ok: bool
    violating_pair: Optional[tuple] = None

    def oracle(self, v: int, u: int):
        if self.kind == "exact":
            return eval_oracle_exact(self.states[v], self.labels[u])
        return eval_oracle_approx(self.states[v], self.labels[u])

    def next_hop(self, v: int, u: int) -> int:
        if self.kind == "exact":
            return routing_next_exact(self.states[v], self.labels[u])
        return routing_next_approx(self.states[v], self.labels[u])

    def label_bits(self, v: int) -> int:
        return measure_label_bits(self.labels[v], self.graph.n, self.graph.W)

    def to_dict(self) -> dict:
        labels = {}
        for v, lab in sorted(self.labels.items()):
            if isinstance(lab, ExactLabel):
                labels[str(v)] = [[s, d] for s, d in lab.entries]
            else:
                labels[str(v)] = [lab.s_u, lab.dist_to_s]
        return {
            "kind": self.kind,
            "S": sorted(self.S.members),
            "params": {
                "x": self.x,
                "h": self.h,
                "radius": self.radius,
                "ksi": self.ksi,
                "widen": self.widen,
                "seed": self.seed,
                "rssp_mode": self.rssp_mode.value,
            },
            "labels": labels,
            "sampling_ok": self.sampling_ok,
            "stats": self.stats.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _build(kind, g, cfg, x, h, seed, *, widen=1.0, ksi=2.0, rssp_mode=RsspMode.SIMULATED,
           check_sampling=True, rssp_c=1.0, rssp_a=1.0) -> Scheme:
    rssp_mode = RsspMode(rssp_mode)
    n = g.n
    scfg = SamplingConfig(n, x, ksi)
    if h is None:
        h = scfg.h
    if widen < 1:
        raise ValueError(f"widen must be >= 1, got {widen}")
    radius = math.ceil(widen * h)
    cfg = cfg or default_config(g)
    S = sample(g, x, seed)
    net = HybridNetwork(g, cfg, seed)

    views = net.explore(radius)
    dist_h = {v: _ball_distances(views[v], v, radius) for v in g.nodes}

    before = net.stats.rounds
    if S.members:
        dist_to_S, _ = solve_rssp(g, S.members, rssp_mode, net=net, dist_h=dist_h, x=x, c=rssp_c, a=rssp_a)
    else:
        dist_to_S = {v: {} for v in g.nodes}
    rssp_rounds = net.stats.rounds - before

    if kind == "exact":
        labels = {
            v: ExactLabel(v, tuple((s, dist_to_S[v][s]) for s in sorted(S.members)))
            for v in g.nodes
        }
    else:
        labels = {v: ApproxLabel(v, *nearest_landmark(dist_to_S[v])) for v in g.nodes}

    states = {
        v: NodeSchemeState(v, dist_h[v], dist_to_S[v], dict(g.adj[v]))
        for v in g.nodes
    }
    # neighbours learn each other's oracle state in one local round
    net.exchange()
    for v, st in states.items():
        st.neighbor_states = {z: states[z] for z in st.neighbors}

    bad = cover_property(g, S.members, h) if check_sampling is not None else None
    scheme = Scheme(kind, g, S, x, h, radius, ksi, widen, seed, rssp_mode, labels, states,
                    net.stats, rssp_rounds, bad is None, bad)
    if bad is not None and check_sampling:
        raise SamplingFailure(f"pair {bad} is not covered by the landmark set", scheme, bad)
    return scheme


def build_scheme_exact(g: Graph, cfg: Optional[HybridConfig] = None, x: Optional[float] = None,
                       h: Optional[int] = None, seed: int = 0, **kw) -> Scheme:
    """Exact oracles and stateless routing.

    Rounds: h (explore) + RSSP rounds + 1 (neighbour exchange).  ``x``
    defaults to n^(1/3), ``h`` to the sampling radius.  Raises
    :class:`SamplingFailure` when the landmark set misses the cover
    property unless ``check_sampling=False``; ``check_sampling=None``
    skips the check entirely.
    """
    if x is None:
        x = g.n ** (1 / 3)
    return _build("exact", g, cfg, x, h, seed, **kw)


def build_scheme_approx(g: Graph, cfg: Optional[HybridConfig] = None, x: Optional[float] = None,
                        h: Optional[int] = None, widen: float = 1.0, seed: int = 0, **kw) -> Scheme:
    """Nearest-landmark labels; exploration radius ceil(widen * h)."""
    if x is None:
        x = g.n ** (1 / 3)
    return _build("approx", g, cfg, x, h, seed, widen=widen, **kw)


@dataclass
class Route:
    path: list
    weight: int

    @property
    def hops(self) -> int:
        return len(self.path) - 1


def forward(scheme: Scheme, s: int, t: int, stateful: bool = False, max_hops: Optional[int] = None) -> Route:
    """Follow next hops from s to t.

    Stateless routing must induce a simple path (a revisit is a loop the
    packet cannot escape); stateful mode tolerates revisits up to
    ``max_hops`` (default n).
    """
    if s == t:
        raise ValueError("source equals target")
    g = scheme.graph
    if max_hops is None:
        max_hops = g.n
    path = [s]
    seen = {s}
    weight = 0
    v = s
    while v != t:
        if len(path) - 1 >= max_hops:
            raise HopBudgetExceeded(f"{s}->{t} not delivered within {max_hops} hops")
        z = scheme.next_hop(v, t)
        weight += g.weight(v, z)
        if z in seen and not stateful:
            raise LoopDetected(f"{s}->{t} revisits {z}")
        seen.add(z)
        path.append(z)
        v = z
    return Route(path, weight)
