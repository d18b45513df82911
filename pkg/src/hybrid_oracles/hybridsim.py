"""Synchronous round engine for the HYBRID(lambda, gamma) model.

A run proceeds in rounds.  Messages handed to the engine by a node's
``start``/``step`` call are transmitted in the next round and delivered to
the receiver's following ``step`` call.  Local messages travel over graph
edges and are limited to ``lam`` bits each (unlimited by default).  Global
messages may go to any node; per round, a node's sent plus received global
bits must not exceed ``gamma``.

Every global message is charged ``bits + header`` where the header is one
node id (``ceil(log2 n)`` bits): the receiver address on the sender's side
and the sender id on the receiver's side.  A message with an empty payload
therefore still costs one id at each end.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .graphcore import INF, Graph, ball, hop_distances

UNLIMITED = None


class SimulationError(RuntimeError):
    pass


class BudgetViolation(SimulationError):
    def __init__(self, node: int, round: int, bits: int, gamma: int):
        super().__init__(f"node {node} used {bits} global bits in round {round} (gamma={gamma})")
        self.node = node
        self.round = round
        self.bits = bits
        self.gamma = gamma


class LocalSizeViolation(SimulationError):
    def __init__(self, node: int, round: int, bits: int, lam: int):
        super().__init__(f"node {node} sent a {bits}-bit local message in round {round} (lambda={lam})")
        self.node = node
        self.round = round
        self.bits = bits
        self.lam = lam


class NonTermination(SimulationError):
    pass


def clog2(x: int) -> int:
    """ceil(log2 x) for x >= 1, at least 1 so an id never costs zero bits."""
    return max(1, (int(x) - 1).bit_length())


@dataclass(frozen=True)
class HybridConfig:
    gamma: int
    lam: Optional[int] = UNLIMITED

    def __post_init__(self):
        if self.gamma < 1:
            raise ValueError(f"gamma must be >= 1, got {self.gamma}")
        if self.lam is not None and self.lam < 1:
            raise ValueError(f"lambda must be UNLIMITED or >= 1, got {self.lam}")

    @classmethod
    def standard(cls, n: int, c: float = 4.0) -> "HybridConfig":
        """Unlimited local messages, gamma = ceil(c * ceil(log2 n)^2) global bits."""
        return cls(gamma=max(1, math.ceil(c * clog2(n) ** 2)))


@dataclass(frozen=True)
class Message:
    to: int
    payload: Any = None
    bits: int = 0


@dataclass(frozen=True)
class Received:
    sender: int
    payload: Any
    bits: int


NO_OUTPUT = object()


@dataclass
class Step:
    local: list = field(default_factory=list)
    glob: list = field(default_factory=list)
    output: Any = NO_OUTPUT


@dataclass
class NodeContext:
    node: int
    n: int
    edges: dict
    rng: random.Random
    round: int = 0


class NodeProgram:
    """Base class for per-node state machines.

    At construction a node knows only ``ctx`` (its id, n, incident edges
    and a private RNG).  ``start`` runs at round 0; ``step`` runs after each
    round with the messages delivered in it.  Either may return a
    :class:`Step` (or None for "nothing to do").
    """

    def __init__(self, ctx: NodeContext):
        self.ctx = ctx

    def start(self) -> Optional[Step]:
        return None

    def step(self, local: list, glob: list) -> Optional[Step]:
        return None


@dataclass
class RoundStats:
    n: int
    rounds: int = 0
    global_sent: list = None
    global_received: list = None
    local_messages: int = 0
    pair_bits: dict = field(default_factory=dict)
    max_round_load: int = 0
    cuts: dict = field(default_factory=dict)
    phases: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.global_sent is None:
            self.global_sent = [0] * self.n
        if self.global_received is None:
            self.global_received = [0] * self.n

    @property
    def global_bits_sent(self) -> int:
        return sum(self.global_sent)

    @property
    def global_bits_received(self) -> int:
        return sum(self.global_received)

    @property
    def global_bits_total(self) -> int:
        """Total charge against all nodes' budgets (sender side plus receiver side)."""
        return self.global_bits_sent + self.global_bits_received

    def to_dict(self) -> dict:
        return {
            "rounds": self.rounds,
            "global_bits_total": self.global_bits_total,
            "local_messages": self.local_messages,
            "max_round_load": self.max_round_load,
            "per_node": [
                {"sent": s, "received": r}
                for s, r in zip(self.global_sent, self.global_received)
            ],
            "cuts": dict(self.cuts),
            "phases": dict(self.phases),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class HybridNetwork:
    """One execution of (possibly several) phases on a fixed graph.

    Phases share the round counter and the statistics, so a pipeline such as
    explore -> program -> neighbour exchange accounts for its total cost.
    """

    def __init__(self, g: Graph, cfg: HybridConfig, seed: int = 0):
        self.g = g
        self.cfg = cfg
        self.seed = seed
        self.stats = RoundStats(g.n)
        self.header = clog2(g.n)

    def node_rng(self, v: int) -> random.Random:
        return random.Random(f"{self.seed}/{v}")

    def _phase(self, name: str, rounds: int) -> None:
        self.stats.phases[name] = self.stats.phases.get(name, 0) + rounds

    def charge_rounds(self, rounds: int, name: str = "charged") -> None:
        """Account rounds of a step whose cost is modelled rather than simulated."""
        self.stats.rounds += rounds
        self._phase(name, rounds)

    def explore(self, h: int, edge_bits: Optional[int] = None) -> dict:
        """Flood topology for ``h`` rounds; returns ``{v: ball(g, v, h)}``.

        Costs exactly ``h`` rounds and no global bits.  With a finite lambda
        the round-r message of v carries the edges of its radius r-1 view,
        which must fit into lambda bits.
        """
        if h < 0:
            raise ValueError(f"negative exploration radius {h}")
        g = self.g
        if edge_bits is None:
            edge_bits = 2 * self.header + clog2(g.W + 1)
        start = self.stats.rounds
        for r in range(1, h + 1):
            self.stats.rounds = start + r
            for v in sorted(g.nodes):
                deg = len(g.adj[v])
                if deg == 0:
                    continue
                if self.cfg.lam is not None:
                    bits = ball(g, v, r - 1).m * edge_bits
                    if bits > self.cfg.lam:
                        raise LocalSizeViolation(v, start + r, bits, self.cfg.lam)
                self.stats.local_messages += deg
        self._phase("explore", h)
        return {v: ball(g, v, h) for v in g.nodes}

    def exchange(self, bits_of: Optional[Callable[[int], int]] = None) -> None:
        """One round in which every node sends one local message to each neighbour."""
        self.stats.rounds += 1
        for v in sorted(self.g.nodes):
            if self.cfg.lam is not None and bits_of is not None:
                bits = bits_of(v)
                if bits > self.cfg.lam:
                    raise LocalSizeViolation(v, self.stats.rounds, bits, self.cfg.lam)
            self.stats.local_messages += len(self.g.adj[v])
        self._phase("exchange", 1)

    def run(self, program: Callable[[NodeContext], NodeProgram], max_rounds: int, name: str = "program") -> dict:
        """Run ``program`` on every node until all produced an output.

        Returns ``{v: output}``.  Raises NonTermination if ``max_rounds``
        rounds pass first.
        """
        if max_rounds < 0:
            raise ValueError("max_rounds must be >= 0")
        g = self.g
        nodes = sorted(g.nodes)
        start = self.stats.rounds
        ctxs = {v: NodeContext(v, g.n, dict(g.adj[v]), self.node_rng(v), 0) for v in nodes}
        progs = {v: program(ctxs[v]) for v in nodes}
        outputs: dict = {}
        pending_local: dict = {}
        pending_global: dict = {}

        def absorb(v, step):
            if step is None:
                pending_local[v], pending_global[v] = [], []
                return
            pending_local[v] = list(step.local)
            pending_global[v] = list(step.glob)
            if step.output is not NO_OUTPUT and v not in outputs:
                outputs[v] = step.output

        for v in nodes:
            absorb(v, progs[v].start())
        r = 0
        while len(outputs) < len(nodes):
            if r >= max_rounds:
                raise NonTermination(f"{len(nodes) - len(outputs)} nodes without output after {r} rounds")
            r += 1
            self.stats.rounds = start + r
            inbox_local, inbox_global = self._transmit(start + r, nodes, pending_local, pending_global)
            for v in nodes:
                ctxs[v].round = r
                absorb(v, progs[v].step(inbox_local[v], inbox_global[v]))
        self._phase(name, r)
        return outputs

    def _transmit(self, rnd: int, nodes: list, pending_local: dict, pending_global: dict):
        g, cfg, stats, header = self.g, self.cfg, self.stats, self.header
        inbox_local = {v: [] for v in nodes}
        inbox_global = {v: [] for v in nodes}
        load = {v: 0 for v in nodes}
        for v in nodes:
            for msg in pending_local.get(v, ()):
                if msg.to not in g.adj[v]:
                    raise SimulationError(f"node {v} sent a local message to non-neighbour {msg.to}")
                if cfg.lam is not None and msg.bits > cfg.lam:
                    raise LocalSizeViolation(v, rnd, msg.bits, cfg.lam)
            for msg in pending_global.get(v, ()):
                if msg.to not in load:
                    raise SimulationError(f"node {v} sent a global message to unknown node {msg.to}")
                charge = msg.bits + header
                load[v] += charge
                load[msg.to] += charge
        for v in nodes:
            if load[v] > cfg.gamma:
                raise BudgetViolation(v, rnd, load[v], cfg.gamma)
        for v in nodes:
            for msg in pending_local.get(v, ()):
                inbox_local[msg.to].append(Received(v, msg.payload, msg.bits))
                stats.local_messages += 1
            for msg in pending_global.get(v, ()):
                charge = msg.bits + header
                inbox_global[msg.to].append(Received(v, msg.payload, msg.bits))
                stats.global_sent[v] += charge
                stats.global_received[msg.to] += charge
                key = (v, msg.to)
                stats.pair_bits[key] = stats.pair_bits.get(key, 0) + charge
        if load:
            stats.max_round_load = max(stats.max_round_load, max(load.values()))
        return inbox_local, inbox_global


def run(g: Graph, cfg: HybridConfig, program, seed: int = 0, max_rounds: int = 10_000):
    """Run a single program phase; returns ``(outputs, stats)``."""
    net = HybridNetwork(g, cfg, seed)
    outputs = net.run(program, max_rounds)
    return outputs, net.stats


def explore(net: HybridNetwork, h: int) -> dict:
    return net.explore(h)


def cut_sides(g: Graph, A, B) -> list:
    """Side per node: 0 when at least as close (in hops) to A as to B, else 1."""
    A, B = set(A), set(B)
    if A & B:
        raise ValueError("A and B must be disjoint")
    da = hop_distances(g, A)
    db = hop_distances(g, B)
    return [0 if da[v] <= db[v] else 1 for v in range(g.n)]


def cut_tracking(stats: RoundStats, g: Graph, A, B, label: Optional[str] = None) -> int:
    """Global bits whose sender and receiver lie on different sides of the A/B cut."""
    side = cut_sides(g, A, B)
    bits = sum(b for (u, v), b in stats.pair_bits.items() if side[u] != side[v])
    if label is not None:
        stats.cuts[label] = bits
    return bits


__all__ = [
    "INF",
    "UNLIMITED",
    "BudgetViolation",
    "HybridConfig",
    "HybridNetwork",
    "LocalSizeViolation",
    "Message",
    "NO_OUTPUT",
    "NodeContext",
    "NodeProgram",
    "NonTermination",
    "Received",
    "RoundStats",
    "SimulationError",
    "Step",
    "clog2",
    "cut_sides",
    "cut_tracking",
    "explore",
    "run",
]
