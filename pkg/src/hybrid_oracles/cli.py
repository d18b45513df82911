"""Command-line driver: ``hybrid-oracles {gen,verify,run,decode,bounds}``.

Every command is a pure function of its arguments and ``--seed``; trials
may run in parallel (``--jobs``) but rows are always emitted in trial
order, so repeated runs produce identical CSV files.  A JSON file passed
with ``--config`` supplies defaults for any option (keys use underscores).
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import random
import sys
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional

from . import bounds as B
from . import lowerbound as L
from .graphcore import (
    INF,
    Graph,
    GraphError,
    all_pairs,
    bipartite_double_cover,
    complete_bipartite,
    petersen,
    random_connected,
    random_linear,
)
from .hybridsim import SimulationError, cut_tracking
from .schemes import (
    RsspMode,
    SchemeError,
    build_scheme_approx,
    build_scheme_exact,
    default_config,
    forward,
)


class CliError(Exception):
    pass


def trial_seed(seed: int, i: int) -> int:
    return random.Random(f"{seed}/trial/{i}").randrange(2**31)


# ---------------------------------------------------------------- output


def _emit(args, text: str) -> None:
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(args, rows: list, fields: list) -> str:
    buf = io.StringIO()
    if not args.no_timestamp:
        buf.write(f"# generated {_dt.datetime.now(_dt.timezone.utc).isoformat(timespec='seconds')}\n")
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _map(fn: Callable, specs: list, jobs: int) -> list:
    if jobs <= 1 or len(specs) <= 1:
        return [fn(s) for s in specs]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, specs))


def _fmt(x) -> str:
    if x == INF:
        return "inf"
    if isinstance(x, float):
        return f"{x:.6f}"
    return str(x)


# ---------------------------------------------------------------- graph sources


def make_graph(family: str, n: int, density: Optional[float], W: int, seed: int) -> Graph:
    if n < 1:
        raise CliError(f"--n must be positive, got {n}")
    if density is not None and not 0 <= density <= 1:
        raise CliError(f"--density must lie in [0, 1], got {density}")
    if W < 1:
        raise CliError(f"--W must be positive, got {W}")
    if family == "random":
        p = density if density is not None else min(1.0, 4.0 / n)
        return random_connected(n, p, W=W, seed=seed)
    if family == "linear":
        return random_linear(n, reach=3, p=density if density is not None else 0.5, W=W, seed=seed)
    raise CliError(f"unknown graph family {family!r}")


def base_graph(name: str, k: int, ell: int, seed: int) -> Graph:
    if name == "complete":
        return complete_bipartite(k)
    if name == "petersen-cover":
        return bipartite_double_cover(petersen())
    if name == "greedy":
        return L.high_girth_greedy(k, ell, seed=seed)
    raise CliError(f"unknown base graph {name!r}")


def make_instance(spec: dict) -> L.GammaInstance:
    X = spec.get("X")
    if spec["kind"] == "unweighted":
        return L.gen_unweighted(spec["k"], spec["h"], X, seed=spec["seed"])
    preset = L.make_preset(spec["problem"], spec["ell"], spec["epsilon"], spec["h"])
    G = base_graph(spec["base"], spec["k"], spec["ell"], spec["seed"])
    return L.gen_weighted(G, spec["h"], preset, X, seed=spec["seed"])


def _instance_spec(args, seed: int) -> dict:
    return {
        "kind": args.kind,
        "k": args.k,
        "h": args.h,
        "ell": args.ell,
        "problem": args.problem,
        "epsilon": args.epsilon,
        "base": args.base,
        "X": args.X,
        "seed": seed,
    }


def _load_instance(path: str) -> L.GammaInstance:
    with open(path) as fh:
        return L.GammaInstance.from_json(fh.read())


# ---------------------------------------------------------------- gen / verify


def cmd_gen(args) -> int:
    if args.kind == "graph":
        g = make_graph(args.graph, args.n, args.density, args.W, args.seed)
        _emit(args, g.to_json() + "\n")
        return 0
    inst = make_instance(_instance_spec(args, args.seed))
    _emit(args, inst.to_json() + "\n")
    return 0


def _verify_rows(inst: L.GammaInstance, rep: L.VerificationReport) -> list:
    return [
        {
            "i": r.i, "j": r.j, "x": r.x,
            "measured": _fmt(r.measured), "expected": _fmt(r.expected),
            "via_v_some": int(r.via_v_some), "via_v_all": int(r.via_v_all), "ok": int(r.ok),
        }
        for r in rep.records
    ]


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    rep = L.verify_unweighted(inst) if inst.kind is L.Kind.UNWEIGHTED else L.verify_weighted(inst)
    fields = ["i", "j", "x", "measured", "expected", "via_v_some", "via_v_all", "ok"]
    _emit(args, _csv(args, _verify_rows(inst, rep), fields))
    print(rep.summary(), file=sys.stderr)
    return 0 if rep.passed else 1


# ---------------------------------------------------------------- run


RUN_FIELDS = [
    "trial", "seed", "n", "m", "S", "rounds", "rssp_rounds", "global_bits",
    "max_stretch_oracle", "max_stretch_route", "one_sided_violations",
    "max_label_bits", "sampling_ok", "error",
]


def run_trial(spec: dict) -> dict:
    row = {"trial": spec["trial"], "seed": spec["seed"], "error": ""}
    try:
        rng = random.Random(spec["seed"])
        n = rng.randint(spec["n_min"], spec["n_max"])
        W = 1 if spec["unweighted"] else spec["W"]
        g = make_graph(spec["graph"], n, spec["density"], W, spec["seed"])
        x = spec["x"] if spec["x"] is not None else n ** (1 / 3 + spec["zeta"])
        cfg = default_config(g, spec["gamma_c"])
        kw = dict(ksi=spec["ksi"], rssp_mode=spec["rssp_mode"], check_sampling=False)
        if spec["scheme"] == "exact":
            sc = build_scheme_exact(g, cfg, x=x, seed=spec["seed"], **kw)
        else:
            sc = build_scheme_approx(g, cfg, x=x, widen=spec["widen"], seed=spec["seed"], **kw)
        D = all_pairs(g)
        worst_o = worst_r = 1.0
        violations = 0
        for s in range(n):
            for t in range(n):
                if s == t:
                    continue
                est = sc.oracle(s, t)
                if est < D[s][t]:
                    violations += 1
                worst_o = max(worst_o, est / D[s][t])
                worst_r = max(worst_r, forward(sc, s, t).weight / D[s][t])
        row.update(
            n=n, m=g.m, S=len(sc.S), rounds=sc.stats.rounds, rssp_rounds=sc.rssp_rounds,
            global_bits=sc.stats.global_bits_total, max_stretch_oracle=_fmt(worst_o),
            max_stretch_route=_fmt(worst_r), one_sided_violations=violations,
            max_label_bits=max(sc.label_bits(v) for v in g.nodes), sampling_ok=int(sc.sampling_ok),
        )
    except (GraphError, SchemeError, SimulationError, ValueError) as err:
        row["error"] = f"{type(err).__name__}: {err}"
    return row


def _stretch_limit(spec: dict) -> float:
    if spec["scheme"] == "exact":
        return 1.0
    if spec["unweighted"]:
        return 1 + 2 / spec["widen"]
    return 3.0


def _summary(rows: list, key_ok: Callable[[dict], bool]) -> dict:
    good = [r for r in rows if not r["error"]]
    return {
        "trial": "summary",
        "seed": "",
        "sampling_ok": f"{sum(int(r.get('sampling_ok', 0)) for r in good)}/{len(rows)}",
        "error": f"{sum(1 for r in rows if r['error'])} errors; {sum(1 for r in rows if not key_ok(r))} failing",
    }


def cmd_run(args) -> int:
    specs = []
    for i in range(args.trials):
        specs.append({
            "trial": i,
            "seed": trial_seed(args.seed, i),
            "n_min": args.n_min or args.n,
            "n_max": args.n_max or args.n,
            "graph": args.graph,
            "density": args.density,
            "W": args.W,
            "unweighted": args.unweighted,
            "scheme": args.scheme,
            "x": args.x,
            "zeta": args.zeta,
            "ksi": args.ksi,
            "widen": args.widen,
            "rssp_mode": args.rssp_mode,
            "gamma_c": args.gamma_c,
        })
    rows = _map(run_trial, specs, args.jobs)
    limit = _stretch_limit(specs[0]) if specs else 1.0

    def ok(r):
        if r["error"]:
            return False
        if r["one_sided_violations"]:
            return False
        if args.scheme == "exact" and not r["sampling_ok"]:
            return True  # exactness is only promised under sampling success
        return float(r["max_stretch_oracle"]) <= limit + 1e-12 and float(r["max_stretch_route"]) <= limit + 1e-12

    rows.append(_summary(rows, ok))
    _emit(args, _csv(args, rows, RUN_FIELDS))
    return 0 if all(ok(r) for r in rows[:-1]) else 1


# ---------------------------------------------------------------- decode


DECODE_FIELDS = [
    "trial", "seed", "n", "m_bits", "acc_oracle", "acc_routing", "sampling_ok",
    "cut_bits", "target_label_bits", "entropy", "info_consistent", "error",
]


def decode_trial(spec: dict) -> dict:
    row = {"trial": spec["trial"], "seed": spec["seed"], "error": ""}
    try:
        if spec.get("instance_json"):
            inst = L.GammaInstance.from_json(spec["instance_json"])
        else:
            inst = make_instance(spec)
        g = inst.graph
        sc = build_scheme_exact(g, default_config(g, spec["gamma_c"]), seed=spec["seed"],
                                ksi=spec["ksi"], rssp_mode=spec["rssp_mode"], check_sampling=False)
        res = L.reduction_trial(inst, sc)
        cut = cut_tracking(sc.stats, g, inst.A, inst.B, label="A|B")
        lab = sum(sc.label_bits(t) for t in inst.roles.targets)
        H = B.entropy_of_planted(inst)
        row.update(
            n=g.n, m_bits=inst.m, acc_oracle=_fmt(res.acc_oracle), acc_routing=_fmt(res.acc_routing),
            sampling_ok=int(sc.sampling_ok), cut_bits=cut, target_label_bits=lab, entropy=str(H),
            info_consistent=int(B.information_consistent(cut, lab, H)),
        )
    except (GraphError, SchemeError, SimulationError, ValueError) as err:
        row["error"] = f"{type(err).__name__}: {err}"
    return row


def cmd_decode(args) -> int:
    specs = []
    inst_json = None
    if args.instance:
        with open(args.instance) as fh:
            inst_json = fh.read()
    for i in range(args.trials):
        seed = trial_seed(args.seed, i)
        spec = _instance_spec(args, seed)
        spec.update(trial=i, instance_json=inst_json, gamma_c=args.gamma_c, ksi=args.ksi,
                    rssp_mode=args.rssp_mode)
        specs.append(spec)
    rows = _map(decode_trial, specs, args.jobs)

    def ok(r):
        if r["error"]:
            return False
        if not r["sampling_ok"]:
            return True
        return r["acc_oracle"] == _fmt(1.0) and r["acc_routing"] == _fmt(1.0) and r["info_consistent"]

    _emit(args, _csv(args, rows, DECODE_FIELDS))
    return 0 if all(ok(r) for r in rows) else 1


# ---------------------------------------------------------------- bounds


def cmd_bounds(args) -> int:
    if args.girth_density is not None:
        try:
            d = B.girth_density(args.girth_density)
        except B.UnsupportedGirth as err:
            print(str(err), file=sys.stderr)
            return 1
        _emit(args, f"{d}\t{float(d)}\n")
        return 0
    if args.tradeoff:
        k, h, r = B.optimize_tradeoff(args.n, args.gamma, args.delta)
        cap = B.label_cap(args.n, args.gamma, args.delta, args.c)
        rows = [{"n": _fmt(float(args.n)), "gamma": _fmt(float(args.gamma)), "delta": args.delta,
                 "k_opt": _fmt(k), "h_opt": _fmt(h), "rounds_lb": _fmt(r), "label_cap": _fmt(cap)}]
        _emit(args, _csv(args, rows, list(rows[0])))
        return 0
    rows = B.full_table() if args.problem == "all" else B.stretch_table(args.problem)
    if args.format == "text":
        _emit(args, B.table_text(rows))
    else:
        text = B.table_csv(rows)
        if not args.no_timestamp:
            text = f"# generated {_dt.datetime.now(_dt.timezone.utc).isoformat(timespec='seconds')}\n" + text
        _emit(args, text)
    return 0


# ---------------------------------------------------------------- parser


def _instance_options(p: argparse.ArgumentParser, kinds: tuple) -> None:
    p.add_argument("--kind", choices=kinds, default=kinds[0])
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--h", type=int, default=3)
    p.add_argument("--ell", type=int, default=4)
    p.add_argument("--problem", choices=[q.value for q in L.Problem], default="stateful")
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--base", choices=["complete", "petersen-cover", "greedy"], default="complete")
    p.add_argument("--X", default=None, help="planted bits as a 0/1 string (default: seeded coins)")


def _scheme_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--x", type=float, default=None, help="sampling parameter (default n^(1/3+zeta))")
    p.add_argument("--zeta", type=float, default=0.0)
    p.add_argument("--ksi", type=float, default=2.0)
    p.add_argument("--rssp-mode", choices=[m.value for m in RsspMode], default="simulated")
    p.add_argument("--gamma-c", type=float, default=4.0, help="gamma = ceil(c * log2(n)^2)")
    p.add_argument("--trials", type=int, default=10)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--no-timestamp", action="store_true")
    common.add_argument("--config", default=None, help="JSON file with option defaults")

    parser = argparse.ArgumentParser(prog="hybrid-oracles", parents=[common],
                                     description="Distance oracle and routing experiments in the hybrid network model.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a hard instance or a random graph")
    _instance_options(p, ("unweighted", "weighted", "graph"))
    p.add_argument("--graph", choices=["random", "linear"], default="random")
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--density", type=float, default=None)
    p.add_argument("--W", type=int, default=1)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="check an instance's planted distances")
    p.add_argument("instance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", parents=[common], help="build schemes on random graphs and measure them")
    p.add_argument("--scheme", choices=["exact", "approx"], default="exact")
    p.add_argument("--graph", choices=["random", "linear"], default="random")
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--n-min", type=int, default=None)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--density", type=float, default=None)
    p.add_argument("--W", type=int, default=100)
    p.add_argument("--unweighted", action="store_true")
    p.add_argument("--widen", type=float, default=1.0)
    _scheme_options(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("decode", parents=[common], help="recover planted bits through an exact scheme")
    _instance_options(p, ("weighted", "unweighted"))
    p.add_argument("--instance", default=None, help="instance JSON (otherwise generated per trial)")
    _scheme_options(p)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bounds", parents=[common], help="lower-bound tables and trade-offs")
    p.add_argument("--problem", choices=["all"] + [q.value for q in B.TableProblem], default="all")
    p.add_argument("--format", choices=["csv", "text"], default="csv")
    p.add_argument("--tradeoff", action="store_true")
    p.add_argument("--n", type=float, default=1e6)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--delta", type=str, default="1")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--girth-density", type=int, default=None)
    p.set_defaults(func=cmd_bounds)
    return parser


def _with_config(parser: argparse.ArgumentParser, argv: Optional[list]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if not args.config:
        return args
    with open(args.config) as fh:
        conf = json.load(fh)
    if not isinstance(conf, dict):
        raise CliError("config file must hold a JSON object")
    # explicit command-line flags win over the file
    sub = parser._subparsers._group_actions[0].choices[args.command]
    sub.set_defaults(**{k.replace("-", "_"): v for k, v in conf.items()})
    return parser.parse_args(argv)


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = _with_config(parser, argv)
        if args.command == "bounds":
            args.delta = Fraction(args.delta)
        return args.func(args)
    except (CliError, L.LowerBoundError, GraphError, OSError, json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
