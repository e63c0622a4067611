"""Command-line interface: ``colorgame <subcommand> ...``.

Exit codes: 0 success, 2 certification (or corpus check) failure, 3 node
budget exceeded, 4 bad input.
"""
from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from dataclasses import dataclass

from . import io
from .constructions import (FAMILIES, TheoremParams, build_sidorowicz, build_theorem_graph, build_thin4_forest,
                            enumerate_small_graphs, random_connected_graph, thin4_forests)
from .engine import ALICE, BOB, GameState, Move, apply_move, is_legal, legal_moves, status
from .errors import (BudgetExceeded, ColorGameError, IllegalMove, InvalidParameter, LimitExceeded, PolicyLoss,
                     SchemaError, StrategyBreakdown)
from .graph import Graph
from .solver import (DEFAULT_CERT_BUDGET, DEFAULT_SOLVE_BUDGET, ExactSolver, certify_bob_win, env_budget,
                     game_chromatic_number, oracle_solve, solve_exact, verify_certificate)

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INPUT = 0, 2, 3, 4


@dataclass
class RunConfig:
    subcommand: str
    k: int | None
    budget: int
    seed: int
    policy: str
    threads: int
    log: str | None


class JsonlLog:
    """Progress records, one JSON object per line on stderr."""

    def __init__(self, enabled: bool, stream=None):
        self.enabled = enabled
        self.stream = stream or sys.stderr
        self.t0 = time.perf_counter()

    def __call__(self, event: str, **fields):
        if self.enabled:
            rec = {"event": event, "t": round(time.perf_counter() - self.t0, 3)}
            rec.update(fields)
            self.stream.write(json.dumps(rec, sort_keys=True) + "\n")
            self.stream.flush()


def _emit(obj) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def _write_or_print(path: str | None, text: str) -> None:
    if path:
        io.write_text(path, text)
    else:
        sys.stdout.write(text)


def _edges_arg(text: str) -> list[tuple[int, int]]:
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        try:
            a, b = part.split("-")
            out.append((int(a), int(b)))
        except ValueError:
            raise InvalidParameter(f"bad edge {part!r}; expected u-v") from None
    return out


# -- subcommands --------------------------------------------------------------

def cmd_generate(args, cfg: RunConfig, log) -> int:
    if args.family == "theorem-graph":
        g = build_theorem_graph(TheoremParams(args.cycle_len, args.path_len,
                                              args.leaves if args.leaves is not None else 8))
    elif args.family == "sidorowicz":
        g = build_sidorowicz(args.triangles, args.leaves if args.leaves is not None else 4)
    elif args.family == "thin4":
        if args.edges is None:
            raise InvalidParameter("thin4 needs --edges")
        g = build_thin4_forest(_edges_arg(args.edges), _edges_arg(args.replace or ""), args.n)
    else:
        if args.kind == "random":
            g = random_connected_graph(random.Random(cfg.seed), args.n_min or 2, args.n or 7)
        else:
            if args.n is None:
                raise InvalidParameter("family graphs need --n")
            members = list(enumerate_small_graphs(args.kind, args.n, args.n))
            if not 0 <= args.index < len(members):
                raise InvalidParameter(f"--index must be below {len(members)} for {args.kind} on {args.n} vertices")
            g = members[args.index]
    _write_or_print(args.output, io.dumps(io.graph_to_json(g)))
    log("generated", n=g.n, edges=g.edge_count)
    return EXIT_OK


def _load_state(args, g: Graph, k: int) -> GameState:
    if getattr(args, "state", None):
        return io.read_state(args.state, g)
    return GameState.initial(g, k)


def cmd_solve(args, cfg: RunConfig, log) -> int:
    g = io.read_graph(args.graph)
    s0 = _load_state(args, g, cfg.k)
    verdict, stats = solve_exact(g, s0.k, s0, budget=cfg.budget)
    log("solved", **stats.to_json())
    _emit(verdict.to_json())
    return EXIT_OK


def cmd_chi_g(args, cfg: RunConfig, log) -> int:
    g = io.read_graph(args.graph)
    chi = game_chromatic_number(g, args.k_max, budget=cfg.budget)
    print(f">{args.k_max}" if chi == math.inf else chi)
    return EXIT_OK


def cmd_certify(args, cfg: RunConfig, log) -> int:
    g = io.read_graph(args.graph)
    log("certify-start", n=g.n, k=cfg.k, policy=cfg.policy, budget=cfg.budget)
    try:
        cert = certify_bob_win(g, cfg.k, cfg.policy, budget=cfg.budget,
                               progress=lambda **f: log("certify-progress", **f))
    except PolicyLoss as e:
        _emit({"certified": False, "reason": str(e)})
        return EXIT_FAIL
    stats = dict(cert.stats, certified=True, wall_time=round(cert.elapsed, 3))
    if args.output:
        io.write_certificate(args.output, cert)
    _emit(stats)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig, log) -> int:
    g = io.read_graph(args.graph)
    cert = io.read_certificate(args.cert)
    t0 = time.perf_counter()
    res = verify_certificate(cert, g, cfg.k)
    out = {"valid": res.ok, "nodes_checked": res.nodes_checked, "wall_time": round(time.perf_counter() - t0, 3)}
    if not res.ok:
        out["reason"] = res.reason
    _emit(out)
    return EXIT_OK if res.ok else EXIT_FAIL


CHECKS = ("chi-g-le-3", "chi-g-le-4", "chi-g-le-5", "oracle")


def cmd_enumerate(args, cfg: RunConfig, log) -> int:
    if args.family == "thin4":
        graphs = thin4_forests(args.n)
    else:
        graphs = enumerate_small_graphs(args.family, args.n, args.n_min)
    total = passed = 0
    failures = []
    for g in graphs:
        total += 1
        if args.check == "oracle":
            ok = all(solve_exact(g, k, budget=cfg.budget)[0].winner == oracle_solve(g, k).winner
                     for k in range(1, 5))
        else:
            bound = int(args.check.rsplit("-", 1)[1])
            ok = game_chromatic_number(g, bound, budget=cfg.budget) <= bound
        if ok:
            passed += 1
        else:
            failures.append({"n": g.n, "edges": [list(e) for e in g.edges()]})
        log("checked", index=total, n=g.n, ok=ok)
    _emit({"family": args.family, "n_max": args.n, "check": args.check, "graphs": total, "passed": passed,
           "failures": failures})
    return EXIT_OK if not failures else EXIT_FAIL


def cmd_play(args, cfg: RunConfig, log, stdin=None, stdout=None) -> int:
    from .bob import StrategyMemory, next_move

    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    g = io.read_graph(args.graph)
    s = GameState.initial(g, cfg.k)
    human = ALICE if args.human == "alice" else BOB
    rng = random.Random(cfg.seed)
    solver = ExactSolver(cfg.budget)
    scripted = g.annotations and any(a and "spine" in a for a in g.annotations)
    mem = StrategyMemory()
    last = None

    def say(text):
        stdout.write(text + "\n")
        stdout.flush()

    say(f"{g.n} vertices, {cfg.k} colors; you play {'Alice' if human == ALICE else 'Bob'}. "
        "Enter moves as 'vertex color'.")
    while status(s).ongoing:
        if s.to_move == human:
            stdout.write(f"{'Alice' if human == ALICE else 'Bob'}> ")
            stdout.flush()
            line = stdin.readline()
            if not line:
                say("input closed")
                return EXIT_INPUT
            parts = line.split()
            if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
                say("expected two integers: vertex color")
                continue
            m = Move(int(parts[0]), int(parts[1]))
            if not 0 <= m.vertex < g.n:
                say(f"no vertex {m.vertex}")
                continue
            if s.colors[m.vertex]:
                say(f"vertex {m.vertex} is already colored")
                continue
            if not 1 <= m.color <= cfg.k:
                say(f"color must be between 1 and {cfg.k}")
                continue
            if not is_legal(s, m):
                say(f"color {m.color} is in Phi({m.vertex}) = {sorted(s.forbidden(m.vertex))}")
                continue
        elif s.to_move == BOB and scripted:
            m, mem = next_move(mem, s, last)
        else:
            m = _engine_move(s, solver, rng)
        s = apply_move(s, m)
        last = m
        if s.to_move == human:
            say(f"engine colors {m.vertex} with {m.color}")
    st = status(s)
    say("Bob wins: vertex %d is surrounded" % st.vertex if st.kind == "bob" else "Alice wins: every vertex is colored")
    return EXIT_OK


def _engine_move(s: GameState, solver: ExactSolver, rng: random.Random) -> Move:
    """A winning move for the engine's side if search finds one, else a seeded random legal move."""
    from .position import Position

    pos = Position.from_state(s)
    try:
        for mv in pos.moves():
            if solver.winner(pos.apply(mv)) == s.to_move:
                return pos.to_game_move(s, mv)
    except BudgetExceeded:
        pass
    return rng.choice(legal_moves(s))


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized tie-breaks (default 0)")
    common.add_argument("--budget", type=int, default=None,
                        help="node budget (default: COLORGAME_BUDGET or the built-in default)")
    common.add_argument("--log", choices=["jsonl"], default=None, help="stream progress records to stderr")
    common.add_argument("--threads", type=int, default=1, help="worker count (only 1 is supported)")

    p = argparse.ArgumentParser(prog="colorgame", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    gen = sub.add_parser("generate", parents=[common], help="write a graph file")
    gen.add_argument("family", choices=["theorem-graph", "sidorowicz", "thin4", "family"])
    gen.add_argument("--cycle-len", type=int, default=3)
    gen.add_argument("--path-len", type=int, default=1)
    gen.add_argument("--leaves", type=int, default=None,
                     help="leaves per internal vertex (theorem-graph default 8, sidorowicz default 4)")
    gen.add_argument("--triangles", type=int, default=7)
    gen.add_argument("--edges", help="thin4: tree edges as 'u-v,u-v,...'")
    gen.add_argument("--replace", help="thin4: edges to double into 4-cycles")
    gen.add_argument("--kind", choices=list(FAMILIES) + ["random"], default="trees", help="family: which family")
    gen.add_argument("--n", type=int, default=None, help="family: vertex count; thin4: vertex count of the tree")
    gen.add_argument("--n-min", type=int, default=None, help="family random: smallest vertex count")
    gen.add_argument("--index", type=int, default=0, help="family: which member, in enumeration order")
    gen.add_argument("-o", "--output")

    for name, helptext in (("solve", "exact winner"), ("chi-g", "game chromatic number")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("-g", "--graph", required=True)
        if name == "solve":
            sp.add_argument("-k", type=int, required=True)
            sp.add_argument("--state", help="start from this game state file")
        else:
            sp.add_argument("--k-max", type=int, required=True)

    cert = sub.add_parser("certify", parents=[common], help="certify a Bob win and write the proof tree")
    cert.add_argument("-g", "--graph", required=True)
    cert.add_argument("-k", type=int, required=True)
    cert.add_argument("--policy", choices=["scripted", "searched"], default="scripted")
    cert.add_argument("-o", "--output")

    ver = sub.add_parser("verify-cert", parents=[common], help="independently check a certificate")
    ver.add_argument("-c", "--cert", required=True)
    ver.add_argument("-g", "--graph", required=True)
    ver.add_argument("-k", type=int, required=True)

    play = sub.add_parser("play", parents=[common], help="play against the engine in the terminal")
    play.add_argument("-g", "--graph", required=True)
    play.add_argument("-k", type=int, required=True)
    play.add_argument("--human", choices=["alice", "bob"], default="alice")

    en = sub.add_parser("enumerate", parents=[common], help="sweep a corpus of small graphs")
    en.add_argument("--family", choices=list(FAMILIES) + ["thin4"], required=True)
    en.add_argument("--n", type=int, required=True, help="largest vertex count (tree size for thin4)")
    en.add_argument("--n-min", type=int, default=1)
    en.add_argument("--check", choices=CHECKS, required=True)
    return p


COMMANDS = {"generate": cmd_generate, "solve": cmd_solve, "chi-g": cmd_chi_g, "certify": cmd_certify,
            "verify-cert": cmd_verify, "play": cmd_play, "enumerate": cmd_enumerate}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    default = DEFAULT_CERT_BUDGET if args.cmd == "certify" else DEFAULT_SOLVE_BUDGET
    budget = args.budget if args.budget is not None else env_budget(default)
    cfg = RunConfig(args.cmd, getattr(args, "k", None), budget, args.seed, getattr(args, "policy", "scripted"),
                    args.threads, args.log)
    log = JsonlLog(args.log == "jsonl")
    try:
        if cfg.k is not None and cfg.k < 1:
            raise InvalidParameter("k must be at least 1")
        if cfg.budget < 1:
            raise InvalidParameter("budget must be at least 1")
        if cfg.threads != 1:
            raise InvalidParameter("only --threads 1 is supported")
        return COMMANDS[args.cmd](args, cfg, log)
    except BudgetExceeded as e:
        _emit({"error": "budget-exceeded", "budget": e.limit if hasattr(e, "limit") else cfg.budget,
               "message": str(e)})
        return EXIT_BUDGET
    except (SchemaError, InvalidParameter, LimitExceeded, IllegalMove, ValueError) as e:
        print(f"colorgame: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except StrategyBreakdown as e:
        _emit({"certified": False, "reason": str(e)})
        return EXIT_FAIL
    except ColorGameError as e:
        print(f"colorgame: error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
