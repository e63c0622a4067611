"""Exact solving, game chromatic numbers and Bob-win certificates."""
from __future__ import annotations

import hashlib
import itertools
import math
import os
import sys
import time
from dataclasses import dataclass, field

from .engine import ALICE, BOB, GameState, Verdict, full_mask
from .errors import BudgetExceeded, InvalidSymmetry, PolicyLoss, StrategyBreakdown
from .graph import Graph, validate_symmetry
from .position import LEAF, PASS, VERTEX, Position, local_symmetries, move_classes

DEFAULT_SOLVE_BUDGET = 10**7
DEFAULT_CERT_BUDGET = 10**8


def env_budget(default: int) -> int:
    value = os.environ.get("COLORGAME_BUDGET")
    return int(value) if value else default


@dataclass
class SolveStats:
    expanded: int = 0
    hits: int = 0
    peak_table: int = 0

    def to_json(self) -> dict:
        return {"expanded": self.expanded, "hits": self.hits, "peak_table": self.peak_table}


def _name(player: str) -> str:
    return "Alice" if player == ALICE else "Bob"


# -- independent oracle ----------------------------------------------------

def oracle_solve(g: Graph, k: int, s0: GameState | None = None) -> Verdict:
    """Plain exhaustive minimax; memoizes exact colorings only.

    Shares nothing with the engine beyond the graph adjacency, so it can
    serve as a reference for :func:`solve_exact`.
    """
    adj = g.adj
    n = g.n
    colors0 = tuple(s0.colors) if s0 is not None else (0,) * n
    mover0 = s0.to_move if s0 is not None else ALICE
    memo: dict[tuple, str] = {}

    def outcome(colors):
        finished = True
        for v in range(n):
            if colors[v] == 0:
                seen = {colors[w] for w in adj[v]} - {0}
                if len(seen) == k:
                    return BOB
                finished = False
        return ALICE if finished else None

    def win(colors, mover):
        key = (colors, mover)
        hit = memo.get(key)
        if hit is not None:
            return hit
        result = outcome(colors)
        if result is None:
            nxt = BOB if mover == ALICE else ALICE
            result = nxt
            for v in range(n):
                if colors[v]:
                    continue
                banned = {colors[w] for w in adj[v]}
                for c in range(1, k + 1):
                    if c in banned:
                        continue
                    child = colors[:v] + (c,) + colors[v + 1:]
                    if win(child, nxt) == mover:
                        result = mover
                        break
                if result == mover:
                    break
        memo[key] = result
        return result

    winner = win(colors0, mover0)
    witness = None
    if winner == BOB:
        for v in range(n):
            if colors0[v] == 0 and len({colors0[w] for w in adj[v]} - {0}) == k:
                witness = v
                break
    return Verdict(_name(winner), witness)


# -- exact solver ------------------------------------------------------------

def _score(pos: Position, mv) -> int:
    """Lower is tried first: Alice relieves crowded vertices, Bob crowds them."""
    kind, i, c = mv
    phi = pos.phi
    bit = 1 << (c - 1)
    if pos.to_move == ALICE:
        return -bin(phi[i]).count("1") if kind == VERTEX else 1
    if kind == LEAF:
        return 0 if phi[i] & bit or pos.colors[i] else -bin(phi[i]).count("1") - 1
    score = 0
    n_core = pos.struct.n_core
    for j in pos.struct.adj[i]:
        if j < n_core and not pos.colors[j] and not phi[j] & bit:
            score = min(score, -bin(phi[j]).count("1") - 1)
    return score


def _ordered_moves(pos: Position) -> list:
    """Moves with interchangeable unused colors collapsed, most forcing first."""
    used = 0
    for c in pos.colors:
        if c:
            used |= 1 << (c - 1)
    for m in pos.phi:
        used |= m
    first_unused = next((c for c in range(1, pos.k + 1) if not used >> (c - 1) & 1), None)
    moves = [mv for mv in pos.moves() if used >> (mv[2] - 1) & 1 or mv[2] == first_unused]
    moves.sort(key=lambda mv: _score(pos, mv))
    return moves


class Reduction:
    """What of a closed position can still influence the result.

    An uncolored vertex is safe when ``|Phi| + (uncolored neighbors) < k``;
    it can never be surrounded and always has a legal color, and both stay
    true as play goes on.  A component of uncolored vertices that are all
    safe therefore only offers tempo moves, so the game is fixed by the live
    vertices (those in a component with an unsafe vertex), their forbidden
    sets and leaf counts, and the number of tempo moves.  Colored vertices
    only act through their neighbors' forbidden sets.  Palette renaming is
    factored out by keying on the sorted per-color signatures (the set of
    live vertices that forbid the color).
    """

    __slots__ = ("key", "live", "tempo_move", "color_reps")

    def __init__(self, pos: Position):
        k = pos.k
        colors, phi, lfree = pos.colors, pos.phi, pos.lfree
        adj = pos.struct.adj
        n = pos.struct.n_core
        stack = []
        for i in range(n):
            if colors[i] == 0:
                free = lfree[i] + sum(1 for j in adj[i] if colors[j] == 0)
                if bin(phi[i]).count("1") + free >= k:
                    stack.append(i)
        live = set(stack)
        while stack:
            i = stack.pop()
            for j in adj[i]:
                if colors[j] == 0 and j not in live:
                    live.add(j)
                    stack.append(j)
        self.live = sorted(live)
        tempo = 0
        self.tempo_move = None
        for i in range(n):
            if i in live:
                continue
            if colors[i] == 0:
                tempo += 1
                if self.tempo_move is None:
                    c = next(c for c in range(1, k + 1) if not phi[i] >> (c - 1) & 1)
                    self.tempo_move = (VERTEX, i, c)
            if lfree[i]:
                tempo += lfree[i]
                if self.tempo_move is None:
                    self.tempo_move = (LEAF, i, 1 if colors[i] != 1 else 2)
        sigs = []
        for c in range(1, k + 1):
            bit = 1 << (c - 1)
            sig = 0
            for t, i in enumerate(self.live):
                if phi[i] & bit:
                    sig |= 1 << t
            sigs.append(sig)
        first: dict[int, int] = {}
        for c, sig in enumerate(sigs, 1):
            first.setdefault(sig, c)
        self.color_reps = sorted(first.values())
        self.key = (pos.to_move, tempo, tuple(self.live), tuple(lfree[i] for i in self.live), tuple(sorted(sigs)))

    def moves(self, pos: Position) -> list:
        """One move per class of interchangeable moves, most forcing first."""
        out = []
        for i in self.live:
            m = pos.phi[i]
            for c in self.color_reps:
                if not m >> (c - 1) & 1:
                    out.append((VERTEX, i, c))
                if pos.lfree[i]:
                    out.append((LEAF, i, c))
        out.sort(key=lambda mv: _score(pos, mv))
        if self.tempo_move is not None:
            out.append(self.tempo_move)
        return out


class ExactSolver:
    """AND/OR search with a transposition table on canonical position keys."""

    def __init__(self, budget: int | None = None):
        self.budget = budget if budget is not None else env_budget(DEFAULT_SOLVE_BUDGET)
        self.table: dict[tuple, str] = {}
        self.stats = SolveStats()

    def winner(self, pos: Position) -> str:
        reduced = Reduction(pos) if pos.k >= 2 and not pos.struct.open else None
        key = reduced.key if reduced is not None else pos.key()
        hit = self.table.get(key)
        if hit is not None:
            self.stats.hits += 1
            return hit
        kind, _ = pos.status()
        if kind == "bob":
            result = BOB
        elif kind == "alice" or reduced is not None and not reduced.live:
            result = ALICE
        else:
            self.stats.expanded += 1
            if self.stats.expanded > self.budget:
                raise BudgetExceeded(self.budget)
            mover = pos.to_move
            result = BOB if mover == ALICE else ALICE
            moves = reduced.moves(pos) if reduced is not None else _ordered_moves(pos)
            for mv in moves:
                if self.winner(pos.apply(mv)) == mover:
                    result = mover
                    break
        self.table[key] = result
        if len(self.table) > self.stats.peak_table:
            self.stats.peak_table = len(self.table)
        return result


def solve_exact(g: Graph, k: int, s0: GameState | None = None,
                budget: int | None = None) -> tuple[Verdict, SolveStats]:
    s0 = s0 if s0 is not None else GameState.initial(g, k)
    solver = ExactSolver(budget)
    winner = solver.winner(Position.from_state(s0))
    witness = None
    if winner == BOB:
        full = full_mask(k)
        witness = next((v for v in range(g.n) if s0.colors[v] == 0 and s0.phi[v] == full), None)
    return Verdict(_name(winner), witness), solver.stats


def game_chromatic_number(g: Graph, k_max: int, budget: int | None = None) -> int | float:
    """Least palette size with which Alice wins; ``math.inf`` if above ``k_max``.

    Sizes are tried upward, so a returned ``k`` always comes with a proven
    Bob win at ``k - 1``.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    for k in range(1, k_max + 1):
        verdict, _ = solve_exact(g, k, budget=budget)
        if verdict.winner == "Alice":
            return k
    return math.inf


# -- certification -----------------------------------------------------------

CERT_FORMAT = "colorgame-certificate/1"


def graph_digest(g: Graph) -> str:
    from .io import dumps, graph_to_json

    return hashlib.sha256(dumps(graph_to_json(g)).encode()).hexdigest()


@dataclass
class Certificate:
    """Proof tree of a Bob win, over Alice's move classes.

    Every node is an Alice-to-move position in palette-canonical form over a
    region (see :mod:`colorgame.position`).  Each Alice class lists its
    representative, its size, then Bob's optional narrowing, Bob's reply and
    the child node; a missing reply means Alice's move already lost, a
    missing child means Bob's reply surrounded a vertex.  ``elapsed`` is
    kept out of the JSON so that reruns are byte-identical.
    """

    graph_sha256: str
    k: int
    policy: str
    structures: list[dict]
    symsets: list[list[list[int]]]
    nodes: list[dict]
    root: int = 0
    stats: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return {"format": CERT_FORMAT, "graph_sha256": self.graph_sha256, "k": self.k,
                "policy": self.policy, "root": self.root, "stats": self.stats,
                "structures": self.structures, "symsets": self.symsets, "nodes": self.nodes}

    @classmethod
    def from_json(cls, obj) -> "Certificate":
        from .errors import SchemaError

        if not isinstance(obj, dict) or obj.get("format") != CERT_FORMAT:
            raise SchemaError(f"not a {CERT_FORMAT} document", "format")
        missing = [f for f in ("graph_sha256", "k", "policy", "root", "structures", "symsets", "nodes")
                   if f not in obj]
        if missing:
            raise SchemaError(f"missing field {missing[0]!r}")
        for name in ("structures", "symsets", "nodes"):
            if not isinstance(obj[name], list):
                raise SchemaError("expected an array", name)
        return cls(obj["graph_sha256"], obj["k"], obj["policy"], obj["structures"], obj["symsets"],
                   obj["nodes"], obj["root"], obj.get("stats", {}))


class SearchedPolicy:
    """Bob replies found by exact search on the whole graph (any legal move)."""

    name = "searched"

    def __init__(self, budget: int | None = None):
        self.solver = ExactSolver(budget)

    def decide(self, pos: Position, mem, mv):
        from .bob import Decision

        for cand in _ordered_moves(pos):
            if self.solver.winner(pos.apply(cand)) == BOB:
                return Decision(None, cand, mem)
        raise PolicyLoss(pos, "no Bob move wins this position")


def dominates(p: Position, q: Position) -> bool:
    """True when Bob, playing only leaves, wins from ``p`` whenever he wins from ``q``.

    Same region, same core colors and free leaves, every forbidden set of
    ``p`` contains that of ``q`` and every boundary color of ``q`` is also
    on ``p``.  Bob copies his ``q`` strategy: each Alice move legal in ``p``
    is legal in ``q`` and the relation survives both players' moves and
    any narrowing, so a surround in ``q`` is a surround in ``p``.
    """
    if p.struct is not q.struct or p.lfree != q.lfree or p.to_move != q.to_move:
        return False
    n_core = p.struct.n_core
    if p.colors[:n_core] != q.colors[:n_core]:
        return False
    if any(c and c != p.colors[j] for j, c in enumerate(q.colors[n_core:], n_core)):
        return False
    return all(pp & qq == qq for pp, qq in zip(p.phi, q.phi))


def _move_list(mv) -> list[int]:
    return [mv[0], mv[1], mv[2]]


class _Certifier:
    def __init__(self, g: Graph, k: int, policy, budget: int, progress=None):
        self.progress = progress
        self.g = g
        self.k = k
        self.policy = policy
        self.budget = budget
        self.table: dict[tuple, int] = {}
        self.nodes: list[dict | None] = []
        self.structures: dict[int, int] = {}
        self.struct_json: list[dict] = []
        self.symsets: dict[tuple, int] = {}
        self.symset_json: list[list[list[int]]] = []
        self.expanded = 0
        self.classes = 0
        self.max_depth = 0
        self.use_dominance = bool(getattr(policy, "leaf_only", False))
        self.dominated_classes = 0

    def dominated(self, pos: Position, rep, pass_entry, entry) -> bool:
        """Answer a boundary move like a pass when the result dominates the pass child."""
        dec, q = pass_entry
        p1 = pos.apply(rep)
        if p1.status()[0] != "ongoing":
            return False
        p2 = p1.narrow(dec.narrow) if dec.narrow is not None else p1
        if not p2.is_legal(dec.move):
            return False
        p3 = p2.apply(dec.move)
        if p3.status()[0] != "ongoing" or not dominates(p3, q):
            return False
        _, perm = q.canonical()
        q_id = self.table[(dec.memory.relabel_colors(perm).tag(), q.canonical()[0])]
        entry[4] = list(dec.narrow) if dec.narrow is not None else None
        entry[5] = _move_list(dec.move)
        entry[6] = q_id
        entry.append(1)
        self.dominated_classes += 1
        return True

    def struct_index(self, st) -> int:
        t = self.structures.get(st.id)
        if t is None:
            t = self.structures[st.id] = len(self.struct_json)
            self.struct_json.append(st.to_json())
        return t

    def symset_index(self, syms) -> int:
        key = tuple(syms)
        t = self.symsets.get(key)
        if t is None:
            t = self.symsets[key] = len(self.symset_json)
            self.symset_json.append([list(p) for p in syms])
        return t

    def expand(self, pos: Position, mem, depth: int, line: list) -> int:
        key, perm = pos.canonical()
        pos = pos.relabel(perm)
        mem = mem.relabel_colors(perm)
        full_key = (mem.tag(), key)
        nid = self.table.get(full_key)
        if nid is not None:
            return nid
        self.expanded += 1
        if self.expanded > self.budget:
            raise BudgetExceeded(self.budget)
        if self.progress is not None and self.expanded % 10000 == 0:
            self.progress(nodes=self.expanded, classes=self.classes, depth=depth)
        self.max_depth = max(self.max_depth, depth)
        nid = len(self.nodes)
        self.table[full_key] = nid
        self.nodes.append(None)
        syms = local_symmetries(pos, self.g.symmetries)
        classes = move_classes(pos, syms)
        self.classes += len(classes)
        entries: list = [None] * len(classes)
        # the pass class goes first so boundary classes can lean on its child
        order = sorted(range(len(classes)), key=lambda t: classes[t][0][0] != PASS)
        pass_entry = None
        for t in order:
            rep, size = classes[t]
            entry = _move_list(rep) + [size, None, None, None]
            if pass_entry is not None and rep[0] == VERTEX and rep[1] >= pos.n_core:
                if self.dominated(pos, rep, pass_entry, entry):
                    entries[t] = entry
                    continue
            p1 = pos.apply(rep)
            kind, _ = p1.status()
            if kind == "alice":
                raise PolicyLoss(p1, f"Alice wins after {line + [rep]}")
            if kind == "ongoing":
                try:
                    dec = self.policy.decide(p1, mem, rep)
                except StrategyBreakdown as e:
                    raise PolicyLoss(p1, f"policy broke down after {line + [rep]}: {e}") from None
                p2 = p1.narrow(dec.narrow) if dec.narrow is not None else p1
                if not p2.is_legal(dec.move):
                    raise PolicyLoss(p2, f"illegal Bob reply {dec.move} after {line + [rep]}")
                p3 = p2.apply(dec.move)
                entry[4] = list(dec.narrow) if dec.narrow is not None else None
                entry[5] = _move_list(dec.move)
                kind3, _ = p3.status()
                if kind3 == "alice":
                    raise PolicyLoss(p3, f"Alice wins after {line + [rep, dec.move]}")
                if kind3 == "ongoing":
                    entry[6] = self.expand(p3, dec.memory, depth + 1, line + [rep, dec.move])
                if rep[0] == PASS and self.use_dominance and dec.move[0] == LEAF and kind3 == "ongoing":
                    pass_entry = (dec, p3)
            entries[t] = entry
        self.nodes[nid] = {"tag": mem.tag_text(), "s": self.struct_index(pos.struct),
                           "sym": self.symset_index(syms), "colors": list(pos.colors),
                           "lmask": list(pos.lmask), "lfree": list(pos.lfree), "phi": list(pos.phi),
                           "classes": entries}
        return nid


def certify_bob_win(g: Graph, k: int, policy="scripted", budget: int | None = None,
                    progress=None) -> Certificate:
    """Exhaust Alice's move classes against a Bob policy and return the proof tree.

    ``policy`` is ``"scripted"`` (the theorem-graph strategy), ``"searched"``
    (exact search on the whole graph) or an object with a ``decide`` method.
    Raises :class:`PolicyLoss` when some Alice line beats the policy,
    :class:`BudgetExceeded` when more than ``budget`` nodes are needed and
    :class:`InvalidSymmetry` when a symmetry of ``g`` is not an automorphism.
    ``progress`` is called with keyword counters every 10000 nodes.
    """
    from .bob import SEARCH, StrategyMemory, TheoremPolicy

    for perm in g.symmetries:
        if not validate_symmetry(g, perm):
            raise InvalidSymmetry("a listed symmetry is not a leaf-preserving automorphism")
    budget = budget if budget is not None else env_budget(DEFAULT_CERT_BUDGET)
    mem = StrategyMemory()
    if policy == "scripted":
        policy = TheoremPolicy(g)
    elif policy == "searched":
        policy = SearchedPolicy(budget)
        mem = StrategyMemory(step=SEARCH)
    started = time.perf_counter()
    cert = _Certifier(g, k, policy, budget, progress)
    root = Position.from_state(GameState.initial(g, k))
    if root.status()[0] != "ongoing":
        raise PolicyLoss(root, "the game is decided before Alice's first move")
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 20000))
    try:
        cert.expand(root, mem, 1, [])
    finally:
        sys.setrecursionlimit(old_limit)
    stats = {"nodes": len(cert.nodes), "classes": cert.classes, "max_depth": cert.max_depth,
             "structures": len(cert.struct_json), "dominated_classes": cert.dominated_classes}
    return Certificate(graph_digest(g), k, getattr(policy, "name", "custom"), cert.struct_json,
                       cert.symset_json, cert.nodes, 0, stats, time.perf_counter() - started)


@dataclass
class VerifyResult:
    ok: bool
    reason: str = ""
    nodes_checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _is_automorphism(struct, perm) -> bool:
    n = struct.n
    if len(perm) != n or sorted(perm) != list(range(n)):
        return False
    for i in range(n):
        if (i < struct.n_core) != (perm[i] < struct.n_core):
            return False
        if tuple(sorted(perm[j] for j in struct.adj[i])) != struct.adj[perm[i]]:
            return False
    return True


def verify_certificate(cert: Certificate, g: Graph, k: int) -> VerifyResult:
    """Independently replay a certificate from the initial position of ``g``.

    Every node's Alice classes are recomputed from the position reached
    (after checking the stored symmetries are automorphisms of the region),
    every Bob reply is checked for legality, every edge is re-applied and
    compared with the stored child, and every leaf must be a Bob win.
    """
    try:
        return _verify(cert, g, k)
    except (KeyError, IndexError, TypeError, ValueError) as e:
        return VerifyResult(False, f"malformed certificate ({type(e).__name__}: {e})")


def _verify(cert: Certificate, g: Graph, k: int) -> VerifyResult:
    if cert.k != k:
        return VerifyResult(False, f"certificate is for k={cert.k}, not {k}")
    if cert.graph_sha256 != graph_digest(g):
        return VerifyResult(False, "certificate was made for a different graph")
    nodes = cert.nodes
    if not nodes:
        return VerifyResult(False, "no nodes")
    sym_ok: dict[tuple[int, int], bool] = {}
    done: set[int] = set()
    deferred: list = []
    vertex_replies = False
    stack = [(cert.root, Position.from_state(GameState.initial(g, k)), "root")]
    while stack:
        nid, pos, where = stack.pop()
        if not isinstance(nid, int) or not 0 <= nid < len(nodes):
            return VerifyResult(False, f"{where}: dangling node reference {nid!r}", len(done))
        node = nodes[nid]
        _, perm = pos.canonical()
        pos = pos.relabel(perm)
        if (node["s"] >= len(cert.structures) or cert.structures[node["s"]] != pos.struct.to_json()
                or node["colors"] != list(pos.colors) or node["lmask"] != list(pos.lmask)
                or node["lfree"] != list(pos.lfree) or node["phi"] != list(pos.phi)):
            return VerifyResult(False, f"{where}: node {nid} does not match the position reached", len(done))
        if nid in done:
            continue
        done.add(nid)
        syms = [tuple(p) for p in cert.symsets[node["sym"]]]
        check = (node["sym"], pos.struct.id)
        if check not in sym_ok:
            sym_ok[check] = all(_is_automorphism(pos.struct, p) for p in syms)
        if not sym_ok[check]:
            return VerifyResult(False, f"node {nid}: stored symmetry is not an automorphism", len(done))
        classes = move_classes(pos, syms)
        entries = node["classes"]
        if len(entries) != len(classes):
            return VerifyResult(False, f"node {nid}: {len(entries)} Alice classes stored, "
                                       f"{len(classes)} recomputed", len(done))
        for t, ((rep, size), e) in enumerate(zip(classes, entries)):
            here = f"node {nid} class {t}"
            if tuple(e[:3]) != rep or e[3] != size:
                return VerifyResult(False, f"{here}: stored class {e[:4]} differs from {list(rep) + [size]}",
                                    len(done))
            p1 = pos.apply(rep)
            kind, _ = p1.status()
            if kind == "bob":
                if e[5] is not None or e[6] is not None:
                    return VerifyResult(False, f"{here}: reply stored after a finished game", len(done))
                continue
            if kind == "alice" or e[5] is None:
                return VerifyResult(False, f"{here}: Alice is not stopped", len(done))
            p2 = p1.narrow(e[4]) if e[4] is not None else p1
            reply = tuple(e[5])
            if not p2.is_legal(reply) or reply[0] == PASS or (reply[0] == VERTEX and reply[1] >= p2.n_core):
                return VerifyResult(False, f"{here}: Bob's reply {list(reply)} is not allowed", len(done))
            p3 = p2.apply(reply)
            kind3, _ = p3.status()
            if kind3 == "bob":
                if e[6] is not None:
                    return VerifyResult(False, f"{here}: child stored after a finished game", len(done))
                continue
            if kind3 == "alice" or e[6] is None:
                return VerifyResult(False, f"{here}: Bob's reply does not keep the game going his way",
                                    len(done))
            if reply[0] != LEAF:
                vertex_replies = True
            if len(e) > 7 and e[7]:
                deferred.append((e[6], p3, here))
            else:
                stack.append((e[6], p3, here))
    if len(done) != len(nodes):
        return VerifyResult(False, f"{len(nodes) - len(done)} unreachable nodes", len(done))
    if deferred and vertex_replies:
        return VerifyResult(False, "dominance steps need a leaf-only Bob", len(done))
    for nid, p3, where in deferred:
        if not isinstance(nid, int) or nid not in done:
            return VerifyResult(False, f"{where}: dangling node reference {nid!r}", len(done))
        if not _dominates_node(p3, nodes[nid], cert.structures):
            return VerifyResult(False, f"{where}: position does not dominate node {nid}", len(done))
    return VerifyResult(True, "", len(done))


def _dominates_node(p: Position, node: dict, structures) -> bool:
    """:func:`dominates` against a stored node, under some palette renaming."""
    if structures[node["s"]] != p.struct.to_json():
        return False
    q = Position(p.struct, p.labels, tuple(node["colors"]), tuple(node["lmask"]), tuple(node["lfree"]),
                 p.k, p.to_move, tuple(node["phi"]))
    for targets in itertools.permutations(range(1, p.k + 1)):
        if dominates(p.relabel((0,) + targets), q):
            return True
    return False
