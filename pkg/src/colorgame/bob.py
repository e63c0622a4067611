"""Bob's leaf-only strategy on the two-component theorem graph.

Bob answers Alice's first move in the other component, then runs three
steps there, each with a *focus* vertex whose leaves he colors:

* Step 1, focus ``z``: two ``z``-leaves with distinct colors.  If Alice
  colors ``z`` Bob moves to Step 2.  If her two replies both stayed in
  ``G_z`` (``z``, its gadgets and their leaves) a third ``z``-leaf forces
  her to color ``z``.  Otherwise a gadget of ``z`` is untouched and Bob
  sets up a winning cycle-path from ``z`` into it.
* Step 2, focus ``x`` on a side ``x y`` that Alice has not touched: an
  ``x``-leaf with the color of ``z``.  Alice coloring ``y`` gives ``x`` two
  colors and Bob uses a clean gadget of ``x``; Alice coloring ``x`` gives
  ``y`` two colors (Step 3) and Bob uses a clean gadget of ``y``;
  otherwise the Step 1 counting repeats on ``x``.
* Lemma phase: the cycle-path, cycle and path strategies of
  :mod:`colorgame.lemmas` finish the job.

Every decision works on a :class:`~colorgame.position.Position` over a
region that shrinks with the step (component, then side, then the lemma
vertices), which keeps certification small.  Whenever Bob can surround a
vertex with one leaf he does so first, and an Alice move on a leaf of the
focus vertex is answered on another leaf of it with a new color.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

from .constructions import theorem_roles
from .engine import BOB, GameState, Move, full_mask
from .errors import InvalidParameter, StrategyBreakdown
from .graph import Graph
from .lemmas import LemmaPosition, corollary_setup, immediate_win, lemma_step
from .position import LEAF, PASS, VERTEX, Position

OPENING, STEP1, STEP2, LEMMA, SEARCH = "opening", "step1", "step2", "lemma", "search"


@dataclass(frozen=True)
class StrategyMemory:
    """What Bob remembers between turns.

    ``marks`` counts Bob's colors on leaves of the focus vertex in the
    current step, ``inside``/``outside`` count Alice's moves in and out of
    the focus vertex's gadgets.  ``region`` (global ids of the tracked core,
    in local order) and ``component`` locate the play but are not part of
    :meth:`tag`, so mirror-image lines share certificate nodes.
    """

    step: str = OPENING
    marks: int = 0
    inside: int = 0
    outside: int = 0
    lemma: LemmaPosition | None = None
    region: tuple[int, ...] | None = None
    component: int | None = None

    def tag(self) -> tuple:
        return (self.step, self.marks, self.inside, self.outside,
                self.lemma.tag() if self.lemma is not None else None)

    def tag_text(self) -> str:
        parts = [self.step]
        if self.step in (STEP1, STEP2):
            parts.append(f"m{self.marks}i{self.inside}o{self.outside}")
        if self.lemma is not None:
            lp = self.lemma
            parts.append(f"{lp.kind}:{','.join(map(str, lp.path))}/{','.join(map(str, lp.cycle))}"
                         f"/{lp.pair}/{lp.shared}")
        return " ".join(parts)

    def relabel_colors(self, perm) -> "StrategyMemory":
        if self.lemma is None:
            return self
        return replace(self, lemma=self.lemma.relabel_colors(perm))

    def to_json(self) -> dict:
        out = {"step": self.step, "marks": self.marks, "inside": self.inside, "outside": self.outside}
        if self.component is not None:
            out["component"] = self.component
        if self.lemma is not None:
            labels = self.region
            out["lemma"] = self.lemma.to_json(labels)
        return out


class Decision(NamedTuple):
    """Bob's reply: optional narrowing (local core indices), move on the narrowed region, memory."""

    narrow: tuple[int, ...] | None
    move: tuple[int, int, int]
    memory: StrategyMemory


def _new_color(pos: Position, i: int) -> int:
    missing = full_mask(pos.k) & ~pos.phi[i]
    if not missing:
        raise StrategyBreakdown(f"vertex {pos.labels[i]} already sees every color")
    return (missing & -missing).bit_length()


def _focus_leaf(pos: Position, i: int) -> tuple[int, int, int]:
    if pos.colors[i] or not pos.lfree[i]:
        raise StrategyBreakdown(f"focus vertex {pos.labels[i]} has no usable leaf")
    return (LEAF, i, _new_color(pos, i))


def touched(pos: Position, mv) -> int | None:
    """Global vertex an Alice move acts on: the vertex, or the parent of the leaf."""
    kind, i, _ = mv
    return None if kind == PASS else pos.labels[i]


class TheoremPolicy:
    """The scripted strategy, bound to one annotated theorem graph."""

    name = "scripted"
    leaf_only = True

    def __init__(self, g: Graph):
        ids = theorem_roles(g)
        if not ids:
            raise InvalidParameter("graph carries no theorem-graph annotations")
        self.graph = g
        self.ids = ids
        self.component_of = {v: key[0] for key, v in ids.items()}
        self.owner = {v: key[2] for key, v in ids.items()}
        self.spine_label = {v: key[2] for key, v in ids.items() if key[1] == "spine"}
        self.core_of = {c: sorted(v for key, v in ids.items() if key[0] == c) for c in (0, 1)}
        self.gadgets: dict[tuple[int, str], list[tuple[list[int], list[int]]]] = {}
        for key, v in ids.items():
            if key[1] == "spine":
                continue
            comp, kind, s, slot = key[:4]
            lst = self.gadgets.setdefault((comp, s), [([], []), ([], [])])
            lst[slot - 1][0].append(v)
            if kind == "cycle":
                lst[slot - 1][1].append(v)
        for lst in self.gadgets.values():
            for verts, cyc in lst:
                verts.sort()
                cyc.sort()

    # -- helpers ------------------------------------------------------------
    def spine(self, comp: int, s: str) -> int:
        return self.ids[(comp, "spine", s)]

    def block(self, comp: int, s: str) -> list[int]:
        return [v for verts, _ in self.gadgets[(comp, s)] for v in verts]

    def in_g(self, v: int | None, comp: int, s: str) -> bool:
        """Is ``v`` the spine vertex ``s`` or inside one of its gadgets?"""
        if v is None or self.component_of.get(v) != comp:
            return False
        return v == self.spine(comp, s) or self.owner.get(v) == s

    @staticmethod
    def _untouched(pos: Position, loc: dict, verts) -> bool:
        for v in verts:
            i = loc.get(v)
            if i is None or pos.colors[i] or (i < pos.n_core and pos.lmask[i]):
                return False
        return True

    # -- entry point ----------------------------------------------------------
    def decide(self, pos: Position, mem: StrategyMemory, mv) -> Decision:
        """Bob's reply on ``pos`` (Bob to move) after Alice's local move ``mv``."""
        win = immediate_win(pos)
        if win is not None:
            return Decision(None, win, mem)
        if mem.step == OPENING:
            dec = self._opening(pos, mv)
        elif mem.step == STEP1:
            dec = self._step1(pos, mem, mv)
        elif mem.step == STEP2:
            dec = self._step2(pos, mem, mv)
        elif mem.step == LEMMA:
            dec = self._lemma(pos, mem, mv)
        else:
            raise StrategyBreakdown(f"unknown step {mem.step!r}")
        if dec.move[0] != LEAF:
            raise StrategyBreakdown(f"policy produced a non-leaf move {dec.move}")
        return dec

    def _narrowed(self, pos: Position, core: list[int], move_on, mem: StrategyMemory) -> Decision:
        """Narrow to the global vertices ``core``; ``move_on(p2)`` builds the move there."""
        loc = {v: i for i, v in enumerate(pos.labels)}
        order = tuple(loc[v] for v in core)
        p2 = pos.narrow(order)
        return Decision(order, move_on(p2), replace(mem, region=tuple(core)))

    def _opening(self, pos: Position, mv) -> Decision:
        v = touched(pos, mv)
        comp = 1 - self.component_of[v]
        z = self.core_of[comp].index(self.spine(comp, "z"))
        return self._narrowed(pos, self.core_of[comp], lambda p2: _focus_leaf(p2, z),
                              StrategyMemory(STEP1, marks=1, component=comp))

    def _step1(self, pos: Position, mem: StrategyMemory, mv) -> Decision:
        comp = mem.component
        loc = {v: i for i, v in enumerate(pos.labels)}
        z = loc[self.spine(comp, "z")]
        if pos.colors[z]:
            return self._enter_step2(pos, mem, loc)
        return self._count_and_press(pos, mem, mv, z)

    def _count_and_press(self, pos, mem, mv, f: int) -> Decision:
        """Shared Step 1 / Step 2 logic around the focus vertex ``f``."""
        comp = mem.component
        inside = self.in_g(touched(pos, mv), comp, self.spine_label[pos.labels[f]])
        mem2 = replace(mem, inside=mem.inside + inside, outside=mem.outside + (not inside))
        attack = mv[0] == LEAF and mv[1] == f
        if mem.marks == 1 or attack or mem2.outside == 0:
            # the step only continues while Alice has left the focus gadgets at most once
            if mem2.outside > 1:
                raise StrategyBreakdown("Alice moved twice away from the focus vertex within one step")
            return Decision(None, _focus_leaf(pos, f), replace(mem2, marks=mem.marks + 1))
        return self._corollary(pos, mem2, f)

    def _enter_step2(self, pos: Position, mem: StrategyMemory, loc) -> Decision:
        comp = mem.component
        zc = pos.colors[loc[self.spine(comp, "z")]]
        for xs, ys in (("x", "y"), ("x'", "y'")):
            side = [self.spine(comp, xs), self.spine(comp, ys)] + self.block(comp, xs) + self.block(comp, ys)
            if self._untouched(pos, loc, side):
                return self._narrowed(pos, side, lambda p2: (LEAF, 0, zc),
                                      StrategyMemory(STEP2, marks=1, component=comp))
        raise StrategyBreakdown("no untouched side for Step 2")

    def _step2(self, pos: Position, mem: StrategyMemory, mv) -> Decision:
        x, y = 0, 1
        if pos.colors[y]:
            return self._corollary(pos, mem, x)
        if pos.colors[x]:
            return self._corollary(pos, mem, y)
        return self._count_and_press(pos, mem, mv, x)

    def _corollary(self, pos: Position, mem: StrategyMemory, f: int) -> Decision:
        """Winning cycle-path from ``f`` into a clean gadget of it, then narrow to it."""
        comp = mem.component
        v = pos.labels[f]
        s = self.spine_label[v]
        loc = {u: i for i, u in enumerate(pos.labels)}
        options = sorted(self.gadgets[(comp, s)],
                         key=lambda gd: not self._untouched(pos, loc, gd[0]))
        for verts, cyc in options:
            if any(loc.get(u) is None or pos.colors[loc[u]] for u in verts):
                continue
            cyc_local = {loc[u] for u in cyc}
            ci = next(t for t, c in enumerate(pos.struct.cycles) if set(c) == cyc_local)
            res = corollary_setup(pos, sources=[f], cycles=[ci])
            if res is None:
                continue
            move, lp = res
            return self._enter_lemma(pos, mem, move, lp)
        raise StrategyBreakdown(f"no clean gadget of {s} for the corollary")

    def _enter_lemma(self, pos: Position, mem: StrategyMemory, move, lp: LemmaPosition) -> Decision:
        order = list(lp.path) + [i for i in lp.cycle if i not in lp.path]
        if move[1] not in order:
            raise StrategyBreakdown("lemma move outside the lemma vertices")
        index = {i: t for t, i in enumerate(order)}
        new_lp = replace(lp, path=tuple(index[i] for i in lp.path), cycle=tuple(index[i] for i in lp.cycle))
        new_move = (move[0], index[move[1]], move[2])
        core = [pos.labels[i] for i in order]
        return Decision(tuple(order), new_move,
                        StrategyMemory(LEMMA, lemma=new_lp, region=tuple(core), component=mem.component))

    def _lemma(self, pos: Position, mem: StrategyMemory, mv) -> Decision:
        move, lp2 = lemma_step(pos, mem.lemma, mv, vertex_moves=False, answer_leaves=True)
        if lp2.vertices() != mem.lemma.vertices() and move[1] in lp2.vertices():
            return self._enter_lemma(pos, mem, move, lp2)
        return Decision(None, move, replace(mem, lemma=lp2))


def leaf_response(mem: StrategyMemory, pos: Position, mv, policy: TheoremPolicy) -> tuple | None:
    """Bob's answer to Alice coloring a leaf of the current focus vertex, if it applies."""
    kind, i, _ = mv
    if kind != LEAF or pos.colors[i] or not pos.lfree[i] or pos.phi[i] == full_mask(pos.k):
        return None
    if mem.step == STEP1:
        focus = {pos.labels.index(policy.spine(mem.component, "z"))}
    elif mem.step == STEP2:
        focus = {0}
    elif mem.step == LEMMA:
        focus = mem.lemma.vertices()
    else:
        return None
    return (LEAF, i, _new_color(pos, i)) if i in focus else None


# -- play on concrete game states -------------------------------------------

_policies: dict[int, TheoremPolicy] = {}


def policy_for(g: Graph) -> TheoremPolicy:
    pol = _policies.get(id(g))
    if pol is None or pol.graph is not g:
        pol = _policies[id(g)] = TheoremPolicy(g)
    return pol


def region_position(mem: StrategyMemory, s: GameState) -> Position:
    return Position.from_state(s, mem.region)


def next_move(mem: StrategyMemory, s: GameState, alice_last: Move) -> tuple[Move, StrategyMemory]:
    """Bob's concrete move in ``s`` (Bob to move) after Alice played ``alice_last``."""
    if s.to_move != BOB:
        raise InvalidParameter("it is not Bob's turn")
    pol = policy_for(s.graph)
    pos = region_position(mem, s)
    dec = pol.decide(pos, mem, pos.from_game_move(s, alice_last))
    p2 = pos.narrow(dec.narrow) if dec.narrow is not None else pos
    mem2 = dec.memory
    if mem2.region is None:
        mem2 = replace(mem2, region=tuple(p2.labels[:p2.n_core]))
    return p2.to_game_move(s, dec.move), mem2


def leaf_response_move(mem: StrategyMemory, s: GameState, alice_last: Move) -> Move | None:
    """:func:`leaf_response` on a concrete state."""
    pos = region_position(mem, s)
    mv = leaf_response(mem, pos, pos.from_game_move(s, alice_last), policy_for(s.graph))
    return None if mv is None else pos.to_game_move(s, mv)


__all__ = ["StrategyMemory", "TheoremPolicy", "Decision", "next_move", "leaf_response",
           "leaf_response_move", "policy_for", "OPENING", "STEP1", "STEP2", "LEMMA", "VERTEX"]
