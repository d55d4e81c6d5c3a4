"""Star operations with respect to rank-2 parabolic subgroups.

Write ``w = w_I * (^I w)`` for ``I = {s, t}`` with ``3 <= m(s, t) < inf``.  When
``0 < l(w_I) < m`` the element sits in a left I-string; the lower left star
drops the first letter of ``w_I`` (if ``l(w_I) >= 2``) and the upper left star
prepends the other letter (if ``l(w_I) <= m - 2``).  Right-hand operations
use ``w = w^I * w_I`` and act on the last letter.

>>> from coxkl.diagram import CoxeterSystem
>>> from coxkl.words import CoxeterGroup
>>> W = CoxeterGroup(CoxeterSystem("abc", [("a", "b", 3), ("b", "c", 4)]))
>>> x = W.element("a b c a b")
>>> star_op(x, StarMove(("a", "b"), "right", "lower")) == W.element("a b c a")
True
>>> star_op(x, StarMove(("b", "c"), "left", "upper")) == W.element("c b a b c b")
True
>>> star_op(x, StarMove(("b", "c"), "right", "upper")) is None
True
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import INF
from .errors import BudgetExceeded, PreconditionError
from .heaps import _lex_least_extension, _relations, _criterion
from .words import LEFT, RIGHT, CoxeterGroup, Element

__all__ = [
    "StarMove",
    "ReductionPath",
    "star_op",
    "star_op_id",
    "star_reduce",
    "is_commuting_product",
    "star_pairs",
    "in_string",
]

LOWER, UPPER = "lower", "upper"


@dataclass(frozen=True)
class StarMove:
    pair: tuple
    side: str = LEFT
    direction: str = LOWER

    def __post_init__(self):
        if len(self.pair) != 2 or self.pair[0] == self.pair[1]:
            raise PreconditionError(f"a star move needs two distinct generators, got {self.pair!r}")
        if self.side not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'left' or 'right', got {self.side!r}")
        if self.direction not in (LOWER, UPPER):
            raise ValueError(f"direction must be 'lower' or 'upper', got {self.direction!r}")

    def to_dict(self) -> dict:
        return {"pair": list(self.pair), "side": self.side, "dir": self.direction}


def _pair_ids(group: CoxeterGroup, pair) -> tuple[int, int, int]:
    s, t = (group._gen(p) for p in pair)
    m = group._M[s][t]
    if m == INF or m < 3:
        raise PreconditionError(f"star operations need 3 <= m < inf, got m = {m}")
    return s, t, m


def star_pairs(group: CoxeterGroup) -> list[tuple[int, int]]:
    """Index pairs (s < t) with finite m(s, t) >= 3, in lex order."""
    n = group.rank
    M = group._M
    return [(s, t) for s in range(n) for t in range(s + 1, n) if M[s][t] != INF and M[s][t] >= 3]


def in_string(group: CoxeterGroup, i: int, s: int, t: int, side: str) -> bool:
    """Element ``i`` lies in an {s, t}-string on ``side``."""
    m = group._M[s][t]
    par, _ = group.coset_decompose_id(i, s, t, side)
    return 0 < group.length_id(par) < m


def star_op_id(group: CoxeterGroup, i: int, s: int, t: int, side: str, direction: str) -> int | None:
    m = group._M[s][t]
    par, _ = group.coset_decompose_id(i, s, t, side)
    ell = group.length_id(par)
    if ell == 0 or ell >= m:
        return None
    word = group.word_of(par)
    if direction == LOWER:
        if ell < 2:
            return None
        if side == LEFT:
            return group.lmul_id(word[0], i)
        return group.rmul_id(i, word[-1])
    if ell + 1 > m - 1:
        return None
    if side == LEFT:
        other = t if word[0] == s else s
        return group.lmul_id(other, i)
    other = t if word[-1] == s else s
    return group.rmul_id(i, other)


def star_op(w: Element, move: StarMove) -> Element | None:
    """Apply a star operation; None when it is undefined at ``w``."""
    group = w.group
    s, t, _ = _pair_ids(group, move.pair)
    j = star_op_id(group, group.id_of(w), s, t, move.side, move.direction)
    return None if j is None else group.elem(j)


def is_commuting_product(w) -> bool:
    """Distinct letters, pairwise commuting (the identity counts)."""
    word = w.word
    M = w.group._M
    if len(set(word)) != len(word):
        return False
    return all(M[a][b] == 2 for i, a in enumerate(word) for b in word[i + 1:])


@dataclass
class ReductionPath:
    start: Element
    steps: list = field(default_factory=list)  # (StarMove, Element)

    @property
    def terminal(self) -> Element:
        return self.steps[-1][1] if self.steps else self.start

    def to_list(self) -> list[dict]:
        return [{"move": mv.to_dict(), "word": str(el) if el.word else ""} for mv, el in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


def _moves(group: CoxeterGroup):
    gens = group.system.generators
    for side in (LEFT, RIGHT):
        for s, t in star_pairs(group):
            yield side, s, t, StarMove((gens[s], gens[t]), side, LOWER)


def star_reduce(w: Element, budget: int | None = None, *, max_states: int | None = None) -> ReductionPath | None:
    """Shortest sequence of lower star operations ending at a commuting product.

    ``budget`` bounds the path length (default: the length of ``w``, which is
    enough because every lower star operation shortens by one).  Returns None
    when no terminal is reachable, and raises :class:`BudgetExceeded` when the
    search was cut off before it could decide.
    """
    group = w.group
    depth = len(w.word) if budget is None else budget
    states = group.budgets.star_states if max_states is None else max_states
    if is_commuting_product(w):
        return ReductionPath(w, [])
    below, above = _relations(group._M, w.word)
    if _criterion(group._M, w.word, below, above):
        return _reduce_fc(w, below, above, depth, states)
    return _reduce_general(w, depth, states)


def _reduce_general(w: Element, depth: int, states: int) -> ReductionPath | None:
    group = w.group
    start = group.id_of(w)
    parent: dict[int, tuple] = {start: None}
    frontier = [start]
    moves = list(_moves(group))
    M = group._M
    for level in range(depth):
        nxt = []
        for i in frontier:
            for side, s, t, mv in moves:
                j = star_op_id(group, i, s, t, side, LOWER)
                if j is None or j in parent:
                    continue
                parent[j] = (i, mv)
                if len(parent) > states:
                    raise BudgetExceeded("star_states", states, "star reduction search")
                word = group.word_of(j)
                if len(set(word)) == len(word) and all(M[a][b] == 2 for k, a in enumerate(word) for b in word[k + 1:]):
                    return _unwind(w, parent, j, group.elem)
                nxt.append(j)
        if not nxt:
            return None
        frontier = nxt
    if frontier:
        raise BudgetExceeded("star_depth", depth, "star reduction search")
    return None


def _unwind(w, parent, j, make) -> ReductionPath:
    steps = []
    while parent[j] is not None:
        i, mv = parent[j]
        steps.append((mv, make(j)))
        j = i
    steps.reverse()
    return ReductionPath(w, steps)


def _reduce_fc(w: Element, below, above, depth: int, states: int) -> ReductionPath | None:
    """Star reduction of an FC element: each lower star deletes an extreme heap point."""
    group = w.group
    word = w.word
    q = len(word)
    full = (1 << q) - 1
    moves = list(_moves(group))

    def element_of(state: int) -> Element:
        pos = [k for k in range(q) if state >> k & 1]
        sub = tuple(word[k] for k in pos)
        sub_below = [sum(1 << pos.index(i) for i in range(q) if below[k] >> i & 1 and state >> i & 1) for k in pos]
        return Element(_lex_least_extension(sub, sub_below), group)

    def lower(state: int, side: str, s: int, t: int) -> int | None:
        rel = below if side == LEFT else above
        chain = []
        rest = state
        while True:
            nxt = [k for k in range(q) if rest >> k & 1 and word[k] in (s, t) and not (rel[k] & rest)]
            if not nxt:
                break
            chain.append(nxt[0])
            rest &= ~(1 << nxt[0])
        if len(chain) < 2:
            return None
        return state & ~(1 << chain[0])

    def antichain(state: int) -> bool:
        return all(not (below[k] & state) for k in range(q) if state >> k & 1)

    parent: dict[int, tuple] = {full: None}
    frontier = [full]
    for level in range(depth):
        nxt = []
        for st in frontier:
            for side, s, t, mv in moves:
                new = lower(st, side, s, t)
                if new is None or new in parent:
                    continue
                parent[new] = (st, mv)
                if len(parent) > states:
                    raise BudgetExceeded("star_states", states, "star reduction search")
                if antichain(new):
                    return _unwind(w, parent, new, element_of)
                nxt.append(new)
        if not nxt:
            return None
        frontier = nxt
    if frontier:
        raise BudgetExceeded("star_depth", depth, "star reduction search")
    return None
