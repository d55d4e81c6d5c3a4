"""Heaps of words, full commutativity and the n-statistic.

The heap of a word ``s_1 ... s_q`` is the poset on positions ``1..q`` generated by
``i < j`` whenever ``m(s_i, s_j) != 2``.  A word is a reduced word of a fully
commutative (FC) element exactly when its heap has no covering pair with equal
labels and no convex chain alternating between ``s`` and ``t`` of length
``m(s, t)``; every heap routine here works on words directly, so none of them
needs braid closures.

``n(w)`` is the size of a largest antichain of the heap, computed by Dilworth's
theorem from a maximum bipartite matching.

>>> from coxkl.diagram import CoxeterSystem
>>> sys = CoxeterSystem("abcd", [("a", "b", 4), ("b", "c", 3), ("c", "d", 3)])
>>> h = build_heap("a b c a b d", sys)
>>> [(i + 1, j + 1) for i, j in h.covers]
[(1, 2), (2, 3), (2, 4), (3, 5), (3, 6), (4, 5)]
>>> is_fully_commutative("a b c a b d", sys), n_value("a b c a b d", sys)
(True, 2)
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import networkx as nx
from networkx.algorithms import bipartite

from .config import Budgets, default_budgets
from .diagram import CoxeterSystem
from .errors import BudgetExceeded, NotFullyCommutativeError, NotReducedError, WordError

__all__ = [
    "Heap",
    "build_heap",
    "fc_canonical_word",
    "heap_is_fc",
    "is_fully_commutative",
    "n_value",
    "max_antichain",
    "enumerate_fc",
    "commutation_class_size",
    "open_intervals",
]


def _bits(x: int) -> Iterable[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Heap:
    """Labelled heap poset on positions ``0..size-1`` (rendered 1-based).

    ``below[j]`` and ``above[i]`` are bitsets of strict predecessors and successors.
    """

    labels: tuple
    generators: tuple
    below: tuple
    above: tuple
    covers: tuple
    levels: tuple

    @property
    def size(self) -> int:
        return len(self.labels)

    def precedes(self, i: int, j: int) -> bool:
        """``i ≼ j`` in the heap order."""
        return i == j or bool(self.below[j] >> i & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.precedes(i, j) or self.precedes(j, i)

    def label_name(self, i: int) -> str:
        return self.generators[self.labels[i]]

    def interval(self, i: int, j: int, closed: bool = False) -> list[int]:
        """Positions strictly between i and j (or including them when ``closed``)."""
        mask = self.above[i] & self.below[j]
        if closed and self.precedes(i, j):
            mask |= (1 << i) | (1 << j)
        return list(_bits(mask))

    def minimal(self) -> list[int]:
        return [j for j in range(self.size) if not self.below[j]]

    def maximal(self) -> list[int]:
        return [i for i in range(self.size) if not self.above[i]]

    def is_chain(self) -> bool:
        return all(self.below[j] >> (j - 1) & 1 for j in range(1, self.size))

    def canonical_serialization(self) -> tuple:
        """A key equal for isomorphic labelled heaps (points named by label and occurrence)."""
        count: dict[int, int] = {}
        names = []
        for lab in self.labels:
            count[lab] = count.get(lab, 0) + 1
            names.append((lab, count[lab]))
        rel = sorted((names[i], names[j]) for i, j in self.covers)
        return tuple(sorted(names)), tuple(rel)

    # rendering ----------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "labels": [self.label_name(i) for i in range(self.size)],
            "covers": [[i + 1, j + 1] for i, j in self.covers],
            "levels": list(self.levels),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def to_ascii(self) -> str:
        """Grid with one column per generator and the highest level on top."""
        gens = self.generators
        width = max((len(g) for g in gens), default=1)
        top = max(self.levels, default=0)
        grid = [["." for _ in gens] for _ in range(top)]
        for i, lev in enumerate(self.levels):
            grid[lev - 1][self.labels[i]] = gens[self.labels[i]]
        lines = []
        for lev in range(top, 0, -1):
            row = " ".join(cell.center(width) for cell in grid[lev - 1])
            lines.append(f"{lev:>3} | {row}".rstrip())
        lines.append("    + " + " ".join(g.center(width) for g in gens))
        return "\n".join(lines)

    def to_tikz(self) -> str:
        lines = ["\\begin{tikzpicture}"]
        for i, lev in enumerate(self.levels):
            lines.append(f"  \\node (p{i + 1}) at ({self.labels[i]},{lev}) {{${self.label_name(i)}$}};")
        for i, j in self.covers:
            lines.append(f"  \\draw (p{i + 1}) -- (p{j + 1});")
        lines.append("\\end{tikzpicture}")
        return "\n".join(lines)


def _resolve(w, system: CoxeterSystem | None) -> tuple[CoxeterSystem, tuple]:
    """Accept an Element, or a word (text / names / indices) together with a system."""
    group = getattr(w, "group", None)
    if group is not None:
        return group.system, tuple(w.word)
    if system is None:
        raise TypeError("a CoxeterSystem is required when the word is not an Element")
    if hasattr(system, "system"):
        system = system.system
    parts = w.split() if isinstance(w, str) else list(w)
    out = []
    for p in parts:
        if isinstance(p, int) and not isinstance(p, bool):
            if not 0 <= p < system.rank:
                raise WordError(f"generator index {p} out of range")
            out.append(p)
        else:
            idx = system._index.get(p)
            if idx is None:
                raise WordError(f"unknown generator {p!r}")
            out.append(idx)
    return system, tuple(out)


def _relations(M, word: Sequence[int]) -> tuple[list[int], list[int]]:
    q = len(word)
    below = [0] * q
    for j in range(q):
        row = M[word[j]]
        acc = 0
        for i in range(j):
            if row[word[i]] != 2:
                acc |= below[i] | (1 << i)
        below[j] = acc
    above = [0] * q
    for j in range(q):
        for i in _bits(below[j]):
            above[i] |= 1 << j
    return below, above


def _build(system: CoxeterSystem, word: tuple) -> Heap:
    M = system.matrix
    below, above = _relations(M, word)
    covers = []
    for j in range(len(word)):
        for i in _bits(below[j]):
            if not (above[i] & below[j]):
                covers.append((i, j))
    covers.sort()
    levels = []
    for j, s in enumerate(word):
        lev = 1
        for i in range(j):
            if M[s][word[i]] != 2:
                lev = max(lev, levels[i] + 1)
        levels.append(lev)
    return Heap(word, system.generators, tuple(below), tuple(above), tuple(covers), tuple(levels))


def build_heap(w, system: CoxeterSystem | None = None) -> Heap:
    """Heap of a word; ``w`` is an Element or a word over ``system``."""
    sys_, word = _resolve(w, system)
    return _build(sys_, word)


def _criterion(M, word: Sequence[int], below: list[int], above: list[int]) -> bool:
    q = len(word)
    for j in range(q):
        for i in _bits(below[j]):
            mid = above[i] & below[j]
            a = word[i]
            if not mid:
                if a == word[j]:
                    return False  # covering pair with equal labels
                continue
            # is [i, j] a convex chain a x a x ... of length m(a, x)?
            size = bin(mid).count("1") + 2
            inner = list(_bits(mid))
            x = word[inner[0]]
            if x == a or M[a][x] != size:
                continue
            chain = [a] + [word[k] for k in inner] + [word[j]]
            if all(chain[p] == (a if p % 2 == 0 else x) for p in range(size)):
                return False
    return True


def heap_is_fc(heap: Heap, system: CoxeterSystem) -> bool:
    """Both heap conditions for full commutativity hold."""
    return _criterion(system.matrix, heap.labels, list(heap.below), list(heap.above))


def fc_canonical_word(M, word: Sequence[int]) -> tuple | None:
    """Lex-least reduced word when ``word`` is a reduced word of an FC element, else None."""
    word = tuple(word)
    below, above = _relations(M, word)
    if not _criterion(M, word, below, above):
        return None
    return _lex_least_extension(word, below)


def _lex_least_extension(word: tuple, below: list[int]) -> tuple:
    q = len(word)
    done = 0
    out = []
    for _ in range(q):
        best = None
        for j in range(q):
            if not (done >> j & 1) and (below[j] & ~done) == 0:
                if best is None or word[j] < word[best]:
                    best = j
        done |= 1 << best
        out.append(word[best])
    return tuple(out)


def is_fully_commutative(w, system: CoxeterSystem | None = None, group=None) -> bool:
    """Decide full commutativity of a reduced word.

    Raises :class:`NotReducedError` for non-reduced input; deciding that needs a
    group session (``group``), one is created when omitted.
    """
    sys_, word = _resolve(w, system)
    below, above = _relations(sys_.matrix, word)
    if _criterion(sys_.matrix, word, below, above):
        return True
    if group is None:
        g = getattr(w, "group", None)
        if g is not None:
            return False  # elements are reduced by construction
        from .words import CoxeterGroup

        group = CoxeterGroup(sys_)
    if not group.is_reduced(word):
        raise NotReducedError(f"word {' '.join(sys_.generators[i] for i in word)!r} is not reduced")
    return False


def max_antichain(heap: Heap) -> list[int]:
    """A largest antichain, by König's theorem on the comparability matching."""
    q = heap.size
    if q == 0:
        return []
    g = nx.Graph()
    left = [("L", i) for i in range(q)]
    g.add_nodes_from(left, bipartite=0)
    g.add_nodes_from((("R", i) for i in range(q)), bipartite=1)
    for i in range(q):
        for j in _bits(heap.above[i]):
            g.add_edge(("L", i), ("R", j))
    matching = bipartite.hopcroft_karp_matching(g, top_nodes=left)
    cover = bipartite.to_vertex_cover(g, matching, top_nodes=left)
    anti = [i for i in range(q) if ("L", i) not in cover and ("R", i) not in cover]
    return anti


def n_value(w, system: CoxeterSystem | None = None, *, witness: bool = False):
    """Largest antichain size of the heap of an FC element.

    With ``witness=True`` returns ``(n, antichain positions)``.
    """
    sys_, word = _resolve(w, system)
    heap = _build(sys_, word)
    if not heap_is_fc(heap, sys_):
        raise NotFullyCommutativeError("n is only defined here for fully commutative elements")
    anti = max_antichain(heap)
    return (len(anti), anti) if witness else len(anti)


def commutation_class_size(w, system: CoxeterSystem | None = None, budgets: Budgets | None = None) -> int:
    """Number of words reachable from ``w`` by swapping adjacent commuting letters."""
    sys_, word = _resolve(w, system)
    limit = (budgets or default_budgets()).closure_size
    M = sys_.matrix
    seen = {word}
    queue = deque([word])
    while queue:
        u = queue.popleft()
        for i in range(len(u) - 1):
            a, b = u[i], u[i + 1]
            if a != b and M[a][b] == 2:
                v = u[:i] + (b, a) + u[i + 2:]
                if v not in seen:
                    seen.add(v)
                    if len(seen) > limit:
                        raise BudgetExceeded("closure_size", limit, "commutation class")
                    queue.append(v)
    return len(seen)


def open_intervals(heap: Heap, s: int) -> list[tuple[int, int, list[int]]]:
    """(i, j, interior) for each pair of consecutive points labelled ``s``."""
    pts = [k for k in range(heap.size) if heap.labels[k] == s]
    return [(i, j, heap.interval(i, j)) for i, j in zip(pts, pts[1:])]


def enumerate_fc(system: CoxeterSystem, max_len: int, max_n: int | None = None,
                 budgets: Budgets | None = None) -> list[tuple]:
    """Canonical words of all FC elements of length ``<= max_len``.

    ``max_n`` optionally keeps only elements with ``n(w) <= max_n``; this is a
    valid pruning because deleting a minimal point of a heap cannot create a
    larger antichain.  Results are sorted by length then word.
    """
    limit = (budgets or default_budgets()).fc_elements
    M = system.matrix
    rank = system.rank
    layer = {()}
    out = [()]
    for _ in range(max_len):
        nxt = set()
        for w in layer:
            for s in range(rank):
                cand = (s,) + w
                below, above = _relations(M, cand)
                if not _criterion(M, cand, below, above):
                    continue
                canon = _lex_least_extension(cand, below)
                if canon in nxt:
                    continue
                if max_n is not None and _width(cand, below, above) > max_n:
                    continue
                nxt.add(canon)
        if len(out) + len(nxt) > limit:
            raise BudgetExceeded("fc_elements", limit, "FC enumeration")
        if not nxt:
            break
        out.extend(sorted(nxt))
        layer = nxt
    return out


def _width(word, below, above) -> int:
    q = len(word)
    heap = Heap(tuple(word), (), tuple(below), tuple(above), (), ())
    return len(max_antichain(heap)) if q else 0
