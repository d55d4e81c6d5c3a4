"""Word problem for Coxeter groups at desk scale.

A :class:`CoxeterGroup` is a session object wrapping a :class:`CoxeterSystem`.
It keeps, for every element it has met, the full set of its reduced words
(its braid closure).  Descent sets are read off the first and last letters of
those words, and multiplication by a generator either strips a letter (when it
is a descent) or extends every reduced word and closes the result under braid
moves again.  By the Matsumoto-Tits theorem this is exact.

Internally elements are numbered in the order they are discovered and words are
tuples of generator indices; :class:`Element` is the public handle.

>>> from coxkl.diagram import CoxeterSystem
>>> W = CoxeterGroup(CoxeterSystem("ab", [("a", "b", 3)]))
>>> str(W.element("b a b"))
'a b a'
>>> W.element("s s".replace("s", "a")).word
()
>>> sorted(W.descent_set(W.element("a b"), "left"))
['a']
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config import Budgets, default_budgets
from .diagram import INF, CoxeterSystem
from .errors import BudgetExceeded, PreconditionError, WordError

__all__ = ["Element", "CosetDecomposition", "CoxeterGroup", "alternating"]

LEFT, RIGHT = "left", "right"


def alternating(s, t, n: int) -> tuple:
    """The word s t s t ... of length n."""
    return tuple(s if i % 2 == 0 else t for i in range(n))


@dataclass(frozen=True)
class Element:
    """A group element, identified by its canonical (lex-least reduced) word."""

    word: tuple
    group: "CoxeterGroup" = field(repr=False)

    def __len__(self) -> int:
        return len(self.word)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def letters(self) -> tuple[str, ...]:
        gens = self.group.system.generators
        return tuple(gens[i] for i in self.word)

    def __str__(self) -> str:
        return " ".join(self.letters) if self.word else "e"

    def __repr__(self) -> str:
        return f"Element({str(self)!r})"

    def __mul__(self, other: "Element") -> "Element":
        return self.group.multiply(self, other)

    def inverse(self) -> "Element":
        return self.group.inverse(self)


@dataclass(frozen=True)
class CosetDecomposition:
    """``w = parabolic * transversal`` (left) or ``w = transversal * parabolic`` (right)."""

    side: str
    pair: tuple[str, str]
    parabolic: Element
    transversal: Element

    @property
    def element(self) -> Element:
        g = self.parabolic.group
        if self.side == LEFT:
            return g.multiply(self.parabolic, self.transversal)
        return g.multiply(self.transversal, self.parabolic)


class CoxeterGroup:
    """Session object holding memo tables for one Coxeter system.

    A session is not safe for concurrent writers; use one per thread.
    """

    def __init__(self, system: CoxeterSystem, budgets: Budgets | None = None):
        self.system = system
        self.budgets = budgets if budgets is not None else default_budgets()
        n = system.rank
        self.rank = n
        M = system.matrix
        self._M = M
        # braid[a][b] = (m, a b a ..., b a b ...) for finite m, else None
        self._braid = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                if a != b and M[a][b] != INF:
                    m = M[a][b]
                    self._braid[a][b] = (m, alternating(a, b, m), alternating(b, a, m))
        self._words: list[tuple] = [()]
        self._ids: dict[tuple, int] = {(): 0}
        self._length: list[int] = [0]
        self._ldesc: list[int] = [0]
        self._rdesc: list[int] = [0]
        self._closure: dict[int, frozenset] = {0: frozenset({()})}
        self._lmul: list[dict[int, int]] = [dict() for _ in range(n)]
        self._rmul: list[dict[int, int]] = [dict() for _ in range(n)]
        self._word_ids: dict[tuple, int] = {(): 0}
        self._intervals: dict[int, frozenset] = {0: frozenset({0})}
        self._finite: list[int] | None = None

    # ------------------------------------------------------------------
    # parsing and formatting

    def parse_word(self, word) -> tuple:
        """Accept text ``"a b a"``, a sequence of names, or a tuple of indices."""
        if isinstance(word, Element):
            return word.word
        if isinstance(word, str):
            parts = word.split()
            if len(parts) == 1 and parts[0] in ("e", "1") and parts[0] not in self.system.generators:
                parts = []
        else:
            parts = list(word)
        out = []
        for p in parts:
            if isinstance(p, int) and not isinstance(p, bool):
                if not 0 <= p < self.rank:
                    raise WordError(f"generator index {p} out of range")
                out.append(p)
            else:
                try:
                    out.append(self.system._index[p])
                except (KeyError, TypeError):
                    raise WordError(f"unknown generator {p!r}") from None
        return tuple(out)

    def format(self, x) -> str:
        w = x.word if isinstance(x, Element) else tuple(x)
        gens = self.system.generators
        return " ".join(gens[i] for i in w)

    def names(self, mask_or_word) -> frozenset:
        gens = self.system.generators
        if isinstance(mask_or_word, int):
            return frozenset(gens[i] for i in range(self.rank) if mask_or_word >> i & 1)
        return frozenset(gens[i] for i in mask_or_word)

    def _gen(self, s) -> int:
        if isinstance(s, int) and not isinstance(s, bool):
            return s
        try:
            return self.system._index[s]
        except KeyError:
            raise WordError(f"unknown generator {s!r}") from None

    # ------------------------------------------------------------------
    # braid closure machinery

    def braid_closure(self, seeds: Iterable[tuple]) -> frozenset:
        """All words reachable from ``seeds`` by braid moves."""
        limit = self.budgets.closure_size
        seen = set(seeds)
        queue = deque(seen)
        braid = self._braid
        while queue:
            u = queue.popleft()
            L = len(u)
            for i in range(L - 1):
                a, b = u[i], u[i + 1]
                if a == b:
                    continue
                entry = braid[a][b]
                if entry is None:
                    continue
                m, lhs, rhs = entry
                if i + m > L or u[i:i + m] != lhs:
                    continue
                v = u[:i] + rhs + u[i + m:]
                if v not in seen:
                    seen.add(v)
                    if len(seen) > limit:
                        raise BudgetExceeded("closure_size", limit, f"element of length {L}")
                    queue.append(v)
        return frozenset(seen)

    def _register(self, words: frozenset) -> int:
        canon = min(words)
        i = self._ids.get(canon)
        if i is not None:
            self._closure.setdefault(i, words)
            return i
        i = len(self._words)
        self._words.append(canon)
        self._ids[canon] = i
        self._length.append(len(canon))
        ld = rd = 0
        for r in words:
            if r:
                ld |= 1 << r[0]
                rd |= 1 << r[-1]
        self._ldesc.append(ld)
        self._rdesc.append(rd)
        self._closure[i] = words
        return i

    def closure_id(self, i: int) -> frozenset:
        """All reduced words of element ``i``."""
        c = self._closure.get(i)
        if c is None:
            c = self.braid_closure([self._words[i]])
            self._closure[i] = c
        return c

    def rmul_id(self, i: int, s: int) -> int:
        """Element number of ``w_i * s``."""
        table = self._rmul[s]
        j = table.get(i)
        if j is not None:
            return j
        R = self.closure_id(i)
        if self._rdesc[i] >> s & 1:
            j = self._register(frozenset(r[:-1] for r in R if r[-1] == s))
        else:
            j = self._register(self.braid_closure([r + (s,) for r in R]))
        table[i] = j
        table[j] = i
        return j

    def lmul_id(self, s: int, i: int) -> int:
        """Element number of ``s * w_i``."""
        table = self._lmul[s]
        j = table.get(i)
        if j is not None:
            return j
        R = self.closure_id(i)
        if self._ldesc[i] >> s & 1:
            j = self._register(frozenset(r[1:] for r in R if r[0] == s))
        else:
            j = self._register(self.braid_closure([(s,) + r for r in R]))
        table[i] = j
        table[j] = i
        return j

    def word_id(self, word: Sequence[int]) -> int:
        """Element number of an arbitrary word over generator indices."""
        word = tuple(word)
        i = self._word_ids.get(word)
        if i is not None:
            return i
        i = 0
        for s in word:
            i = self.rmul_id(i, s)
        if len(self._word_ids) < 1_000_000:
            self._word_ids[word] = i
        return i

    def length_id(self, i: int) -> int:
        return self._length[i]

    def ldesc_id(self, i: int) -> int:
        return self._ldesc[i]

    def rdesc_id(self, i: int) -> int:
        return self._rdesc[i]

    def word_of(self, i: int) -> tuple:
        return self._words[i]

    def elem(self, i: int) -> Element:
        return Element(self._words[i], self)

    def id_of(self, x) -> int:
        if isinstance(x, Element):
            if x.group is not self:
                raise WordError("element belongs to a different group session")
            i = self._ids.get(x.word)
            if i is not None:
                return i
            return self.word_id(x.word)
        return self.word_id(self.parse_word(x))

    @property
    def identity(self) -> Element:
        return Element((), self)

    def generator(self, s) -> Element:
        return Element((self._gen(s),), self)

    # ------------------------------------------------------------------
    # public operations

    def canonical_form(self, word) -> Element:
        """Canonical reduced word of the element represented by ``word``.

        Words passing the fully commutative heap test are handled without
        braid closures; other words are limited by the word-length budget.
        """
        w = self.parse_word(word)
        i = self._word_ids.get(w)
        if i is not None:
            return Element(self._words[i], self)
        from .heaps import fc_canonical_word

        canon = fc_canonical_word(self._M, w)
        if canon is not None:
            return Element(canon, self)
        if len(w) > self.budgets.word_length:
            raise BudgetExceeded("word_length", self.budgets.word_length, f"word of length {len(w)}")
        return Element(self._words[self.word_id(w)], self)

    element = canonical_form

    def is_reduced(self, word) -> bool:
        w = self.parse_word(word)
        return len(self.canonical_form(w).word) == len(w)

    def length(self, x) -> int:
        return len(self._as_element(x).word)

    def _as_element(self, x) -> Element:
        return x if isinstance(x, Element) else self.canonical_form(x)

    def descent_set(self, x, side: str = LEFT) -> frozenset:
        i = self.id_of(self._as_element(x))
        mask = self._ldesc[i] if side == LEFT else self._rdesc[i]
        if side not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        return self.names(mask)

    def lmul(self, s, x) -> Element:
        return self.elem(self.lmul_id(self._gen(s), self.id_of(self._as_element(x))))

    def rmul(self, x, s) -> Element:
        return self.elem(self.rmul_id(self.id_of(self._as_element(x)), self._gen(s)))

    def multiply(self, x, y) -> Element:
        i = self.id_of(self._as_element(x))
        for s in self._as_element(y).word:
            i = self.rmul_id(i, s)
        return self.elem(i)

    def inverse(self, x) -> Element:
        return self.canonical_form(tuple(reversed(self._as_element(x).word)))

    def inverse_id(self, i: int) -> int:
        return self.word_id(tuple(reversed(self._words[i])))

    # Bruhat order ------------------------------------------------------

    def bruhat_leq_id(self, x: int, y: int) -> bool:
        L, ld = self._length, self._ldesc
        while True:
            if L[x] > L[y]:
                return False
            if L[x] == L[y]:
                return x == y
            if x == 0:
                return True
            m = ld[y]
            s = (m & -m).bit_length() - 1
            if ld[x] >> s & 1:
                x = self.lmul_id(s, x)
            y = self.lmul_id(s, y)

    def bruhat_leq(self, x, y) -> bool:
        return self.bruhat_leq_id(self.id_of(self._as_element(x)), self.id_of(self._as_element(y)))

    def interval_ids(self, y: int) -> frozenset:
        """Element numbers of the lower Bruhat interval [e, y]."""
        got = self._intervals.get(y)
        if got is not None:
            return got
        if self._length[y] > self.budgets.interval_length:
            raise BudgetExceeded("interval_length", self.budgets.interval_length,
                                 f"interval below an element of length {self._length[y]}")
        # walk down along left descents, then build back up
        chain = []
        cur = y
        while cur not in self._intervals:
            m = self._ldesc[cur]
            s = (m & -m).bit_length() - 1
            chain.append((s, cur))
            cur = self.lmul_id(s, cur)
        below = self._intervals[cur]
        for s, top in reversed(chain):
            below = below | frozenset(self.lmul_id(s, x) for x in below)
            self._intervals[top] = below
        return below

    def bruhat_interval(self, y) -> set:
        return {self.elem(i) for i in self.interval_ids(self.id_of(self._as_element(y)))}

    # cosets --------------------------------------------------------------

    def coset_decompose(self, w, pair, side: str = LEFT) -> CosetDecomposition:
        s, t = (self._gen(p) for p in pair)
        if s == t:
            raise PreconditionError("coset decomposition needs two distinct generators")
        i = self.id_of(self._as_element(w))
        par, trans = self.coset_decompose_id(i, s, t, side)
        names = (self.system.generators[s], self.system.generators[t])
        return CosetDecomposition(side, names, self.elem(par), self.elem(trans))

    def coset_decompose_id(self, i: int, s: int, t: int, side: str) -> tuple[int, int]:
        """(parabolic part, transversal part) as element numbers."""
        mask = (1 << s) | (1 << t)
        stripped = []
        if side == LEFT:
            while self._ldesc[i] & mask:
                a = s if self._ldesc[i] >> s & 1 else t
                stripped.append(a)
                i = self.lmul_id(a, i)
            par = self.word_id(stripped)
        elif side == RIGHT:
            while self._rdesc[i] & mask:
                a = s if self._rdesc[i] >> s & 1 else t
                stripped.append(a)
                i = self.rmul_id(i, a)
            par = self.word_id(tuple(reversed(stripped)))
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        return par, i

    # finite groups -------------------------------------------------------

    def enumerate_ids(self, max_order: int | None = None) -> list[int]:
        """All elements of a finite group, sorted by length then canonical word."""
        if self._finite is not None:
            return self._finite
        limit = self.budgets.group_order if max_order is None else max_order
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for i in frontier:
                for s in range(self.rank):
                    if self._rdesc[i] >> s & 1:
                        continue
                    j = self.rmul_id(i, s)
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
                        if len(seen) > limit:
                            raise BudgetExceeded("group_order", limit, "group is larger than the enumeration bound")
            frontier = nxt
        out = sorted(seen, key=lambda i: (self._length[i], self._words[i]))
        self._finite = out
        return out

    def enumerate(self, max_order: int | None = None) -> list[Element]:
        return [self.elem(i) for i in self.enumerate_ids(max_order)]

    def longest_id(self) -> int:
        els = self.enumerate_ids()
        return els[-1]

    def longest_element(self) -> Element:
        return self.elem(self.longest_id())

    def elements_up_to_length(self, n: int) -> list[Element]:
        """Every element of length at most n (by breadth-first search)."""
        seen = {0}
        frontier = [0]
        for _ in range(n):
            nxt = []
            for i in frontier:
                for s in range(self.rank):
                    if self._rdesc[i] >> s & 1:
                        continue
                    j = self.rmul_id(i, s)
                    if j not in seen:
                        seen.add(j)
                        nxt.append(j)
            frontier = nxt
        return [self.elem(i) for i in sorted(seen, key=lambda i: (self._length[i], self._words[i]))]

    def parabolic_ids(self, pair) -> list[int]:
        """Elements of the rank-2 parabolic subgroup on ``pair`` (m must be finite)."""
        s, t = (self._gen(p) for p in pair)
        m = self._M[s][t]
        if m == INF:
            raise PreconditionError("parabolic subgroup is infinite")
        out = {0}
        for k in range(1, m + 1):
            out.add(self.word_id(alternating(s, t, k)))
            out.add(self.word_id(alternating(t, s, k)))
        return sorted(out, key=lambda i: self._length[i])
