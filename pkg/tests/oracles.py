"""Independent reference implementations used only by the tests.

Nothing here imports from coxkl except to construct systems.  Groups are modelled
concretely (permutations, signed permutations) or by brute-force search over
words, and the Hecke algebra is rebuilt from scratch over those models.
"""

from __future__ import annotations

import itertools
from collections import deque


# -- Laurent polynomials as plain dicts ------------------------------------

def padd(p, q, c=1):
    out = dict(p)
    for e, a in q.items():
        out[e] = out.get(e, 0) + c * a
        if not out[e]:
            del out[e]
    return out


def pmul(p, q):
    out = {}
    for e1, a1 in p.items():
        for e2, a2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + a1 * a2
    return {e: a for e, a in out.items() if a}


# -- permutation models ----------------------------------------------------

class PermGroup:
    """Type A_{n} as permutations of 0..n; generator i swaps positions i, i+1."""

    def __init__(self, n: int):
        self.n = n
        self.rank = n
        self.identity = tuple(range(n + 1))

    def act(self, w, i):        # w * s_i: swap positions
        w = list(w)
        w[i], w[i + 1] = w[i + 1], w[i]
        return tuple(w)

    def lact(self, i, w):       # s_i * w: swap values
        return tuple(i + 1 if x == i else i if x == i + 1 else x for x in w)

    def length(self, w):
        return sum(1 for a, b in itertools.combinations(w, 2) if a > b)

    def from_word(self, word):
        w = self.identity
        for i in word:
            w = self.act(w, i)
        return w

    def elements(self):
        return list(itertools.permutations(range(self.n + 1)))

    def bruhat_leq(self, x, y):
        """Tableau criterion: sorted prefixes of x are dominated by those of y."""
        for k in range(1, len(x)):
            a, b = sorted(x[:k]), sorted(y[:k])
            if any(p > q for p, q in zip(a, b)):
                return False
        return True

    def right_descents(self, w):
        return {i for i in range(self.n) if w[i] > w[i + 1]}

    def left_descents(self, w):
        inv = self.inverse(w)
        return self.right_descents(inv)

    def inverse(self, w):
        out = [0] * len(w)
        for i, x in enumerate(w):
            out[x] = i
        return tuple(out)


class SignedPermGroup:
    """Type B_n as signed permutations of 1..n.

    Generator 0 negates the first entry (the weight-4 end), generator i >= 1
    swaps entries i-1 and i.  With that numbering the diagram is the path 0-4-1-3-2-...
    """

    def __init__(self, n: int):
        self.n = n
        self.rank = n
        self.identity = tuple(range(1, n + 1))

    def act(self, w, i):
        w = list(w)
        if i == 0:
            w[0] = -w[0]
        else:
            w[i - 1], w[i] = w[i], w[i - 1]
        return tuple(w)

    def from_word(self, word):
        w = self.identity
        for i in word:
            w = self.act(w, i)
        return w

    def length(self, w):
        inv = sum(1 for i, j in itertools.combinations(range(self.n), 2) if w[i] > w[j])
        nsum = sum(1 for i, j in itertools.combinations(range(self.n), 2) if -w[i] > w[j])
        neg = sum(1 for x in w if x < 0)
        return inv + nsum + neg

    def elements(self):
        out = []
        for p in itertools.permutations(range(1, self.n + 1)):
            for signs in itertools.product((1, -1), repeat=self.n):
                out.append(tuple(a * b for a, b in zip(p, signs)))
        return out


def reduced_word_bfs(group):
    """A reduced word for every element, by breadth-first search from the identity."""
    words = {group.identity: ()}
    queue = deque([group.identity])
    while queue:
        w = queue.popleft()
        for i in range(group.rank):
            u = group.act(w, i)
            if u not in words:
                words[u] = words[w] + (i,)
                queue.append(u)
    return words


def subword_bruhat(group, x, y_word):
    """x <= y iff some subword of a reduced word of y multiplies out to x."""
    for mask in range(1 << len(y_word)):
        sub = [y_word[k] for k in range(len(y_word)) if mask >> k & 1]
        if group.from_word(sub) == x:
            return True
    return False


# -- words and braid closures from a Coxeter matrix ------------------------

def braid_class(M, word):
    """All words reachable by braid (including commutation) moves."""
    word = tuple(word)
    seen = {word}
    queue = deque([word])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            s, t = w[i], w[i + 1]
            m = M[s][t]
            if s == t or m == float("inf") or i + m > len(w):
                continue
            pat = tuple(s if k % 2 == 0 else t for k in range(m))
            if w[i:i + m] == pat:
                rep = tuple(t if k % 2 == 0 else s for k in range(m))
                u = w[:i] + rep + w[i + m:]
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return seen


def is_reduced_by_closure(M, word):
    """A word is reduced iff no word in its braid class has two equal adjacent letters."""
    return all(all(a != b for a, b in zip(w, w[1:])) for w in braid_class(M, word))


def is_fc_by_closure(M, word):
    """Reduced and no word of the braid class contains a braid factor of length >= 3."""
    cls = braid_class(M, word)
    for w in cls:
        if any(a == b for a, b in zip(w, w[1:])):
            return False
        for i in range(len(w) - 1):
            s, t = w[i], w[i + 1]
            m = M[s][t]
            if m >= 3 and m != float("inf") and i + m <= len(w):
                if all(w[i + k] == (s if k % 2 == 0 else t) for k in range(m)):
                    return False
    return True


def heap_order(M, word):
    """Strict order of the heap as a set of pairs (i, j), i below j."""
    q = len(word)
    rel = {(i, j) for i in range(q) for j in range(i + 1, q) if M[word[i]][word[j]] != 2}
    changed = True
    while changed:
        changed = False
        for (i, j), (k, l) in itertools.product(list(rel), list(rel)):
            if j == k and (i, l) not in rel:
                rel.add((i, l))
                changed = True
    return rel


def brute_max_antichain(M, word):
    rel = heap_order(M, word)
    q = len(word)
    for size in range(q, 0, -1):
        for sub in itertools.combinations(range(q), size):
            if all((a, b) not in rel for a in sub for b in sub):
                return size
    return 0


# -- Hecke algebra over a concrete group -----------------------------------

V_MINUS = {1: 1, -1: -1}


class HeckeOracle:
    """T-basis arithmetic and KL basis from the C_s C_x recursion."""

    def __init__(self, group):
        self.G = group
        self.words = reduced_word_bfs(group)
        self.elems = sorted(self.words, key=lambda w: (len(self.words[w]), self.words[w]))
        self.len = {w: len(self.words[w]) for w in self.words}
        self._C = {}

    def left_ts(self, i, h):
        out = {}
        for w, c in h.items():
            sw = self.G.lact(i, w) if hasattr(self.G, "lact") else self._lact(i, w)
            out[sw] = padd(out.get(sw, {}), c)
            if self.len[sw] < self.len[w]:
                out[w] = padd(out.get(w, {}), pmul(c, V_MINUS))
        return {w: c for w, c in out.items() if c}

    def _lact(self, i, w):
        return self.G.from_word((i,) + self.words[w])

    def tmul(self, h1, h2):
        out = {}
        for u, c in h1.items():
            prod = h2
            for i in reversed(self.words[u]):
                prod = self.left_ts(i, prod)
            for w, a in prod.items():
                out[w] = padd(out.get(w, {}), pmul(a, c))
        return {w: c for w, c in out.items() if c}

    def C(self, w):
        if w in self._C:
            return self._C[w]
        word = self.words[w]
        if not word:
            res = {w: {0: 1}}
        else:
            s = word[0]
            rest = self.G.from_word(word[1:])
            cs = {self.G.from_word((s,)): {0: 1}, self.G.identity: {-1: 1}}
            res = self.tmul(cs, self.C(rest))
            # subtract mu(z, rest) C_z over z < rest with s z < z
            for z in sorted(self.words, key=lambda u: -self.len[u]):
                if z == rest or self.len[z] >= self.len[rest]:
                    continue
                if self.len[self._lact(s, z)] > self.len[z]:
                    continue
                m = self.C(rest).get(z, {}).get(-1, 0)
                if m:
                    for u, c in self.C(z).items():
                        res[u] = padd(res.get(u, {}), c, -m)
            res = {u: c for u, c in res.items() if c}
        self._C[w] = res
        return res

    def p(self, x, y):
        return self.C(y).get(x, {})

    def structure(self, x, y):
        """C_x C_y = sum h_z C_z, by peeling off the longest T-term."""
        prod = self.tmul(self.C(x), self.C(y))
        h = {}
        for z in sorted(self.words, key=lambda u: -self.len[u]):
            c = prod.get(z)
            if not c:
                continue
            h[z] = c
            for u, a in self.C(z).items():
                prod[u] = padd(prod.get(u, {}), pmul(a, c), -1)
        return h

    def a_values(self):
        best = {w: 0 for w in self.words}
        for x in self.words:
            for y in self.words:
                for z, c in self.structure(x, y).items():
                    best[z] = max(best[z], max(c))
        return best


# -- Robinson-Schensted for the type A oracle -------------------------------

def rs_shape(perm):
    rows: list[list[int]] = []
    for x in perm:
        for row in rows:
            bigger = [k for k, y in enumerate(row) if y > x]
            if bigger:
                k = bigger[0]
                row[k], x = x, row[k]
            else:
                row.append(x)
                x = None
                break
        if x is not None:
            rows.append([x])
    return tuple(len(r) for r in rows)


def rs_tableaux(perm):
    P: list[list[int]] = []
    Q: list[list[int]] = []
    for step, x in enumerate(perm):
        r = 0
        while True:
            if r == len(P):
                P.append([x])
                Q.append([step])
                break
            row = P[r]
            bigger = [k for k, y in enumerate(row) if y > x]
            if not bigger:
                row.append(x)
                Q[r].append(step)
                break
            k = bigger[0]
            row[k], x = x, row[k]
            r += 1
    return tuple(map(tuple, P)), tuple(map(tuple, Q))


def a_from_shape(shape):
    """Lusztig's a-value on S_n: sum of (i - 1) * lambda_i over the rows of the RS shape."""
    return sum(i * lam for i, lam in enumerate(shape))
