"""Hecke algebra arithmetic, Kazhdan-Lusztig polynomials, cells and the a-function.

Normalisation: ``(T_s - v)(T_s + v^-1) = 0`` and ``C_y = sum_x p_{x,y} T_x`` with
``p_{y,y} = 1`` and ``p_{x,y}`` in ``v^-1 Z[v^-1]`` for ``x < y``.  Internally the
classical polynomials ``P_{x,y}(q)`` are computed by the standard recursion
over Bruhat intervals and converted by ``p_{x,y} = v^{l(x)-l(y)} P_{x,y}(v^2)``.

>>> from coxkl.diagram import CoxeterSystem
>>> from coxkl.words import CoxeterGroup
>>> W = CoxeterGroup(CoxeterSystem("ab", [("a", "b", 3)]))
>>> str(kl_polynomial(W.identity, W.element("a b a")))
'v^-3'
>>> a_value_finite(W.element("a b a"))
3
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx
import numpy as np

from .diagram import (
    CoxeterSystem,
    INF,
    connected_components,
    isomorphic,
    is_finite_type,
    weyl_type,
)
from .errors import BudgetExceeded, PreconditionError
from .heaps import fc_canonical_word, n_value
from .laurent import ONE, ZERO, LaurentPoly, V
from .star import LOWER, UPPER, in_string, star_op_id
from .words import LEFT, RIGHT, CoxeterGroup, Element

__all__ = [
    "HeckeElement",
    "KLTable",
    "kl_table",
    "kl_polynomial",
    "mu",
    "mu_sym",
    "c_basis",
    "c_product_left",
    "c_product_right",
    "t_multiply",
    "FiniteHecke",
    "finite_hecke",
    "a_value_finite",
    "a_value_certified",
    "CellPartition",
    "cells",
    "verify_star_mu_transport",
    "verify_star_recurrence",
    "STAR_REDUCIBLE_DIAGRAMS",
]

V_MINUS = V - V.inv()  # v - v^-1


# ----------------------------------------------------------------------
# T-basis arithmetic

class HeckeElement:
    """Finite combination ``sum c_w T_w`` with Laurent polynomial coefficients."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: CoxeterGroup, coeffs: dict | None = None):
        self.group = group
        self.coeffs: dict[int, LaurentPoly] = {}
        for k, c in (coeffs or {}).items():
            i = group.id_of(k) if isinstance(k, Element) else k
            if c:
                self.coeffs[i] = self.coeffs.get(i, ZERO) + c
        self.coeffs = {i: c for i, c in self.coeffs.items() if c}

    @classmethod
    def T(cls, w: Element) -> "HeckeElement":
        return cls(w.group, {w.group.id_of(w): ONE})

    @classmethod
    def one(cls, group: CoxeterGroup) -> "HeckeElement":
        return cls(group, {0: ONE})

    def items(self):
        return ((self.group.elem(i), c) for i, c in self.coeffs.items())

    def coefficient(self, w: Element) -> LaurentPoly:
        return self.coeffs.get(self.group.id_of(w), ZERO)

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, ZERO) + c
        return HeckeElement(self.group, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(LaurentPoly({0: -1}))

    def scale(self, c: LaurentPoly) -> "HeckeElement":
        return HeckeElement(self.group, {i: a * c for i, a in self.coeffs.items()})

    def left_ts(self, s: int) -> "HeckeElement":
        """``T_s * self``."""
        W = self.group
        out: dict[int, LaurentPoly] = {}
        for w, c in self.coeffs.items():
            sw = W.lmul_id(s, w)
            out[sw] = out.get(sw, ZERO) + c
            if W.ldesc_id(w) >> s & 1:
                out[w] = out.get(w, ZERO) + c * V_MINUS
        return HeckeElement(self.group, out)

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return t_multiply(self, other)

    def bar(self) -> "HeckeElement":
        """Bar involution: ``v -> v^-1`` and ``T_w -> T_{w^-1}^{-1}``."""
        W = self.group
        total = HeckeElement(W)
        for w, c in self.coeffs.items():
            h = HeckeElement.one(W)
            for s in reversed(W.word_of(w)):
                # T_s^{-1} = T_s - (v - v^-1)
                h = h.left_ts(s) - h.scale(V_MINUS)
            total = total + h.scale(c.bar())
        return total

    def __eq__(self, other):
        return isinstance(other, HeckeElement) and self.coeffs == other.coeffs

    def __repr__(self):
        terms = " + ".join(f"({c})*T[{self.group.format(self.group.word_of(i)) or 'e'}]"
                           for i, c in sorted(self.coeffs.items(), key=lambda kv: self.group.word_of(kv[0])))
        return f"HeckeElement({terms or '0'})"


def t_multiply(h1: HeckeElement, h2: HeckeElement) -> HeckeElement:
    """Product in the T-basis."""
    W = h1.group
    total: dict[int, LaurentPoly] = {}
    for u, c in h1.coeffs.items():
        prod = h2
        for s in reversed(W.word_of(u)):
            prod = prod.left_ts(s)
        for i, a in prod.coeffs.items():
            total[i] = total.get(i, ZERO) + a * c
    return HeckeElement(W, total)


# ----------------------------------------------------------------------
# Kazhdan-Lusztig polynomials

def _trim(p: list) -> tuple:
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


class KLTable:
    """Memo of classical KL polynomials ``P_{x,y}`` as coefficient tuples in q.

    ``table(y)`` maps every ``x <= y`` to ``P_{x,y}``; elements are group ids.
    """

    def __init__(self, group: CoxeterGroup):
        self.group = group
        self._P: dict[int, dict[int, tuple]] = {0: {0: (1,)}}
        self._mu: dict[int, dict[int, int]] = {}

    def table(self, y: int) -> dict[int, tuple]:
        got = self._P.get(y)
        if got is not None:
            return got
        W = self.group
        m = W.ldesc_id(y)
        s = (m & -m).bit_length() - 1
        v = W.lmul_id(s, y)
        Pv = self.table(v)
        ly = W.length_id(y)
        Z = []
        for z, mu in self.mu_list(v).items():
            if W.ldesc_id(z) >> s & 1:
                Z.append((mu, self.table(z), (ly - W.length_id(z)) // 2))
        out: dict[int, tuple] = {}
        for x in W.interval_ids(y):
            if x in out:
                continue
            sx = W.lmul_id(s, x)
            if W.ldesc_id(x) >> s & 1:
                lo, hi = sx, x
            else:
                lo, hi = x, sx
            # P_{lo,y} = q P_{hi,v} + P_{lo,v} - sum mu(z,v) q^k P_{lo,z}; P_{hi,y} = P_{lo,y}
            acc = list(Pv.get(lo, ()))
            ph = Pv.get(hi)
            if ph:
                need = len(ph) + 1
                if len(acc) < need:
                    acc.extend([0] * (need - len(acc)))
                for i, a in enumerate(ph):
                    acc[i + 1] += a
            for mu, Pz, k in Z:
                pz = Pz.get(lo)
                if pz:
                    need = len(pz) + k
                    if len(acc) < need:
                        acc.extend([0] * (need - len(acc)))
                    for i, a in enumerate(pz):
                        acc[i + k] -= mu * a
            poly = _trim(acc)
            out[lo] = poly
            out[hi] = poly
        self._P[y] = out
        return out

    def P(self, x: int, y: int) -> tuple:
        return self.table(y).get(x, ())

    def mu_list(self, y: int) -> dict[int, int]:
        """Nonzero ``mu(x, y)`` for ``x < y``."""
        got = self._mu.get(y)
        if got is not None:
            return got
        W = self.group
        ly = W.length_id(y)
        out = {}
        for x, P in self.table(y).items():
            d = ly - W.length_id(x)
            if d % 2 == 1:
                k = (d - 1) // 2
                if k < len(P) and P[k]:
                    out[x] = P[k]
        self._mu[y] = out
        return out

    def mu(self, x: int, y: int) -> int:
        return self.mu_list(y).get(x, 0) if x != y else 0

    def p(self, x: int, y: int) -> LaurentPoly:
        W = self.group
        return LaurentPoly.from_q_poly(self.P(x, y), W.length_id(x) - W.length_id(y))


def kl_table(group: CoxeterGroup) -> KLTable:
    t = getattr(group, "_kl_table", None)
    if t is None:
        t = KLTable(group)
        group._kl_table = t
    return t


def kl_polynomial(x: Element, y: Element) -> LaurentPoly:
    """``p_{x,y}``; zero unless ``x <= y``."""
    W = y.group
    return kl_table(W).p(W.id_of(x), W.id_of(y))


def mu(x: Element, y: Element) -> int:
    """Coefficient of ``v^-1`` in ``p_{x,y}``."""
    W = y.group
    return kl_table(W).mu(W.id_of(x), W.id_of(y))


def mu_sym(x: Element, y: Element) -> int:
    """``mu(x, y)`` extended symmetrically to pairs with ``y < x``."""
    W = y.group
    i, j = W.id_of(x), W.id_of(y)
    if W.length_id(i) > W.length_id(j):
        i, j = j, i
    return kl_table(W).mu(i, j)


def _mu_sym_id(table: KLTable, i: int | None, j: int | None) -> int:
    if i is None or j is None:
        return 0
    W = table.group
    if W.length_id(i) > W.length_id(j):
        i, j = j, i
    return table.mu(i, j)


def c_basis(y: Element) -> HeckeElement:
    W = y.group
    t = kl_table(W)
    j = W.id_of(y)
    return HeckeElement(W, {x: t.p(x, j) for x in t.table(j)})


def c_product_left(s, y: Element) -> dict[Element, LaurentPoly]:
    """``C_s C_y`` in the C-basis."""
    W = y.group
    si = W._gen(s)
    j = W.id_of(y)
    if W.ldesc_id(j) >> si & 1:
        return {y: V + V.inv()}
    t = kl_table(W)
    out = {W.elem(W.lmul_id(si, j)): ONE}
    for x, m in t.mu_list(j).items():
        if W.ldesc_id(x) >> si & 1:
            out[W.elem(x)] = LaurentPoly({0: m})
    return out


def c_product_right(y: Element, s) -> dict[Element, LaurentPoly]:
    """``C_y C_s`` in the C-basis (uses ``mu(x^-1, y^-1) = mu(x, y)``)."""
    W = y.group
    si = W._gen(s)
    j = W.id_of(y)
    if W.rdesc_id(j) >> si & 1:
        return {y: V + V.inv()}
    t = kl_table(W)
    out = {W.elem(W.rmul_id(j, si)): ONE}
    for x, m in t.mu_list(j).items():
        if W.rdesc_id(x) >> si & 1:
            out[W.elem(x)] = LaurentPoly({0: m})
    return out


# ----------------------------------------------------------------------
# structure constants on finite groups

class FiniteHecke:
    """Dense tables for a finite group: p-matrix and top degrees of ``h_{x,y,z}``.

    ``C_x C_y`` is formed in the T-basis as ``sum_u p_{u,x} T_u C_y`` and then
    rewritten in the C-basis by back-substitution, longest elements first.
    Coefficient arrays carry exponents ``-3L .. L`` where ``L`` is the length
    of the longest element.
    """

    def __init__(self, group: CoxeterGroup):
        self.group = group
        ids = group.enumerate_ids()
        self.ids = ids
        self.N = N = len(ids)
        self.pos = {i: k for k, i in enumerate(ids)}
        self.lengths = np.array([group.length_id(i) for i in ids])
        self.L = L = int(self.lengths.max())
        self.D = 4 * L + 1
        kl = kl_table(group)
        p = np.zeros((N, N, L + 1), dtype=np.int64)
        for kx, x in enumerate(ids):
            lx = group.length_id(x)
            for u, P in kl.table(x).items():
                shift = group.length_id(u) - lx
                ku = self.pos[u]
                for i, a in enumerate(P):
                    p[ku, kx, shift + 2 * i + L] = a
        self.p = p
        self.perm = []
        self.desc = []
        for s in range(group.rank):
            self.perm.append(np.array([self.pos[group.lmul_id(s, i)] for i in ids]))
            self.desc.append(np.array([bool(group.ldesc_id(i) >> s & 1) for i in ids]))
        # T_u = T_s T_{su} with su shorter
        self.chain = [None]
        for i in ids[1:]:
            m = group.ldesc_id(i)
            s = (m & -m).bit_length() - 1
            self.chain.append((s, self.pos[group.lmul_id(s, i)]))
        self._top = None
        self._h_cache: dict[int, np.ndarray] = {}

    def _ts(self, vec: np.ndarray, s: int) -> np.ndarray:
        out = np.zeros_like(vec)
        out[self.perm[s]] = vec
        d = self.desc[s]
        out[d, 1:] += vec[d, :-1]
        out[d, :-1] -= vec[d, 1:]
        return out

    def h_for(self, ky: int) -> np.ndarray:
        """Array ``h[x, z, e + 3L]`` of structure constants for a fixed ``y``."""
        got = self._h_cache.get(ky)
        if got is not None:
            return got
        N, L, D = self.N, self.L, self.D
        p = self.p
        cy = np.zeros((N, D), dtype=np.int64)
        cy[:, 2 * L:3 * L + 1] = p[:, ky, :]
        tu = np.zeros((N, N, D), dtype=np.int64)
        tu[0] = cy
        for k in range(1, N):
            s, prev = self.chain[k]
            tu[k] = self._ts(tu[prev], s)
        # F[x] = sum_u p_{u,x} T_u C_y, done in floating point BLAS and rounded back
        F = np.zeros((N, N, D), dtype=np.float64)
        tuf = tu.reshape(N, N * D).astype(np.float64)
        for d in range(L + 1):
            e = d - L
            coef = p[:, :, d]
            if not coef.any():
                continue
            contrib = (coef.T.astype(np.float64) @ tuf).reshape(N, N, D)
            if e == 0:
                F += contrib
            else:
                F[:, :, :D + e] += contrib[:, :, -e:]
        if np.abs(F).max(initial=0) > 2 ** 50:
            raise ArithmeticError("structure constants too large for exact float accumulation")
        F = np.rint(F).astype(np.int64)
        H = np.zeros((N, N, D), dtype=np.int64)
        for z in range(N - 1, -1, -1):
            hz = F[:, z, :].copy()
            H[:, z, :] = hz
            if z == 0 or not hz.any():
                continue
            col = p[:z, z, :]
            for d in range(L + 1):
                c = col[:, d]
                if not c.any():
                    continue
                e = d - L
                if e == 0:
                    F[:, :z, :] -= hz[:, None, :] * c[None, :, None]
                else:
                    F[:, :z, :D + e] -= hz[:, None, -e:] * c[None, :, None]
        self._h_cache = {ky: H}
        return H

    def h(self, x: Element, y: Element, z: Element) -> LaurentPoly:
        g = self.group
        H = self.h_for(self.pos[g.id_of(y)])
        row = H[self.pos[g.id_of(x)], self.pos[g.id_of(z)]]
        return LaurentPoly({k - 3 * self.L: int(a) for k, a in enumerate(row) if a})

    def top_degrees(self) -> np.ndarray:
        """``top[x, y, z]``: largest exponent of ``h_{x,y,z}``, or -10**6 when zero."""
        if self._top is not None:
            return self._top
        N, L, D = self.N, self.L, self.D
        top = np.full((N, N, N), -10 ** 6, dtype=np.int64)
        expo = np.arange(D) - 3 * L
        for ky in range(N):
            H = self.h_for(ky)
            nz = H != 0
            has = nz.any(axis=2)
            # last nonzero index along the exponent axis
            last = D - 1 - np.argmax(nz[:, :, ::-1], axis=2)
            top[:, ky, :] = np.where(has, expo[last], -10 ** 6)
        self._top = top
        self._h_cache = {}
        return top

    def a_values(self) -> dict[int, int]:
        top = self.top_degrees()
        best = top.max(axis=(0, 1))
        return {self.ids[k]: int(best[k]) for k in range(self.N)}


def finite_hecke(group: CoxeterGroup) -> FiniteHecke:
    fh = getattr(group, "_finite_hecke", None)
    if fh is None:
        fh = FiniteHecke(group)
        group._finite_hecke = fh
    return fh


def a_value_finite(w: Element) -> int:
    """Lusztig's a-function on a finite group, from the full table of ``h_{x,y,z}``."""
    W = w.group
    if not is_finite_type(W.system):
        raise PreconditionError("a_value_finite needs a finite Coxeter group")
    avals = getattr(W, "_a_values", None)
    if avals is None:
        avals = finite_hecke(W).a_values()
        W._a_values = avals
    return avals[W.id_of(w)]


def _star_reducible_default() -> list[CoxeterSystem]:
    g = "abcdef"
    return [CoxeterSystem(g, [("a", "b", 3), ("b", "c", 3), ("c", "d", 4), ("d", "e", 3), ("e", "f", 3)])]


STAR_REDUCIBLE_DIAGRAMS: list[CoxeterSystem] = _star_reducible_default()

FINITE, SHI, STAR_RED, UNKNOWN = "FiniteBruteForce", "ShiHeap", "StarReducibleHeap", "Unknown"


def a_value_certified(w: Element, star_reducible: Iterable[CoxeterSystem] | None = None) -> tuple[int | None, str]:
    """a(w) with the reason it is known.

    Finite groups within the enumeration budget are computed directly.  For
    fully commutative elements of Weyl or affine Weyl groups, and of the
    listed star reducible groups, ``a(w) = n(w)``.  Otherwise ``(None, "Unknown")``.
    """
    W = w.group
    sys_ = W.system
    if is_finite_type(sys_):
        try:
            return a_value_finite(w), FINITE
        except BudgetExceeded:
            pass
    fc = fc_canonical_word(W._M, w.word) is not None
    if not fc:
        return None, UNKNOWN
    comps = connected_components(sys_)
    if all(weyl_type(c) is not None for c in comps):
        return n_value(w), SHI
    listed = list(STAR_REDUCIBLE_DIAGRAMS if star_reducible is None else star_reducible)
    if any(isomorphic(sys_, d) for d in listed):
        return n_value(w), STAR_RED
    return None, UNKNOWN


# ----------------------------------------------------------------------
# cells

@dataclass
class CellPartition:
    group: CoxeterGroup
    left: list
    right: list
    two_sided: list
    graphs: dict = field(default_factory=dict, repr=False)

    def _cell_index(self, kind: str) -> dict:
        cells_ = {"left": self.left, "right": self.right, "two_sided": self.two_sided}[kind]
        return {e: k for k, c in enumerate(cells_) for e in c}

    def leq(self, kind: str, x: Element, y: Element) -> bool:
        """``x <= y`` in the left, right or two-sided preorder."""
        g = self.graphs[kind]
        if x == y:
            return True
        return nx.has_path(g, x, y)

    def same_cell(self, kind: str, x: Element, y: Element) -> bool:
        idx = self._cell_index(kind)
        return idx[x] == idx[y]

    def to_dict(self) -> dict:
        def ser(cs):
            return [sorted((str(e) if e.word else "e") for e in c) for c in cs]

        return {"left": ser(self.left), "right": ser(self.right), "two_sided": ser(self.two_sided)}


def _prec_edges(W: CoxeterGroup, ids: list[int], side: str) -> list[tuple[int, int]]:
    t = kl_table(W)
    desc = W.ldesc_id if side == LEFT else W.rdesc_id
    mul = (lambda s, i: W.lmul_id(s, i)) if side == LEFT else (lambda s, i: W.rmul_id(i, s))
    edges = []
    for y in ids:
        dy = desc(y)
        for s in range(W.rank):
            if not dy >> s & 1:
                edges.append((mul(s, y), y))
        for x, m in t.mu_list(y).items():
            if desc(x) & ~dy:
                edges.append((x, y))
    return edges


def cells(group: CoxeterGroup) -> CellPartition:
    """Left, right and two-sided cells of a finite group."""
    if not is_finite_type(group.system):
        raise PreconditionError("cells are only computed for finite groups")
    ids = group.enumerate_ids()
    el = {i: group.elem(i) for i in ids}

    def graph(edges):
        g = nx.DiGraph()
        g.add_nodes_from(el.values())
        g.add_edges_from((el[a], el[b]) for a, b in edges)
        return g

    gl = graph(_prec_edges(group, ids, LEFT))
    gr = graph(_prec_edges(group, ids, RIGHT))
    glr = nx.compose(gl, gr)
    order = {el[i]: k for k, i in enumerate(ids)}

    def sccs(g):
        comps = [frozenset(c) for c in nx.strongly_connected_components(g)]
        comps.sort(key=lambda c: min(order[e] for e in c))
        return comps

    return CellPartition(group, sccs(gl), sccs(gr), sccs(glr), {"left": gl, "right": gr, "two_sided": glr})


# ----------------------------------------------------------------------
# identities between mu-coefficients and star operations

def _in_parabolic(W: CoxeterGroup, i: int, s: int, t: int) -> bool:
    return all(a in (s, t) for a in W.word_of(i))


def verify_star_mu_transport(x: Element, y: Element, pair, side: str = LEFT) -> bool:
    """Check ``mu(x, y) = mu(*x, *y)`` for a pair with ``m = 3``."""
    W = y.group
    s, t = (W._gen(p) for p in pair)
    if W._M[s][t] != 3:
        raise PreconditionError("the transport identity needs m(s, t) = 3")
    i, j = W.id_of(x), W.id_of(y)
    if not (in_string(W, i, s, t, side) and in_string(W, j, s, t, side)):
        raise PreconditionError("both elements must lie in {s,t}-strings on this side")
    if side == LEFT:
        quotient = W.word_id(W.word_of(i) + tuple(reversed(W.word_of(j))))
    else:
        quotient = W.word_id(tuple(reversed(W.word_of(i))) + W.word_of(j))
    if _in_parabolic(W, quotient, s, t):
        raise PreconditionError("the coset condition fails: the quotient lies in W_I")

    def star(k):
        lo = star_op_id(W, k, s, t, side, LOWER)
        return lo if lo is not None else star_op_id(W, k, s, t, side, UPPER)

    tab = kl_table(W)
    return _mu_sym_id(tab, i, j) == _mu_sym_id(tab, star(i), star(j))


def verify_star_recurrence(x: Element, y: Element, pair, side: str = LEFT) -> bool:
    """Check ``mu(_*x, y) + mu(^*x, y) = mu(x, _*y) + mu(x, ^*y)`` (undefined terms are 0)."""
    W = y.group
    s, t = (W._gen(p) for p in pair)
    m = W._M[s][t]
    if m == INF or m < 3:
        raise PreconditionError("the star recurrence needs 3 <= m(s, t) < inf")
    i, j = W.id_of(x), W.id_of(y)
    if not (in_string(W, i, s, t, side) and in_string(W, j, s, t, side)):
        raise PreconditionError("both elements must lie in {s,t}-strings on this side")
    mask = (1 << s) | (1 << t)
    desc = W.ldesc_id if side == LEFT else W.rdesc_id
    if desc(i) & mask == desc(j) & mask:
        raise PreconditionError("the descent sets of x and y must differ on {s,t}")
    tab = kl_table(W)
    lhs = (_mu_sym_id(tab, star_op_id(W, i, s, t, side, LOWER), j)
           + _mu_sym_id(tab, star_op_id(W, i, s, t, side, UPPER), j))
    rhs = (_mu_sym_id(tab, i, star_op_id(W, j, s, t, side, LOWER))
           + _mu_sym_id(tab, i, star_op_id(W, j, s, t, side, UPPER)))
    return lhs == rhs
