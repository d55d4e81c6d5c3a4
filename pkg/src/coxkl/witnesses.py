"""Infinite families of fully commutative elements of a-value 2.

Each family pairs a small Coxeter system containing a forbidden subdiagram
with a word ``w_k`` for every ``k >= 0``.  :func:`certify` checks the claims
that make the family work at a given ``k``: the word is reduced, fully
commutative and has ``n = 2``, and depending on the family, a star reduction
to a product of two commuting generators or a chain of mu-coefficients
linking ``w_k`` to a two-letter element in the right preorder.

>>> fam = family("affine_C3")
>>> " ".join(witness_word(fam, 2))
'a c b a c b'
>>> certify(fam, 1).passed
True
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .config import Budgets
from .diagram import INF, CoxeterSystem, weight_str
from .errors import PreconditionError
from .heaps import fc_canonical_word, n_value
from .kl import a_value_certified, kl_table
from .star import star_reduce
from .words import CoxeterGroup, Element

__all__ = [
    "HEAP_N",
    "STAR_REDUCTION",
    "MU_CHAIN",
    "FAMILY_IDS",
    "WitnessFamily",
    "Check",
    "Certificate",
    "family",
    "default_families",
    "witness_word",
    "witness_element",
    "certify",
    "step_mu_table",
]

HEAP_N, STAR_REDUCTION, MU_CHAIN = "HeapN", "StarReduction", "MuChain"


def _vs(lo: int, hi: int) -> list[str]:
    return [f"v{i}" for i in range(lo, hi + 1)]


def _path(names, weights) -> list:
    return [(names[i], names[i + 1], weights[i]) for i in range(len(names) - 1)]


def _alt(x: str, y: str, n: int) -> list[str]:
    return [x if i % 2 == 0 else y for i in range(n)]


def _blocks(X: list[str], Y: list[str], k: int) -> list[str]:
    out: list[str] = []
    for i in range(k):
        out += X if i % 2 == 0 else Y
    return out


@dataclass
class WitnessFamily:
    id: str
    params: dict
    system: CoxeterSystem
    word: Callable[[int], list]
    method: str
    min_k: int = 0
    mu_setup: Callable | None = field(default=None, repr=False)
    budgets: Budgets | None = field(default=None, repr=False, compare=False)
    _group: CoxeterGroup | None = field(default=None, repr=False, compare=False)

    @property
    def group(self) -> CoxeterGroup:
        if self._group is None:
            self._group = CoxeterGroup(self.system, self.budgets)
        return self._group

    def label(self) -> str:
        if not self.params:
            return self.id
        inner = ",".join(f"{k}={weight_str(v) if v == INF else v}" for k, v in self.params.items())
        return f"{self.id}({inner})"


# individual families ------------------------------------------------------

def _need(cond: bool, msg: str):
    if not cond:
        raise PreconditionError(msg)


def _affine_b(n: int = 1):
    _need(n >= 1, "affine_B needs n >= 1")
    vs = _vs(0, n)
    sys_ = CoxeterSystem(["a", "b"] + vs, [("a", "v0", 3), ("b", "v0", 3)] + _path(vs, [3] * (n - 1) + [4]))
    block = ["a", "b"] + vs + vs[-2::-1]
    return sys_, lambda k: block * k, HEAP_N, None


def _affine_c3():
    sys_ = CoxeterSystem("abc", [("a", "b", 4), ("b", "c", 4)])
    return sys_, lambda k: list("acb") * k, HEAP_N, None


def _affine_c4():
    sys_ = CoxeterSystem("abcd", [("a", "b", 4), ("b", "c", 3), ("c", "d", 4)])
    return sys_, lambda k: list("acbd") * k, HEAP_N, None


def _two_branches(n: int = 1):
    _need(n >= 1, "two_branches needs n >= 1")
    vs = _vs(1, n)
    edges = [("a", "v1", 3), ("b", "v1", 3), ("c", vs[-1], 3), ("d", vs[-1], 3)] + _path(vs, [3] * (n - 1))
    sys_ = CoxeterSystem(["a", "b"] + vs + ["c", "d"], edges)
    block = vs + ["c", "d"] + vs[::-1] + ["a", "b"]
    return sys_, lambda k: ["a", "b"] + block * k, HEAP_N, None


def _affine_e6():
    sys_ = CoxeterSystem("abcdefg", _path("abcde", [3] * 4) + _path("cfg", [3] * 2))
    return sys_, lambda k: list("acbfcgdfecdb") * k, HEAP_N, None


def _affine_f5():
    sys_ = CoxeterSystem("abcdef", _path("abcdef", [3, 3, 4, 3, 3]))
    return sys_, lambda k: list("bdacbdcedfce") * k, HEAP_N, None


def _cycle(n: int):
    vs = _vs(1, n)
    return vs, _path(vs + ["v1"], [3] * n)


def _cycle_rot(vs: list[str], j: int) -> list[str]:
    # v_{j+1} ... v_n v_1 ... v_j
    return vs[j:] + vs[:j]


def _cycle_v(n: int = 4, j: int = 3):
    _need(n >= 3, "cycle_v needs a cycle of length >= 3")
    _need(2 <= j <= n, "cycle_v needs 2 <= j <= n (v is joined to v1 only)")
    vs, edges = _cycle(n)
    sys_ = CoxeterSystem(vs + ["v"], edges + [("v", "v1", 3)])
    block = _cycle_rot(vs, j)
    return sys_, lambda k: ["v", f"v{j}"] + block * k, STAR_REDUCTION, None


def _cycle_pair(n: int = 5, i: int = 1, j: int = 3):
    _need(n >= 4, "cycle_pair needs a chordless cycle of length >= 4")
    _need(1 <= i <= n and 1 <= j <= n and (i - j) % n not in (0, 1, n - 1), "v_i and v_j must be distinct and non-adjacent")
    vs, edges = _cycle(n)
    sys_ = CoxeterSystem(vs, edges)

    def v(p):
        return vs[(p - 1) % n]

    # both letters advance one step around the cycle per round; k counts full turns
    def word(k):
        out = [v(i), v(j)]
        for t in range(1, k * n + 1):
            out += [v(i + t), v(j + t)]
        return out

    return sys_, word, STAR_REDUCTION, None


def _two_strong_bonds(n: int = 1, m1=5, m2=4):
    _need(n >= 1, "two_strong_bonds needs n >= 1")
    _need(m1 >= 5 and m2 >= 4, "two_strong_bonds needs m1 >= 5 and m2 >= 4")
    vs = _vs(0, n + 1)
    sys_ = CoxeterSystem(vs, _path(vs, [m1] + [3] * (n - 1) + [m2]))
    # v_{n+1} v_n ... v_1 v_0 v_1 ... v_n
    block = vs[::-1] + vs[1:n + 1]
    return sys_, lambda k: ["v0"] + block * k, STAR_REDUCTION, None


def _nonextreme_4s(n: int = 1):
    _need(n >= 1, "nonextreme_4s needs n >= 1")
    vs = _vs(0, n + 1)
    sys_ = CoxeterSystem(["a"] + vs, [("a", "v0", 3)] + _path(vs, [4] + [3] * (n - 1) + [4]))
    # v_0 v_1 ... v_n v_{n+1} v_n ... v_2 v_1
    block = vs + vs[n:0:-1]
    return sys_, lambda k: ["a", "v1"] + block * k, STAR_REDUCTION, None


# mu-chain families: a setup maps (k, parity) to the coset stems of x and y,
# the rank-2 pair I and the first letters of the alternating tails

@dataclass(frozen=True)
class MuSetup:
    x: list          # the element whose right descent leaves y
    y: list
    x_stem: list     # x^I
    y_stem: list     # y^I
    x_start: str     # first letter of the tail p_i
    y_start: str     # first letter of the tail q_j
    pair: tuple
    size: int        # tails have length 0..size
    exact: bool      # mu(x, y) = 1 is derived, not only nonzero
    end: tuple = (1, 4)     # the entry equal to mu(x, y)
    anchor: tuple = (4, 1)  # the entry known to be 1 by a length-one step

    def x_i(self, i: int) -> list:
        other = self.pair[1] if self.x_start == self.pair[0] else self.pair[0]
        return self.x_stem + _alt(self.x_start, other, i)

    def y_j(self, j: int) -> list:
        other = self.pair[1] if self.y_start == self.pair[0] else self.pair[0]
        return self.y_stem + _alt(self.y_start, other, j)


def _strength_6(m=6):
    _need(m != INF and m >= 6, "strength_6 needs 6 <= m < inf")
    sys_ = CoxeterSystem("abc", [("a", "b", m), ("b", "c", 3)])

    def w(k):
        return list("cabab") * k

    def setup(k):
        return MuSetup(w(k) + ["c", "a"], w(k + 2) + ["a"], w(k) + ["c"], w(k + 1) + ["c"], "a", "a",
                       ("a", "b"), m, True, (1, 5), (4, 2))

    return sys_, w, MU_CHAIN, setup


def _middle_5():
    sys_ = CoxeterSystem("abcd", _path("abcd", [3, 5, 3]))
    X, Y = list("acbc"), list("bdcb")

    def w(k):
        return _blocks(X, Y, k)

    def setup(k):
        if k % 2 == 0:
            return MuSetup(w(k) + ["a", "c"], w(k + 2) + ["c"], w(k) + ["a"], w(k + 1) + ["d"], "c", "b",
                           ("b", "c"), 4, False)
        return MuSetup(w(k) + ["b", "d"], w(k + 2) + ["b"], w(k) + ["d"], w(k + 1) + ["a"], "b", "c",
                       ("b", "c"), 4, False)

    return sys_, w, MU_CHAIN, setup


def _small_5():
    sys_ = CoxeterSystem("abcd", [("a", "c", 3), ("b", "c", 3), ("c", "d", 5)])
    X, Y = list("abcdc"), list("bdcdc")

    def w(k):
        return _blocks(X, Y, k)

    def setup(k):
        if k % 2 == 0:
            # transported along {a, c}: mu(w_k ab, w_{k+2} a) = mu(w_k abc, w_{k+2})
            return MuSetup(w(k) + ["a", "b"], w(k + 2) + ["a"], w(k) + ["a", "b"], w(k + 1) + ["b"], "c", "d",
                           ("c", "d"), 4, False)
        return MuSetup(w(k) + ["b", "d"], w(k + 2) + ["d"], w(k) + ["b"], w(k + 1) + ["a", "b"], "d", "c",
                       ("c", "d"), 4, False)

    return sys_, w, MU_CHAIN, setup


def _large_5(n: int = 2):
    _need(n >= 2, "large_5 needs n >= 2")
    vs = _vs(0, n)
    sys_ = CoxeterSystem(["a", "b"] + vs, [("a", "v0", 3), ("b", "v0", 3)] + _path(vs, [3] * (n - 1) + [5]))
    vn, vn1, vn2 = f"v{n}", f"v{n - 1}", f"v{n - 2}"
    X = ["a", "b"] + vs + [vn1]
    Y = [vn2, vn, vn1, vn] + _vs(0, n - 1)[::-1]

    def w(k):
        return _blocks(X, Y, k)

    def setup(k):
        if k % 2 == 0:
            # transported along {a, v0}, ..., {v_{n-2}, v_{n-1}}
            return MuSetup(w(k) + ["a", "b"], w(k + 2) + ["a"], w(k) + ["a", "b"] + _vs(0, n - 2),
                           w(k + 1) + [vn2], vn1, vn, (vn1, vn), 4, False)
        return MuSetup(w(k) + [vn2, vn], w(k + 2) + [vn], w(k) + [vn2], w(k + 1) + ["a", "b"] + _vs(0, n - 2),
                       vn, vn1, (vn1, vn), 4, False)

    return sys_, w, MU_CHAIN, setup


_BUILDERS = {
    "cycle_v": (_cycle_v, {"n": 4, "j": 3}),
    "cycle_pair": (_cycle_pair, {"n": 5, "i": 1, "j": 3}),
    "affine_B": (_affine_b, {"n": 1}),
    "affine_C3": (_affine_c3, {}),
    "affine_C4": (_affine_c4, {}),
    "two_branches": (_two_branches, {"n": 1}),
    "affine_E6": (_affine_e6, {}),
    "affine_F5": (_affine_f5, {}),
    "two_strong_bonds": (_two_strong_bonds, {"n": 1, "m1": 5, "m2": 4}),
    "nonextreme_4s": (_nonextreme_4s, {"n": 1}),
    "strength_6": (_strength_6, {"m": 6}),
    "middle_5": (_middle_5, {}),
    "small_5": (_small_5, {}),
    "large_5": (_large_5, {"n": 2}),
}

FAMILY_IDS = tuple(_BUILDERS)

# smallest k for which each family's claims are made
_MIN_K = {"affine_B": 1, "affine_C3": 1, "affine_C4": 1, "two_branches": 0, "affine_E6": 1, "affine_F5": 1,
          "two_strong_bonds": 1}


def family(id: str, budgets: Budgets | None = None, **params) -> WitnessFamily:
    """Build a witness family; unspecified parameters take their defaults."""
    if id not in _BUILDERS:
        raise PreconditionError(f"unknown witness family {id!r}; choose from {', '.join(FAMILY_IDS)}")
    build, defaults = _BUILDERS[id]
    unknown = set(params) - set(defaults)
    if unknown:
        raise PreconditionError(f"family {id} has no parameter(s) {sorted(unknown)}")
    full = {**defaults, **params}
    sys_, word, method, setup = build(**full)
    return WitnessFamily(id, full, sys_, word, method, _MIN_K.get(id, 0), mu_setup=setup, budgets=budgets)


def default_families() -> list[WitnessFamily]:
    fams = [family(i) for i in FAMILY_IDS]
    fams.insert(fams.index(next(f for f in fams if f.id == "two_strong_bonds")) + 1, family("two_strong_bonds", n=2))
    return fams


def witness_word(fam: WitnessFamily, k: int) -> tuple[str, ...]:
    """The family's word at ``k``, letter for letter."""
    if k < 0:
        raise PreconditionError("k must be >= 0")
    return tuple(fam.word(k))


def witness_element(fam: WitnessFamily, k: int) -> Element:
    return fam.group.element(list(witness_word(fam, k)))


# certificates -------------------------------------------------------------

@dataclass
class Check:
    name: str
    expected: object
    actual: object
    passed: bool

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "pass": self.passed}


@dataclass
class Certificate:
    family: str
    params: dict
    k: int
    checks: list = field(default_factory=list)
    path: list | None = None
    mu_table: dict | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, expected, actual, ok=None):
        self.checks.append(Check(name, expected, actual, (expected == actual) if ok is None else bool(ok)))

    def to_dict(self) -> dict:
        d = {"family": self.family, "params": {k: weight_str(v) if v == INF else v for k, v in self.params.items()},
             "k": self.k, "checks": [c.to_dict() for c in self.checks]}
        if self.path is not None:
            d["path"] = self.path
        if self.mu_table is not None:
            d["mu_table"] = self.mu_table
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _heap_checks(cert: Certificate, fam: WitnessFamily, word: tuple):
    W = fam.group
    idx = W.parse_word(list(word))
    canon = fc_canonical_word(W._M, idx)
    cert.add("reduced_and_fully_commutative", True, canon is not None)
    if canon is None:
        return None
    el = Element(canon, W)
    cert.add("n_value", 2, n_value(el))
    return el


def _record_a(cert: Certificate, el: Element):
    val, tag = a_value_certified(el)
    if tag != "Unknown":
        cert.add("a_value_certified", 2, val)
        cert.checks[-1].actual = val
        cert.checks[-1].name = f"a_value_certified[{tag}]"


def certify(fam: WitnessFamily, k: int) -> Certificate:
    """Check the family's claims at ``k``.  Failed checks are recorded, not raised."""
    if k < fam.min_k:
        raise PreconditionError(f"{fam.id} makes no claim for k < {fam.min_k}")
    word = witness_word(fam, k)
    cert = Certificate(fam.id, dict(fam.params), k)
    el = None
    if fam.method != MU_CHAIN or k >= 1:
        el = _heap_checks(cert, fam, word)
    if fam.method == HEAP_N and el is not None:
        _record_a(cert, el)
    elif fam.method == STAR_REDUCTION and el is not None:
        path = star_reduce(el)
        cert.add("star_reducible", True, path is not None)
        if path is not None:
            term = path.terminal
            cert.path = path.to_list()
            cert.add("terminal_commuting_length", 2, len(term.word))
            # a product of r commuting generators has a-value r
            cert.add("a_value_terminal", 2, len(term.word))
            cert.add("distinct_from_previous", True, k == 0 or len(witness_word(fam, k - 1)) < len(word))
        _record_a(cert, el)
    elif fam.method == MU_CHAIN:
        _mu_checks(cert, fam, k)
    return cert


def _mu_checks(cert: Certificate, fam: WitnessFamily, k: int):
    W = fam.group
    st = fam.mu_setup(k)
    x = W.element(st.x)
    y = W.element(st.y)
    t = kl_table(W)
    xi, yi = W.id_of(x), W.id_of(y)
    cert.add("x_below_y", True, W.bruhat_leq_id(xi, yi) and xi != yi)
    cert.add("right_descent_of_x_not_of_y", True, bool(W.rdesc_id(xi) & ~W.rdesc_id(yi)))
    m = t.mu(xi, yi)
    if st.exact:
        cert.add("mu(x,y)", 1, m)
    else:
        cert.add("mu(x,y)>=1", ">=1", m, m >= 1)
    table = step_mu_table(fam, k)
    cert.mu_table = {f"{i},{j}": v for (i, j), v in sorted(table.items())}
    cert.add(f"[{st.end[0]},{st.end[1]}]=mu(x,y)", m, table[st.end])
    cert.add(f"[{st.anchor[0]},{st.anchor[1]}]", 1, table[st.anchor])


def step_mu_table(fam: WitnessFamily, k: int, size: int | None = None) -> dict[tuple[int, int], int]:
    """``[i, j] = mu(x_i, y_j)`` with ``x_i = x^I p_i`` and ``y_j = y^I q_j``.

    ``mu`` is taken symmetric in its arguments, so an entry is the coefficient
    for the shorter of the two elements below the longer one.
    """
    if fam.method != MU_CHAIN:
        raise PreconditionError(f"{fam.id} is not a mu-chain family")
    W = fam.group
    st = fam.mu_setup(k)
    size = st.size if size is None else size
    t = kl_table(W)
    xs = [W.id_of(W.element(st.x_i(i))) for i in range(size + 1)]
    ys = [W.id_of(W.element(st.y_j(j))) for j in range(size + 1)]
    out = {}
    for i, a in enumerate(xs):
        for j, b in enumerate(ys):
            lo, hi = (a, b) if W.length_id(a) <= W.length_id(b) else (b, a)
            out[(i, j)] = t.mu(lo, hi)
    return out
