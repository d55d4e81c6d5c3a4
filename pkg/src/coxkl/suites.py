"""Named verification suites run by ``coxkl verify-suite``.

Each suite returns a :class:`SuiteResult`.  They are deliberately
self-contained so the command line can report on a fresh install.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .diagram import INF, CoxeterSystem, classify_a2_finite
from .errors import PreconditionError
from .heaps import build_heap, enumerate_fc, n_value, open_intervals
from .kl import a_value_finite, cells, kl_table, verify_star_mu_transport, verify_star_recurrence
from .star import star_pairs
from .words import LEFT, RIGHT, CoxeterGroup, Element
from .witnesses import certify, default_families, family

__all__ = ["SuiteResult", "SUITES", "run_suite", "GOLDEN_TABLE", "finite_system", "path_system", "cycle_system",
           "complete_system"]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {"suite": self.name, "pass": self.passed, "checked": self.checked,
                "failures": self.failures[:20], "seconds": round(self.seconds, 3)}


# small system builders ----------------------------------------------------

def path_system(weights, names=None) -> CoxeterSystem:
    names = names or [chr(ord("a") + i) for i in range(len(weights) + 1)]
    return CoxeterSystem(names, [(names[i], names[i + 1], w) for i, w in enumerate(weights) if w != 2])


def cycle_system(n: int, weight=3) -> CoxeterSystem:
    names = [chr(ord("a") + i) for i in range(n)]
    return CoxeterSystem(names, [(names[i], names[(i + 1) % n], weight) for i in range(n)])


def complete_system(weights: dict) -> CoxeterSystem:
    gens = sorted({g for pair in weights for g in pair})
    return CoxeterSystem(gens, [(s, t, w) for (s, t), w in weights.items()])


def finite_system(name: str) -> CoxeterSystem:
    table = {
        "A1": CoxeterSystem("a", []),
        "A2": path_system([3]),
        "B2": path_system([4]),
        "A3": path_system([3, 3]),
        "B3": path_system([3, 4]),
        "H3": path_system([3, 5]),
        "A4": path_system([3, 3, 3]),
    }
    return table[name]


def _fork(arms: list[int]) -> CoxeterSystem:
    """Star-shaped tree: a centre with arms of the given lengths, all weights 3."""
    names = ["x"]
    edges = []
    for a, length in enumerate(arms):
        prev = "x"
        for i in range(length):
            v = f"{chr(ord('p') + a)}{i}"
            names.append(v)
            edges.append((prev, v, 3))
            prev = v
    return CoxeterSystem(names, edges)


def _union(*systems: CoxeterSystem) -> CoxeterSystem:
    gens, edges = [], []
    for k, s in enumerate(systems):
        ren = {g: f"{g}{k}" for g in s.generators}
        gens += [ren[g] for g in s.generators]
        edges += [(ren[a], ren[b], w) for a, b, w in s.edges()]
    return CoxeterSystem(gens, edges)


def _with_leg(sys_: CoxeterSystem, at: str, name: str = "z", weight=3) -> CoxeterSystem:
    return CoxeterSystem(list(sys_.generators) + [name], list(sys_.edges()) + [(at, name, weight)])


_F_STAR = path_system([3, 3, 4, 3, 3])

GOLDEN_TABLE: list[tuple[str, CoxeterSystem, bool]] = [
    ("A1", CoxeterSystem("a", []), True),
    ("A2", path_system([3]), True),
    ("A5", path_system([3] * 4), True),
    ("B2", path_system([4]), True),
    ("B4", path_system([3, 3, 4]), True),
    ("CTilde5", path_system([4, 3, 3, 4]), True),
    ("CTilde6", path_system([4, 3, 3, 3, 4]), True),
    ("4-4 path", path_system([4, 4]), False),
    ("4-3-4 path", path_system([4, 3, 4]), False),
    ("E(1,3)", _fork([1, 1, 3]), True),
    ("E(2,4)", _fork([1, 2, 4]), True),
    ("E(3,3)", _fork([1, 3, 3]), True),
    ("E(3,5)", _fork([1, 3, 5]), True),
    ("E(2,5)", _fork([1, 2, 5]), True),
    ("F4", path_system([3, 4, 3]), True),
    ("F6", path_system([3, 4, 3, 3, 3]), True),
    ("H3", path_system([3, 5]), True),
    ("H4", path_system([3, 3, 5]), True),
    ("H6", path_system([3, 3, 3, 3, 5]), True),
    ("I2(5)", path_system([5]), True),
    ("I2(7)", path_system([7]), True),
    ("I2(inf)", path_system([INF]), True),
    ("K3", complete_system({("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3}), True),
    ("K3 mixed", complete_system({("a", "b"): 4, ("b", "c"): 5, ("a", "c"): INF}), True),
    ("K4", complete_system({p: 3 for p in itertools.combinations("abcd", 2)}), True),
    ("K4 mixed", complete_system({p: w for p, w in zip(itertools.combinations("abcd", 2), [3, 4, 5, 6, INF, 3])}), True),
    ("square", cycle_system(4), False),
    ("pentagon", cycle_system(5), False),
    ("triangle with leg", _with_leg(cycle_system(3), "a"), False),
    ("degree-4 star", CoxeterSystem("xabcd", [("x", g, 3) for g in "abcd"]), False),
    ("E6 affine", _fork([2, 2, 2]), False),
    ("D5 affine", CoxeterSystem("abcdef", [("a", "c", 3), ("b", "c", 3), ("c", "d", 3), ("d", "e", 3), ("d", "f", 3)]), False),
    ("B3 affine", CoxeterSystem("abcd", [("a", "c", 3), ("b", "c", 3), ("c", "d", 4)]), False),
    ("star reducible a-b-c-4-d-e-f", _F_STAR, False),
    ("star reducible plus trailing vertex", _with_leg(_F_STAR, "f"), False),
    ("a-6-b-3-c", path_system([6, 3]), False),
    ("a-3-b-5-c-3-d", path_system([3, 5, 3]), False),
    ("5-3-4 path", path_system([5, 3, 4]), False),
    ("a-v0-4-v1-4-v2", path_system([3, 4, 4]), False),
    ("small 5", CoxeterSystem("abcd", [("a", "c", 3), ("b", "c", 3), ("c", "d", 5)]), False),
    ("large 5", CoxeterSystem("abcde", [("a", "c", 3), ("b", "c", 3), ("c", "d", 3), ("d", "e", 5)]), False),
    ("A2 + A2", _union(path_system([3]), path_system([3])), True),
    ("A3 + H3 + I2(inf)", _union(path_system([3, 3]), path_system([3, 5]), path_system([INF])), True),
    ("A2 + CTilde5", _union(path_system([3]), path_system([4, 3, 3, 4])), False),
    ("A1 + square", _union(CoxeterSystem("a", []), cycle_system(4)), False),
]


# suites -------------------------------------------------------------------

def _timed(fn):
    def run(*a, **kw):
        t0 = time.perf_counter()
        res = fn(*a, **kw)
        res.seconds = time.perf_counter() - t0
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


@_timed
def suite_a_values() -> SuiteResult:
    """a(e) = 0, a(s) = 1, a(w0) = l(w0), and a(st) = 2 for commuting s, t."""
    res = SuiteResult("a-values", True)
    for name, l0 in [("A2", 3), ("B2", 4), ("A3", 6), ("B3", 9)]:
        W = CoxeterGroup(finite_system(name))
        checks = [(W.identity, 0), (W.longest_element(), l0)] + [(W.generator(s), 1) for s in W.system.generators]
        for w, want in checks:
            res.checked += 1
            got = a_value_finite(w)
            if got != want:
                res.failures.append(f"{name}: a({w or 'e'}) = {got}, expected {want}")
    W = CoxeterGroup(finite_system("A3"))
    res.checked += 1
    if a_value_finite(W.element("a c")) != 2:
        res.failures.append("A3: a(ac) != 2")
    res.passed = not res.failures
    return res


@_timed
def suite_subregular() -> SuiteResult:
    res = SuiteResult("subregular", True)
    for name in ("A3", "B3"):
        W = CoxeterGroup(finite_system(name))
        for i in W.enumerate_ids():
            res.checked += 1
            el = W.elem(i)
            unique = i != 0 and len(W.closure_id(i)) == 1
            if (a_value_finite(el) == 1) != unique:
                res.failures.append(f"{name}: {el}")
    res.passed = not res.failures
    return res


@_timed
def suite_shi() -> SuiteResult:
    res = SuiteResult("shi", True)
    for name in ("A3", "B3"):
        sys_ = finite_system(name)
        W = CoxeterGroup(sys_)
        for w in enumerate_fc(sys_, 64):
            el = Element(w, W)
            res.checked += 1
            if a_value_finite(el) != n_value(el):
                res.failures.append(f"{name}: {el}")
    res.passed = not res.failures
    return res


@_timed
def suite_mu() -> SuiteResult:
    res = SuiteResult("mu", True)
    W = CoxeterGroup(finite_system("A3"))
    t = kl_table(W)
    ids = W.enumerate_ids()
    for x, y in itertools.product(ids, ids):
        X, Y = W.elem(x), W.elem(y)
        res.checked += 1
        if t.mu(W.inverse_id(x), W.inverse_id(y)) != t.mu(x, y):
            res.failures.append(f"inverse symmetry at ({X}, {Y})")
        if W.bruhat_leq_id(x, y) and x != y:
            p = t.p(x, y)
            if p.degree is None or p.degree >= 0 or p.valuation != W.length_id(x) - W.length_id(y) or p[p.valuation] != 1:
                res.failures.append(f"degree bound at ({X}, {Y})")
            if W.length_id(x) < W.length_id(y) - 1 and (W.ldesc_id(y) & ~W.ldesc_id(x) or W.rdesc_id(y) & ~W.rdesc_id(x)):
                if t.mu(x, y):
                    res.failures.append(f"extremal vanishing at ({X}, {Y})")
        gens = W.system.generators
        for s, u in star_pairs(W):
            for side in (LEFT, RIGHT):
                for fn in (verify_star_mu_transport, verify_star_recurrence):
                    try:
                        ok = fn(X, Y, (gens[s], gens[u]), side)
                    except PreconditionError:
                        continue
                    if not ok:
                        res.failures.append(f"{fn.__name__} at ({X}, {Y}, {gens[s]}{gens[u]}, {side})")
    res.passed = not res.failures
    return res


@_timed
def suite_cells() -> SuiteResult:
    res = SuiteResult("cells", True)
    W = CoxeterGroup(finite_system("A2"))
    cp = cells(W).to_dict()
    want_left = sorted(sorted(c) for c in [["e"], ["a", "b a"], ["b", "a b"], ["a b a"]])
    want_two = sorted(sorted(c) for c in [["e"], ["a", "b", "a b", "b a"], ["a b a"]])
    res.checked += 2
    if sorted(cp["left"]) != want_left:
        res.failures.append(f"A2 left cells {cp['left']}")
    if sorted(cp["two_sided"]) != want_two:
        res.failures.append(f"A2 two-sided cells {cp['two_sided']}")
    W = CoxeterGroup(finite_system("A3"))
    for cell in cells(W).two_sided:
        res.checked += 1
        if len({a_value_finite(e) for e in cell}) != 1:
            res.failures.append(f"A3 cell with varying a: {sorted(map(str, cell))}")
    res.passed = not res.failures
    return res


@_timed
def suite_witnesses(k_max: int = 5) -> SuiteResult:
    res = SuiteResult("witnesses", True)
    for fam in default_families():
        for k in range(max(1, fam.min_k), k_max + 1):
            res.checked += 1
            cert = certify(fam, k) if fam.method != "MuChain" else _heap_only(fam, k)
            if not cert.passed:
                res.failures.append(f"{fam.label()} k={k}: " + ", ".join(c.name for c in cert.checks if not c.passed))
    res.passed = not res.failures
    return res


def _heap_only(fam, k):
    from .witnesses import Certificate, _heap_checks
    cert = Certificate(fam.id, dict(fam.params), k)
    _heap_checks(cert, fam, tuple(fam.word(k)))
    return cert


@_timed
def suite_star() -> SuiteResult:
    res = SuiteResult("star", True)
    fams = [family("two_strong_bonds", n=1), family("two_strong_bonds", n=2), family("nonextreme_4s", n=1)]
    for fam in fams:
        for k in range(fam.min_k, 4):
            res.checked += 1
            cert = certify(fam, k)
            if not cert.passed or not cert.path and k > 0:
                res.failures.append(f"{fam.label()} k={k}")
    res.passed = not res.failures
    return res


@_timed
def suite_mu_chain() -> SuiteResult:
    res = SuiteResult("mu-chain", True)
    for fid in ("strength_6", "middle_5", "small_5", "large_5"):
        res.checked += 1
        cert = certify(family(fid), 0)
        if not cert.passed:
            res.failures.append(f"{fid}: " + ", ".join(c.name for c in cert.checks if not c.passed))
    res.passed = not res.failures
    return res


@_timed
def suite_classify() -> SuiteResult:
    res = SuiteResult("classify", True)
    for name, sys_, want in GOLDEN_TABLE:
        res.checked += 1
        got, _cert = classify_a2_finite(sys_)
        if got != want:
            res.failures.append(f"{name}: got {got}")
    res.passed = not res.failures
    return res


E7_AFFINE = CoxeterSystem("abcdefgh", [("a", "b", 3), ("b", "c", 3), ("c", "d", 3), ("d", "e", 3),
                                       ("e", "f", 3), ("f", "g", 3), ("d", "h", 3)])


def e7_violations(word: tuple, system: CoxeterSystem = E7_AFFINE) -> list[str]:
    """Structural claims about FC elements with n <= 2 in the affine E7 group."""
    heap = build_heap(word, system)
    idx = system.index
    c, d, e, h = idx("c"), idx("d"), idx("e"), idx("h")
    out = []
    for _i, _j, inner in open_intervals(heap, d):
        labs = [heap.labels[k] for k in inner if heap.labels[k] in (c, e, h)]
        if len(labs) != 2 or len(set(labs)) != 2:
            out.append("open d-interval without exactly two distinct labels from {c, e, h}")
    for _i, _j, inner in open_intervals(heap, h):
        if sum(1 for k in inner if heap.labels[k] == d) != 2:
            out.append("open h-interval without exactly two d's")
    if sum(1 for s in word if s == h) >= 3:
        out.append("three or more h's")
    return out


def type_a_violations(word: tuple, system: CoxeterSystem) -> list[str]:
    """Open s-intervals in type A hold exactly two neighbours of s, with distinct labels."""
    heap = build_heap(word, system)
    out = []
    for s in range(system.rank):
        nb = {system.index(t) for t in system.neighbors(system.generators[s])}
        for _i, _j, inner in open_intervals(heap, s):
            labs = [heap.labels[k] for k in inner if heap.labels[k] in nb]
            if len(labs) != 2 or len(set(labs)) != 2:
                out.append(f"open {system.generators[s]}-interval")
        if len(nb) == 1 and sum(1 for x in word if x == s) > 1:
            out.append(f"endpoint {system.generators[s]} repeated")
    return out


@_timed
def suite_e7(max_len: int = 16) -> SuiteResult:
    res = SuiteResult("e7", True)
    sub_a = E7_AFFINE.subsystem([g for g in E7_AFFINE.generators if g != "h"])
    h = E7_AFFINE.index("h")
    for w in enumerate_fc(E7_AFFINE, max_len, max_n=2):
        res.checked += 1
        bad = e7_violations(w)
        if h not in w:
            # the element lies in the type A7 parabolic a..g
            bad += type_a_violations(tuple(sub_a.index(E7_AFFINE.generators[s]) for s in w), sub_a)
        if bad:
            res.failures.append(f"{' '.join(E7_AFFINE.generators[s] for s in w)}: {bad[0]}")
    res.passed = not res.failures
    return res


@_timed
def suite_complete(max_len: int = 12) -> SuiteResult:
    res = SuiteResult("complete", True)
    for n in (3, 4):
        sys_ = complete_system({p: 3 for p in itertools.combinations("abcd"[:n], 2)})
        for w in enumerate_fc(sys_, max_len):
            res.checked += 1
            heap = build_heap(w, sys_)
            if w and not heap.is_chain():
                res.failures.append(f"K{n}: {' '.join(sys_.generators[s] for s in w)}")
    res.passed = not res.failures
    return res


SUITES = {
    "a-values": suite_a_values,
    "subregular": suite_subregular,
    "shi": suite_shi,
    "mu": suite_mu,
    "cells": suite_cells,
    "witnesses": suite_witnesses,
    "star": suite_star,
    "mu-chain": suite_mu_chain,
    "classify": suite_classify,
    "e7": suite_e7,
    "complete": suite_complete,
}


def run_suite(name: str) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name]()
