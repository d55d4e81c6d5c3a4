"""Coxeter diagrams: parsing, validation, shape recognition and classification.

A :class:`CoxeterSystem` is an ordered list of generator names together with the
weights ``m(s, t) >= 3`` of the diagram edges.  Pairs that are not listed commute
(``m = 2``).  Infinite weights are stored as :data:`INF`.

>>> sys = parse_diagram('{"generators":["a","b","c"],"edges":[["a","b",3],["b","c",4]]}')
>>> sys.m("a", "c"), sys.m("b", "c")
(2, 4)
>>> recognize_shape(sys).name
'B3'
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import networkx as nx
from networkx.algorithms import isomorphism

from .errors import DiagramError

__all__ = [
    "INF",
    "CoxeterSystem",
    "ShapeTag",
    "ClassificationCertificate",
    "ForbiddenMatch",
    "parse_diagram",
    "load_diagram",
    "connected_components",
    "has_cycle",
    "is_complete",
    "recognize_shape",
    "classify_a2_finite",
    "classify_a1_finite",
    "find_forbidden_subgraph",
    "FORBIDDEN_PATTERN_ORDER",
    "weyl_type",
    "is_weyl_or_affine_weyl",
    "is_finite_type",
    "isomorphic",
    "is_connected",
]

INF = math.inf


def _check_weight(w) -> int | float:
    if isinstance(w, str):
        if w.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        raise DiagramError(f"bad weight {w!r}")
    if isinstance(w, bool) or not isinstance(w, (int, float)):
        raise DiagramError(f"bad weight {w!r}")
    if w == INF:
        return INF
    if isinstance(w, float):
        if not w.is_integer():
            raise DiagramError(f"weight must be an integer, got {w!r}")
        w = int(w)
    if w < 3:
        raise DiagramError(f"edge weights must be >= 3 (got {w}); m = 2 pairs are simply omitted")
    return w


def weight_str(w) -> str:
    return "inf" if w == INF else str(w)


class CoxeterSystem:
    """An immutable Coxeter system given by its diagram.

    ``edges`` is an iterable of ``(s, t, m)`` with ``m`` an integer ``>= 3`` or
    :data:`INF`.  Generator order matters: it fixes the lexicographic order used
    for canonical words.
    """

    __slots__ = ("generators", "_index", "_matrix", "_weights", "_hash")

    def __init__(self, generators: Sequence[str], edges: Iterable = ()):
        gens = tuple(str(g) for g in generators)
        if len(set(gens)) != len(gens):
            dup = next(g for g in gens if gens.count(g) > 1)
            raise DiagramError(f"duplicate generator {dup!r}")
        for g in gens:
            if not g or any(ch.isspace() for ch in g):
                raise DiagramError(f"generator names must be non-empty without whitespace: {g!r}")
        index = {g: i for i, g in enumerate(gens)}
        weights: dict[frozenset, int | float] = {}
        for e in edges:
            try:
                s, t, w = e
            except (TypeError, ValueError):
                raise DiagramError(f"edge must be [s, t, weight], got {e!r}")
            if s not in index:
                raise DiagramError(f"edge references unknown generator {s!r}")
            if t not in index:
                raise DiagramError(f"edge references unknown generator {t!r}")
            if s == t:
                raise DiagramError(f"self-edge on {s!r}")
            key = frozenset((s, t))
            if key in weights:
                raise DiagramError(f"duplicate edge entry for pair {{{s}, {t}}}")
            weights[key] = _check_weight(w)
        n = len(gens)
        matrix = [[2] * n for _ in range(n)]
        for i in range(n):
            matrix[i][i] = 1
        for key, w in weights.items():
            s, t = tuple(key)
            matrix[index[s]][index[t]] = w
            matrix[index[t]][index[s]] = w
        self.generators = gens
        self._index = index
        self._matrix = tuple(tuple(row) for row in matrix)
        self._weights = weights
        self._hash = hash((gens, frozenset(weights.items())))

    # basic access -------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def matrix(self) -> tuple:
        """Coxeter matrix indexed by generator position."""
        return self._matrix

    def index(self, s: str) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise DiagramError(f"unknown generator {s!r}") from None

    def m(self, s: str, t: str):
        return self._matrix[self.index(s)][self.index(t)]

    def edges(self) -> list[tuple[str, str, int | float]]:
        """Diagram edges ``(s, t, m)`` with ``s`` before ``t`` in generator order."""
        out = []
        n = self.rank
        for i in range(n):
            for j in range(i + 1, n):
                w = self._matrix[i][j]
                if w != 2:
                    out.append((self.generators[i], self.generators[j], w))
        return out

    def neighbors(self, s: str) -> list[str]:
        i = self.index(s)
        return [g for j, g in enumerate(self.generators) if j != i and self._matrix[i][j] != 2]

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.generators)
        for s, t, w in self.edges():
            g.add_edge(s, t, weight=w)
        return g

    def subsystem(self, gens: Iterable[str]) -> "CoxeterSystem":
        keep = set(gens)
        for s in keep:
            self.index(s)
        order = [g for g in self.generators if g in keep]
        return CoxeterSystem(order, [e for e in self.edges() if e[0] in keep and e[1] in keep])

    def relabel(self, mapping: dict[str, str], order: Sequence[str] | None = None) -> "CoxeterSystem":
        """Rename generators; ``order`` optionally gives the new generator order."""
        new = [mapping[g] for g in self.generators] if order is None else list(order)
        return CoxeterSystem(new, [(mapping[s], mapping[t], w) for s, t, w in self.edges()])

    # serialisation ------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "edges": [[s, t, "inf" if w == INF else w] for s, t, w in self.edges()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __eq__(self, other):
        if not isinstance(other, CoxeterSystem):
            return NotImplemented
        return self.generators == other.generators and self._weights == other._weights

    def __hash__(self):
        return self._hash

    def __repr__(self):
        es = ", ".join(f"{s}-{weight_str(w)}-{t}" for s, t, w in self.edges())
        return f"CoxeterSystem({list(self.generators)}, [{es}])"


def parse_diagram(text: str) -> CoxeterSystem:
    """Parse the JSON diagram format ``{"generators": [...], "edges": [[s, t, m], ...]}``."""
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise DiagramError(f"malformed diagram JSON: {exc}") from None
    if not isinstance(doc, dict) or "generators" not in doc:
        raise DiagramError("diagram JSON must be an object with a 'generators' list")
    gens = doc["generators"]
    edges = doc.get("edges", [])
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise DiagramError("'generators' must be a list of strings")
    if not isinstance(edges, list):
        raise DiagramError("'edges' must be a list")
    return CoxeterSystem(gens, edges)


def load_diagram(path) -> CoxeterSystem:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


# graph predicates -------------------------------------------------------

def connected_components(sys: CoxeterSystem) -> list[CoxeterSystem]:
    """Components ordered by their first generator."""
    g = sys.graph()
    comps = [set(c) for c in nx.connected_components(g)]
    comps.sort(key=lambda c: min(sys.index(s) for s in c))
    return [sys.subsystem(c) for c in comps]


def is_connected(sys: CoxeterSystem) -> bool:
    return sys.rank == 0 or nx.is_connected(sys.graph())


def has_cycle(sys: CoxeterSystem) -> bool:
    g = sys.graph()
    return g.number_of_edges() > g.number_of_nodes() - nx.number_connected_components(g)


def is_complete(sys: CoxeterSystem) -> bool:
    n = sys.rank
    return all(sys.matrix[i][j] != 2 for i in range(n) for j in range(i + 1, n))


# shapes ----------------------------------------------------------------

SHAPE_KINDS = ("A", "B", "CTilde", "E", "F", "H", "I2", "Complete", "Other")


@dataclass(frozen=True)
class ShapeTag:
    kind: str
    n: int
    q: int | None = None
    r: int | None = None
    m: int | float | None = None

    @property
    def name(self) -> str:
        if self.kind in ("A", "B", "F", "H"):
            return f"{self.kind}{self.n}"
        if self.kind == "CTilde":
            return f"CTilde{self.n}"
        if self.kind == "E":
            return f"E({self.q},{self.r})"
        if self.kind == "I2":
            return f"I2({weight_str(self.m)})"
        if self.kind == "Complete":
            return f"Complete{self.n}"
        return "Other"

    @property
    def is_listed_shape(self) -> bool:
        """One of the irreducible acyclic shapes with finitely many a = 2 elements."""
        return self.kind in ("A", "B", "CTilde", "E", "F", "H", "I2")

    def params(self) -> dict:
        out: dict = {"n": self.n}
        if self.q is not None:
            out["q"] = self.q
            out["r"] = self.r
        if self.m is not None:
            out["m"] = weight_str(self.m)
        return out


def _path_order(g: nx.Graph) -> list | None:
    """Vertices of a path graph in order from one end, or None if g is not a path."""
    n = g.number_of_nodes()
    if n == 1:
        return list(g.nodes)
    if g.number_of_edges() != n - 1 or not nx.is_connected(g):
        return None
    ends = [v for v in g.nodes if g.degree(v) == 1]
    if len(ends) != 2 or any(g.degree(v) > 2 for v in g.nodes):
        return None
    return nx.shortest_path(g, ends[0], ends[1])


def recognize_shape(sys: CoxeterSystem) -> ShapeTag:
    """Name the irreducible diagram ``sys``.

    Subscripts count vertices, so ``CTilde5`` is the five-vertex path 4-3-3-4.
    (:func:`weyl_type` instead uses the usual affine index, one less than the rank.)

    >>> recognize_shape(CoxeterSystem("abcde", [("a", "b", 4), ("b", "c", 3), ("c", "d", 3), ("d", "e", 4)])).name
    'CTilde5'
    >>> recognize_shape(CoxeterSystem("abcd", [("a", "b", 5), ("b", "c", 3), ("c", "d", 3)])).name
    'H4'
    """
    if sys.rank == 0 or not is_connected(sys):
        raise DiagramError("recognize_shape needs a connected, non-empty diagram")
    g = sys.graph()
    n = sys.rank
    if n == 1:
        return ShapeTag("A", 1)
    if n == 2:
        w = g.edges[sys.generators[0], sys.generators[1]]["weight"]
        if w == 3:
            return ShapeTag("A", 2)
        if w == 4:
            return ShapeTag("B", 2)
        return ShapeTag("I2", 2, m=w)
    if has_cycle(sys):
        return ShapeTag("Complete", n) if is_complete(sys) else ShapeTag("Other", n)
    path = _path_order(g)
    if path is not None:
        ws = [g.edges[path[i], path[i + 1]]["weight"] for i in range(n - 1)]
        heavy = [i for i, w in enumerate(ws) if w != 3]
        last = n - 2
        if not heavy:
            return ShapeTag("A", n)
        if len(heavy) == 1:
            i = heavy[0]
            w = ws[i]
            if w == 4 and i in (0, last):
                return ShapeTag("B", n)
            if w == 4 and n >= 4 and i in (1, last - 1):
                return ShapeTag("F", n)
            if w == 5 and i in (0, last):
                return ShapeTag("H", n)
        if len(heavy) == 2 and heavy == [0, last] and ws[0] == 4 and ws[last] == 4 and n >= 5:
            return ShapeTag("CTilde", n)
        return ShapeTag("Other", n)
    # tree with a single branch point
    branch = [v for v in g.nodes if g.degree(v) >= 3]
    if len(branch) == 1 and g.degree(branch[0]) == 3:
        if all(d["weight"] == 3 for _, _, d in g.edges(data=True)):
            c = branch[0]
            h = g.copy()
            h.remove_node(c)
            lengths = sorted(len(comp) for comp in nx.connected_components(h))
            if lengths[0] == 1:
                return ShapeTag("E", n, q=lengths[1], r=lengths[2])
    return ShapeTag("Other", n)


# forbidden subgraphs ---------------------------------------------------

@dataclass(frozen=True)
class ForbiddenMatch:
    """An induced subgraph of the diagram matching one of the infinite-witness patterns.

    ``mapping`` sends pattern vertex names to generators of the diagram and
    ``params`` records the pattern parameters (path length ``n``, weights, ...).
    """

    lemma: str
    mapping: dict
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "mapping": dict(self.mapping), "params": dict(self.params)}


EQ, GE = "eq", "ge"


def _pattern(edges: list[tuple[str, str, tuple]], extra_nodes=()) -> nx.Graph:
    p = nx.Graph()
    p.add_nodes_from(extra_nodes)
    for s, t, cond in edges:
        p.add_edge(s, t, cond=cond)
    return p


def _w(k):
    return (EQ, k)


def _path(names: Sequence[str], conds: Sequence[tuple]) -> list:
    return [(names[i], names[i + 1], conds[i]) for i in range(len(names) - 1)]


def _vs(n: int, start: int = 0) -> list[str]:
    return [f"v{i}" for i in range(start, n + 1)]


def _pat_affine_b(n):
    vs = _vs(n)
    conds = [_w(3)] * (n - 1) + [_w(4)]
    return _pattern([("a", "v0", _w(3)), ("b", "v0", _w(3))] + _path(vs, conds))


def _pat_two_branches(n):
    vs = _vs(n, 1)
    return _pattern([("a", "v1", _w(3)), ("b", "v1", _w(3)), ("c", vs[-1], _w(3)), ("d", vs[-1], _w(3))]
                    + _path(vs, [_w(3)] * (n - 1)))


def _pat_two_strong_bonds(n):
    vs = _vs(n + 1)
    conds = [(GE, 5)] + [_w(3)] * (n - 1) + [(GE, 4)]
    return _pattern(_path(vs, conds))


def _pat_nonextreme_4s(n):
    vs = _vs(n + 1)
    conds = [_w(4)] + [_w(3)] * (n - 1) + [_w(4)]
    return _pattern([("a", "v0", _w(3))] + _path(vs, conds))


def _pat_large_5(n):
    vs = _vs(n)
    conds = [_w(3)] * (n - 1) + [_w(5)]
    return _pattern([("a", "v0", _w(3)), ("b", "v0", _w(3))] + _path(vs, conds))


def _fixed(edges):
    return lambda _n: _pattern(edges)


# (lemma id, pattern builder, smallest n, extra vertices beyond the path v*)
_PATTERNS = [
    ("affine_B", _pat_affine_b, 1),
    ("affine_C3", _fixed(_path("abc", [_w(4), _w(4)])), None),
    ("affine_C4", _fixed(_path("abcd", [_w(4), _w(3), _w(4)])), None),
    ("two_branches", _pat_two_branches, 1),
    ("affine_E6", _fixed(_path("abcde", [_w(3)] * 4) + _path("cfg", [_w(3)] * 2)), None),
    ("affine_F5", _fixed(_path("abcdef", [_w(3), _w(3), _w(4), _w(3), _w(3)])), None),
    ("cycle", None, None),
    ("two_strong_bonds", _pat_two_strong_bonds, 1),
    ("nonextreme_4s", _pat_nonextreme_4s, 1),
    ("strength_6", _fixed([("a", "b", (GE, 6)), ("b", "c", _w(3))]), None),
    ("middle_5", _fixed(_path("abcd", [_w(3), _w(5), _w(3)])), None),
    ("small_5", _fixed([("a", "c", _w(3)), ("b", "c", _w(3)), ("c", "d", _w(5))]), None),
    ("large_5", _pat_large_5, 2),
]

FORBIDDEN_PATTERN_ORDER = tuple(p[0] for p in _PATTERNS)


def _edge_ok(g_attr, p_attr) -> bool:
    kind, k = p_attr["cond"]
    w = g_attr["weight"]
    return w == k if kind == EQ else w >= k


def _match(g: nx.Graph, pattern: nx.Graph) -> dict | None:
    if pattern.number_of_nodes() > g.number_of_nodes():
        return None
    gm = isomorphism.GraphMatcher(g, pattern, edge_match=_edge_ok)
    for iso in gm.subgraph_isomorphisms_iter():
        return {pv: gv for gv, pv in iso.items()}
    return None


def _sorted_mapping(sys: CoxeterSystem, mapping: dict) -> dict:
    return dict(sorted(mapping.items(), key=lambda kv: kv[0]))


def _cycle_match(sys: CoxeterSystem, g: nx.Graph) -> ForbiddenMatch | None:
    """Cycle witnesses: a cycle missing an adjacency, grown until one appears."""
    if not has_cycle(sys) or is_complete(sys):
        return None
    # start from any cycle in generator order
    cyc = None
    for comp in nx.connected_components(g):
        sub = g.subgraph(comp)
        try:
            edges = nx.find_cycle(sub)
        except nx.NetworkXNoCycle:
            continue
        cyc = [u for u, _ in edges]
        break
    assert cyc is not None
    while True:
        cset = set(cyc)
        n = len(cyc)
        # two vertices of the cycle that are not adjacent
        for i, j in itertools.combinations(range(n), 2):
            if not g.has_edge(cyc[i], cyc[j]):
                rot = cyc[i:] + cyc[:i]
                jj = (j - i) + 1
                mapping = {f"v{k + 1}": rot[k] for k in range(n)}
                return ForbiddenMatch("cycle_pair", mapping, {"n": n, "i": 1, "j": jj})
        # the cycle is a clique: look for an outside vertex missing one of its vertices
        for v in sys.generators:
            if v in cset:
                continue
            missing = [k for k in range(n) if not g.has_edge(v, cyc[k])]
            if missing:
                # prefer a neighbour of v to sit at position 1, so the diagram stays connected
                nbrs = [k for k in range(n) if g.has_edge(v, cyc[k])]
                start = nbrs[0] if nbrs else 0
                rot = cyc[start:] + cyc[:start]
                j = next(k for k in range(n) if not g.has_edge(v, rot[k])) + 1
                mapping = {f"v{k + 1}": rot[k] for k in range(n)}
                mapping["v"] = v
                return ForbiddenMatch("cycle_vertex", mapping, {"n": n, "j": j})
        # every outside vertex is joined to the whole clique: absorb one and retry
        outside = [v for v in sys.generators if v not in cset and any(g.has_edge(v, c) for c in cyc)]
        if not outside:
            return None
        cyc = cyc + [outside[0]]


def find_forbidden_subgraph(sys: CoxeterSystem) -> ForbiddenMatch | None:
    """First infinite-witness pattern present in the diagram, in a fixed order.

    >>> find_forbidden_subgraph(CoxeterSystem("abc", [("a", "b", 4), ("b", "c", 4)])).lemma
    'affine_C3'
    """
    g = sys.graph()
    rank = sys.rank
    for lemma, build, n0 in _PATTERNS:
        if lemma == "cycle":
            hit = _cycle_match(sys, g)
            if hit is not None:
                return hit
            continue
        if n0 is None:
            found = _match(g, build(None))
            if found is not None:
                return ForbiddenMatch(lemma, _sorted_mapping(sys, found), {})
            continue
        for n in range(n0, rank + 1):
            pat = build(n)
            if pat.number_of_nodes() > rank:
                break
            found = _match(g, pat)
            if found is not None:
                params = {"n": n}
                if lemma == "two_strong_bonds":
                    params["m1"] = weight_str(g.edges[found["v0"], found["v1"]]["weight"])
                    params["m2"] = weight_str(g.edges[found[f"v{n}"], found[f"v{n + 1}"]]["weight"])
                return ForbiddenMatch(lemma, _sorted_mapping(sys, found), params)
    return None


# classification --------------------------------------------------------

@dataclass
class ClassificationCertificate:
    verdict: bool
    components: list = field(default_factory=list)
    forbidden: ForbiddenMatch | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "components": self.components,
            "forbidden": None if self.forbidden is None else self.forbidden.to_dict(),
            "reason": self.reason,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _component_entry(comp: CoxeterSystem, tag: ShapeTag) -> dict:
    return {"generators": list(comp.generators), "shape": tag.name, "kind": tag.kind, "params": tag.params()}


def classify_a2_finite(sys: CoxeterSystem) -> tuple[bool, ClassificationCertificate]:
    """Decide whether ``sys`` has finitely many elements of a-value 2.

    Irreducible diagrams with a cycle qualify exactly when complete; acyclic ones
    exactly when their shape is one of A, B, CTilde, E(q, r), F, H, I2(m >= 5).
    A reducible diagram qualifies when every component has one of those shapes
    other than CTilde.
    """
    if sys.rank == 0:
        return True, ClassificationCertificate(True, [], None, "empty diagram: trivial group")
    comps = connected_components(sys)
    tags = [recognize_shape(c) for c in comps]
    entries = [_component_entry(c, t) for c, t in zip(comps, tags)]
    if len(comps) == 1:
        tag = tags[0]
        if has_cycle(sys):
            verdict = tag.kind == "Complete"
            reason = "complete diagram" if verdict else "diagram has a cycle but is not complete"
        else:
            verdict = tag.is_listed_shape
            reason = f"shape {tag.name}" if verdict else "acyclic diagram of no listed shape"
    else:
        bad = [t for t in tags if not (t.is_listed_shape and t.kind != "CTilde")]
        verdict = not bad
        if verdict:
            reason = "every component has a listed shape other than CTilde"
        else:
            reason = "reducible diagram with component(s) " + ", ".join(t.name for t in bad)
    forbidden = None if verdict else find_forbidden_subgraph(sys)
    return verdict, ClassificationCertificate(verdict, entries, forbidden, reason)


def classify_a1_finite(sys: CoxeterSystem) -> bool:
    """Connected diagram with finitely many a = 1 elements: a tree with at most one edge of weight > 3."""
    if sys.rank == 0 or not is_connected(sys):
        raise DiagramError("classify_a1_finite needs a connected, non-empty diagram")
    if has_cycle(sys):
        return False
    return sum(1 for _, _, w in sys.edges() if w > 3) <= 1


def iter_components_verdicts(sys: CoxeterSystem) -> Iterator[tuple[CoxeterSystem, bool, bool]]:
    """(component, a1-finite, a2-finite) for each component."""
    for comp in connected_components(sys):
        yield comp, classify_a1_finite(comp), classify_a2_finite(comp)[0]


# Weyl, affine Weyl and finite types --------------------------------------

def _path_system(weights: Sequence, names=None) -> CoxeterSystem:
    n = len(weights) + 1
    gens = names or [f"x{i}" for i in range(n)]
    return CoxeterSystem(gens, [(gens[i], gens[i + 1], w) for i, w in enumerate(weights) if w != 2])


def _branched(branches: Sequence[int], weights=None) -> CoxeterSystem:
    """A centre with arms of the given lengths, all weights 3."""
    gens = ["c"]
    edges = []
    for bi, length in enumerate(branches):
        prev = "c"
        for k in range(length):
            g = f"b{bi}_{k}"
            gens.append(g)
            edges.append((prev, g, 3))
            prev = g
    return CoxeterSystem(gens, edges)


def _two_forks(n: int, end_weight=3) -> CoxeterSystem:
    """Leaves a, b on x0, a path x0..x_{n}; with end_weight 3 also leaves c, d on x_n."""
    gens = ["a", "b"] + [f"x{i}" for i in range(n + 1)]
    edges = [("a", "x0", 3), ("b", "x0", 3)]
    edges += [(f"x{i}", f"x{i + 1}", 3) for i in range(n)]
    if end_weight == 3:
        gens += ["c", "d"]
        edges += [(f"x{n}", "c", 3), (f"x{n}", "d", 3)]
    return CoxeterSystem(gens, edges)


def _weyl_catalogue(rank: int) -> list[tuple[str, str, CoxeterSystem]]:
    """(name, 'finite'|'affine', diagram) for every Weyl and affine Weyl type of this rank."""
    out = []
    r = rank
    if r >= 1:
        out.append((f"A{r}", "finite", _path_system([3] * (r - 1))))
    if r >= 2:
        out.append((f"B{r}", "finite", _path_system([4] + [3] * (r - 2))))
    if r >= 4:
        out.append((f"D{r}", "finite", _branched([1, 1, r - 3])))
    if r in (6, 7, 8):
        out.append((f"E{r}", "finite", _branched([1, 2, r - 4])))
    if r == 4:
        out.append(("F4", "finite", _path_system([3, 4, 3])))
    if r == 2:
        out.append(("G2", "finite", _path_system([6])))
        out.append(("ATilde1", "affine", _path_system([INF])))
    n = r - 1  # affine types of rank n + 1
    if n >= 2:
        gens = [f"x{i}" for i in range(r)]
        out.append((f"ATilde{n}", "affine", CoxeterSystem(gens, [(gens[i], gens[(i + 1) % r], 3) for i in range(r)])))
        out.append((f"CTilde{n}", "affine", _path_system([4] + [3] * (n - 2) + [4])))
    if n >= 3:
        sysb = _two_forks(n - 3, end_weight=4)
        gens = list(sysb.generators) + ["z"]
        last = f"x{n - 3}"
        out.append((f"BTilde{n}", "affine", CoxeterSystem(gens, sysb.edges() + [(last, "z", 4)])))
    if n >= 4:
        out.append((f"DTilde{n}", "affine", _branched([1, 1, 1, 1]) if n == 4 else _two_forks(n - 4)))
    if n == 6:
        out.append(("ETilde6", "affine", _branched([2, 2, 2])))
    if n == 7:
        out.append(("ETilde7", "affine", _branched([1, 3, 3])))
    if n == 8:
        out.append(("ETilde8", "affine", _branched([1, 2, 5])))
    if n == 4:
        out.append(("FTilde4", "affine", _path_system([3, 3, 4, 3])))
    if n == 2:
        out.append(("GTilde2", "affine", _path_system([3, 6])))
    return out


def _weighted_iso(a: CoxeterSystem, b: CoxeterSystem) -> bool:
    if a.rank != b.rank or len(a.edges()) != len(b.edges()):
        return False
    return nx.is_isomorphic(a.graph(), b.graph(), edge_match=lambda x, y: x["weight"] == y["weight"])


def isomorphic(a: CoxeterSystem, b: CoxeterSystem) -> bool:
    """Diagram isomorphism respecting weights."""
    return _weighted_iso(a, b)


def weyl_type(sys: CoxeterSystem) -> tuple[str, str] | None:
    """(type name, 'finite' or 'affine') for a connected Weyl or affine Weyl diagram."""
    if sys.rank == 0 or not is_connected(sys):
        raise DiagramError("weyl_type needs a connected, non-empty diagram")
    for name, kind, model in _weyl_catalogue(sys.rank):
        if _weighted_iso(sys, model):
            return name, kind
    return None


def is_weyl_or_affine_weyl(sys: CoxeterSystem) -> bool:
    """Every component is a finite or affine Weyl diagram."""
    return all(weyl_type(c) is not None for c in connected_components(sys))


def is_finite_type(sys: CoxeterSystem) -> bool:
    """The Coxeter group is finite (every component of type A, B, D, E6-8, F4, H3, H4 or I2(m))."""
    for c in connected_components(sys):
        t = weyl_type(c)
        if t is not None and t[1] == "finite":
            continue
        tag = recognize_shape(c)
        if tag.kind == "H" and tag.n in (3, 4):
            continue
        if tag.kind == "I2" and tag.m != INF:
            continue
        return False
    return True
