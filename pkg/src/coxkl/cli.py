"""Command line front end.

Exit codes: 0 success, 1 a requested check failed, 2 usage or input error,
3 a computation budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .diagram import INF, classify_a2_finite, load_diagram, weight_str
from .errors import BudgetExceeded, CoxklError
from .heaps import build_heap, enumerate_fc, n_value
from .kl import a_value_certified, cells, kl_polynomial, mu
from .words import CoxeterGroup
from .witnesses import FAMILY_IDS, certify, family, witness_word

OK, FAILED, USAGE, BUDGET = 0, 1, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _group(args) -> CoxeterGroup:
    return CoxeterGroup(load_diagram(args.diagram))


def _word_text(el) -> str:
    return str(el) if el.word else "e"


def cmd_classify(args) -> int:
    sys_ = load_diagram(args.diagram)
    verdict, cert = classify_a2_finite(sys_)
    shapes = ", ".join(c["shape"] for c in cert.components) or "empty"
    text = f"a(2)-finite: {str(verdict).lower()}\nshape: {shapes}\nreason: {cert.reason}"
    if cert.forbidden is not None:
        text += f"\nforbidden subgraph: {cert.forbidden.lemma} {cert.forbidden.mapping}"
    _emit(args, cert.to_dict(), text)
    return OK


def cmd_a(args) -> int:
    W = _group(args)
    w = W.element(args.word)
    value, tag = a_value_certified(w)
    shown = "unknown" if value is None else str(value)
    _emit(args, {"word": _word_text(w), "a": value, "justification": tag}, f"{shown} {tag}")
    return OK


def cmd_n(args) -> int:
    sys_ = load_diagram(args.diagram)
    n, anti = n_value(args.word, sys_, witness=True)
    pos = [i + 1 for i in anti]
    _emit(args, {"word": args.word, "n": n, "antichain": pos}, f"{n}\nantichain positions: {pos}")
    return OK


def cmd_heap(args) -> int:
    sys_ = load_diagram(args.diagram)
    heap = build_heap(args.word, sys_)
    fmt = "json" if args.json else args.format
    if fmt == "json":
        print(json.dumps(heap.to_dict(), sort_keys=True))
    elif fmt == "tikz":
        print(heap.to_tikz())
    else:
        print(heap.to_ascii())
    return OK


def cmd_fc_enum(args) -> int:
    sys_ = load_diagram(args.diagram)
    words = enumerate_fc(sys_, args.max_length, args.max_n)
    names = [" ".join(sys_.generators[s] for s in w) for w in words]
    _emit(args, {"count": len(names), "elements": names},
          "\n".join(n or "e" for n in names) + f"\n# {len(names)} elements")
    return OK


def cmd_kl(args) -> int:
    W = _group(args)
    x, y = W.element(args.x), W.element(args.y)
    p = kl_polynomial(x, y)
    _emit(args, {"x": _word_text(x), "y": _word_text(y), "p": p.to_json()}, str(p))
    return OK


def cmd_mu(args) -> int:
    W = _group(args)
    x, y = W.element(args.x), W.element(args.y)
    m = mu(x, y)
    _emit(args, {"x": _word_text(x), "y": _word_text(y), "mu": m}, str(m))
    return OK


def cmd_cells(args) -> int:
    W = _group(args)
    cp = cells(W).to_dict()
    lines = []
    for kind in ("left", "right", "two_sided"):
        lines.append(f"{kind}:")
        lines += ["  {" + ", ".join(c) + "}" for c in cp[kind]]
    _emit(args, cp, "\n".join(lines))
    return OK


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        for part in item.split(","):
            if not part:
                continue
            if "=" not in part:
                raise CoxklError(f"parameter {part!r} is not of the form name=value")
            k, v = part.split("=", 1)
            out[k.strip()] = INF if v.strip() in ("inf", "∞") else int(v)
    return out


def cmd_witness(args) -> int:
    fam = family(args.family, **_parse_params(args.params))
    if not args.certify:
        word = " ".join(witness_word(fam, args.k))
        params = {k: weight_str(v) if v == INF else v for k, v in fam.params.items()}
        _emit(args, {"family": fam.id, "params": params, "k": args.k, "word": word,
                     "system": fam.system.to_dict()}, word)
        return OK
    cert = certify(fam, args.k)
    lines = [f"{fam.label()} k={args.k}: {'pass' if cert.passed else 'FAIL'}"]
    lines += [f"  [{'ok' if c.passed else 'XX'}] {c.name}: expected {c.expected}, got {c.actual}" for c in cert.checks]
    if cert.path:
        lines.append(f"  reduction path: {len(cert.path)} steps to {cert.path[-1]['word']}")
    _emit(args, cert.to_dict(), "\n".join(lines))
    return OK if cert.passed else FAILED


def cmd_verify_suite(args) -> int:
    from .suites import SUITES
    names = [args.suite] if args.suite else list(SUITES)
    results = []
    for name in names:
        if name not in SUITES:
            print(f"unknown suite {name!r}; choose from {', '.join(SUITES)}", file=sys.stderr)
            return USAGE
        res = SUITES[name]()
        results.append(res)
        if not args.json:
            print(f"{'PASS' if res.passed else 'FAIL'} {name}: {res.checked} checked in {res.seconds:.1f}s")
            for f in res.failures[:10]:
                print(f"    {f}")
    if args.json:
        print(json.dumps({"results": [r.to_dict() for r in results]}, sort_keys=True))
    return OK if all(r.passed for r in results) else FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="coxkl", description="Coxeter group and Kazhdan-Lusztig computations")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help, diagram=True):
        sp = sub.add_parser(name, help=help)
        if diagram:
            sp.add_argument("-d", "--diagram", required=True, help="diagram JSON file")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    add("classify", cmd_classify, "decide a(2)-finiteness")
    add("a", cmd_a, "a-value with its justification").add_argument("-w", "--word", required=True)
    add("n", cmd_n, "largest antichain of the heap").add_argument("-w", "--word", required=True)
    sp = add("heap", cmd_heap, "draw the heap of a word")
    sp.add_argument("-w", "--word", required=True)
    sp.add_argument("--format", choices=["ascii", "json", "tikz"], default="ascii")
    sp = add("fc-enum", cmd_fc_enum, "list fully commutative elements")
    sp.add_argument("--max-length", type=int, required=True)
    sp.add_argument("--max-n", type=int, default=None)
    for name, fn, help in [("kl", cmd_kl, "Kazhdan-Lusztig polynomial p_{x,y}"), ("mu", cmd_mu, "mu-coefficient")]:
        sp = add(name, fn, help)
        sp.add_argument("-x", required=True)
        sp.add_argument("-y", required=True)
    add("cells", cmd_cells, "Kazhdan-Lusztig cells of a finite group")
    sp = add("witness", cmd_witness, "witness words and certificates", diagram=False)
    sp.add_argument("--family", required=True, choices=FAMILY_IDS)
    sp.add_argument("--params", nargs="*", help="name=value parameters, e.g. n=2 m1=5")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--certify", action="store_true")
    sp = add("verify-suite", cmd_verify_suite, "run built-in verification suites", diagram=False)
    sp.add_argument("--suite", default=None)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc.budget} (limit {exc.limit})", file=sys.stderr)
        return BUDGET
    except (CoxklError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
