"""``looplang`` command line: build, decide, verify and export."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import automaton_to_json, load_corpus, load_item, table_to_json
from .dot import _symbol, _word, automaton_to_dot, cayley_to_dot, transducer_to_dot
from .errors import LoopError, Unsupported
from .invhull import describe_partial_map, inverse_hull_finite
from .loopcore import cayley_graph, loop_automaton, loop_ball, loop_membership, loop_problem_dfa, words_equal
from .transduce import cs_transducer, cs_transducer_spec
from .verify import SUITES, record_dict, run_verification

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def _alphabet(item):
    return item.oracle.alphabet if item.oracle is not None else item.sigma.alphabet


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _nfa_json(a, alphabet) -> dict:
    return {
        "alphabet": [_symbol(s, alphabet) for s in a.alphabet],
        "states": a.n_states,
        "start": a.start,
        "terminals": sorted(a.terminals),
        "edges": [[p, _symbol(a.alphabet[x], alphabet), q] for p, x, q in sorted(a.edges)],
    }


def _transducer_json(t, alphabet) -> dict:
    return {
        "states": [t.name(q) for q in range(t.n_states)],
        "start": t.start,
        "terminals": sorted(t.terminals),
        "edges": sorted([p, _word(u, alphabet), _word(v, alphabet), q] for p, u, v, q in t.edges),
    }


def cmd_build(args) -> int:
    item = load_item(args.spec)
    alphabet = _alphabet(item)
    files = {}
    if item.finite:
        la = loop_automaton(item.table, item.sigma)
        d = loop_problem_dfa(item.table, item.sigma)
        files["cayley.dot"] = cayley_to_dot(cayley_graph(item.table, item.sigma), alphabet)
        files["loop.dot"] = automaton_to_dot(la.nfa, "loop", alphabet, la.table.names)
        files["dfa.dot"] = automaton_to_dot(d, "loop_problem", alphabet)
        files["dfa.json"] = _json(automaton_to_json(d, alphabet))
        loop_dot = files["loop.dot"]
        print(f"{item.name}: {len(la.table)} elements, loop problem DFA with {d.n_states} states")
    else:
        if args.radius is None:
            raise Unsupported("symbolic monoids need --radius to build a ball")
        ball = loop_ball(item.oracle, args.radius)
        names = [alphabet.render(w) or "ε" for w in ball.words]
        loop_dot = files["ball.dot"] = automaton_to_dot(ball.nfa, "ball", alphabet, names)
        print(f"{item.name}: ball of radius {args.radius} with {len(ball.keys)} elements")
    if args.dot:
        _emit(loop_dot, args.dot)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name in sorted(files):
            (out / name).write_text(files[name], encoding="utf-8")
            print(f"wrote {out / name}")
    return EXIT_TRUE


def cmd_decide(args) -> int:
    item = load_item(args.spec)
    alphabet = _alphabet(item)
    source = item.oracle if item.oracle is not None else item.table
    if args.question == "member":
        if len(args.words) != 1:
            raise LoopError("member takes exactly one word")
        result = loop_membership(source, item.sigma, alphabet.parse(args.words[0]))
    else:
        if len(args.words) != 2:
            raise LoopError("equal takes exactly two words")
        u, v = (alphabet.parse(w) for w in args.words)
        result = words_equal(source, item.sigma, u, v)
    print("true" if result else "false")
    return EXIT_TRUE if result else EXIT_FALSE


def cmd_verify(args) -> int:
    items = load_corpus(args.corpus)
    suites = args.suite or list(SUITES)
    records = run_verification(items, suites, jobs=args.jobs)
    lines = "".join(json.dumps(record_dict(r), ensure_ascii=False) + "\n" for r in records)
    if args.report:
        _emit(lines, args.report)
    for r in records:
        status = "PASS" if r.passed else "FAIL"
        extra = f" ({r.witness})" if r.witness else ""
        print(f"{status} {r.suite} {r.item} {r.check}{extra}")
    failed = sum(not r.passed for r in records)
    print(f"{len(records) - failed}/{len(records)} checks passed")
    return EXIT_TRUE if failed == 0 and records else EXIT_FALSE


def cmd_export(args) -> int:
    item = load_item(args.spec)
    alphabet = _alphabet(item)
    what, fmt = args.what, args.format
    if not item.finite and what != "transducer":
        raise Unsupported(f"{what} of a symbolic monoid is infinite; use build --radius")
    if what == "cayley":
        text = (cayley_to_dot(cayley_graph(item.table, item.sigma), alphabet) if fmt == "dot"
                else _json(table_to_json(item.table, item.sigma)))
    elif what == "loop":
        la = loop_automaton(item.table, item.sigma)
        text = (automaton_to_dot(la.nfa, "loop", alphabet, la.table.names) if fmt == "dot"
                else _json(_nfa_json(la.nfa, alphabet)))
    elif what == "dfa":
        d = loop_problem_dfa(item.table, item.sigma)
        text = automaton_to_dot(d, "loop_problem", alphabet) if fmt == "dot" else _json(automaton_to_json(d, alphabet))
    elif what == "hull":
        hull = inverse_hull_finite(item.table, item.sigma)
        if fmt == "dot":
            raise Unsupported("the inverse hull is exported as a table")
        names = item.table.names
        desc = [describe_partial_map(f, names) for f in hull.elements]
        text = _json(table_to_json(hull.table, descriptions=desc))
    else:
        if item.rees is None or item.group_sigma is None:
            raise Unsupported("transducer export needs a Rees spec with group generators")
        t = cs_transducer(cs_transducer_spec(item.rees, item.group_sigma, item.sigma))
        text = (transducer_to_dot(t, "cs_transducer", item.group_sigma.alphabet, alphabet) if fmt == "dot"
                else _json(_transducer_json(t, None)))
    _emit(text, args.output)
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="looplang", description="Loop problems of finitely generated monoids.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="Cayley graph, loop automaton and loop-problem DFA")
    b.add_argument("spec", help="spec file or built-in name")
    b.add_argument("--radius", type=int, help="ball radius for symbolic monoids")
    b.add_argument("--dot", help="write the loop automaton (or ball) DOT here")
    b.add_argument("--out", help="directory for all artifacts")
    b.set_defaults(func=cmd_build)

    d = sub.add_parser("decide", help="loop membership or equality of words")
    d.add_argument("spec")
    d.add_argument("question", choices=["member", "equal"])
    d.add_argument("words", nargs="+")
    d.set_defaults(func=cmd_decide)

    v = sub.add_parser("verify", help="run verification suites over a corpus")
    v.add_argument("corpus", nargs="?", help="corpus file (default: built-in corpus)")
    v.add_argument("--suite", action="append", choices=SUITES, help="repeatable; default all")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--report", help="JSON-lines report file ('-' for stdout)")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="emit one artifact")
    e.add_argument("spec")
    e.add_argument("--what", required=True, choices=["cayley", "loop", "dfa", "hull", "transducer"])
    e.add_argument("--format", default="dot", choices=["dot", "table"])
    e.add_argument("-o", "--output", help="output file (default stdout)")
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
