"""Graphviz DOT rendering with stable node numbering and sorted edges."""

from __future__ import annotations

from .automata import Dfa
from .words import SignedLetter


def _quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _symbol(sym, alphabet=None) -> str:
    if isinstance(sym, SignedLetter):
        name = alphabet.letters[sym.base] if alphabet is not None else f"x{sym.base}"
        return name + ("'" if sym.bar else "")
    return str(sym)


def _word(word, alphabet=None) -> str:
    if not word:
        return "ε"
    return " ".join(_symbol(s, alphabet) for s in word)


def _header(name, start, terminals, state_names, n):
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for q in range(n):
        shape = "doublecircle" if q in terminals else "circle"
        label = state_names[q] if state_names else str(q)
        lines.append(f"  {q} [shape={shape}, label={_quote(label)}];")
    lines.append(f"  __start -> {start};")
    return lines


def automaton_to_dot(a, name: str = "automaton", alphabet=None, state_names=None) -> str:
    """Nfa or Dfa; edges on barred letters are dashed."""
    if isinstance(a, Dfa):
        a = a.to_nfa()
    lines = _header(name, a.start, a.terminals, state_names, a.n_states)
    for p, x, q in sorted(a.edges):
        sym = a.alphabet[x]
        style = ", style=dashed" if isinstance(sym, SignedLetter) and sym.bar else ""
        lines.append(f"  {p} -> {q} [label={_quote(_symbol(sym, alphabet))}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cayley_to_dot(graph, alphabet, name: str = "cayley") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for k, v in enumerate(graph.vertices):
        lines.append(f"  {k} [label={_quote(v)}];")
    for a, x, b in sorted(graph.edges):
        lines.append(f"  {a} -> {b} [label={_quote(alphabet.letters[x])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def transducer_to_dot(t, name: str = "transducer", in_alphabet=None, out_alphabet=None) -> str:
    lines = _header(name, t.start, t.terminals, t.state_names, t.n_states)
    rows = []
    for p, u, v, q in t.edges:
        label = f"{_word(u, in_alphabet)}/{_word(v, out_alphabet)}"
        bar = bool(v) and isinstance(v[0], SignedLetter) and v[0].bar
        rows.append((p, q, label, bar))
    for p, q, label, bar in sorted(set(rows)):
        style = ", style=dashed" if bar else ""
        lines.append(f"  {p} -> {q} [label={_quote(label)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
