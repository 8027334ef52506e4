"""Loading monoids from JSON-compatible files and named built-in families."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .algebra import (
    MONOID,
    SEMIGROUP,
    FiniteSemigroupTable,
    GeneratorMap,
    MonoidOracle,
    ReesElement,
    ReesSpec,
    check_associative,
    free_commutative_oracle,
    free_monoid_oracle,
    is_group,
    is_right_cancellative,
    is_surjective,
    rees_to_table,
)
from .errors import SpecError
from .words import Alphabet


@dataclass
class CorpusItem:
    """One monoid or semigroup with its generators.

    ``alt_sigmas`` are further generating maps of the same table, used by
    generator-change checks.  ``rees`` is set for Rees matrix items and
    ``oracle`` for infinite symbolic items (which have no table).
    """

    name: str
    table: Optional[FiniteSemigroupTable] = None
    sigma: Optional[GeneratorMap] = None
    alt_sigmas: list = field(default_factory=list)
    rees: Optional[ReesSpec] = None
    group_sigma: Optional[GeneratorMap] = None
    subgroup_letters: tuple = ()
    oracle: Optional[MonoidOracle] = None

    @property
    def finite(self) -> bool:
        return self.table is not None

    @property
    def is_group(self) -> bool:
        return self.finite and is_group(self.table)

    @property
    def right_cancellative(self) -> bool:
        if self.oracle is not None:
            return self.oracle.right_cancellative
        return self.is_monoid and is_right_cancellative(self.table)

    @property
    def is_monoid(self) -> bool:
        """Monoid mode over a table with identity (no identity is adjoined)."""
        return self.finite and self.table.identity is not None and self.sigma.mode == MONOID


# --- JSON loading --------------------------------------------------------------


def _require(obj, key, path, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SpecError(f"missing field {key!r}", path)
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SpecError(f"field {key!r} has the wrong type", f"{path}/{key}")
    return value


def _table_from_body(body, path="") -> FiniteSemigroupTable:
    names = _require(body, "elements", path, list)
    if not names:
        raise SpecError("element list is empty", f"{path}/elements")
    names = [str(n) for n in names]
    pos = {}
    for k, n in enumerate(names):
        if n in pos:
            raise SpecError(f"duplicate element {n!r}", f"{path}/elements/{k}")
        pos[n] = k
    rows = _require(body, "table", path, list)
    if len(rows) != len(names):
        raise SpecError(f"expected {len(names)} rows, got {len(rows)}", f"{path}/table")
    table = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(names):
            raise SpecError(f"expected {len(names)} entries", f"{path}/table/{r}")
        out = []
        for c, entry in enumerate(row):
            if str(entry) not in pos:
                raise SpecError(f"unknown element {entry!r}", f"{path}/table/{r}/{c}")
            out.append(pos[str(entry)])
        table.append(out)
    ident = body.get("identity")
    if ident is not None and str(ident) not in pos:
        raise SpecError(f"unknown element {ident!r}", f"{path}/identity")
    try:
        t = FiniteSemigroupTable(tuple(names), table, None if ident is None else pos[str(ident)])
    except SpecError as e:
        raise SpecError(e.message, path + e.path) from None
    if not check_associative(t):
        raise SpecError("table is not associative", f"{path}/table")
    return t


def _sigma_from_body(body, t: FiniteSemigroupTable, path="", key="generators") -> GeneratorMap:
    gens = _require(body, key, path, dict)
    if not gens:
        raise SpecError("no generators given", f"{path}/{key}")
    mode = body.get("mode", MONOID)
    if mode not in (MONOID, SEMIGROUP):
        raise SpecError(f"mode must be 'monoid' or 'semigroup', got {mode!r}", f"{path}/mode")
    try:
        alphabet = Alphabet(tuple(gens))
    except SpecError as e:
        raise SpecError(e.message, f"{path}/{key}") from None
    assignment = []
    for letter, element in gens.items():
        if str(element) not in t.names:
            raise SpecError(f"unknown element {element!r}", f"{path}/{key}/{letter}")
        assignment.append(t.names.index(str(element)))
    if mode == MONOID and t.identity is None:
        raise SpecError("monoid generators need an identity", f"{path}/identity")
    sigma = GeneratorMap(alphabet, tuple(assignment), mode)
    if not is_surjective(t, sigma):
        raise SpecError("generators do not generate the whole carrier", f"{path}/{key}")
    return sigma


def _rees_from_body(body, path="") -> ReesSpec:
    group = _table_from_body(_require(body, "group", path, dict), f"{path}/group")
    if not is_group(group):
        raise SpecError("Rees construction needs a group", f"{path}/group")
    if group.identity is None:
        group = FiniteSemigroupTable(group.names, group.table, group.find_identity())
    I = _require(body, "I", path, int)
    J = _require(body, "J", path, int)
    P = _require(body, "P", path, list)
    if len(P) != J:
        raise SpecError(f"P needs {J} rows (one per J index)", f"{path}/P")
    matrix = []
    for j, row in enumerate(P):
        if not isinstance(row, list) or len(row) != I:
            raise SpecError(f"P rows need {I} entries", f"{path}/P/{j}")
        out = []
        for i, entry in enumerate(row):
            if str(entry) not in group.names:
                raise SpecError(f"unknown group element {entry!r}", f"{path}/P/{j}/{i}")
            out.append(group.names.index(str(entry)))
        matrix.append(out)
    return ReesSpec(group, I, J, tuple(map(tuple, matrix)))


def item_from_json(obj, name: str = "item") -> CorpusItem:
    """Parse a table file body or a Rees file body."""
    if not isinstance(obj, dict):
        raise SpecError("expected a JSON object")
    if "group" in obj:
        rees = _rees_from_body(obj)
        t, elems = rees_to_table(rees)
        body = dict(obj)
        body.setdefault("mode", SEMIGROUP)
        sigma = _sigma_from_body(body, t)
        gsigma = None
        if "group_generators" in obj:
            gsigma = _sigma_from_body({"group_generators": obj["group_generators"], "mode": MONOID},
                                      rees.group, "", "group_generators")
        return CorpusItem(name, t, sigma, rees=rees, group_sigma=gsigma,
                          subgroup_letters=tuple(obj.get("subgroup_letters", ())))
    t = _table_from_body(obj)
    return CorpusItem(name, t, _sigma_from_body(obj, t))


def load_item(source: str) -> CorpusItem:
    """A built-in family name or a path to a JSON spec file."""
    p = Path(source)
    if p.suffix == ".json" or p.exists():
        try:
            text = p.read_text()
        except OSError as e:
            raise SpecError(f"cannot read {source}: {e.strerror}") from None
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise SpecError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
        return item_from_json(obj, p.stem)
    return builtin(source)


def load_corpus(source: Optional[str] = None) -> list:
    """Corpus file (``{"items": [name-or-path-or-inline, ...]}``) or the default."""
    if source is None:
        return [builtin(n) for n in DEFAULT_CORPUS]
    p = Path(source)
    try:
        obj = json.loads(p.read_text())
    except OSError as e:
        raise SpecError(f"cannot read {source}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    items = _require(obj, "items", "", list)
    out = []
    for k, entry in enumerate(items):
        try:
            if isinstance(entry, str):
                target = p.parent / entry
                out.append(load_item(str(target) if target.suffix == ".json" else entry))
            else:
                out.append(item_from_json(entry, entry.get("name", f"item{k}")))
        except SpecError as e:
            raise SpecError(e.message, f"/items/{k}{e.path}") from None
    return out


def table_to_json(t: FiniteSemigroupTable, sigma: Optional[GeneratorMap] = None,
                  descriptions: Optional[list] = None) -> dict:
    out = {
        "elements": list(t.names),
        "identity": None if t.identity is None else t.names[t.identity],
        "table": [[t.names[c] for c in row] for row in t.table],
    }
    if sigma is not None:
        out["generators"] = {n: t.names[a] for n, a in zip(sigma.alphabet.letters, sigma.assignment)}
        out["mode"] = sigma.mode
    if descriptions is not None:
        out["descriptions"] = list(descriptions)
    return out


# --- built-in families -------------------------------------------------------------


def cyclic_group(n: int) -> FiniteSemigroupTable:
    names = ["e"] + ["g" if k == 1 else f"g{k}" for k in range(1, n)]
    return FiniteSemigroupTable(tuple(names), [[(a + b) % n for b in range(n)] for a in range(n)], 0)


def symmetric_group_3() -> FiniteSemigroupTable:
    """Permutations of {1,2,3} in cycle notation; products apply left to right."""
    perms = sorted(itertools.permutations(range(3)))

    def cycle_name(p):
        seen, parts = set(), []
        for start in range(3):
            if start in seen or p[start] == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(str(x + 1))
                x = p[x]
            parts.append("(" + "".join(cyc) + ")")
        return "".join(parts) or "()"

    def then(p, q):
        return tuple(q[p[i]] for i in range(3))

    table = [[perms.index(then(p, q)) for q in perms] for p in perms]
    return FiniteSemigroupTable(tuple(cycle_name(p) for p in perms), table, 0)


def full_transformation_2() -> FiniteSemigroupTable:
    maps = [(0, 1), (1, 0), (0, 0), (1, 1)]
    names = ("id", "swap", "c0", "c1")
    table = [[maps.index(tuple(g[f[x]] for x in range(2))) for g in maps] for f in maps]
    return FiniteSemigroupTable(names, table, 0)


def right_zero(n: int) -> FiniteSemigroupTable:
    return FiniteSemigroupTable(tuple(f"r{k + 1}" for k in range(n)), [list(range(n))] * n)


def _letters(k: int):
    return tuple(chr(ord("a") + i) for i in range(k)) if k <= 26 else tuple(f"x{i}" for i in range(k))


def _by_names(t, letters, names, mode):
    return GeneratorMap(Alphabet(tuple(letters)), tuple(t.index(n) for n in names), mode)


def _rees_item(name, rees, gen_names, group_gen, sub_letters):
    t, elems = rees_to_table(rees)
    letters = _letters(len(gen_names))
    sigma = _by_names(t, letters, gen_names, SEMIGROUP)
    gsigma = _by_names(rees.group, ("x",), [group_gen], MONOID)
    return CorpusItem(name, t, sigma, rees=rees, group_sigma=gsigma,
                      subgroup_letters=tuple(sub_letters))


_FAMILY = re.compile(
    r"^(?:(?P<trivial>trivial)|Z(?P<zn>\d+)|(?P<s3>S3)|(?P<t2>T2)"
    r"|right-zero-(?P<rz>\d+)|rectangular-band-(?P<rb>\d+)x(?P<rb2>\d+)"
    r"|free-monoid-(?P<fm>\d+)|free-commutative-(?P<fc>\d+)"
    r"|rees-(?P<rees>Z2-2x2|band-2x2|Z2-1x1))$"
)


def builtin(name: str) -> CorpusItem:
    m = _FAMILY.match(name)
    if m is None:
        raise SpecError(f"unknown built-in {name!r} and no such file")
    if m["trivial"]:
        t = FiniteSemigroupTable(("e",), [[0]], 0)
        return CorpusItem(name, t, GeneratorMap(Alphabet(("a",)), (0,), MONOID))
    if m["zn"]:
        n = int(m["zn"])
        if n < 1:
            raise SpecError("Zn needs n >= 1")
        t = cyclic_group(n)
        sigma = GeneratorMap(Alphabet(("a",)), (1 % n,), MONOID)
        alts = []
        if n >= 3:
            alts.append(GeneratorMap(Alphabet(("a", "b")), (1, 2), MONOID))
        return CorpusItem(name, t, sigma, alt_sigmas=alts)
    if m["s3"]:
        t = symmetric_group_3()
        sigma = _by_names(t, "ab", ["(12)", "(123)"], MONOID)
        alts = [_by_names(t, "ab", ["(12)", "(13)"], MONOID)]
        return CorpusItem(name, t, sigma, alt_sigmas=alts)
    if m["t2"]:
        t = full_transformation_2()
        return CorpusItem(name, t, _by_names(t, "ab", ["swap", "c0"], MONOID))
    if m["rz"]:
        n = int(m["rz"])
        if n < 1:
            raise SpecError("right-zero-n needs n >= 1")
        t = right_zero(n)
        return CorpusItem(name, t, GeneratorMap(Alphabet(_letters(n)), tuple(range(n)), SEMIGROUP))
    if m["rb"]:
        n, k = int(m["rb"]), int(m["rb2"])
        if n < 1 or k < 1:
            raise SpecError("rectangular bands need positive dimensions")
        trivial = FiniteSemigroupTable(("e",), [[0]], 0)
        rees = ReesSpec(trivial, n, k, tuple((0,) * n for _ in range(k)))
        t, elems = rees_to_table(rees)
        gens = [rees.name(ReesElement(min(s, n - 1), 0, min(s, k - 1))) for s in range(max(n, k))]
        return CorpusItem(name, t, _by_names(t, _letters(len(gens)), gens, SEMIGROUP), rees=rees,
                          group_sigma=GeneratorMap(Alphabet(("x",)), (0,), MONOID),
                          subgroup_letters=("a",))
    if m["fm"]:
        k = int(m["fm"])
        return CorpusItem(name, oracle=free_monoid_oracle(Alphabet(_letters(k))))
    if m["fc"]:
        return CorpusItem(name, oracle=free_commutative_oracle(int(m["fc"])))
    which = m["rees"]
    z2 = cyclic_group(2)
    if which == "Z2-2x2":
        rees = ReesSpec(z2, 2, 2, ((0, 0), (0, 1)))
        return _rees_item(name, rees, ["(1,g,1)", "(2,e,2)"], "g", ["a"])
    if which == "band-2x2":
        rees = ReesSpec(FiniteSemigroupTable(("e",), [[0]], 0), 2, 2, ((0, 0), (0, 0)))
        return _rees_item(name, rees, ["(1,e,1)", "(2,e,2)"], "e", ["a"])
    rees = ReesSpec(z2, 1, 1, ((0,),))
    return _rees_item(name, rees, ["(1,g,1)"], "g", ["a"])


FINITE_MONOIDS = ("trivial", "Z2", "Z3", "Z4", "S3", "T2")
SEMIGROUPS = ("right-zero-2", "rectangular-band-2x2")
REES = ("rees-Z2-2x2", "rees-band-2x2", "rees-Z2-1x1")
SYMBOLIC = ("free-monoid-2", "free-commutative-1")
DEFAULT_CORPUS = FINITE_MONOIDS + SEMIGROUPS + REES + SYMBOLIC


def automaton_to_json(d, alphabet: Optional[Alphabet] = None) -> dict:
    """Structured form of a DFA: rendered symbols, ``null`` for missing edges."""
    from .dot import _symbol

    return {
        "alphabet": [_symbol(s, alphabet) for s in d.alphabet],
        "states": d.n_states,
        "start": d.start,
        "terminals": sorted(d.terminals),
        "delta": [[None if q < 0 else q for q in row] for row in d.delta],
    }
