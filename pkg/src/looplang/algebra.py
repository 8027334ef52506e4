"""Finite semigroups as multiplication tables, symbolic monoid oracles and
Rees matrix semigroups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import (
    EmptyWordInSemigroupMode,
    NotAGroup,
    NotAMonoid,
    PreconditionViolated,
    SpecError,
)
from .words import Alphabet, SignedLetter

MONOID = "monoid"
SEMIGROUP = "semigroup"


@dataclass(frozen=True)
class FiniteSemigroupTable:
    """Multiplication table; ``table[a][b]`` is the index of ``a*b``."""

    names: tuple
    table: tuple
    identity: Optional[int] = None

    def __post_init__(self):
        names = tuple(str(n) for n in self.names)
        table = tuple(tuple(int(c) for c in row) for row in self.table)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "table", table)
        n = len(names)
        if n == 0:
            raise SpecError("semigroup must be non-empty", "/elements")
        if len(set(names)) != n:
            raise SpecError("duplicate element names", "/elements")
        if len(table) != n:
            raise SpecError(f"expected {n} rows, got {len(table)}", "/table")
        for r, row in enumerate(table):
            if len(row) != n:
                raise SpecError(f"expected {n} entries", f"/table/{r}")
            for c, v in enumerate(row):
                if not 0 <= v < n:
                    raise SpecError(f"entry {v} out of range", f"/table/{r}/{c}")
        e = self.identity
        if e is not None:
            if not 0 <= e < n:
                raise SpecError("identity out of range", "/identity")
            for a in range(n):
                if table[e][a] != a or table[a][e] != a:
                    raise SpecError(
                        f"{names[e]!r} is not a two-sided identity "
                        f"(fails at {names[a]!r})",
                        "/identity",
                    )

    def __len__(self):
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, name: str) -> int:
        try:
            return self.names.index(str(name))
        except ValueError:
            raise SpecError(f"unknown element {name!r}") from None

    def find_identity(self) -> Optional[int]:
        n = len(self)
        for e in range(n):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n)):
                return e
        return None

    def closure(self, gens, with_identity: bool = False) -> frozenset:
        """Subsemigroup (or submonoid) generated by ``gens``."""
        seen = set(gens)
        if with_identity and self.identity is not None:
            seen.add(self.identity)
        queue = deque(seen)
        while queue:
            a = queue.popleft()
            for g in gens:
                for c in (self.table[a][g], self.table[g][a]):
                    if c not in seen:
                        seen.add(c)
                        queue.append(c)
        return frozenset(seen)

    def restrict(self, subset) -> "FiniteSemigroupTable":
        """Subtable on a product-closed subset, in the given order."""
        old = list(subset)
        pos = {a: i for i, a in enumerate(old)}
        try:
            table = [[pos[self.table[a][b]] for b in old] for a in old]
        except KeyError:
            raise PreconditionViolated("subset is not closed under the product") from None
        sub = FiniteSemigroupTable(tuple(self.names[a] for a in old), table)
        e = sub.find_identity()
        return FiniteSemigroupTable(sub.names, sub.table, e)


@dataclass(frozen=True)
class GeneratorMap:
    """Assignment of an element to each letter; ``mode`` is ``"monoid"`` or
    ``"semigroup"``."""

    alphabet: Alphabet
    assignment: tuple
    mode: str = MONOID

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(a) for a in self.assignment))
        if len(self.assignment) != len(self.alphabet):
            raise SpecError("one generator image per letter required", "/generators")
        if self.mode not in (MONOID, SEMIGROUP):
            raise SpecError(f"unknown mode {self.mode!r}", "/mode")

    def image(self, letter) -> int:
        if isinstance(letter, SignedLetter):
            return self.assignment[letter.base]
        return self.assignment[letter]

    def with_mode(self, mode: str) -> "GeneratorMap":
        return GeneratorMap(self.alphabet, self.assignment, mode)


def is_surjective(t: FiniteSemigroupTable, sigma: GeneratorMap) -> bool:
    for a in sigma.assignment:
        if not 0 <= a < len(t):
            return False
    monoid = sigma.mode == MONOID
    return len(t.closure(set(sigma.assignment), with_identity=monoid)) == len(t)


def check_associative(t: FiniteSemigroupTable) -> bool:
    m = t.table
    rn = range(len(t))
    return all(m[m[a][b]][c] == m[a][m[b][c]] for a in rn for b in rn for c in rn)


def adjoin_identity(s: FiniteSemigroupTable) -> FiniteSemigroupTable:
    """S^1: a fresh identity is appended even if ``s`` already has one."""
    n = len(s)
    name = "1"
    while name in s.names:
        name += "_"
    table = [list(row) + [i] for i, row in enumerate(s.table)]
    table.append(list(range(n + 1)))
    return FiniteSemigroupTable(s.names + (name,), table, n)


def eval_word(sigma: GeneratorMap, t: FiniteSemigroupTable, w) -> int:
    if not w:
        if sigma.mode == SEMIGROUP:
            raise EmptyWordInSemigroupMode("the empty word has no value in a semigroup")
        if t.identity is None:
            raise NotAMonoid("monoid-mode evaluation needs a table identity")
        return t.identity
    for s in w:
        if s.bar:
            raise ValueError("eval_word takes positive words")
    acc = sigma.image(w[0])
    for s in w[1:]:
        acc = t.table[acc][sigma.image(s)]
    return acc


def is_right_cancellative(t: FiniteSemigroupTable) -> bool:
    n = len(t)
    for m in range(n):
        if len({t.table[x][m] for x in range(n)}) != n:
            return False
    return True


def is_group(t: FiniteSemigroupTable) -> bool:
    e = t.identity if t.identity is not None else t.find_identity()
    if e is None:
        return False
    n = len(t)
    return all(
        any(t.table[a][b] == e and t.table[b][a] == e for b in range(n)) for a in range(n)
    )


def group_inverse(t: FiniteSemigroupTable, a: int) -> int:
    e = t.identity
    for b in range(len(t)):
        if t.table[a][b] == e and t.table[b][a] == e:
            return b
    raise NotAGroup(f"{t.names[a]!r} has no inverse")


def shortlex_representatives(t: FiniteSemigroupTable, sigma: GeneratorMap) -> dict:
    """Shortlex-least positive word for each element reachable from the
    generators (BFS over the Cayley graph, letters in alphabet order).

    In monoid mode the identity is represented by the empty word.
    """
    letters = sigma.alphabet.positive()
    reps = {}
    queue = deque()
    if sigma.mode == MONOID:
        reps[t.identity] = ()
        queue.append(t.identity)
    else:
        for x in letters:
            a = sigma.image(x)
            if a not in reps:
                reps[a] = (x,)
                queue.append(a)
    while queue:
        a = queue.popleft()
        for x in letters:
            b = t.table[a][sigma.image(x)]
            if b not in reps:
                reps[b] = reps[a] + (x,)
                queue.append(b)
    return reps


# --- Rees matrix semigroups -------------------------------------------------


class ReesElement(NamedTuple):
    i: int
    g: int
    j: int


@dataclass(frozen=True)
class ReesSpec:
    """M(G; I, J; P) with ``P[j][i]`` a group element index."""

    group: FiniteSemigroupTable
    I: int
    J: int
    P: tuple

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(tuple(int(x) for x in row) for row in self.P))
        if not is_group(self.group):
            raise SpecError("Rees construction needs a group", "/group")
        if self.group.identity is None:
            object.__setattr__(
                self, "group", FiniteSemigroupTable(
                    self.group.names, self.group.table, self.group.find_identity()))
        if self.I < 1 or self.J < 1:
            raise SpecError("I and J must be positive", "/I")
        if len(self.P) != self.J or any(len(row) != self.I for row in self.P):
            raise SpecError(f"P must be {self.J}x{self.I} (J rows, I columns)", "/P")
        for j, row in enumerate(self.P):
            for i, p in enumerate(row):
                if not 0 <= p < len(self.group):
                    raise SpecError("sandwich entry out of range", f"/P/{j}/{i}")

    def elements(self) -> list:
        return [ReesElement(i, g, j)
                for i in range(self.I) for g in range(len(self.group)) for j in range(self.J)]

    def name(self, a: ReesElement) -> str:
        return f"({a.i + 1},{self.group.names[a.g]},{a.j + 1})"


def rees_multiply(spec: ReesSpec, a: ReesElement, b: ReesElement) -> ReesElement:
    m = spec.group.table
    return ReesElement(a.i, m[m[a.g][spec.P[a.j][b.i]]][b.g], b.j)


def rees_to_table(spec: ReesSpec):
    """Returns ``(table, elements)``; element ``k`` of the table is
    ``elements[k]``."""
    elems = spec.elements()
    pos = {a: k for k, a in enumerate(elems)}
    table = [[pos[rees_multiply(spec, a, b)] for b in elems] for a in elems]
    t = FiniteSemigroupTable(tuple(spec.name(a) for a in elems), table)
    return FiniteSemigroupTable(t.names, t.table, t.find_identity()), elems


def rees_maximal_subgroup(spec: ReesSpec, i: int, j: int):
    """Embedding ``g -> (i, g P_ji^-1, j)`` of G onto H_ij, and H_ij's identity."""
    m = spec.group.table
    pinv = group_inverse(spec.group, spec.P[j][i])
    embedding = {g: ReesElement(i, m[g][pinv], j) for g in range(len(spec.group))}
    return embedding, ReesElement(i, pinv, j)


def cs_rectify(spec: ReesSpec, a: Optional[ReesElement], x: ReesElement, y: ReesElement):
    """Element b of the maximal subgroup containing x and y with bx = ax and
    by = ay.  ``a=None`` stands for the adjoined identity."""
    if (x.i, x.j) != (y.i, y.j):
        raise PreconditionViolated("x and y must lie in one maximal subgroup")
    i, j = x.i, x.j
    if a is None:
        return rees_maximal_subgroup(spec, i, j)[1]
    ax = rees_multiply(spec, a, x)
    if (ax.i, ax.j) != (i, j):
        raise PreconditionViolated("a*x does not lie in the maximal subgroup of x")
    m = spec.group.table
    pinv = group_inverse(spec.group, spec.P[j][i])
    return ReesElement(i, m[m[a.g][spec.P[a.j][i]]][pinv], j)


# --- monoid oracles ---------------------------------------------------------


class MonoidOracle:
    """Evaluator for a (possibly infinite) monoid with canonical keys.

    Subclasses provide ``act(key, letter_index)`` and optionally
    ``right_divide(key, letter_index)``; ``right_divide`` is ``None`` on
    oracles that cannot divide.
    """

    alphabet: Alphabet
    identity_key = None
    right_cancellative = False
    right_divide = None

    def act(self, key, x: int):
        raise NotImplementedError

    def return_distance(self, key) -> int:
        """Lower bound on the number of barred letters needed to get from
        ``key`` back to the identity."""
        return 0

    def eval(self, w):
        key = self.identity_key
        for s in w:
            if s.bar:
                raise ValueError("oracle eval takes positive words")
            key = self.act(key, s.base)
        return key


class FreeMonoidOracle(MonoidOracle):
    """Keys are tuples of letter names."""

    right_cancellative = True

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.identity_key = ()

    def act(self, key, x):
        return key + (self.alphabet.letters[x],)

    def return_distance(self, key) -> int:
        return len(key)

    def right_divide(self, key, x):
        if key and key[-1] == self.alphabet.letters[x]:
            return frozenset([key[:-1]])
        return frozenset()


class FreeCommutativeOracle(MonoidOracle):
    """N^k; keys are k-tuples of letter counts."""

    right_cancellative = True

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("k must be at least 1")
        names = [chr(ord("a") + i) for i in range(k)] if k <= 26 else [f"x{i}" for i in range(k)]
        self.alphabet = Alphabet(tuple(names))
        self.identity_key = (0,) * k

    def act(self, key, x):
        return key[:x] + (key[x] + 1,) + key[x + 1:]

    def return_distance(self, key) -> int:
        return sum(key)

    def right_divide(self, key, x):
        if key[x] == 0:
            return frozenset()
        return frozenset([key[:x] + (key[x] - 1,) + key[x + 1:]])


class TableOracle(MonoidOracle):
    """Oracle view of a finite monoid table; keys are element names."""

    def __init__(self, t: FiniteSemigroupTable, sigma: GeneratorMap):
        if t.identity is None:
            raise NotAMonoid("table oracle needs a monoid")
        self.table = t
        self.sigma = sigma
        self.alphabet = sigma.alphabet
        self.identity_key = t.names[t.identity]
        self.right_cancellative = is_right_cancellative(t)
        self._pre = {}
        for x in range(len(sigma.alphabet)):
            g = sigma.assignment[x]
            for a in range(len(t)):
                b = t.table[a][g]
                self._pre.setdefault((t.names[b], x), set()).add(t.names[a])

    def act(self, key, x):
        t = self.table
        return t.names[t.table[t.index(key)][self.sigma.assignment[x]]]

    def right_divide(self, key, x):
        return frozenset(self._pre.get((key, x), ()))


def free_monoid_oracle(alphabet: Alphabet) -> FreeMonoidOracle:
    return FreeMonoidOracle(alphabet)


def free_commutative_oracle(k: int) -> FreeCommutativeOracle:
    return FreeCommutativeOracle(k)
