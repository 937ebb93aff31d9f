"""Transition monoids of automata, Green relations, and the monoid-side
decision procedure for unambiguity on aperiodic points.

A relation on ``Q`` is stored as a tuple of row bitmasks: bit ``q`` of
``rows[p]`` is set when ``p --m--> q``.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import DomainError, MonoidCapExceeded
from .graph import tarjan
from .product import MIXED, square
from .words import primitive_root

DEFAULT_CAP = 100_000


def multiply(a, b):
    """Relation product: first ``a``, then ``b``."""
    out = []
    for row in a:
        acc = 0
        while row:
            low = row & -row
            acc |= b[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return tuple(out)


def letter_relation(automaton, letter):
    rows = [0] * len(automaton)
    for p, c, q in automaton.edges:
        if c == letter:
            rows[p] |= 1 << q
    return tuple(rows)


def relation_string(rows, n):
    return "|".join("".join("1" if row >> q & 1 else "0" for q in range(n)) for row in rows)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _classes(succ):
    comp, _ = tarjan(succ)
    # renumber by first element so class ids follow element order
    ids = {}
    return [ids.setdefault(c, len(ids)) for c in comp]


@dataclass(frozen=True)
class GroupInMonoid:
    neutral: int
    elements: tuple
    fixed_points: tuple

    @property
    def degree(self):
        return len(self.fixed_points)


@dataclass(frozen=True)
class Cyclicity:
    cyclic: bool
    root: str = None
    vacuous: bool = False
    counterexample: str = None


class TransitionMonoid:
    """Closure of the letter relations of an automaton under product.

    Elements are numbered in shortlex order of their shortest word;
    element 0 is the identity.
    """

    def __init__(self, automaton, cap=DEFAULT_CAP):
        self.automaton = automaton
        self.n = n = len(automaton)
        self.letters = tuple(automaton.letters)
        self.generators = {c: letter_relation(automaton, c) for c in self.letters}
        identity = tuple(1 << p for p in range(n))
        self.elements = [identity]
        self.words = [""]
        self.index = {identity: 0}
        self.right = []
        queue = deque([0])
        while queue:
            i = queue.popleft()
            row = {}
            for c in self.letters:
                m = multiply(self.elements[i], self.generators[c])
                j = self.index.get(m)
                if j is None:
                    j = len(self.elements)
                    if j >= cap:
                        raise MonoidCapExceeded(cap)
                    self.index[m] = j
                    self.elements.append(m)
                    self.words.append(self.words[i] + c)
                    queue.append(j)
                row[c] = j
            self.right.append(row)
        self.left = [
            {c: self.index[multiply(self.generators[c], m)] for c in self.letters} for m in self.elements
        ]

    def __len__(self):
        return len(self.elements)

    def product(self, i, j):
        return self.index[multiply(self.elements[i], self.elements[j])]

    def element_of(self, word):
        i = 0
        for c in word:
            i = self.right[i][c]
        return i

    @cached_property
    def plus_words(self):
        """Shortest nonempty word for every element of ``φ(A⁺)``."""
        found = {}
        queue = deque()
        for c in self.letters:
            j = self.right[0][c]
            if j not in found:
                found[j] = c
                queue.append(j)
        while queue:
            i = queue.popleft()
            for c in self.letters:
                j = self.right[i][c]
                if j not in found:
                    found[j] = found[i] + c
                    queue.append(j)
        return found

    def in_plus(self, i):
        return i in self.plus_words

    @cached_property
    def r_class(self):
        return _classes([sorted(set(row.values())) for row in self.right])

    @cached_property
    def l_class(self):
        return _classes([sorted(set(row.values())) for row in self.left])

    @cached_property
    def h_class(self):
        ids = {}
        return [ids.setdefault((r, l), len(ids)) for r, l in zip(self.r_class, self.l_class)]

    @cached_property
    def d_class(self):
        uf = _UnionFind(len(self))
        first_r, first_l = {}, {}
        for i, (r, l) in enumerate(zip(self.r_class, self.l_class)):
            uf.union(i, first_r.setdefault(r, i))
            uf.union(i, first_l.setdefault(l, i))
        ids = {}
        return [ids.setdefault(uf.find(i), len(ids)) for i in range(len(self))]

    def is_idempotent(self, i):
        return self.product(i, i) == i

    def idempotents(self):
        return [i for i in range(len(self)) if self.is_idempotent(i)]

    def fixed_points(self, i):
        rows = self.elements[i]
        return tuple(p for p in range(self.n) if rows[p] >> p & 1)

    def degree(self, i):
        return len(self.fixed_points(i))

    def group_of(self, e):
        if not self.is_idempotent(e):
            raise DomainError(f"element {self.words[e] or '1'} is not idempotent")
        h = self.h_class[e]
        members = tuple(i for i in range(len(self)) if self.h_class[i] == h)
        return GroupInMonoid(neutral=e, elements=members, fixed_points=self.fixed_points(e))

    def to_json(self):
        n = self.n
        groups = []
        for e in self.idempotents():
            g = self.group_of(e)
            cyc = strongly_cyclic(self, g)
            groups.append({
                "idempotent": e, "word": self.words[e], "elements": list(g.elements),
                "degree": g.degree, "strongly_cyclic": cyc.cyclic, "root": cyc.root,
                "vacuous": cyc.vacuous,
            })
        return {
            "size": len(self),
            "elements": [
                {"word": w, "relation": relation_string(m, n), "in_plus": self.in_plus(i)}
                for i, (w, m) in enumerate(zip(self.words, self.elements))
            ],
            "R": self.r_class, "L": self.l_class, "H": self.h_class, "D": self.d_class,
            "idempotents": self.idempotents(),
            "groups": groups,
        }


def transition_monoid(automaton, cap=DEFAULT_CAP):
    return TransitionMonoid(automaton, cap)


def strongly_cyclic(monoid, group):
    """Decide whether the nonempty words mapped into ``group`` are all
    powers of a single word.

    The candidate root is the primitive root of the shortest such word.
    Containment is checked exactly on the product of the monoid's Cayley
    automaton with the cycle automaton of the root.
    """
    members = set(group.elements)
    candidates = [(len(w), w) for i, w in monoid.plus_words.items() if i in members]
    if not candidates:
        return Cyclicity(True, vacuous=True)
    root = primitive_root(min(candidates)[1])
    dead = len(root)
    # state: (element, position in root or dead); the empty word is not read
    start = (0, 0)
    seen = {start: ""}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        m, pos = state
        for c in monoid.letters:
            nm = monoid.right[m][c]
            npos = (pos + 1) % len(root) if pos != dead and root[pos] == c else dead
            nxt = (nm, npos)
            if nxt in seen:
                continue
            word = seen[state] + c
            if nm in members and npos != 0:
                return Cyclicity(False, root=root, counterexample=word)
            seen[nxt] = word
            queue.append(nxt)
    return Cyclicity(True, root=root)


def is_strongly_cyclic(monoid, group):
    return strongly_cyclic(monoid, group).cyclic


def weakly_deterministic(automaton):
    """No state starts two distinct infinite paths with one label.

    Two such paths agree up to a first split, so it suffices to look for a
    square edge leaving the diagonal towards a state that still reaches a
    non-trivial component.
    """
    sq = square(automaton)
    scc = sq.scc
    alive = scc.reaches_nontrivial(include_self=True)
    for v in range(len(sq)):
        if not sq.is_diagonal(v):
            continue
        for _, w in sq.labeled[v]:
            if not sq.is_diagonal(w) and alive[scc.comp[w]]:
                return False
    return True


def weakly_codeterministic(automaton):
    return weakly_deterministic(automaton.reversed())


@dataclass(frozen=True)
class CheckerResult:
    decision: str
    violated: str = None
    detail: str = None
    monoid_size: int = None

    def to_json(self):
        data = {"decision": self.decision, "monoid_size": self.monoid_size}
        if self.violated:
            data["violated"] = self.violated
            data["detail"] = self.detail
        return data


def theorem_checker(automaton, cap=DEFAULT_CAP):
    """Monoid-side decision of unambiguity on aperiodic points for a
    strongly connected unambiguous automaton.

    Conditions, checked in order:
    (i) weakly deterministic and weakly co-deterministic;
    (ii) every idempotent of ``φ(A⁺)`` with at least two fixed points has
    a strongly cyclic group;
    (iii) whenever ``m = e·m·f`` for such idempotents ``e, f`` links two
    distinct fixed points of ``e`` to two distinct fixed points of ``f``,
    ``e``, ``f`` and ``m`` lie in one D-class.
    """
    comp, components = tarjan(automaton.succ)
    if len(components) != 1:
        raise DomainError("the automaton must be strongly connected")
    sq = square(automaton)
    if any(kind == MIXED for kind in sq.scc.kind):
        raise DomainError("the automaton must be unambiguous")

    if not weakly_deterministic(automaton):
        return CheckerResult("no", "i", "not weakly deterministic")
    if not weakly_codeterministic(automaton):
        return CheckerResult("no", "i", "not weakly co-deterministic")

    monoid = transition_monoid(automaton, cap)
    size = len(monoid)
    big = [e for e in monoid.idempotents() if monoid.in_plus(e) and monoid.degree(e) >= 2]

    for e in big:
        cyc = strongly_cyclic(monoid, monoid.group_of(e))
        if not cyc.cyclic:
            detail = f"group of {monoid.words[e]} is not strongly cyclic ({cyc.counterexample} is not a power of {cyc.root})"
            return CheckerResult("no", "ii", detail, size)

    dclass = monoid.d_class
    left_orbit = {e: sorted({monoid.product(e, m) for m in range(size)}) for e in big}
    for e in big:
        fix_e = monoid.fixed_points(e)
        for f in big:
            fix_f = monoid.fixed_points(f)
            for m in sorted({monoid.product(x, f) for x in left_orbit[e]}):
                if dclass[e] == dclass[f] == dclass[m]:
                    continue
                rows = monoid.elements[m]
                links = [(p, q) for p in fix_e for q in fix_f if rows[p] >> q & 1]
                if any(p != p2 and q != q2 for p, q in links for p2, q2 in links):
                    detail = (
                        f"{monoid.words[m] or '1'} links fixed points of {monoid.words[e]} "
                        f"and {monoid.words[f]} outside their D-class"
                    )
                    return CheckerResult("no", "iii", detail, size)
    return CheckerResult("yes", monoid_size=size)
