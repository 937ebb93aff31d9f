"""Flower automata of finite word sets and the prefix graph of a marked morphism."""

from dataclasses import dataclass, field
from functools import cached_property

from .errors import DomainError
from .morphism import is_left_marked

OMEGA = 0


@dataclass(frozen=True)
class Automaton:
    """A finite automaton over single-character letters.

    States are ``0 .. len(names) - 1``. ``edges`` holds ``(p, letter, q)``
    triples. Flower automata also record, for each state, the code word it
    belongs to and the split position (``splits[OMEGA]`` is ``None``).
    """

    names: tuple
    letters: tuple
    edges: tuple
    initial: frozenset = frozenset()
    terminal: frozenset = frozenset()
    omega: int = None
    words: tuple = ()
    splits: tuple = field(default=(), repr=False)

    def __len__(self):
        return len(self.names)

    @cached_property
    def out(self):
        """``out[p][letter]`` is the list of successors of ``p``."""
        table = [{} for _ in self.names]
        for p, c, q in self.edges:
            table[p].setdefault(c, []).append(q)
        return table

    @cached_property
    def succ(self):
        return [sorted({q for qs in row.values() for q in qs}) for row in self.out]

    def step(self, states, letter):
        return {q for p in states for q in self.out[p].get(letter, ())}

    def accepts(self, word):
        current = set(self.initial)
        for c in word:
            current = self.step(current, c)
            if not current:
                return False
        return bool(current & self.terminal)

    def reversed(self):
        return Automaton(
            names=self.names,
            letters=self.letters,
            edges=tuple(sorted((q, c, p) for p, c, q in self.edges)),
            initial=self.terminal,
            terminal=self.initial,
            omega=self.omega,
            words=tuple(w[::-1] for w in self.words),
            splits=self.splits,
        )


def code_words(words):
    """Distinct words in a deterministic order (length, then lexicographic)."""
    return tuple(sorted(set(words), key=lambda w: (len(w), w)))


def build_flower(words):
    words = code_words(words)
    if any(len(w) == 0 for w in words):
        raise DomainError("the flower automaton is undefined when the empty word is a code word")
    names = ["w"]
    splits = [None]
    edges = []
    for k, w in enumerate(words):
        if len(w) == 1:
            edges.append((OMEGA, w, OMEGA))
            continue
        first = len(names)
        for i in range(1, len(w)):
            names.append(f"{w[:i]}|{w[i:]}")
            splits.append((k, i))
        edges.append((OMEGA, w[0], first))
        for i in range(1, len(w) - 1):
            edges.append((first + i - 1, w[i], first + i))
        edges.append((first + len(w) - 2, w[-1], OMEGA))
    letters = tuple(sorted({c for w in words for c in w}))
    return Automaton(
        names=tuple(names),
        letters=letters,
        edges=tuple(sorted(edges)),
        initial=frozenset({OMEGA}),
        terminal=frozenset({OMEGA}),
        omega=OMEGA,
        words=words,
        splits=tuple(splits),
    )


def prefix_length(automaton, state):
    """For a flower state ``u|v`` the length of ``u`` (0 for ω)."""
    split = automaton.splits[state]
    return 0 if split is None else split[1]


def is_deterministic(automaton):
    return all(len(qs) == 1 for row in automaton.out for qs in row.values())


def build_prefix_graph(sigma):
    """Graph on proper prefixes of the images with ``p --a--> q`` when
    ``p·σ(a)`` is a product of images followed by ``q``."""
    if not is_left_marked(sigma):
        raise DomainError("the prefix graph needs a left marked morphism")
    images = sigma.images
    prefixes = sorted({w[:i] for w in images for i in range(len(w))}, key=lambda p: (len(p), p))
    index = {p: i for i, p in enumerate(prefixes)}
    by_first = {w[0]: w for w in images}
    edges = []
    for p in prefixes:
        for a, img in zip(sigma.source, images):
            rest = p + img
            # images form a prefix code, so at most one image can be stripped
            while rest and rest[0] in by_first and rest.startswith(by_first[rest[0]]):
                rest = rest[len(by_first[rest[0]]):]
            if rest in index:
                edges.append((index[p], a, index[rest]))
    return Automaton(
        names=tuple(p if p else "ε" for p in prefixes),
        letters=tuple(sigma.source),
        edges=tuple(sorted(edges)),
        initial=frozenset({0}),
        terminal=frozenset({0}),
        omega=0,
    )


def _quote(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(automaton, name="A", node_style=None):
    """DOT text with ω first, then states sorted by name; edges sorted."""
    order = sorted(range(len(automaton)), key=lambda s: (s != automaton.omega, automaton.names[s]))
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for s in order:
        attrs = []
        if s in automaton.initial or s in automaton.terminal:
            attrs.append("shape=doublecircle")
        if node_style is not None:
            extra = node_style(s)
            if extra:
                attrs.append(extra)
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_quote(automaton.names[s])}{suffix};")
    names = automaton.names
    for p, c, q in sorted(automaton.edges, key=lambda e: (names[e[0]], e[1], names[e[2]])):
        lines.append(f"  {_quote(names[p])} -> {_quote(names[q])} [label={_quote(c)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
