"""The square of an automaton and the graph-based deciders built on it.

For a finite set of code words ``U`` the square of the flower automaton
tracks two runs over the same letters. Off-diagonal states are places
where the runs disagree, so ambiguity, circularity, one-sided injectivity
and recognizability for aperiodic points all read off its strongly
connected components.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .errors import DomainError, InvariantError
from .flower import OMEGA, Automaton, build_flower, prefix_length, to_dot
from .graph import bfs_path, tarjan
from .morphism import periodic_root, reverse
from .witness import Witness
from .words import primitive_root

DIAGONAL, OFF_DIAGONAL, MIXED = "diagonal", "off-diagonal", "mixed"


class _LabeledEdges:
    """``labeled[v]`` lists ``(letter, w)`` pairs, built on demand so the
    square only stores bare successor lists."""

    def __init__(self, sq):
        self.sq = sq

    def __len__(self):
        return len(self.sq)

    def __getitem__(self, v):
        sq = self.sq
        n = sq.n
        p, q = divmod(v, n)
        row_q = sq.base.out[q]
        return [
            (c, r * n + s)
            for c, ps in sq.base.out[p].items()
            for r in ps
            for s in row_q.get(c, ())
        ]


class Square:
    """The product ``A × A``; state ``(p, q)`` is numbered ``p * n + q``."""

    def __init__(self, base):
        self.base = base
        n = self.n = len(base)
        out = base.out
        succ = []
        for p in range(n):
            row_p = out[p]
            for q in range(n):
                row_q = out[q]
                row = []
                for c, ps in row_p.items():
                    qs = row_q.get(c)
                    if qs:
                        for r in ps:
                            base_r = r * n
                            for s in qs:
                                row.append(base_r + s)
                succ.append(row)
        self.succ = succ
        self.labeled = _LabeledEdges(self)

    def __len__(self):
        return self.n * self.n

    def state(self, p, q):
        return p * self.n + q

    def pair(self, v):
        return divmod(v, self.n)

    def is_diagonal(self, v):
        p, q = divmod(v, self.n)
        return p == q

    def name(self, v):
        p, q = divmod(v, self.n)
        return f"({self.base.names[p]},{self.base.names[q]})"

    @cached_property
    def scc(self):
        return SccAnalysis(self)

    def useful_states(self):
        """States lying on a path from a non-trivial component to one."""
        scc = self.scc
        forward = scc.reaches_nontrivial(include_self=True)
        backward = scc.reached_from_nontrivial()
        return [v for v in range(len(self)) if forward[scc.comp[v]] and backward[scc.comp[v]]]


@dataclass
class SccAnalysis:
    square: Square
    comp: list = field(init=False)
    components: list = field(init=False)
    nontrivial: list = field(init=False)
    single_cycle: list = field(init=False)
    kind: list = field(init=False)
    dag: list = field(init=False)

    def __post_init__(self):
        sq = self.square
        self.comp, self.components = tarjan(sq.succ)
        comp = self.comp
        internal = [0] * len(sq)
        dag = [set() for _ in self.components]
        for v, ws in enumerate(sq.succ):
            cv = comp[v]
            for w in ws:
                if comp[w] == cv:
                    internal[v] += 1
                else:
                    dag[cv].add(comp[w])
        self.internal_degree = internal
        self.dag = [sorted(s) if len(s) > 1 else list(s) for s in dag]
        size = len(self.components)
        n = sq.n
        diag = [0] * size
        busy = [0] * size
        loose = [0] * size
        for v in range(len(sq)):
            k = comp[v]
            d = internal[v]
            if d:
                busy[k] += 1
                if d != 1:
                    loose[k] += 1
            if v // n == v % n:
                diag[k] += 1
        self.nontrivial = [b > 0 for b in busy]
        self.single_cycle = [b > 0 and x == 0 for b, x in zip(busy, loose)]
        self.kind = [
            DIAGONAL if d == len(block) else OFF_DIAGONAL if d == 0 else MIXED
            for d, block in zip(diag, self.components)
        ]

    def reaches_nontrivial(self, include_self=False):
        """Per component: can it reach a different non-trivial component?

        With ``include_self`` a non-trivial component counts as reaching
        itself.
        """
        below = [False] * len(self.components)
        for k in range(len(self.components) - 1, -1, -1):
            below[k] = any(self.nontrivial[j] or below[j] for j in self.dag[k])
        if include_self:
            return [b or nt for b, nt in zip(below, self.nontrivial)]
        return below

    def reached_from_nontrivial(self):
        above = list(self.nontrivial)
        for k in range(len(self.components)):
            if above[k]:
                for j in self.dag[k]:
                    above[j] = True
        return above

    def cycle_label(self, k):
        """Label of the cycle through a single-cycle component, read from
        its smallest state."""
        if not self.single_cycle[k]:
            raise DomainError("component is not a single cycle")
        start = self.components[k][0]
        return _cycle_at(self.square, self, start)[0]

    def summary(self):
        counts = {"components": len(self.components), "nontrivial": 0, "off_diagonal_nontrivial": 0,
                  "off_diagonal_cycles": 0, "mixed": 0}
        for k in range(len(self.components)):
            if not self.nontrivial[k]:
                continue
            counts["nontrivial"] += 1
            if self.kind[k] == OFF_DIAGONAL:
                counts["off_diagonal_nontrivial"] += 1
                counts["off_diagonal_cycles"] += self.single_cycle[k]
            elif self.kind[k] == MIXED:
                counts["mixed"] += 1
        return counts


def square(automaton):
    return Square(automaton)


def square_to_dot(sq, trim=True):
    """DOT text for the square; diagonal states are filled."""
    keep = sq.useful_states() if trim else range(len(sq))
    keep = sorted(keep)
    index = {v: i for i, v in enumerate(keep)}
    names = tuple(sq.name(v) for v in keep)
    edges = tuple((index[v], c, index[w]) for v in keep for c, w in sq.labeled[v] if w in index)
    omega = sq.state(OMEGA, OMEGA) if sq.base.omega is not None else None
    view = Automaton(
        names=names,
        letters=sq.base.letters,
        edges=edges,
        omega=index.get(omega),
        initial=frozenset({index[omega]}) if omega in index else frozenset(),
        terminal=frozenset({index[omega]}) if omega in index else frozenset(),
    )
    diagonal = {index[v] for v in keep if sq.is_diagonal(v)}
    return to_dot(view, "square", lambda s: "style=filled, fillcolor=lightgray" if s in diagonal else "")


def _cycle_at(sq, scc, start, first_edge=None):
    """Shortest cycle through ``start`` inside its component, optionally
    forced to begin with ``first_edge = (label, target)``.

    Returns ``(label, states)`` with ``states[0] == states[-1] == start``.
    """
    k = scc.comp[start]
    inside = lambda v: scc.comp[v] == k
    if first_edge is None:
        path = bfs_path(sq.labeled, [start], lambda v: v == start, allowed=inside)
    else:
        c, nxt = first_edge
        if nxt == start:
            path = [(start, c, start)]
        else:
            rest = bfs_path(sq.labeled, [nxt], lambda v: v == start, allowed=inside)
            path = [(start, c, nxt)] + rest
    label = "".join(c for _, c, _ in path)
    return label, [start] + [w for _, _, w in path]


def is_unambiguous(automaton):
    return not any(kind == MIXED for kind in square(automaton).scc.kind)


# --- codes ------------------------------------------------------------------


def code_counterexample(words):
    """Two factorizations of one word over ``words``, or ``None`` for a code.

    Returns ``(word, f1, f2)`` with ``f1 != f2`` lists of indices into
    ``words``. Breadth-first search over dangling suffixes: a state ``s``
    stands for two partial factorizations where one spells the other
    followed by ``s``.
    """
    words = list(words)
    for i, w in enumerate(words):
        if w == "":
            return "", [], [i]
    first = {}
    for i, w in enumerate(words):
        if w in first:
            return w, [first[w]], [i]
        first[w] = i
    seen = {}
    queue = deque()
    for i, x in enumerate(words):
        for j, y in enumerate(words):
            if i != j and y.startswith(x):
                s = y[len(x):]
                if s not in seen:
                    seen[s] = ([j], [i])
                    queue.append(s)
    while queue:
        s = queue.popleft()
        ahead, behind = seen[s]
        for k, x in enumerate(words):
            if x == s:
                return "".join(words[i] for i in ahead), ahead, behind + [k]
            if x.startswith(s):
                t, new = x[len(s):], (behind + [k], ahead)
            elif s.startswith(x):
                t, new = s[len(x):], (ahead, behind + [k])
            else:
                continue
            if t not in seen:
                seen[t] = new
                queue.append(t)
    return None


def is_code(words):
    return code_counterexample(words) is None


def non_injective_pair(sigma):
    """Source words ``x != y`` with ``σ(x) = σ(y)``, or ``None``."""
    found = code_counterexample(sigma.images)
    if found is None:
        return None
    _, f1, f2 = found
    x = "".join(sigma.source[i] for i in f1)
    y = "".join(sigma.source[i] for i in f2)
    return Witness("non-injective-pair", x=x, y=y)


def _offdiag_components(scc):
    return [k for k in range(len(scc.components)) if scc.nontrivial[k] and scc.kind[k] == OFF_DIAGONAL]


def circular_counter_pair(words):
    """For a code that is not circular, words ``u, v`` with ``uv, vu ∈ U*``
    and not both in ``U*``. ``None`` when the code is circular."""
    if not is_code(words):
        raise DomainError("circular counter pairs are defined for codes")
    sq = square(build_flower(words))
    scc = sq.scc
    ks = _offdiag_components(scc)
    if not ks:
        return None
    block = scc.components[ks[0]]
    # every cycle of the flower passes through ω, so some state of the
    # component has ω as first coordinate
    start = next(v for v in block if sq.pair(v)[0] == OMEGA)
    label, states = _cycle_at(sq, scc, start)
    j = next(i for i, v in enumerate(states) if sq.pair(v)[1] == OMEGA)
    return Witness("non-circular-pair", u=label[:j], v=label[j:])


def is_circular(words):
    if not is_code(words):
        return False
    return not _offdiag_components(square(build_flower(words)).scc)


# --- one-sided injectivity ----------------------------------------------------


def _require_nonempty_images(sigma):
    if not sigma.is_non_erasing:
        raise DomainError("one-sided injectivity needs nonempty images")


def _diverging(sigma):
    """Square of the flower of σ(A), its SCCs, and the states reachable in
    one step from ``(ω, ω)`` that leave the diagonal and can still reach a
    non-trivial component."""
    sq = square(build_flower(sigma.images))
    scc = sq.scc
    alive = scc.reaches_nontrivial(include_self=True)
    start = sq.state(OMEGA, OMEGA)
    exits = [w for _, w in sq.labeled[start] if not sq.is_diagonal(w) and alive[scc.comp[w]]]
    return sq, scc, exits


def injective_on_right_infinite(sigma):
    _require_nonempty_images(sigma)
    if not sigma.is_injective_on_letters:
        return False
    return not _diverging(sigma)[2]


def injective_on_left_infinite(sigma):
    return injective_on_right_infinite(reverse(sigma))


def one_sided_witness(sigma, side="right"):
    """Words ``(u, v, w)`` certifying non-injectivity on one-sided
    sequences; see :class:`Witness` for the claims on each side."""
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    _require_nonempty_images(sigma)
    if not is_code(sigma.images):
        raise DomainError("the triple construction needs an injective morphism")
    work = sigma if side == "right" else reverse(sigma)
    sq, scc, exits = _diverging(work)
    if not exits:
        raise DomainError(f"the morphism is injective on {side}-infinite sequences")

    def target(v):
        p, q = sq.pair(v)
        k = scc.comp[v]
        return p == OMEGA and q != OMEGA and scc.nontrivial[k] and scc.kind[k] == OFF_DIAGONAL

    path = bfs_path(sq.labeled, [sq.state(OMEGA, OMEGA)], target)
    if path is None:
        raise InvariantError("no diverging run reaches an off-diagonal cycle")
    alpha = "".join(c for _, c, _ in path)
    end = path[-1][2]
    cut = prefix_length(sq.base, sq.pair(end)[1])
    z, _ = _cycle_at(sq, scc, end)
    u, v, w = alpha[:-cut], alpha[-cut:], z[:-cut]
    if side == "left":
        u, v, w = u[::-1], v[::-1], w[::-1]
    return Witness("one-sided-triple", u=u, v=v, w=w, side=side)


# --- recognizability for aperiodic points -------------------------------------


@dataclass
class Verdict:
    decision: str
    witness: Witness = None
    condition: str = None
    root: str = None
    flags: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self):
        data = {"decision": self.decision}
        if self.condition:
            data["violated"] = self.condition
        if self.root is not None:
            data["root"] = self.root
        if self.flags:
            data["flags"] = list(self.flags)
        if self.details:
            data.update(self.details)
        if self.witness is not None:
            data["witness"] = self.witness.to_json()
        return data


def is_aperiodic_point(u, w, v):
    """Exact test for the bi-infinite word ``…uuu·w·vvv…``."""
    r, t = primitive_root(u), primitive_root(v)
    if len(r) != len(t):
        return True
    probe = r + w + t + t
    p = len(r)
    return any(probe[i] != probe[i + p] for i in range(len(probe) - p))


def window_layout(u, w, v):
    size = 4 * (len(u) + len(w) + len(v))
    left = (size - len(w)) // 2
    return size, left


def _trace(sq, start, label, end):
    """The unique square path from ``start`` to ``end`` reading ``label``."""
    layers = [{start: None}]
    for c in label:
        nxt = {}
        for v in layers[-1]:
            for d, w in sq.labeled[v]:
                if d == c and w not in nxt:
                    nxt[w] = v
        if not nxt:
            break
        layers.append(nxt)
    if len(layers) != len(label) + 1 or end not in layers[-1]:
        raise InvariantError("expected square path not found")
    path = [end]
    for i in range(len(label), 0, -1):
        path.append(layers[i][path[-1]])
    return path[::-1]


def double_parse_witness(sigma, sq, start, u, w, end, v):
    """Witness for ``…uuu·w·vvv…`` where ``u`` cycles at square state
    ``start``, ``w`` leads to ``end`` and ``v`` cycles there."""
    size, left = window_layout(u, w, v)
    right = size - left - len(w)
    longest = max(len(img) for img in sigma.images)
    k_left = -(-(left + longest) // len(u)) + 1
    k_right = -(-(right + longest) // len(v)) + 1
    big = u * k_left + w + v * k_right
    states = _trace(sq, start, big, end)
    lo = k_left * len(u) - left
    hi = lo + size
    index = {img: i for i, img in enumerate(sigma.images)}
    parses = []
    for side in (0, 1):
        cuts = [i for i, s in enumerate(states) if sq.pair(s)[side] == OMEGA]
        c0 = max(c for c in cuts if c <= lo)
        c1 = min(c for c in cuts if c >= hi)
        inner = [c for c in cuts if c0 <= c <= c1]
        letters = tuple(index[big[a:b]] for a, b in zip(inner, inner[1:]))
        parses.append((lo - c0, letters))
    return Witness(
        "double-parse-point", u=u, w=w, v=v, window=size, window_start=left,
        parses=tuple(parses), period_bound=len(u) + len(v),
    )


def _flower_cycles(flower, p):
    """Cycle labels through flower state ``p``: the petal completion with
    zero, one or two code words in between, shortest first."""
    words = flower.words
    if p == OMEGA:
        head, tail = "", ""
        middles = list(words) + [a + b for a in words for b in words]
    else:
        k, i = flower.splits[p]
        head, tail = words[k][i:], words[k][:i]
        middles = [""] + list(words) + [a + b for a in words for b in words]
    labels = {head + m + tail for m in middles}
    return sorted(labels, key=lambda s: (len(s), s))


def recognizable_for_aperiodic(sigma):
    """Decide whether every aperiodic bi-infinite point has at most one
    representation through ``sigma``.

    Periodic morphisms are vacuously fine. Non-injective ones are not.
    Otherwise the answer is yes exactly when every non-trivial
    off-diagonal component of the square of the flower automaton is a
    single cycle and no path joins two non-trivial components (the
    diagonal counts as one).
    """
    root = periodic_root(sigma)
    if root is not None:
        flags = ["all-images-empty"] if root == "" else []
        return Verdict("yes-vacuous-periodic", root=root, flags=flags)
    pair = non_injective_pair(sigma)
    if pair is not None:
        return Verdict("no", witness=pair, condition="injective")

    flower = build_flower(sigma.images)
    sq = square(flower)
    scc = sq.scc
    details = {"flower_states": len(flower), "square_states": len(sq), "scc": scc.summary()}
    if any(kind == MIXED for kind in scc.kind):
        raise InvariantError("square of a code's flower automaton mixes diagonal and off-diagonal states")

    # (i) off-diagonal non-trivial components must be single cycles
    for k in _offdiag_components(scc):
        if scc.single_cycle[k]:
            continue
        start = next(v for v in scc.components[k] if scc.internal_degree[v] >= 2)
        inner = [(c, w) for c, w in sq.labeled[start] if scc.comp[w] == k][:2]
        u, _ = _cycle_at(sq, scc, start, inner[0])
        v, _ = _cycle_at(sq, scc, start, inner[1])
        witness = double_parse_witness(sigma, sq, start, u, "", start, v)
        return Verdict("no", witness=witness, condition="i", details=details)

    # (ii) no path between two non-trivial components
    flags = []
    single_cycle_base = len(flower.words) == 1
    counted = list(scc.nontrivial)
    if single_cycle_base:
        flags.append("single-cycle-base")
        for k, kind in enumerate(scc.kind):
            if kind == DIAGONAL:
                counted[k] = False
    below = [False] * len(scc.components)
    for k in range(len(scc.components) - 1, -1, -1):
        below[k] = any(counted[j] or below[j] for j in scc.dag[k])
    for k in range(len(scc.components)):
        if counted[k] and below[k]:
            witness = _bridge_witness(sigma, sq, scc, k, counted)
            return Verdict("no", witness=witness, condition="ii", flags=flags, details=details)
    return Verdict("yes", flags=flags, details=details)


def _bridge_witness(sigma, sq, scc, k, counted):
    sources = scc.components[k]
    path = bfs_path(
        sq.labeled, sources,
        lambda v: counted[scc.comp[v]] and scc.comp[v] != k,
        allowed=lambda v: scc.comp[v] != k,
    )
    if path is None:
        raise InvariantError("component reaches another non-trivial one but no path was found")
    start, end = path[0][0], path[-1][2]
    w = "".join(c for _, c, _ in path)
    flower = sq.base
    if scc.kind[k] == DIAGONAL:
        lefts = _flower_cycles(flower, sq.pair(start)[0])
    else:
        lefts = [_cycle_at(sq, scc, start)[0]]
    if scc.kind[scc.comp[end]] == DIAGONAL:
        rights = _flower_cycles(flower, sq.pair(end)[0])
    else:
        rights = [_cycle_at(sq, scc, end)[0]]
    for u in lefts:
        for v in rights:
            if is_aperiodic_point(u, w, v):
                return double_parse_witness(sigma, sq, start, u, w, end, v)
    raise InvariantError("no aperiodic point found along a bridge between components")
