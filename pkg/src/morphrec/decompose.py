"""Factoring a morphism through a smaller alphabet.

``linna_decompose`` builds ``σ = α ∘ β`` with ``Card(B) < Card(A)`` and
``α`` injective on right-infinite sequences, for any non-erasing ``σ``
that is not. ``is_elementary_bounded`` searches exhaustively for any
such factorization.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .errors import DomainError, InvariantError
from .flower import OMEGA
from .morphism import Morphism, compose, fresh_letters, incidence_rank, parse_morphism
from .product import _diverging, injective_on_right_infinite

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class Decomposition:
    alpha: Morphism
    beta: Morphism

    @property
    def intermediate(self):
        return self.alpha.source

    def to_text(self):
        return "[alpha]\n" + self.alpha.to_text() + "[beta]\n" + self.beta.to_text()

    def to_json(self):
        return {"alpha": self.alpha.as_dict(), "beta": self.beta.as_dict(), "B": list(self.alpha.source)}


def parse_decomposition(text):
    sections = {}
    current = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped in ("[alpha]", "[beta]"):
            current = stripped[1:-1]
            sections[current] = []
        elif current is not None:
            sections[current].append(line)
        elif stripped and not stripped.startswith("#"):
            raise ValueError("expected an [alpha] or [beta] header")
    if set(sections) != {"alpha", "beta"}:
        raise ValueError("a decomposition needs both [alpha] and [beta] sections")
    alpha = parse_morphism("\n".join(sections["alpha"]))
    beta = parse_morphism("\n".join(sections["beta"]))
    return Decomposition(alpha, Morphism(beta.source, beta.images, alpha.source))


def canonical(decomposition, avoid=()):
    """Rename the intermediate letters to fresh symbols, numbered by first
    occurrence across the images of ``β``; drop letters ``β`` never uses."""
    alpha, beta = decomposition.alpha, decomposition.beta
    order = []
    for img in beta.images:
        for b in img:
            if b not in order:
                order.append(b)
    avoid = set(avoid) | set(beta.source) | set(alpha.target)
    new = dict(zip(order, fresh_letters(len(order), avoid)))
    beta2 = Morphism(beta.source, tuple("".join(new[b] for b in img) for img in beta.images), tuple(new[b] for b in order))
    alpha2 = Morphism(tuple(new[b] for b in order), tuple(alpha[b] for b in order), alpha.target)
    return Decomposition(alpha2, beta2)


def _seed_pair(sigma):
    """Letters ``(a, a2)`` with ``σ(a)`` a prefix of ``σ(a2)`` that start two
    right-infinite sequences with equal images."""
    seen = {}
    for a, img in zip(sigma.source, sigma.images):
        if img in seen:
            return seen[img], a
        seen[img] = a
    sq, _, exits = _diverging(sigma)
    if not exits:
        return None
    flower = sq.base
    owner = {img: a for a, img in zip(sigma.source, sigma.images)}
    start = sq.state(OMEGA, OMEGA)
    target = exits[0]
    letter = next(c for c, w in sq.labeled[start] if w == target)
    words = []
    for s in sq.pair(target):
        words.append(letter if s == OMEGA else flower.words[flower.splits[s][0]])
    short, long = sorted(words, key=len)
    if not long.startswith(short):
        raise InvariantError("diverging code words are not prefix-comparable")
    return owner[short], owner[long]


def linna_decompose(sigma):
    """``σ = α ∘ β`` with ``Card(B) < Card(A)``, ``α`` injective on
    right-infinite sequences and every letter of ``B`` the first letter
    of some ``β(a)``."""
    if not sigma.is_non_erasing:
        raise DomainError("the decomposition needs nonempty images")
    if injective_on_right_infinite(sigma):
        raise DomainError("the morphism is injective on right-infinite sequences")
    stages = sum(len(img) - 1 for img in sigma.images) + len(sigma.source) + 1
    dec = _linna(sigma, stages)
    return canonical(dec, avoid=set(sigma.source) | set(sigma.target))


def _linna(sigma, stages):
    if stages <= 0:
        raise InvariantError("decomposition did not terminate within the expected number of stages")
    if all(len(img) == 1 for img in sigma.images):
        letters = tuple(dict.fromkeys(sigma.images))
        alpha = Morphism(letters, letters, sigma.target)
        beta = Morphism(sigma.source, sigma.images, letters)
        return Decomposition(alpha, beta)
    pair = _seed_pair(sigma)
    if pair is None:
        raise InvariantError("no diverging pair in a morphism that is not injective")
    a0, a1 = pair
    v = sigma[a1][len(sigma[a0]):]
    if not v:
        rest = tuple(a for a in sigma.source if a != a1)
        alpha = Morphism(rest, tuple(sigma[a] for a in rest), sigma.target)
        beta = Morphism(sigma.source, tuple(a0 if a == a1 else a for a in sigma.source), rest)
        if injective_on_right_infinite(alpha):
            return Decomposition(alpha, beta)
        inner = _linna(alpha, stages - 1)
        return Decomposition(inner.alpha, compose(inner.beta, beta))
    alpha1 = Morphism(sigma.source, tuple(v if a == a1 else sigma[a] for a in sigma.source), sigma.target)
    beta1 = Morphism(sigma.source, tuple(a0 + a1 if a == a1 else a for a in sigma.source), sigma.source)
    inner = _linna(alpha1, stages - 1)
    return Decomposition(inner.alpha, compose(inner.beta, beta1))


def check_decomposition(sigma, dec, require_injective=True, require_first_letters=True):
    """Reasons why ``dec`` fails the decomposition contract (empty when fine)."""
    problems = []
    if dec.beta.source != sigma.source:
        problems.append("beta has the wrong source alphabet")
    elif compose(dec.alpha, dec.beta).images != sigma.images:
        problems.append("alpha ∘ beta differs from the morphism")
    if len(dec.alpha.source) >= len(sigma.source):
        problems.append("intermediate alphabet is not smaller")
    if require_first_letters:
        firsts = {img[0] for img in dec.beta.images if img}
        if firsts != set(dec.alpha.source):
            problems.append("some intermediate letter never starts an image of beta")
    if require_injective and dec.alpha.source and not injective_on_right_infinite(dec.alpha):
        problems.append("alpha is not injective on right-infinite sequences")
    return problems


@dataclass
class ElementarityResult:
    status: str
    decomposition: Decomposition = None
    flags: list = field(default_factory=list)
    examined: int = 0

    def to_json(self):
        data = {"status": self.status, "examined": self.examined}
        if self.flags:
            data["flags"] = list(self.flags)
        if self.decomposition is not None:
            data["decomposition"] = self.decomposition.to_json()
        return data


def _parse_over(word, pieces):
    """Indices of ``pieces`` spelling ``word``, or ``None``."""
    back = [None] * (len(word) + 1)
    back[0] = -1
    for i in range(len(word)):
        if back[i] is None:
            continue
        for k, p in enumerate(pieces):
            j = i + len(p)
            if j <= len(word) and back[j] is None and word.startswith(p, i):
                back[j] = k
    if back[len(word)] is None:
        return None
    out, i = [], len(word)
    while i > 0:
        k = back[i]
        out.append(k)
        i -= len(pieces[k])
    return out[::-1]


def is_elementary_bounded(sigma, budget=DEFAULT_BUDGET, use_rank=True):
    """Search every ``σ = α ∘ β`` with a smaller intermediate alphabet.

    Without loss of generality ``α`` is non-erasing with distinct images,
    each a nonempty factor of some ``σ(a)``, so trying every small set of
    such factors as the images of ``α`` is exhaustive.
    """
    k_max = len(sigma.source) - 1
    if not sigma.is_non_erasing:
        keep = tuple(a for a, img in zip(sigma.source, sigma.images) if img)
        alpha = Morphism(keep, tuple(sigma[a] for a in keep), sigma.target)
        beta = Morphism(sigma.source, tuple(a if sigma[a] else "" for a in sigma.source), keep)
        dec = canonical(Decomposition(alpha, beta), avoid=set(sigma.source) | set(sigma.target))
        return ElementarityResult("not-elementary", dec, flags=["erasing"])
    if use_rank and incidence_rank(sigma)[1]:
        return ElementarityResult("elementary", flags=["full-rank"])
    found = set()
    for img in sigma.images:
        for i in range(len(img)):
            for j in range(i + 1, len(img) + 1):
                found.add(img[i:j])
    candidates = sorted(found, key=lambda s: (len(s), s))
    examined = 0
    for k in range(1, k_max + 1):
        for pieces in combinations(candidates, k):
            examined += 1
            if examined > budget:
                return ElementarityResult("budget-exceeded", examined=examined - 1)
            parses = []
            for img in sigma.images:
                parse = _parse_over(img, pieces)
                if parse is None:
                    break
                parses.append(parse)
            else:
                letters = tuple(chr(0xE000 + i) for i in range(k))
                alpha = Morphism(letters, pieces, sigma.target)
                beta = Morphism(sigma.source, tuple("".join(letters[i] for i in p) for p in parses), letters)
                dec = canonical(Decomposition(alpha, beta), avoid=set(sigma.source) | set(sigma.target))
                return ElementarityResult("not-elementary", dec, examined=examined)
    return ElementarityResult("elementary", examined=examined)
