"""Morphisms of free monoids and their letter-level analyses."""

from dataclasses import dataclass
from fractions import Fraction
import re

from .errors import DomainError, MorphismSyntaxError
from .graph import tarjan
from .words import commute, primitive_root


@dataclass(frozen=True)
class Morphism:
    """A map from source letters to words over a target alphabet.

    ``source`` and ``target`` are tuples of single-character letters;
    ``images[i]`` is the image of ``source[i]``. When ``target`` is not
    given it is the set of letters used in the images, in order of first
    appearance.
    """

    source: tuple
    images: tuple
    target: tuple = None

    def __post_init__(self):
        source = tuple(self.source)
        images = tuple(self.images)
        if len(source) != len(images):
            raise ValueError("one image per source letter is required")
        if len(set(source)) != len(source):
            raise ValueError("duplicate source letter")
        for a in source:
            if not isinstance(a, str) or len(a) != 1:
                raise ValueError(f"letters must be single characters, got {a!r}")
        target = self.target
        if target is None:
            seen = {}
            for img in images:
                for c in img:
                    seen.setdefault(c, None)
            target = tuple(seen)
        else:
            target = tuple(target)
            allowed = set(target)
            for img in images:
                bad = set(img) - allowed
                if bad:
                    raise ValueError(f"image letters {sorted(bad)} are not in the target alphabet")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "target", target)

    @classmethod
    def from_dict(cls, mapping, target=None):
        return cls(tuple(mapping), tuple(mapping.values()), target)

    def __getitem__(self, letter):
        try:
            return self.images[self.source.index(letter)]
        except ValueError:
            raise DomainError(f"letter {letter!r} is not in the source alphabet") from None

    def as_dict(self):
        return dict(zip(self.source, self.images))

    @property
    def is_endomorphism(self):
        letters = set(self.source)
        return all(c in letters for img in self.images for c in img)

    @property
    def is_injective_on_letters(self):
        return len(set(self.images)) == len(self.images)

    @property
    def is_non_erasing(self):
        return all(self.images)

    def __len__(self):
        return len(self.source)

    def size(self):
        return sum(len(img) for img in self.images)

    def to_text(self):
        return "".join(f"{a} -> {img}\n" for a, img in zip(self.source, self.images))

    def __str__(self):
        return ", ".join(f"{a}->{img or 'ε'}" for a, img in zip(self.source, self.images))


_RULE = re.compile(r"^(\S+)\s*->(.*)$")


def parse_morphism(text):
    """Parse the ``x -> w`` rule format. ``#`` starts a comment."""
    source, images = [], []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _RULE.match(line)
        if m is None:
            raise MorphismSyntaxError(f"expected 'x -> w', got {raw.strip()!r}", lineno)
        letter, image = m.group(1), "".join(m.group(2).split())
        if len(letter) != 1:
            raise MorphismSyntaxError(f"left-hand side must be a single letter, got {letter!r}", lineno)
        if letter in seen:
            raise MorphismSyntaxError(
                f"duplicate definition of {letter!r} (first defined on line {seen[letter]})", lineno
            )
        seen[letter] = lineno
        source.append(letter)
        images.append(image)
    if not source:
        raise MorphismSyntaxError("no rules found")
    return Morphism(tuple(source), tuple(images))


def identity(alphabet):
    alphabet = tuple(alphabet)
    return Morphism(alphabet, alphabet, alphabet)


def apply(sigma, w):
    images = sigma.as_dict()
    try:
        return "".join(images[c] for c in w)
    except KeyError as exc:
        raise DomainError(f"letter {exc.args[0]!r} is not in the source alphabet") from None


def power(sigma, n, w):
    for _ in range(n):
        w = apply(sigma, w)
    return w


def compose(alpha, beta):
    """The morphism ``alpha ∘ beta`` (apply ``beta`` first)."""
    missing = {c for img in beta.images for c in img} - set(alpha.source)
    if missing:
        raise DomainError(f"alphabet mismatch: {sorted(missing)} not in the source of the outer morphism")
    return Morphism(beta.source, tuple(apply(alpha, img) for img in beta.images), alpha.target)


def reverse(sigma):
    """Mirror image: every image read right to left."""
    return Morphism(sigma.source, tuple(img[::-1] for img in sigma.images), sigma.target)


def ell(sigma):
    return sum(len(img) - 1 for img in sigma.images)


def incidence_matrix(sigma):
    """Rows indexed by source letters, columns by target letters."""
    return [[img.count(b) for b in sigma.target] for img in sigma.images]


def matrix_rank(rows):
    """Exact rank over the rationals."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col] / m[rank][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def incidence_rank(sigma):
    """Return ``(rank, rank == Card(A))``."""
    rank = matrix_rank(incidence_matrix(sigma))
    return rank, rank == len(sigma.source)


def _require_endomorphism(sigma):
    if not sigma.is_endomorphism:
        raise DomainError("this analysis requires an endomorphism (images over the source alphabet)")


def erasable_letters(sigma):
    """Letters ``a`` with ``σⁿ(a) = ε`` for some ``n``."""
    _require_endomorphism(sigma)
    erasable = set()
    changed = True
    while changed:
        changed = False
        for a, img in zip(sigma.source, sigma.images):
            if a not in erasable and all(c in erasable for c in img):
                erasable.add(a)
                changed = True
    return frozenset(erasable)


def erasable_words(sigma):
    """All words over erasable letters that are factors of some ``σⁿ(a)``.

    Every ``σⁿ(a)`` splits into maximal erasable runs separated by
    non-erasable letters. We close the set of runs, each tagged with its
    bounding non-erasable letters (``None`` for a word boundary), under
    one application of ``σ``. The closure is finite because the set of
    erasable words in the language is finite.
    """
    erasable = erasable_letters(sigma)
    images = sigma.as_dict()
    split = {}
    for c in sigma.source:
        if c in erasable:
            continue
        img = images[c]
        ne = [i for i, x in enumerate(img) if x not in erasable]
        inner = [(img[i], img[i + 1:j], img[j]) for i, j in zip(ne, ne[1:])]
        split[c] = (img[: ne[0]], img[ne[0]], img[ne[-1]], img[ne[-1] + 1:], inner)

    runs = set()
    for a in sigma.source:
        if a in erasable:
            runs.add((None, a, None))
        else:
            runs.add((None, "", a))
            runs.add((a, "", None))
    todo = list(runs)
    while todo:
        x, u, y = todo.pop()
        new = []
        left = split[x][3] if x is not None else ""
        right = split[y][0] if y is not None else ""
        new.append((
            split[x][2] if x is not None else None,
            left + apply(sigma, u) + right,
            split[y][1] if y is not None else None,
        ))
        for c in (x, y):
            if c is not None:
                new.extend(split[c][4])
        for t in new:
            if t not in runs:
                runs.add(t)
                todo.append(t)
    words = {""}
    for _, u, _ in runs:
        for i in range(len(u)):
            for j in range(i + 1, len(u) + 1):
                words.add(u[i:j])
    return frozenset(words)


def growing_letters(sigma):
    """Letters ``a`` with ``|σⁿ(a)|`` unbounded.

    Work on the occurrence graph restricted to non-erasable letters
    (``a → b`` once per occurrence of ``b`` in ``σ(a)``). A non-trivial
    component keeps lengths bounded only when it is a plain cycle: each
    member has exactly one occurrence of a member in its image and no
    occurrence of any other non-erasable letter. A letter grows iff it
    reaches a component that is not of that kind.
    """
    _require_endomorphism(sigma)
    erasable = erasable_letters(sigma)
    letters = [a for a in sigma.source if a not in erasable]
    pos = {a: i for i, a in enumerate(letters)}
    images = sigma.as_dict()
    succ = [[pos[c] for c in images[a] if c in pos] for a in letters]
    comp, components = tarjan(succ)

    unbounded = [False] * len(components)
    # components are topologically ordered; walk sinks first
    for k in range(len(components) - 1, -1, -1):
        block = components[k]
        internal = [sum(1 for w in succ[v] if comp[w] == k) for v in block]
        external = [w for v in block for w in succ[v] if comp[w] != k]
        nontrivial = any(internal)
        if nontrivial and (any(n != 1 for n in internal) or external):
            unbounded[k] = True
        elif any(unbounded[comp[w]] for w in external):
            unbounded[k] = True
    return frozenset(a for a in letters if unbounded[comp[pos[a]]])


def periodic_root(sigma):
    """Common primitive root when ``σ(A*) ⊆ r*``, else ``None``.

    Returns ``""`` when every image is empty (trivially periodic).
    """
    nonempty = [img for img in sigma.images if img]
    if not nonempty:
        return ""
    first = nonempty[0]
    if all(commute(first, img) for img in nonempty[1:]):
        return primitive_root(first)
    return None


def is_periodic_morphism(sigma):
    return periodic_root(sigma) is not None


def _marked(sigma, pick):
    # Without empty images there are no erasable letters either, so one
    # test covers both the endomorphism and the general reading.
    if not sigma.is_non_erasing:
        return False
    ends = [pick(img) for img in sigma.images]
    return len(set(ends)) == len(ends)


def is_left_marked(sigma):
    return _marked(sigma, lambda img: img[0])


def is_right_marked(sigma):
    return _marked(sigma, lambda img: img[-1])


def fresh_letters(count, avoid):
    """``count`` single-character letters not in ``avoid``."""
    avoid = set(avoid)
    out = []
    pool = "uvwxyzpqrstmnoghijklUVWXYZPQRSTMNOGHIJKL"
    candidates = iter(pool)
    code = 0x3B1  # continue with Greek letters once the pool runs out
    while len(out) < count:
        c = next(candidates, None)
        if c is None:
            c = chr(code)
            code += 1
        if c not in avoid:
            out.append(c)
            avoid.add(c)
    return out
