"""Combinatorics on finite words.

Words are plain Python strings, one character per letter. The functions
below only rely on indexing and slicing, so tuples of letters work too.
"""

from .errors import DomainError


def border_table(w):
    """Failure function: ``table[i]`` is the length of the longest proper
    border of ``w[:i]`` (``table[0] == -1`` by convention)."""
    table = [-1] * (len(w) + 1)
    k = -1
    for i, c in enumerate(w):
        while k >= 0 and w[k] != c:
            k = table[k]
        k += 1
        table[i + 1] = k
    return table


def minimal_period(w):
    if len(w) == 0:
        raise DomainError("minimal period of the empty word is undefined")
    return len(w) - border_table(w)[-1]


def primitive_root(w):
    if len(w) == 0:
        raise DomainError("primitive root of the empty word is undefined")
    p = minimal_period(w)
    if len(w) % p == 0:
        return w[:p]
    return w


def is_primitive(w):
    return len(w) > 0 and len(primitive_root(w)) == len(w)


def commute(u, v):
    return u + v == v + u


def is_factor(x, w):
    """True iff ``x`` occurs in ``w`` (KMP, works on any sequence)."""
    if len(x) == 0:
        return True
    table = border_table(x)
    k = 0
    for c in w:
        while k >= 0 and x[k] != c:
            k = table[k]
        k += 1
        if k == len(x):
            return True
    return False


def are_conjugate(u, v):
    return len(u) == len(v) and is_factor(v, u + u)


def factors(w):
    """All distinct factors of ``w``, including the empty word."""
    return {w[i:j] for i in range(len(w) + 1) for j in range(i, len(w) + 1)}


def power_prefix(u, n):
    """Prefix of length ``n`` of ``u u u ...``."""
    if n <= 0:
        return u[:0]
    reps = -(-n // len(u))
    return (u * reps)[:n]


def power_suffix(u, n):
    """Suffix of length ``n`` of ``... u u u``."""
    if n <= 0:
        return u[:0]
    reps = -(-n // len(u))
    return (u * reps)[len(u) * reps - n:]
