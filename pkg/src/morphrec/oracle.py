"""Brute-force ground truth for small inputs.

Nothing here is clever on purpose: these functions exist to cross-check
the graph and monoid algorithms, not to scale.
"""

DEFAULT_MAX_LEN = 16


def u_star_member(words, w):
    """A factorization of ``w`` over ``words`` (list of words), or ``None``."""
    words = sorted(set(words), key=lambda u: (len(u), u))
    words = [u for u in words if u]
    back = [None] * (len(w) + 1)
    back[0] = ""
    for i in range(1, len(w) + 1):
        for u in words:
            j = i - len(u)
            if j >= 0 and back[j] is not None and w.startswith(u, j):
                back[i] = u
                break
    if back[len(w)] is None:
        return None
    out = []
    i = len(w)
    while i > 0:
        out.append(back[i])
        i -= len(back[i])
    return out[::-1]


def is_member(words, w):
    return u_star_member(words, w) is not None


def star_table(words, max_len):
    """Every word of ``U*`` up to ``max_len`` mapped to the (at most two)
    last code words through which it can be reached, plus a capped count
    of its factorizations.

    Entries are ``word -> [count, lasts]`` with ``count`` in ``{1, 2}``.
    """
    words = sorted({u for u in words if u}, key=lambda u: (len(u), u))
    table = {"": [1, []]}
    levels = [[""]] + [[] for _ in range(max_len)]
    for length in range(1, max_len + 1):
        for u in words:
            if len(u) > length:
                continue
            for x in levels[length - len(u)]:
                w = x + u
                entry = table.get(w)
                if entry is None:
                    table[w] = [table[x][0], [u]]
                    levels[length].append(w)
                else:
                    entry[0] = min(2, entry[0] + table[x][0])
                    if len(entry[1]) < 2:
                        entry[1].append(u)
    return table


def _factorizations(table, w, limit=2):
    if w == "":
        return [[]]
    out = []
    for u in table[w][1]:
        for f in _factorizations(table, w[: len(w) - len(u)], limit):
            out.append(f + [u])
            if len(out) == limit:
                return out
    return out


def double_factorizations(words, max_len=12):
    """Words of length at most ``max_len`` with two distinct factorizations,
    each paired with two of them; ordered by length, then lexicographically."""
    if any(u == "" for u in words):
        return [("", ([], [""]))]
    if len(set(words)) < len(words):
        dup = next(u for u in words if list(words).count(u) > 1)
        return [(dup, ([dup], [dup]))]
    table = star_table(words, max_len)
    out = []
    for w in sorted(table, key=lambda x: (len(x), x)):
        if table[w][0] >= 2:
            f1, f2 = _factorizations(table, w)
            out.append((w, (f1, f2)))
    return out


def circular_bruteforce(words, max_len=10):
    """Search for ``u, v`` with ``uv, vu ∈ U*`` but not both ``u, v ∈ U*``.

    Returns ``(True, None)`` when the bound holds no counterexample, else
    ``(False, reason)`` where ``reason`` is a ``(u, v)`` pair or the string
    ``"not a code"``.
    """
    if double_factorizations(words, max_len):
        return False, "not a code"
    table = star_table(words, max_len)
    for z in sorted(table, key=lambda x: (len(x), x)):
        for i in range(1, len(z)):
            u, v = z[:i], z[i:]
            if v + u in table and not (u in table and v in table):
                return False, (u, v)
    return True, None
