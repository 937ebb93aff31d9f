"""Finite certificates for negative answers, and their independent checker.

A witness is checked using nothing but ``apply`` and the brute-force
``U*`` membership test, so a bug in the graph algorithms cannot hide
behind a bug in the checker.
"""

from dataclasses import asdict, dataclass, field

from .morphism import apply
from .oracle import is_member
from .words import power_prefix, power_suffix

KINDS = ("double-parse-point", "one-sided-triple", "non-injective-pair", "non-circular-pair")


@dataclass(frozen=True)
class Witness:
    """Certificate for a negative verdict.

    ``double-parse-point`` describes the bi-infinite point ``…uuu·w·vvv…``
    with two parses over a window of ``window`` letters: ``window_start``
    letters are taken from the left tail, then ``w``, then the rest from
    the right tail. Each parse is ``(offset, indices)`` where ``indices``
    points into the source alphabet: decoding those letters through the
    morphism and dropping ``offset`` letters gives a word that starts with
    the window. ``period_bound`` is the largest candidate period the
    window refutes.

    ``one-sided-triple`` holds ``(u, v, w)``; with ``side == "right"`` the
    claims are ``u, uv, vw, wv ∈ U*`` and ``v ∉ U*``, and with
    ``side == "left"`` the mirror claims ``u, vu, wv, vw ∈ U*``.

    ``non-injective-pair`` holds source words ``x != y`` with equal images.
    ``non-circular-pair`` holds ``u, v`` with ``uv, vu ∈ U*`` while
    ``u`` or ``v`` is not in ``U*``.
    """

    kind: str
    u: str = ""
    v: str = ""
    w: str = ""
    x: str = ""
    y: str = ""
    side: str = ""
    window: int = 0
    window_start: int = 0
    parses: tuple = field(default=())
    period_bound: int = 0

    def to_json(self):
        data = {"kind": self.kind}
        if self.kind == "double-parse-point":
            data.update(
                u=self.u, w=self.w, v=self.v, window=self.window, window_start=self.window_start,
                period_bound=self.period_bound,
                parses=[{"offset": k, "indices": list(idx)} for k, idx in self.parses],
            )
        elif self.kind == "one-sided-triple":
            data.update(u=self.u, v=self.v, w=self.w, side=self.side)
        elif self.kind == "non-injective-pair":
            data.update(x=self.x, y=self.y)
        else:
            data.update(u=self.u, v=self.v)
        return data

    @classmethod
    def from_json(cls, data):
        data = dict(data)
        if "parses" in data:
            data["parses"] = tuple((p["offset"], tuple(p["indices"])) for p in data["parses"])
        return cls(**data)

    def as_dict(self):
        return asdict(self)


def window_word(witness):
    left = witness.window_start
    right = witness.window - left - len(witness.w)
    return power_suffix(witness.u, left) + witness.w + power_prefix(witness.v, right)


def check_witness(witness, sigma, window=None):
    """Return ``None`` when the witness is valid, else a reason string."""
    kind = witness.kind
    images = sigma.images
    if kind == "non-injective-pair":
        if witness.x == witness.y:
            return "x and y are equal"
        try:
            if apply(sigma, witness.x) != apply(sigma, witness.y):
                return "images of x and y differ"
        except ValueError as exc:
            return str(exc)
        return None
    if kind == "non-circular-pair":
        u, v = witness.u, witness.v
        if not is_member(images, u + v):
            return "uv is not in U*"
        if not is_member(images, v + u):
            return "vu is not in U*"
        if is_member(images, u) and is_member(images, v):
            return "u and v are both in U*"
        return None
    if kind == "one-sided-triple":
        u, v, w = witness.u, witness.v, witness.w
        if witness.side == "right":
            claims = {"u": u, "uv": u + v, "vw": v + w, "wv": w + v}
        elif witness.side == "left":
            claims = {"u": u, "vu": v + u, "wv": w + v, "vw": v + w}
        else:
            return f"unknown side {witness.side!r}"
        for name, word in claims.items():
            if not is_member(images, word):
                return f"{name} is not in U*"
        if is_member(images, v):
            return "v is in U*"
        return None
    if kind == "double-parse-point":
        return _check_double_parse(witness, sigma, window)
    return f"unknown witness kind {kind!r}"


def _check_double_parse(witness, sigma, window):
    u, w, v = witness.u, witness.w, witness.v
    if not u or not v:
        return "cycle words must be nonempty"
    if window is None:
        window = witness.window
    if window > witness.window:
        return f"witness covers {witness.window} letters, {window} requested"
    if not 0 <= witness.window_start <= witness.window - len(w):
        return "bridge does not fit in the window"
    text = window_word(witness)
    if len(witness.parses) != 2:
        return "expected exactly two parses"
    for offset, indices in witness.parses:
        if not indices or any(not 0 <= i < len(sigma.source) for i in indices):
            return "parse uses letters outside the source alphabet"
        letters = "".join(sigma.source[i] for i in indices)
        decoded = apply(sigma, letters)
        first = sigma[letters[0]]
        last = sigma[letters[-1]]
        if not 0 <= offset < len(first):
            return "offset must fall inside the first code word"
        if decoded[offset: offset + len(text)] != text:
            return "parse does not decode to the window"
        if len(decoded) - len(last) >= offset + len(text):
            return "parse has trailing code words beyond the window"
    # offsets are pinned to the first code word and trailing words are
    # rejected, so equal tuples are the only way to describe one parse twice
    if tuple(witness.parses[0][1]) == tuple(witness.parses[1][1]) and witness.parses[0][0] == witness.parses[1][0]:
        return "the two parses coincide"
    bound = len(u) + len(v)
    for p in range(1, bound + 1):
        if all(text[i] == text[i + p] for i in range(len(text) - p)):
            return f"window does not refute period {p}"
    return None


def verify_witness(witness, sigma, window=None):
    return check_witness(witness, sigma, window) is None
