"""Words and exact valuations for BS(m,n) = <a, t | t^-1 a^m t = a^n>.

Words over the alphabet {a, t, a^-1, t^-1} carry two exact valuations:

* ``beta(w)``  = -(#t - #t^-1), the (negated) stable-letter height;
* ``alpha(w)`` accumulates +-(m/n)^(-beta(prefix)) for each a^(+-1).

The pair ``phi = (alpha, beta)`` is invariant under the defining relator,
so it descends to the group.  ``lambda_val = (1/m) (n/m)^(-beta) alpha``
is the derived scale parameter the tile construction runs on; it obeys

    lambda(g a) = lambda(g) + 1/m        lambda(g t) = (n/m) lambda(g)

Group elements get a decidable canonical form by Britton reduction for
the HNN presentation: pinches t^-1 a^(m j) t -> a^(n j) and
t a^(n j) t^-1 -> a^(m j) are removed, and a-exponents are normalised to
coset representatives, 0 <= e < m before a t and 0 <= e < n before a
t^-1 (the relator gives a^m t = t a^n and a^n t^-1 = t^-1 a^m, so those
are the moduli that slide across each stable letter), pushing quotients
to the right.  The trailing exponent is unconstrained.

Text syntax: ``a``, ``t``, with ``A`` and ``T`` for the inverses, an
optional integer exponent after each letter, whitespace ignored.  A
negative exponent or an uppercase letter (or both) marks an inverse run:
``a2`` is a^2 while ``A2``, ``a-2`` and ``A-2`` all mean a^-2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError

ALPHABET = ("a", "A", "t", "T")

_INVERSE = {"a": "A", "A": "a", "t": "T", "T": "t"}

GroupWord = tuple[str, ...]


@dataclass(frozen=True)
class BsParams:
    """The two positive integers defining BS(m,n)."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"require m >= 1 and n >= 1, got ({self.m}, {self.n})")

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.m, self.n)


def inverse_letter(x: str) -> str:
    return _INVERSE[x]


def parse_word(text: str) -> GroupWord:
    """Parse the compact word syntax into a tuple of letters."""
    letters: list[str] = []
    i, size = 0, len(text)
    while i < size:
        ch = text[i]
        if ch.isspace() or ch == "e":  # 'e' spells the empty word
            i += 1
            continue
        if ch not in _INVERSE:
            raise ParseError(f"unexpected character {ch!r}", position=i)
        i += 1
        exp = None
        if i < size and (text[i].isdigit() or text[i] == "-"):
            j = i + 1 if text[i] == "-" else i
            while j < size and text[j].isdigit():
                j += 1
            if j == i + 1 and text[i] == "-":
                raise ParseError("dangling '-' after letter", position=i)
            exp = int(text[i:j])
            i = j
        if exp is None:
            letters.append(ch)
            continue
        base = ch.lower()
        inverted = ch.isupper() or exp < 0
        letter = _INVERSE[base] if inverted else base
        letters.extend(letter * abs(exp))
    return tuple(letters)


def word_to_text(word) -> str:
    """Render letters as space-separated runs, ``A``/``T`` marking inverses."""
    word = coerce_word(word)
    if not word:
        return "e"
    parts: list[str] = []
    idx = 0
    while idx < len(word):
        letter = word[idx]
        run = 1
        while idx + run < len(word) and word[idx + run] == letter:
            run += 1
        parts.append(letter if run == 1 else f"{letter}{run}")
        idx += run
    return " ".join(parts)


def coerce_word(w) -> GroupWord:
    """Accept a word tuple, a text form, or a GroupElement."""
    if isinstance(w, GroupElement):
        return w.to_word()
    if isinstance(w, str):
        return parse_word(w)
    return tuple(w)


def invert_word(w) -> GroupWord:
    return tuple(_INVERSE[x] for x in reversed(coerce_word(w)))


def contribution(w, x: str) -> int:
    """Number of occurrences of the letter x minus those of its inverse."""
    w = coerce_word(w)
    return w.count(x) - w.count(_INVERSE[x])


def _runs(w):
    """Collapse a word into ('a', exponent) / ('t', +-1) run pairs."""
    if isinstance(w, GroupElement):
        yield from w.runs()
        return
    for letter in coerce_word(w):
        if letter == "a":
            yield ("a", 1)
        elif letter == "A":
            yield ("a", -1)
        elif letter == "t":
            yield ("t", 1)
        else:
            yield ("t", -1)


def beta(w) -> int:
    """Negated contribution of t; decreases by 1 for each trailing t."""
    total = 0
    for kind, value in _runs(w):
        if kind == "t":
            total -= value
    return total


def phi(params: BsParams, w) -> tuple[Fraction, int]:
    """The exact plane embedding (alpha(w), beta(w))."""
    ratio = params.ratio
    power = Fraction(1)  # (m/n) ** (-beta(prefix))
    a_val = Fraction(0)
    b_val = 0
    for kind, value in _runs(w):
        if kind == "a":
            a_val += value * power
        else:
            b_val -= value
            power = power * ratio if value > 0 else power / ratio
    return a_val, b_val


def alpha(params: BsParams, w) -> Fraction:
    return phi(params, w)[0]


def compose_alpha_check(params: BsParams, u, v) -> bool:
    """alpha(u v) == alpha(u) + (m/n)^(-beta(u)) alpha(v), exactly."""
    u, v = coerce_word(u), coerce_word(v)
    lhs = alpha(params, u + v)
    rhs = alpha(params, u) + params.ratio ** (-beta(u)) * alpha(params, v)
    return lhs == rhs


def lambda_val(params: BsParams, w) -> Fraction:
    """(1/m) (n/m)^(-beta) alpha, the scale parameter of the tile rows."""
    a_val, b_val = phi(params, w)
    return Fraction(1, params.m) * Fraction(params.n, params.m) ** (-b_val) * a_val


@dataclass(frozen=True)
class GroupElement:
    """Canonical (Britton-reduced) form of a BS(m,n) element.

    Stored as the alternating word  a^exps[0] s_1 a^exps[1] ... s_k a^exps[k]
    with stables[i-1] = +1 for t and -1 for t^-1.  Interior exponents are
    coset representatives; the final exponent is any integer.
    """

    exps: tuple[int, ...]
    stables: tuple[int, ...]

    def is_identity(self) -> bool:
        return not self.stables and self.exps == (0,)

    def length(self) -> int:
        """Letter count of the canonical word."""
        return sum(abs(e) for e in self.exps) + len(self.stables)

    def beta(self) -> int:
        return -sum(self.stables)

    def runs(self):
        yield ("a", self.exps[0])
        for sign, e in zip(self.stables, self.exps[1:]):
            yield ("t", sign)
            yield ("a", e)

    def to_word(self) -> GroupWord:
        letters: list[str] = []
        for kind, value in self.runs():
            if kind == "a":
                letters.extend(("a" if value > 0 else "A") * abs(value))
            elif value > 0:
                letters.append("t")
            else:
                letters.append("T")
        return tuple(letters)

    def to_text(self) -> str:
        return word_to_text(self.to_word())

    def sort_key(self):
        return (self.length(), len(self.stables), self.stables, self.exps)

    def __str__(self) -> str:
        return self.to_text()


IDENTITY_ELEMENT = GroupElement((0,), ())


def _push_a(exps: list[int], e: int) -> None:
    exps[-1] += e


def _push_stable(exps: list[int], stables: list[int], sign: int, m: int, n: int) -> None:
    # a^e t  = a^(e mod m) t a^(n floor(e/m));  a^e t^-1 symmetrically mod n.
    mod, out = (m, n) if sign > 0 else (n, m)
    q, r = divmod(exps[-1], mod)
    if r == 0 and stables and stables[-1] == -sign:
        # pinch: t^-1 a^(m q) t -> a^(n q), or t a^(n q) t^-1 -> a^(m q)
        stables.pop()
        exps.pop()
        exps[-1] += q * out
    else:
        exps[-1] = r
        stables.append(sign)
        exps.append(q * out)


def _reduce_runs(run_iter, m: int, n: int) -> GroupElement:
    exps: list[int] = [0]
    stables: list[int] = []
    for kind, value in run_iter:
        if kind == "a":
            _push_a(exps, value)
        else:
            step = 1 if value > 0 else -1
            for _ in range(abs(value)):
                _push_stable(exps, stables, step, m, n)
    return GroupElement(tuple(exps), tuple(stables))


def britton_reduce(params: BsParams, w) -> GroupElement:
    """Canonical form of the element represented by the word w."""
    return _reduce_runs(_runs(w), params.m, params.n)


def multiply(params: BsParams, g: GroupElement, h) -> GroupElement:
    """Product g * h on canonical forms; h may be an element or a word."""
    exps = list(g.exps)
    stables = list(g.stables)
    for kind, value in _runs(h):
        if kind == "a":
            _push_a(exps, value)
        else:
            _push_stable(exps, stables, value, params.m, params.n)
    return GroupElement(tuple(exps), tuple(stables))


def inverse(params: BsParams, g: GroupElement) -> GroupElement:
    def inverted():
        yield ("a", -g.exps[-1])
        for sign, e in zip(reversed(g.stables), reversed(g.exps[:-1])):
            yield ("t", -sign)
            yield ("a", -e)

    return _reduce_runs(inverted(), params.m, params.n)


def element_from_text(params: BsParams, text: str) -> GroupElement:
    return britton_reduce(params, parse_word(text))
