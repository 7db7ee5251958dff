"""Leaper arithmetic: classification, even continued fractions, tails and the descent tree."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

TRANSFORMATIONS = ("f", "g", "h")


@dataclass(frozen=True, order=True)
class Leaper:
    """A (p, q)-leaper, stored with p <= q."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p < 0 or q < 0:
            raise ValueError(f"leaper parameters must be nonnegative, got ({p}, {q})")
        if p == 0 and q == 0:
            raise ValueError("leaper parameters cannot both be zero")
        if p > q:
            object.__setattr__(self, "p", q)
            object.__setattr__(self, "q", p)

    @property
    def is_skew(self) -> bool:
        return 0 < self.p < self.q

    @property
    def is_free(self) -> bool:
        return classify(self).kind == "free"

    @property
    def is_half_free(self) -> bool:
        return classify(self).kind == "half-free"

    def moves(self) -> tuple[tuple[int, int], ...]:
        """The distinct displacement vectors of one move."""
        p, q = self.p, self.q
        out = []
        for dx, dy in ((q, p), (p, q), (-p, q), (-q, p), (-q, -p), (-p, -q), (p, -q), (q, -p)):
            if (dx, dy) not in out:
                out.append((dx, dy))
        return tuple(out)

    def __str__(self):
        return f"({self.p},{self.q})"


WAZIR = Leaper(0, 1)
KNIGHT = Leaper(1, 2)
CAMEL = Leaper(1, 3)


@dataclass(frozen=True)
class FreenessClass:
    kind: str
    gcd: int
    component_count: int


def classify(leaper: Leaper) -> FreenessClass:
    d = gcd(leaper.p, leaper.q)
    odd = ((leaper.p + leaper.q) // d) % 2 == 1
    count = d * d if odd else 2 * d * d
    if d == 1:
        kind = "free" if odd else "half-free"
    else:
        kind = "non-relatively-prime"
    return FreenessClass(kind, d, count)


def mmod(s: int, t: int) -> int:
    """Distance from s to the nearest multiple of t."""
    if t < 1:
        raise ValueError("modulus must be positive")
    r = s % t
    return min(r, t - r)


@dataclass(frozen=True)
class Ecf:
    """Even continued fraction q/p = [c_k, e_{k-1}, ..., e_1, c_1].

    ``coefficients`` holds c_1..c_k and ``signs`` holds e_1..e_{k-1}, both
    indexed from the innermost term outwards.
    """

    coefficients: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("an ecf needs at least one coefficient")
        if len(self.signs) != len(self.coefficients) - 1:
            raise ValueError("need exactly one sign between consecutive coefficients")
        if any(e not in (-1, 1) for e in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def depth(self) -> int:
        return len(self.coefficients)

    @property
    def half_free(self) -> bool:
        return self.coefficients[0] % 2 == 1

    def value(self) -> Fraction:
        return self.suffix_value(self.depth)

    def suffix_value(self, i: int) -> Fraction:
        """Evaluate the suffix [c_i, e_{i-1}, ..., c_1] exactly."""
        if not 1 <= i <= self.depth:
            raise IndexError(i)
        num, den = self.suffix_pairs()[i - 1]
        return Fraction(num, den)

    def suffix_pairs(self) -> list[tuple[int, int]]:
        """Numerator and denominator of every suffix value, innermost first.

        The recurrence c + e/(a/b) = (c*a + e*b)/a keeps each pair in lowest terms.
        """
        num, den = self.coefficients[0], 1
        out = [(num, den)]
        for c, e in zip(self.coefficients[1:], self.signs):
            num, den = c * num + e * den, num
            out.append((num, den))
        return out

    def tokens(self) -> list[int]:
        """Outermost-first listing: [c_k, e_{k-1}, ..., e_1, c_1]."""
        out = []
        for j in range(self.depth - 1, -1, -1):
            out.append(self.coefficients[j])
            if j:
                out.append(self.signs[j - 1])
        return out

    def __str__(self):
        parts = []
        for i, t in enumerate(self.tokens()):
            parts.append(("+1" if t > 0 else "-1") if i % 2 else str(t))
        return "[" + ", ".join(parts) + "]"


def _require_skew_tree_member(leaper: Leaper) -> str:
    """Return 'free' or 'half-free' for leapers that live in one of the descent trees."""
    if not leaper.is_skew:
        raise ValueError(f"{leaper} is not skew")
    kind = classify(leaper).kind
    if kind == "non-relatively-prime":
        raise ValueError(f"{leaper} has relatively non-prime parameters")
    return kind


def lift_leaper(leaper: Leaper, t: str) -> Leaper:
    p, q = leaper.p, leaper.q
    if t == "f":
        return Leaper(p, 2 * p + q)
    if t == "g":
        return Leaper(q, 2 * q - p)
    if t == "h":
        return Leaper(q, p + 2 * q)
    raise ValueError(f"unknown transformation {t!r}")


def parent_and_type(leaper: Leaper) -> tuple[Leaper, str] | None:
    """The parent in the descent tree and the transformation leading from it.

    Returns None at the roots: the knight in the free tree, the camel in the
    half-free tree.
    """
    _require_skew_tree_member(leaper)
    return _parent_step(leaper)


def _parent_step(leaper: Leaper) -> tuple[Leaper, str] | None:
    # lowering keeps a tree member inside its tree, so callers validate once
    step = _lower_pair(leaper.p, leaper.q)
    return None if step is None else (Leaper(step[0], step[1]), step[2])


def _lower_pair(p: int, q: int) -> tuple[int, int, str] | None:
    if (p, q) in ((1, 2), (1, 3)):
        return None
    if 3 * p < q:
        return p, q - 2 * p, "f"
    if 2 * p > q:
        return 2 * p - q, p, "g"
    return q - 2 * p, p, "h"


def _chain(leaper: Leaper) -> tuple[Leaper, list[str]]:
    """Walk up to the root; return the root and the transformation letters, most recent first."""
    _require_skew_tree_member(leaper)
    letters = []
    p, q = leaper.p, leaper.q
    while True:
        step = _lower_pair(p, q)
        if step is None:
            return (KNIGHT if q == 2 else CAMEL), letters
        p, q, t = step
        letters.append(t)


def descent(leaper: Leaper) -> str:
    return "".join(_chain(leaper)[1])


def leaper_of(word: str, half_free: bool = False) -> Leaper:
    cur = CAMEL if half_free else KNIGHT
    for t in reversed(word):
        cur = lift_leaper(cur, t)
    return cur


def ecf(leaper: Leaper) -> Ecf:
    root, letters = _chain(leaper)
    coeffs = [3 if root == CAMEL else 2]
    signs: list[int] = []
    for t in reversed(letters):
        if t == "f":
            coeffs[-1] += 2
        else:
            signs.append(-1 if t == "g" else 1)
            coeffs.append(2)
    return Ecf(tuple(coeffs), tuple(signs))


def descent_from_ecf(e: Ecf) -> str:
    """Substitute f^(c/2 - 1) for each coefficient and g/h for each sign."""
    word = []
    tokens = e.tokens()
    for i, tok in enumerate(tokens):
        if i % 2:
            word.append("g" if tok < 0 else "h")
        elif i == len(tokens) - 1 and tok % 2:
            word.append("f" * ((tok - 3) // 2))
        else:
            word.append("f" * (tok // 2 - 1))
    return "".join(word)


def tails(leaper: Leaper) -> list[Leaper]:
    """Tails of a skew free or half-free leaper.

    For a free leaper this is [L_0, ..., L_k] with the wazir as L_0. A half-free
    leaper has no zeroth tail, so its list starts at the first tail.
    """
    kind = _require_skew_tree_member(leaper)
    e = ecf(leaper)
    out = [WAZIR] if kind == "free" else []
    out.extend(Leaper(den, num) for num, den in e.suffix_pairs())
    return out


def tree_children(leaper: Leaper) -> tuple[Leaper, Leaper, Leaper]:
    return tuple(lift_leaper(leaper, t) for t in TRANSFORMATIONS)


@dataclass(frozen=True)
class TreeEntry:
    leaper: Leaper
    depth: int
    descent: str
    ecf: Ecf


def tree_enumerate(bound: int, half_free: bool = False) -> list[TreeEntry]:
    """All skew free (or half-free) leapers with p + q <= bound, sorted by (p+q, p)."""
    root = CAMEL if half_free else KNIGHT
    found = []
    stack: list[tuple[Leaper, str]] = [(root, "")]
    while stack:
        cur, word = stack.pop()
        if cur.p + cur.q > bound:
            continue
        found.append(TreeEntry(cur, len(word), word, ecf(cur)))
        for t in TRANSFORMATIONS:
            stack.append((lift_leaper(cur, t), t + word))
    found.sort(key=lambda e: (e.leaper.p + e.leaper.q, e.leaper.p))
    return found

