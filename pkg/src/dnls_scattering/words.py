"""Exact word calculus for ordered iterated integrals.

A word over the alphabet {X, Y} stands for an iterated integral over an ordered
domain: each ``X`` is an integration variable x_k (carrying q*), each ``Y`` a
variable y_k (carrying q), and the letters read left to right give the order of
the variables on the real line.  Pointwise products of such integrals are shuffle
products of words, and deconcatenation makes the span of admissible words a
graded connected Hopf algebra.

Everything here is exact: coefficients are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import AdmissibilityError

Word = str
Tensor = dict  # (Word, Word) -> Fraction
Number = Union[int, Fraction]

UNIT_TOKEN = "1"
_ALPHABET = frozenset("XY")


def as_word(letters: Union[str, Sequence[str]]) -> Word:
    word = "".join(letters)
    bad = set(word) - _ALPHABET
    if bad:
        raise AdmissibilityError(f"letters {sorted(bad)} are not in the alphabet {{X, Y}}")
    return word


def is_admissible(letters: Union[str, Sequence[str]]) -> bool:
    """True iff every prefix has at least as many X as Y and the counts agree."""
    height = 0
    for letter in letters:
        if letter == "X":
            height += 1
        elif letter == "Y":
            height -= 1
            if height < 0:
                return False
        else:
            return False
    return height == 0


def _require_admissible(word: Word) -> Word:
    word = as_word(word)
    if not is_admissible(word):
        raise AdmissibilityError(f"word {word!r} violates the ordering condition x_k < y_k")
    return word


def degree(word: Word) -> int:
    return len(word) // 2


def heights(word: Word) -> list[int]:
    """Running (#X - #Y) after each letter."""
    out, h = [], 0
    for letter in word:
        h += 1 if letter == "X" else -1
        out.append(h)
    return out


def pair(word: Word) -> dict[int, int]:
    """Match each X with a later Y by parenthesis matching (1-indexed positions)."""
    word = _require_admissible(word)
    stack: list[int] = []
    matches: dict[int, int] = {}
    for pos, letter in enumerate(word, start=1):
        if letter == "X":
            stack.append(pos)
        else:
            matches[stack.pop()] = pos
    return dict(sorted(matches.items()))


def is_connected(word: Word) -> bool:
    """True iff the first X is paired with the last Y."""
    matches = pair(word)
    if not word:
        return False
    return matches[1] == len(word)


def dyck_words(deg: int) -> list[Word]:
    """All admissible words of half-length ``deg``, lexicographically sorted."""
    out: list[Word] = []

    def grow(prefix: str, opened: int, closed: int) -> None:
        if opened == closed == deg:
            out.append(prefix)
            return
        if opened < deg:
            grow(prefix + "X", opened + 1, closed)
        if closed < opened:
            grow(prefix + "Y", opened, closed + 1)

    grow("", 0, 0)
    return sorted(out)


@lru_cache(maxsize=None)
def _shuffle_words(a: Word, b: Word) -> tuple[tuple[Word, int], ...]:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    acc: dict[Word, int] = defaultdict(int)
    for w, c in _shuffle_words(a[1:], b):
        acc[a[0] + w] += c
    for w, c in _shuffle_words(a, b[1:]):
        acc[b[0] + w] += c
    return tuple(sorted(acc.items()))


class WordSeries(Mapping):
    """Finite formal linear combination of words with rational coefficients.

    Immutable.  Zero coefficients are never stored; iteration is lexicographic.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[Word, Number], Iterable[tuple[Word, Number]], None] = None):
        acc: dict[Word, Fraction] = defaultdict(Fraction)
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                acc[as_word(w)] += Fraction(c)
        self._terms = {w: acc[w] for w in sorted(acc) if acc[w] != 0}
        self._hash = None

    @classmethod
    def word(cls, w: Word, coeff: Number = 1) -> "WordSeries":
        return cls({w: coeff})

    @classmethod
    def one(cls) -> "WordSeries":
        return cls({"": 1})

    @classmethod
    def zero(cls) -> "WordSeries":
        return cls()

    # Mapping protocol
    def __getitem__(self, w: Word) -> Fraction:
        return self._terms.get(w, Fraction(0))

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __contains__(self, w: object) -> bool:
        return w in self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, WordSeries):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self == WordSeries(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"WordSeries({self.pretty()})"

    # linear structure
    def __add__(self, other: "WordSeries") -> "WordSeries":
        return WordSeries(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "WordSeries":
        return WordSeries({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: "WordSeries") -> "WordSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, WordSeries):
            return self.shuffle(other)
        if isinstance(other, (int, Fraction)):
            return WordSeries({w: c * other for w, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def shuffle(self, other: "WordSeries", max_degree: int | None = None) -> "WordSeries":
        acc: dict[Word, Fraction] = defaultdict(Fraction)
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                if max_degree is not None and degree(a) + degree(b) > max_degree:
                    continue
                for w, m in _shuffle_words(a, b):
                    acc[w] += ca * cb * m
        return WordSeries(acc)

    # grading
    @property
    def degrees(self) -> list[int]:
        return sorted({degree(w) for w in self._terms})

    def graded(self, deg: int) -> "WordSeries":
        return WordSeries({w: c for w, c in self._terms.items() if len(w) == 2 * deg})

    def truncate(self, max_degree: int) -> "WordSeries":
        return WordSeries({w: c for w, c in self._terms.items() if len(w) <= 2 * max_degree})

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    # serialisation
    def to_text(self) -> str:
        """One ``<num>/<den> <word>`` line per term, words in lexicographic order."""
        lines = []
        for w, c in self._terms.items():
            lines.append(f"{c.numerator}/{c.denominator} {w or UNIT_TOKEN}")
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text: str) -> "WordSeries":
        terms = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            coeff, w = line.split()
            terms.append(("" if w == UNIT_TOKEN else w, Fraction(coeff)))
        return cls(terms)

    def pretty(self) -> str:
        """Human-readable sum, e.g. ``4 XXYXYY + 12 XXXYYY`` (reverse lexicographic)."""
        if not self._terms:
            return "0"
        parts = []
        for w in sorted(self._terms, reverse=True):
            c = self._terms[w]
            parts.append(f"{c} {w or UNIT_TOKEN}")
        return " + ".join(parts).replace("+ -", "- ")


def shuffle(a: Union[Word, WordSeries], b: Union[Word, WordSeries]) -> WordSeries:
    """Shuffle product of two admissible words (or series of admissible words)."""
    sa = a if isinstance(a, WordSeries) else WordSeries.word(_require_admissible(a))
    sb = b if isinstance(b, WordSeries) else WordSeries.word(_require_admissible(b))
    for w in list(sa) + list(sb):
        _require_admissible(w)
    return sa.shuffle(sb)


def coproduct(word: Union[Word, WordSeries], admissible_only: bool = False) -> Tensor:
    """Deconcatenation coproduct as a map ``(left, right) -> coefficient``.

    With ``admissible_only`` only cuts whose two factors are both admissible are
    kept.  On admissible words this restricted coproduct is still a shuffle
    algebra morphism, and it is the one under which the word series of s11 is
    group-like.
    """
    series = word if isinstance(word, WordSeries) else WordSeries.word(as_word(word))
    out: dict[tuple[Word, Word], Fraction] = defaultdict(Fraction)
    for w, c in series.items():
        for cut in range(len(w) + 1):
            left, right = w[:cut], w[cut:]
            if admissible_only and not (is_admissible(left) and is_admissible(right)):
                continue
            out[(left, right)] += c
    return {k: v for k, v in sorted(out.items()) if v != 0}


def tensor(a: WordSeries, b: WordSeries, max_degree: int | None = None) -> Tensor:
    out: dict[tuple[Word, Word], Fraction] = {}
    for u, cu in a.items():
        for v, cv in b.items():
            if max_degree is not None and degree(u) + degree(v) > max_degree:
                continue
            out[(u, v)] = cu * cv
    return {k: v for k, v in sorted(out.items()) if v != 0}


def tensor_shuffle(s: Tensor, t: Tensor) -> Tensor:
    """Product in the tensor square: (a⊗b)(c⊗d) = (a⧢c)⊗(b⧢d), any words."""
    out: dict[tuple[Word, Word], Fraction] = defaultdict(Fraction)
    for (a, b), c1 in s.items():
        for (c, d), c2 in t.items():
            for w1, m1 in _shuffle_words(a, c):
                for w2, m2 in _shuffle_words(b, d):
                    out[(w1, w2)] += c1 * c2 * m1 * m2
    return {k: v for k, v in sorted(out.items()) if v != 0}


def strict_word(deg: int) -> Word:
    """The word (XY)^(deg) = XYXY...XY."""
    return "XY" * deg


def s11_series(max_degree: int) -> WordSeries:
    """Sum of (XY)^(j) for j = 0..max_degree (the grade-j sign (-lambda^2)^j is left to callers)."""
    return WordSeries({strict_word(j): 1 for j in range(max_degree + 1)})


def _power_series_apply(x: WordSeries, coeffs: Sequence[Fraction], max_degree: int) -> WordSeries:
    """sum_k coeffs[k] * x^k (shuffle powers), truncated at ``max_degree``; x has no unit term."""
    result = WordSeries.zero()
    power = WordSeries.one()
    for k, c in enumerate(coeffs):
        if k > 0:
            power = power.shuffle(x, max_degree=max_degree)
            if not power:
                break
        if c:
            result = result + power * c
    return result


def shuffle_log(series: WordSeries, max_degree: int) -> WordSeries:
    """ln(series) with respect to the shuffle product; series must have unit constant term."""
    if series[""] != 1:
        raise ValueError("logarithm needs constant term 1")
    x = series.truncate(max_degree) - WordSeries.one()
    coeffs = [Fraction(0)] + [Fraction((-1) ** (k - 1), k) for k in range(1, max_degree + 1)]
    return _power_series_apply(x, coeffs, max_degree)


def shuffle_exp(series: WordSeries, max_degree: int) -> WordSeries:
    """exp(series) with respect to the shuffle product; series must have zero constant term."""
    if series[""] != 0:
        raise ValueError("exponential needs zero constant term")
    coeffs = [Fraction(1, math.factorial(k)) for k in range(max_degree + 1)]
    return _power_series_apply(series.truncate(max_degree), coeffs, max_degree)


def log_series(max_degree: int) -> list[WordSeries]:
    """Word coefficients of ln s11, one homogeneous series per degree 1..max_degree.

    Entry ``j-1`` is the series L_j with b_{2j}(lambda) = -lambda^{2j} L_j, so that
    L_1 = XY, L_2 = 2 XXYY, L_3 = 4 XXYXYY + 12 XXXYYY.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    # s11 = sum_j t^j (XY)^(j) with t = -lambda^2; ln is graded, so the t^j factor
    # of grade j is restored afterwards: b_2j = t^j [ln]_j = -lambda^{2j} L_j.
    log = shuffle_log(s11_series(max_degree), max_degree)
    return [log.graded(j) * (-((-1) ** j)) for j in range(1, max_degree + 1)]


def is_group_like(series: WordSeries, max_degree: int) -> bool:
    """Check Δ(series) = series ⊗ series through total degree ``max_degree`` (admissible cuts)."""
    g = series.truncate(max_degree)
    return coproduct(g, admissible_only=True) == tensor(g, g, max_degree=max_degree)


def is_primitive(series: WordSeries) -> bool:
    """Check Δp = 1⊗p + p⊗1 under the admissible-cut coproduct."""
    if series[""] != 0:
        return False
    expected: dict[tuple[Word, Word], Fraction] = defaultdict(Fraction)
    for w, c in series.items():
        expected[("", w)] += c
        expected[(w, "")] += c
    expected = {k: v for k, v in sorted(expected.items()) if v != 0}
    return coproduct(series, admissible_only=True) == expected


# --------------------------------------------------------------------------
# large-lambda expansion coefficients of connected word integrals
# --------------------------------------------------------------------------

def _integrate_tail(fn: dict[tuple[int, int], Fraction]) -> dict[tuple[int, int], Fraction]:
    """s -> int_s^inf f(sigma) d sigma for f = sum c sigma^a e^{-b sigma}, b > 0."""
    out: dict[tuple[int, int], Fraction] = defaultdict(Fraction)
    for (a, b), c in fn.items():
        if b <= 0:
            raise AdmissibilityError("divergent tail: word is not connected")
        fa = math.factorial(a)
        for i in range(a + 1):
            out[(i, b)] += c * Fraction(fa, math.factorial(i)) / Fraction(b) ** (a - i + 1)
    return out


def _coefficient(word: Word, orders: Sequence[int]) -> Fraction:
    fn: dict[tuple[int, int], Fraction] = {(0, 0): Fraction(1)}
    for letter, m in zip(reversed(word[1:]), reversed(orders[1:])):
        rate_shift = -1 if letter == "X" else 1
        scaled = {(a + m, b + rate_shift): c / math.factorial(m) for (a, b), c in fn.items()}
        fn = _integrate_tail(scaled)
    if orders[0] != 0:
        return Fraction(0)
    # evaluate at sigma_1 = 0: only the sigma^0 terms survive
    return sum((c for (a, _), c in fn.items() if a == 0), Fraction(0))


def asymptotic_coefficients(word: Word, order: int) -> dict[tuple[int, ...], Fraction]:
    """Exact Taylor-moment coefficients c_m of a connected word at total order ``order``.

    With kappa = -2i lambda^2 and slot functions q* (X) / q (Y), the word integral
    T_w(lambda) = lambda^{2j} * int_w ... behaves like

        sum_l lambda^{2j} kappa^{1-2j-l} sum_{|m|=l} c_m int prod_i d^{m_i} slot_i(x) dx,

    where c_m = (1/m!) int_{0=s_1<s_2<...<s_2j} exp(sum_X s - sum_Y s) prod s_i^{m_i}.
    Keys are per-letter derivative orders m (m_1 is always 0).
    """
    word = _require_admissible(word)
    if not is_connected(word):
        raise AdmissibilityError(f"word {word!r} is not connected")
    n = len(word)
    out: dict[tuple[int, ...], Fraction] = {}
    for tail in product(range(order + 1), repeat=n - 1):
        if sum(tail) != order:
            continue
        orders = (0,) + tail
        c = _coefficient(word, orders)
        if c:
            out[orders] = c
    return out
