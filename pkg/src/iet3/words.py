"""Finite-word analytics: factors, complexity, balance, height sequences.

Words are thin immutable wrappers around ASCII strings with a declared
alphabet.  Complexity and balance are computed exhaustively over the
given finite window — the counts are exact, and a separate reliability
cutoff records how far the finite sample can be trusted as a census of
the underlying infinite word.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

import numpy as np

from .qfield import QuadraticNumber, as_quadratic

if TYPE_CHECKING:
    from .dynamics import IetParameters

__all__ = [
    "BINARY",
    "TERNARY",
    "BalanceReport",
    "ComplexityProfile",
    "HeightSeries",
    "SwapError",
    "SwapResult",
    "Word",
    "balance",
    "complexity",
    "e_sets",
    "height_f",
    "height_g",
    "imbalance_witness",
    "swap_transform",
]

TERNARY = ("A", "B", "C")
BINARY = ("0", "1")


class Word:
    """A finite word over a declared ordered alphabet."""

    __slots__ = ("letters", "alphabet")

    def __init__(self, letters, alphabet: Sequence[str] | None = None):
        if isinstance(letters, Word):
            text = letters.letters
            alphabet = alphabet or letters.alphabet
        elif isinstance(letters, str):
            text = letters
        else:
            text = "".join(letters)
        if alphabet is None:
            present = set(text)
            if present <= set(TERNARY):
                alphabet = TERNARY
            elif present <= set(BINARY):
                alphabet = BINARY
            else:
                raise ValueError(
                    f"cannot infer an alphabet for letters {sorted(present)!r}"
                )
        alphabet = tuple(alphabet)
        bad = set(text) - set(alphabet)
        if bad:
            raise ValueError(f"letters {sorted(bad)!r} outside alphabet {alphabet}")
        object.__setattr__(self, "letters", text)
        object.__setattr__(self, "alphabet", alphabet)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index], self.alphabet)
        return self.letters[index]

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        if isinstance(other, Word):
            return self.letters == other.letters and self.alphabet == other.alphabet
        if isinstance(other, str):
            return self.letters == other
        return NotImplemented

    def __hash__(self):
        return hash((self.letters, self.alphabet))

    def __str__(self):
        return self.letters

    def __repr__(self):
        shown = self.letters if len(self) <= 40 else self.letters[:37] + "..."
        return f"Word({shown!r}, alphabet={self.alphabet})"

    def count(self, letter: str) -> int:
        return self.letters.count(letter)

    def counts(self) -> dict[str, int]:
        return {a: self.letters.count(a) for a in self.alphabet}

    def count_vector(self) -> tuple[int, ...]:
        return tuple(self.letters.count(a) for a in self.alphabet)

    def factors(self, n: int) -> set[str]:
        """All distinct factors of length n occurring in the word."""
        text = self.letters
        return {text[i : i + n] for i in range(len(text) - n + 1)}

    def is_over(self, alphabet: Sequence[str]) -> bool:
        return set(self.letters) <= set(alphabet)


def _as_word(w, alphabet=None) -> Word:
    return w if isinstance(w, Word) and alphabet is None else Word(w, alphabet)


# -- factor complexity ---------------------------------------------------------


@dataclass(frozen=True)
class ComplexityProfile:
    """Exact factor counts C(n) of a finite sample, with a trust cutoff.

    ``reliable_up_to`` is the largest r such that the counts for every
    n <= r agree between the sampled word and its first half — lengths
    past the cutoff may still be undercounted by the finite window.
    """

    counts: tuple[int, ...]
    reliable_up_to: int

    def count(self, n: int) -> int:
        return self.counts[n]

    @property
    def n_max(self) -> int:
        return len(self.counts) - 1


def complexity(w, n_max: int) -> ComplexityProfile:
    """Count distinct factors of each length 0..n_max in the word."""
    w = _as_word(w)
    if n_max > len(w):
        raise ValueError(f"nMax {n_max} exceeds word length {len(w)}")
    text = w.letters
    counts = [1] + [len({text[i : i + n] for i in range(len(text) - n + 1)})
                    for n in range(1, n_max + 1)]
    half = text[: len(text) // 2]
    reliable = 0
    for n in range(1, min(n_max, len(half)) + 1):
        if len({half[i : i + n] for i in range(len(half) - n + 1)}) != counts[n]:
            break
        reliable = n
    return ComplexityProfile(tuple(counts), reliable)


# -- balance -------------------------------------------------------------------


@dataclass(frozen=True)
class BalanceReport:
    """Per-letter, per-length imbalance maxima over all factor pairs."""

    table: Mapping[str, tuple[int, ...]]
    window: int

    def imbalance(self, letter: str, n: int) -> int:
        return self.table[letter][n]

    @property
    def max_imbalance(self) -> int:
        return max((max(row) for row in self.table.values()), default=0)

    def is_k_balanced(self, k: int) -> bool:
        return self.max_imbalance <= k


def _letter_prefix_sums(w: Word) -> dict[str, np.ndarray]:
    arr = np.frombuffer(w.letters.encode("ascii"), dtype=np.uint8)
    return {
        a: np.concatenate(([0], np.cumsum(arr == ord(a), dtype=np.int64)))
        for a in w.alphabet
    }


def balance(w, n_max: int) -> BalanceReport:
    """Exhaustive imbalance maxima ||w|_a - |w'|_a| for lengths <= n_max."""
    w = _as_word(w)
    window = min(n_max, len(w))
    sums = _letter_prefix_sums(w)
    table = {}
    for a, s in sums.items():
        row = [0]
        for n in range(1, window + 1):
            counts = s[n:] - s[:-n]
            row.append(int(counts.max() - counts.min()))
        table[a] = tuple(row)
    return BalanceReport(table, window)


def imbalance_witness(w, letter: str, n: int) -> tuple[int, int, str, str]:
    """A factor pair of length n achieving the extreme counts of a letter.

    Returns (position_max, position_min, factor_max, factor_min).
    """
    w = _as_word(w)
    s = _letter_prefix_sums(w)[letter]
    counts = s[n:] - s[:-n]
    i = int(counts.argmax())
    j = int(counts.argmin())
    return i, j, w.letters[i : i + n], w.letters[j : j + n]


# -- height sequences ----------------------------------------------------------


@dataclass(frozen=True)
class HeightSeries:
    """Exact per-prefix heights, starting from the empty prefix at 0."""

    values: tuple[QuadraticNumber, ...]
    running_min: tuple[QuadraticNumber, ...]

    @property
    def minimum(self) -> QuadraticNumber:
        return self.running_min[-1]

    @property
    def maximum(self) -> QuadraticNumber:
        out = self.values[0]
        for v in self.values[1:]:
            if v > out:
                out = v
        return out

    @property
    def final(self) -> QuadraticNumber:
        return self.values[-1]

    @property
    def spread(self) -> QuadraticNumber:
        return self.maximum - self.minimum

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n: int) -> QuadraticNumber:
        return self.values[n]


def _height_series(letters: Iterable[str], steps: Mapping[str, QuadraticNumber]) -> HeightSeries:
    zero = QuadraticNumber(0)
    values = [zero]
    mins = [zero]
    h = zero
    low = zero
    for ch in letters:
        h = h + steps[ch]
        values.append(h)
        if h < low:
            low = h
        mins.append(low)
    return HeightSeries(tuple(values), tuple(mins))


def height_f(v, epsilon) -> HeightSeries:
    """Heights |V|_0*(1-e) - |V|_1*e of every prefix V of a binary word."""
    v = _as_word(v)
    if not v.is_over(BINARY):
        raise ValueError("height_f is defined for binary words")
    eps = as_quadratic(epsilon)
    return _height_series(v.letters, {"0": 1 - eps, "1": -eps})


def _translations(params) -> dict[str, QuadraticNumber]:
    eps = as_quadratic(getattr(params, "epsilon", params))
    return {"A": 1 - eps, "B": 1 - 2 * eps, "C": -eps}


def height_g(u, params) -> HeightSeries:
    """Per-prefix displacement sums |w|_A*t_A + |w|_B*t_B + |w|_C*t_C.

    When u codes the orbit of 0 under the three-interval exchange with
    the given parameters, the n-th value is exactly the n-th orbit point.
    """
    u = _as_word(u)
    if not u.is_over(TERNARY):
        raise ValueError("height_g is defined for ternary words")
    return _height_series(u.letters, _translations(params))


def e_sets(u, params) -> dict[str, tuple[QuadraticNumber, ...]]:
    """Sampled per-letter displacement sets.

    For each letter X, collects the height of the prefix preceding every
    occurrence of X — the orbit points about to be translated by t_X.
    """
    u = _as_word(u)
    series = height_g(u, params)
    out: dict[str, list[QuadraticNumber]] = {a: [] for a in TERNARY}
    for n, ch in enumerate(u.letters):
        out[ch].append(series[n])
    return {a: tuple(points) for a, points in out.items()}


# -- paired-index swap ---------------------------------------------------------


class SwapError(ValueError):
    """A swap position does not sit on a '01' pair."""


@dataclass(frozen=True)
class SwapResult:
    word: Word
    criterion_holds: bool | None


def swap_transform(v, positions: Iterable[int], epsilon=None) -> SwapResult:
    """Replace '01' by '10' at each given pair (p-1, p) of indices.

    Each position p must satisfy v[p-1] == '0' and v[p] == '1'; positions
    must be strictly increasing and non-adjacent.  When ``epsilon`` is
    supplied, also reports whether every swapped prefix height strictly
    exceeds every non-swapped one over the sampled window (the exact
    condition under which the swap preserves 1-balance).
    """
    v = _as_word(v)
    if not v.is_over(BINARY):
        raise ValueError("swap_transform is defined for binary words")
    positions = list(positions)
    previous = None
    letters = list(v.letters)
    for p in positions:
        if previous is not None and p <= previous:
            raise SwapError(f"positions not strictly increasing at {p}")
        if previous is not None and p - previous < 2:
            raise SwapError(f"adjacent swap pair at position {p}")
        if not 1 <= p < len(letters):
            raise SwapError(f"position {p} out of range")
        if letters[p - 1] != "0" or letters[p] != "1":
            raise SwapError(f"expected '01' at positions ({p - 1}, {p})")
        letters[p - 1], letters[p] = "1", "0"
        previous = p
    swapped = Word("".join(letters), BINARY)

    criterion = None
    if epsilon is not None:
        series = height_f(v, epsilon)
        marked = set(positions)
        swap_low = None
        other_high = None
        for i, value in enumerate(series.values):
            if i in marked:
                if swap_low is None or value < swap_low:
                    swap_low = value
            elif other_high is None or value > other_high:
                other_high = value
        criterion = (
            swap_low is None or other_high is None or swap_low > other_high
        )
    return SwapResult(swapped, criterion)
