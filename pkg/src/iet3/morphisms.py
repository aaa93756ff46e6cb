"""Morphisms of free monoids, incidence matrices, and exact spectra.

Incidence matrices follow the row convention: entry (i, j) counts the
letter a_j inside the image of a_i.  With that convention the counts of
an image word satisfy count(apply(m, w)) = count(w) @ M, and composition
satisfies M_{outer after inner} = M_inner @ M_outer — both identities are
pinned by tests rather than prose.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .qfield import QuadraticNumber, as_quadratic, sqrt_int
from .words import BINARY, TERNARY, Word

__all__ = [
    "IncidenceMatrix",
    "Morphism",
    "MorphismSyntaxError",
    "SIGMA",
    "SIGMA_PRIME",
    "SpectralClass",
    "compose",
    "find_expanding_letter",
    "fixed_point_prefix",
    "incidence",
    "is_primitive",
    "left_eigenvector",
    "spectral_class",
    "translation_image",
]


class MorphismSyntaxError(ValueError):
    """Malformed textual morphism."""


class Morphism:
    """A map of free monoids given by one image word per source letter."""

    __slots__ = ("images", "source", "target")

    def __init__(
        self,
        images: Mapping[str, str],
        source: Sequence[str] | None = None,
        target: Sequence[str] | None = None,
    ):
        source = tuple(source) if source is not None else tuple(images)
        if set(source) != set(images):
            raise ValueError("source alphabet must match the image table keys")
        for a, img in images.items():
            if not img:
                raise ValueError(f"empty image for letter {a!r}")
        if target is None:
            seen = {ch for img in images.values() for ch in img}
            if seen <= set(source):
                target = source
            else:
                for known in (TERNARY, BINARY):
                    if seen <= set(known):
                        target = known
                        break
                else:
                    target = tuple(sorted(seen))
        target = tuple(target)
        for a, img in images.items():
            bad = set(img) - set(target)
            if bad:
                raise ValueError(f"image of {a!r} uses letters {sorted(bad)!r} "
                                 f"outside target alphabet {target}")
        object.__setattr__(self, "images", dict(images))
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)

    def __setattr__(self, name, value):
        raise AttributeError("Morphism is immutable")

    @classmethod
    def from_text(cls, text: str) -> "Morphism":
        """Parse the form "A>AB;B>AC;C>A"."""
        images = {}
        order = []
        for part in text.split(";"):
            part = part.strip()
            if not part:
                raise MorphismSyntaxError(f"empty rule in {text!r}")
            if ">" not in part:
                raise MorphismSyntaxError(f"missing '>' in rule {part!r}")
            letter, _, image = part.partition(">")
            letter, image = letter.strip(), image.strip()
            if len(letter) != 1:
                raise MorphismSyntaxError(f"source must be one letter in {part!r}")
            if not image:
                raise MorphismSyntaxError(f"empty image in rule {part!r}")
            if letter in images:
                raise MorphismSyntaxError(f"duplicate rule for {letter!r}")
            images[letter] = image
            order.append(letter)
        return cls(images, source=order)

    def to_text(self) -> str:
        return ";".join(f"{a}>{self.images[a]}" for a in self.source)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"Morphism({self.to_text()!r})"

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.images == other.images
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash((tuple(sorted(self.images.items())), self.source, self.target))

    @property
    def is_endomorphism(self) -> bool:
        return set(self.target) <= set(self.source)

    def apply_text(self, text: str) -> str:
        images = self.images
        try:
            return "".join(images[ch] for ch in text)
        except KeyError as exc:
            raise ValueError(f"letter {exc.args[0]!r} outside source alphabet") from None

    def apply(self, w) -> Word:
        text = w.letters if isinstance(w, Word) else str(w)
        return Word(self.apply_text(text), self.target)

    __call__ = apply


SIGMA = Morphism({"A": "0", "B": "01", "C": "1"}, source=TERNARY, target=BINARY)
SIGMA_PRIME = Morphism({"A": "0", "B": "10", "C": "1"}, source=TERNARY, target=BINARY)


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """The morphism sending w to outer(inner(w))."""
    if set(inner.target) - set(outer.source):
        raise ValueError("inner target alphabet must embed in outer source alphabet")
    images = {a: outer.apply_text(inner.images[a]) for a in inner.source}
    return Morphism(images, source=inner.source, target=outer.target)


# -- incidence matrices -----------------------------------------------------------


class IncidenceMatrix:
    """Non-negative integer matrix of letter counts, rows indexed by source."""

    __slots__ = ("rows", "row_alphabet", "col_alphabet")

    def __init__(
        self,
        rows: Sequence[Sequence[int]],
        row_alphabet: Sequence[str] | None = None,
        col_alphabet: Sequence[str] | None = None,
    ):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if not rows or any(len(row) != len(rows[0]) for row in rows):
            raise ValueError("matrix rows must be non-empty and equal length")
        if any(x < 0 for row in rows for x in row):
            raise ValueError("incidence entries must be non-negative")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(
            self, "row_alphabet",
            tuple(row_alphabet) if row_alphabet else tuple(range(len(rows)))
        )
        object.__setattr__(
            self, "col_alphabet",
            tuple(col_alphabet) if col_alphabet else tuple(range(len(rows[0])))
        )

    def __setattr__(self, name, value):
        raise AttributeError("IncidenceMatrix is immutable")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def is_square(self) -> bool:
        n, m = self.shape
        return n == m

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, IncidenceMatrix):
            return self.rows == other.rows
        return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"IncidenceMatrix({[list(r) for r in self.rows]})"

    def __matmul__(self, other: "IncidenceMatrix") -> "IncidenceMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"dimension mismatch {self.shape} @ {other.shape}")
        rows = tuple(
            tuple(sum(self.rows[i][t] * other.rows[t][j] for t in range(k))
                  for j in range(m))
            for i in range(n)
        )
        return IncidenceMatrix(rows, self.row_alphabet, other.col_alphabet)

    def row_apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Row vector times matrix: (v @ M)."""
        n, m = self.shape
        if len(vector) != n:
            raise ValueError("vector length must match the row count")
        return tuple(
            sum(vector[i] * self.rows[i][j] for i in range(n)) for j in range(m)
        )

    def column_apply(self, vector: Sequence) -> tuple:
        """Matrix times column vector: (M @ v); exact over any field."""
        n, m = self.shape
        if len(vector) != m:
            raise ValueError("vector length must match the column count")
        vec = [as_quadratic(v) for v in vector]
        return tuple(
            sum((self.rows[i][j] * vec[j] for j in range(m)), QuadraticNumber(0))
            for i in range(n)
        )

    def determinant(self) -> int:
        if not self.is_square:
            raise ValueError("determinant requires a square matrix")
        n, _ = self.shape
        r = self.rows
        if n == 1:
            return r[0][0]
        if n == 2:
            return r[0][0] * r[1][1] - r[0][1] * r[1][0]
        if n == 3:
            return (
                r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
            )
        raise ValueError("determinant implemented for dimensions 1-3")

    def trace(self) -> int:
        if not self.is_square:
            raise ValueError("trace requires a square matrix")
        return sum(self.rows[i][i] for i in range(len(self.rows)))

    def charpoly(self) -> tuple[int, ...]:
        """Monic characteristic polynomial, coefficients ascending.

        Dimension 2: (det, -tr, 1); dimension 3: (-det, m2, -tr, 1) where
        m2 is the sum of the principal 2x2 minors.
        """
        if not self.is_square:
            raise ValueError("characteristic polynomial requires a square matrix")
        n, _ = self.shape
        r = self.rows
        if n == 2:
            return (self.determinant(), -self.trace(), 1)
        if n == 3:
            m2 = (
                r[1][1] * r[2][2] - r[1][2] * r[2][1]
                + r[0][0] * r[2][2] - r[0][2] * r[2][0]
                + r[0][0] * r[1][1] - r[0][1] * r[1][0]
            )
            return (-self.determinant(), m2, -self.trace(), 1)
        raise ValueError("characteristic polynomial implemented for dimensions 2-3")


def incidence(m: Morphism) -> IncidenceMatrix:
    """Letter counts of each image: entry (i, j) = count of a_j in m(a_i)."""
    rows = [
        [m.images[a].count(b) for b in m.target]
        for a in m.source
    ]
    return IncidenceMatrix(rows, m.source, m.target)


def is_primitive(matrix: IncidenceMatrix) -> bool:
    """Whether some power within the Wielandt bound is entrywise positive."""
    if not matrix.is_square:
        raise ValueError("primitivity requires a square matrix")
    n, _ = matrix.shape
    bound = (n - 1) ** 2 + 1
    power = matrix
    for _ in range(bound):
        if all(x > 0 for row in power.rows for x in row):
            return True
        power = power @ matrix
    return False


# -- fixed points -----------------------------------------------------------------


def find_expanding_letter(
    m: Morphism, max_power: int = 4
) -> tuple[str, int] | None:
    """A letter whose image under some small power starts with itself and grows.

    Returns (letter, power) with the smallest power, ties broken by source
    alphabet order; None when no letter qualifies.
    """
    if not m.is_endomorphism:
        return None
    current = {a: m.images[a] for a in m.source}
    for k in range(1, max_power + 1):
        for a in m.source:
            img = current[a]
            if len(img) >= 2 and img[0] == a:
                return a, k
        current = {a: m.apply_text(current[a]) for a in m.source}
    return None


def fixed_point_prefix(m: Morphism, seed: str | None = None, n: int = 1000) -> Word:
    """First n letters of the invariant word obtained by iterating from seed.

    The seed (or, when omitted, the first qualifying letter) must satisfy
    m^k(seed) = seed... for some power k within a small bound; iteration
    then extends the prefix until it reaches length n.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    found = find_expanding_letter(m)
    if seed is None:
        if found is None:
            raise ValueError("no expanding fixed letter")
        seed, power = found
    else:
        if seed not in m.source:
            raise ValueError(f"seed {seed!r} outside source alphabet")
        power = None
        current = m.images[seed]
        for k in range(1, 5):
            if len(current) >= 2 and current[0] == seed:
                power = k
                break
            current = m.apply_text(current)
        if power is None:
            raise ValueError(f"letter {seed!r} does not generate a fixed point")
    step = m
    for _ in range(power - 1):
        step = compose(m, step)
    text = seed
    while len(text) < n:
        grown = step.apply_text(text)
        if len(grown) == len(text):
            raise ValueError("growth stalls before reaching the requested length")
        text = grown
    return Word(text[:n], m.source)


# -- exact spectral classification ---------------------------------------------


@dataclass(frozen=True)
class SpectralClass:
    """Exact spectral data for a 2x2 or 3x3 non-negative integer matrix.

    classification is one of "rational", "quadratic-unit",
    "quadratic-nonunit", "cubic", describing the dominant eigenvalue.
    The dominant eigenvalue and its field conjugate are carried exactly
    whenever the degree is at most 2.
    """

    charpoly: tuple[int, ...]
    classification: str
    dominant: QuadraticNumber | None
    dominant_conjugate: QuadraticNumber | None
    integer_roots: tuple[int, ...]
    quadratic_factor: tuple[int, int] | None
    determinant: int

    @property
    def is_quadratic(self) -> bool:
        return self.classification.startswith("quadratic")


def _integer_roots(coeffs: Sequence[int]) -> tuple[list[int], list[int]]:
    """Integer roots (with multiplicity) of a monic integer polynomial.

    Returns (roots, remaining_coefficients); candidates are 0 and the
    divisors of the constant term, which is complete for monic integer
    polynomials.
    """
    coeffs = list(coeffs)
    roots = []
    while len(coeffs) > 1:
        constant = coeffs[0]
        if constant == 0:
            candidates = [0]
        else:
            candidates = []
            for k in range(1, abs(constant) + 1):
                if constant % k == 0:
                    candidates.extend((k, -k))
        for r in candidates:
            if sum(c * r**i for i, c in enumerate(coeffs)) == 0:
                # synthetic division by (x - r)
                quotient = [0] * (len(coeffs) - 1)
                acc = coeffs[-1]
                for i in range(len(coeffs) - 2, -1, -1):
                    quotient[i] = acc
                    acc = coeffs[i] + acc * r
                roots.append(r)
                coeffs = quotient
                break
        else:
            break
    return roots, coeffs


def spectral_class(matrix: IncidenceMatrix) -> SpectralClass:
    """Classify the dominant eigenvalue of a small integer matrix exactly.

    Rational roots are extracted by divisor enumeration; any remaining
    quadratic factor is solved in closed form.  For a non-negative matrix
    the spectral radius is itself an eigenvalue, so the dominant value is
    the largest real root.
    """
    n, _ = matrix.shape
    if not matrix.is_square or n not in (2, 3):
        raise ValueError("spectral classification requires a square 2x2 or 3x3 matrix")
    coeffs = matrix.charpoly()
    int_roots, remaining = _integer_roots(coeffs)
    real_roots: list[QuadraticNumber] = [QuadraticNumber(r) for r in int_roots]
    quadratic_factor = None
    quadratic_pair: tuple[QuadraticNumber, QuadraticNumber] | None = None
    if len(remaining) == 3:
        q, p, _ = remaining
        quadratic_factor = (q, p)
        disc = p * p - 4 * q
        if disc > 0:
            root = (sqrt_int(disc) - p) / 2
            quadratic_pair = (root, root.conjugate())
            real_roots.extend(quadratic_pair)
    elif len(remaining) == 4:
        # irreducible cubic: no rational or quadratic eigenvalues at all
        return SpectralClass(
            coeffs, "cubic", None, None, (), None, matrix.determinant()
        )

    dominant = real_roots[0]
    for root in real_roots[1:]:
        if root > dominant:
            dominant = root
    if dominant.radicand is None:
        classification = "rational"
        conjugate = None
    else:
        q, p = quadratic_factor
        classification = "quadratic-unit" if abs(q) == 1 else "quadratic-nonunit"
        conjugate = dominant.conjugate()
    return SpectralClass(
        coeffs,
        classification,
        dominant,
        conjugate,
        tuple(int_roots),
        quadratic_factor,
        matrix.determinant(),
    )


def left_eigenvector(matrix: IncidenceMatrix, eigenvalue) -> tuple[QuadraticNumber, ...]:
    """An exact nonzero row vector v with v @ M = eigenvalue * v.

    Valid for simple eigenvalues of 2x2 and 3x3 matrices (kernel of
    dimension one); computed by cross products of the rows of the
    transposed, shifted matrix.
    """
    lam = as_quadratic(eigenvalue)
    n, _ = matrix.shape
    if not matrix.is_square or n not in (2, 3):
        raise ValueError("eigenvectors implemented for square 2x2 and 3x3 matrices")
    # rows of (M^T - lam I)
    rows = [
        [QuadraticNumber(matrix.rows[j][i]) - (lam if i == j else 0) for j in range(n)]
        for i in range(n)
    ]
    if n == 2:
        for a, b in rows:
            if a != 0 or b != 0:
                return (-b, a)
        return (QuadraticNumber(1), QuadraticNumber(0))
    for i in range(3):
        for j in range(i + 1, 3):
            r, s = rows[i], rows[j]
            cross = (
                r[1] * s[2] - r[2] * s[1],
                r[2] * s[0] - r[0] * s[2],
                r[0] * s[1] - r[1] * s[0],
            )
            if any(c != 0 for c in cross):
                return cross
    raise ValueError("eigenvalue has a kernel of dimension above one")


def translation_image(matrix: IncidenceMatrix, params) -> tuple[QuadraticNumber, ...]:
    """The image M @ t of the translation vector t = (1-e, 1-2e, -e)."""
    if matrix.shape != (3, 3):
        raise ValueError("translation image requires a 3x3 matrix")
    eps = as_quadratic(getattr(params, "epsilon", params))
    t = (1 - eps, 1 - 2 * eps, -eps)
    return matrix.column_apply(t)
