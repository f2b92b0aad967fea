"""Exact scalars and exact linear algebra over the Gaussian rationals Q(i).

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator). :class:`GaussianRational` pairs two of them.

Rank and determinant use fraction-free (Bareiss) elimination: each row is
first scaled by the lcm of its denominators so the working matrix lives in
the Gaussian integers Z[i], and every division performed afterwards is an
exact division in Z[i].
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError

Rational = Fraction


def rational_to_text(q: Fraction) -> str:
    return str(q)


def rational_from_text(text) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str) or not re.fullmatch(r"\s*[+-]?\d+(\s*/\s*\d+)?\s*", text):
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(text.replace(" ", ""))


class GaussianRational:
    """Complex number ``re + im*i`` with rational parts. Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, str):
            return cls.parse(value)
        return cls(value, 0)

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"3"``, ``"1/2"``, ``"-i"``, ``"2/3i"``, ``"1-5/2i"`` and similar."""
        body = text.replace(" ", "")
        try:
            if not body.endswith("i"):
                return cls(rational_from_text(body), 0)
            coeff = body[:-1]
            split = max(coeff.rfind("+"), coeff.rfind("-"))
            real_text, imag_text = (coeff[:split], coeff[split:]) if split > 0 else ("0", coeff)
            if imag_text in ("", "+", "-"):
                imag_text += "1"
            return cls(rational_from_text(real_text), rational_from_text(imag_text))
        except ValueError:
            raise ValueError(f"not a Gaussian rational: {text!r}") from None

    # arithmetic

    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n, (self.im * o.re - self.re * o.im) / n
        )

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus ``re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    # comparison / hashing

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        else:
            imag = f"{self.im}i"
        if self.re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, dict):
            extra = set(obj) - {"re", "im"}
            if extra:
                raise ValueError(f"unexpected keys {sorted(extra)}")
            return cls(rational_from_text(obj.get("re", "0")), rational_from_text(obj.get("im", "0")))
        if isinstance(obj, str):
            return cls.parse(obj)
        if isinstance(obj, int) and not isinstance(obj, bool):
            return cls(obj)
        raise ValueError(f"cannot read a Gaussian rational from {obj!r}")


def _coerce_or_none(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value, 0)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


@dataclass(frozen=True)
class Mat:
    """Dense row-major matrix of Gaussian rationals."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimension")
        entries = tuple(GaussianRational.coerce(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "Mat":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, 0, ())
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Mat":
        return Mat.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)]) \
            if self.rows and self.cols else Mat(self.cols, self.rows, ())

    def is_zero(self) -> bool:
        return not any(self.entries)

    def scale(self, c) -> "Mat":
        c = GaussianRational.coerce(c)
        return Mat(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Mat(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + other.scale(-1)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    if r[k]:
                        acc = acc + r[k] * other.entries[k * other.cols + j]
                out.append(acc)
        return Mat(self.rows, other.cols, tuple(out))

    def norm2(self) -> Fraction:
        """Sum of squared moduli of all entries (squared Frobenius norm)."""
        return sum((x.abs2() for x in self.entries), Fraction(0))

    def to_json(self) -> list:
        return [[x.to_json() for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, rows) -> "Mat":
        return cls.from_rows([[GaussianRational.from_json(x) for x in r] for r in rows])

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]"
                               for i in range(self.rows)) + "]"


def lincomb(coeffs: Sequence, mats: Sequence[Mat]) -> Mat:
    """Return ``sum(c_k * mats[k])``; all matrices must share a shape."""
    if len(coeffs) != len(mats):
        raise DimensionError(f"{len(coeffs)} coefficients for {len(mats)} matrices")
    if not mats:
        raise DimensionError("empty linear combination has no shape")
    shape = mats[0].shape
    acc = [ZERO] * (shape[0] * shape[1])
    for c, m in zip(coeffs, mats):
        if m.shape != shape:
            raise DimensionError(f"shape mismatch: {m.shape} vs {shape}")
        c = GaussianRational.coerce(c)
        if not c:
            continue
        for idx, x in enumerate(m.entries):
            if x:
                acc[idx] = acc[idx] + c * x
    return Mat(shape[0], shape[1], tuple(acc))


def stack_vec(basis: Sequence[Mat]) -> Mat:
    """Stack the row-major flattening of each matrix as one row."""
    if not basis:
        return Mat(0, 0, ())
    shape = basis[0].shape
    for m in basis:
        if m.shape != shape:
            raise DimensionError(f"shape mismatch: {m.shape} vs {shape}")
    return Mat(len(basis), shape[0] * shape[1], tuple(x for m in basis for x in m.entries))


# fraction-free elimination over Z[i]; Gaussian integers are (re, im) int pairs

def _gi_exact_div(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    re_num = a[0] * b[0] + a[1] * b[1]
    im_num = a[1] * b[0] - a[0] * b[1]
    q_re, r_re = divmod(re_num, n)
    q_im, r_im = divmod(im_num, n)
    if r_re or r_im:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return (q_re, q_im)


def _integral_rows(m: Mat):
    """Scale each row into Z[i]; return (rows, product of the row scales)."""
    rows = []
    scale = 1
    for i in range(m.rows):
        r = m.row(i)
        den = 1
        for x in r:
            den = math.lcm(den, x.re.denominator, x.im.denominator)
        rows.append([((x.re * den).numerator, (x.im * den).numerator) for x in r])
        scale *= den
    return rows, scale


def _bareiss(rows, ncols):
    """Fraction-free row echelon reduction in place.

    Pivot is the first nonzero entry, scanning columns left to right and rows
    top to bottom. Returns ``(rank, sign, last_pivot)``; for a square
    nonsingular input ``sign * last_pivot`` is its determinant.
    """
    nrows = len(rows)
    prev = (1, 0)
    r = 0
    sign = 1
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if rows[k][c] != (0, 0)), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
            sign = -sign
        pr, pi_ = rows[r][c]
        prow = rows[r]
        for k in range(r + 1, nrows):
            row = rows[k]
            fr, fi = row[c]
            for j in range(c + 1, ncols):
                a_r, a_i = row[j]
                b_r, b_i = prow[j]
                # piv * a - f * b
                num = (pr * a_r - pi_ * a_i - (fr * b_r - fi * b_i),
                       pr * a_i + pi_ * a_r - (fr * b_i + fi * b_r))
                row[j] = num if prev == (1, 0) else _gi_exact_div(num, prev)
            row[c] = (0, 0)
        prev = (pr, pi_)
        r += 1
    return r, sign, prev


def rank_exact(m: Mat) -> int:
    """Exact rank over the complex field."""
    if m.rows == 0 or m.cols == 0:
        return 0
    rows, _ = _integral_rows(m)
    rank, _, _ = _bareiss(rows, m.cols)
    return rank


def det_exact(m: Mat) -> GaussianRational:
    """Exact determinant of a square matrix (1 for the empty matrix)."""
    if m.rows != m.cols:
        raise DimensionError(f"determinant of non-square {m.rows}x{m.cols} matrix")
    if m.rows == 0:
        return ONE
    rows, scale = _integral_rows(m)
    rank, sign, last = _bareiss(rows, m.cols)
    if rank < m.rows:
        return ZERO
    return GaussianRational(Fraction(sign * last[0], scale), Fraction(sign * last[1], scale))


def as_mats(items: Iterable) -> list:
    return [x if isinstance(x, Mat) else Mat.from_rows(x) for x in items]
