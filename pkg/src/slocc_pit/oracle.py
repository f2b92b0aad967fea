"""Exact, exponential-cost decision procedures used as ground truth.

Two independent routes decide whether span(basis) contains a matrix of
rank >= d:

* :func:`minors_all_zero` expands every d x d minor of the symbolic matrix
  u_1 T_1 + ... + u_n T_n and checks it is the zero polynomial;
* :func:`grid_decide` evaluates the exact rank at every point of the real
  integer grid {0, ..., d}^n. A nonzero polynomial with degree <= d in each
  variable cannot vanish on the whole grid, so this is also exact.

Both refuse inputs over the soft limits below instead of running forever.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb
from typing import Sequence

from .errors import DimensionError, InstanceTooLargeError, InvalidInstanceError
from .linalg import ONE, ZERO, GaussianRational, lincomb, rank_exact
from .states import SubspaceBasis

MAX_MINOR_SIZE = 12
MAX_VARIABLES = 8
MAX_MINORS = 5000
MAX_GRID_POINTS = 250_000


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables with Gaussian rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients; the zero
    polynomial has no terms. Variables are 0-based here.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars:
                    raise DimensionError(f"exponent {exps} has wrong length for {nvars} variables")
                c = GaussianRational.coerce(c)
                if c:
                    self.terms[exps] = self.terms.get(exps, ZERO) + c
                    if not self.terms[exps]:
                        del self.terms[exps]

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, index: int, nvars: int, coeff=ONE) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise DimensionError(f"variable {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): coeff})

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    def _check(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return MultiPoly.constant(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return None
        if other.nvars != self.nvars:
            raise DimensionError(f"variable counts differ: {self.nvars} vs {other.nvars}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, ZERO) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, ZERO) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return MultiPoly._raw(self.nvars, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._check(other) if not isinstance(other, MultiPoly) else other
        if other is None:
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exps) -> GaussianRational:
        return self.terms.get(tuple(exps), ZERO)

    def evaluate(self, point: Sequence) -> GaussianRational:
        if len(point) != self.nvars:
            raise DimensionError(f"need {self.nvars} values, got {len(point)}")
        point = [GaussianRational.coerce(x) for x in point]
        acc = ZERO
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            acc = acc + t
        return acc

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(f"({c})")
            elif c == ONE:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def poly_det_symbolic(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a square polynomial matrix by cofactor expansion.

    Expands along rows top to bottom, memoizing the minor on each remaining
    column set, which costs O(2^n * n) polynomial products instead of n!.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError("determinant of non-square matrix")
    if n == 0:
        raise DimensionError("determinant of an empty polynomial matrix has no variable count")
    nvars = m[0][0].nvars
    if any(x.nvars != nvars for row in m for x in row):
        raise DimensionError("entries disagree on variable count")

    memo = {}

    def minor(r, cols):
        if r == n:
            return MultiPoly.constant(ONE, nvars)
        hit = memo.get(cols)
        if hit is not None:
            return hit
        acc = MultiPoly.zero(nvars)
        pos = 0
        for c in range(n):
            if not cols >> c & 1:
                continue
            entry = m[r][c]
            if entry.terms:
                sub = minor(r + 1, cols & ~(1 << c))
                if sub.terms:
                    term = entry * sub
                    acc = acc - term if pos & 1 else acc + term
            pos += 1
        memo[cols] = acc
        return acc

    return minor(0, (1 << n) - 1)


def symbolic_pencil(basis: SubspaceBasis):
    """The matrix u_1 T_1 + ... + u_n T_n with degree-1 polynomial entries."""
    n = basis.n
    rows, cols = basis.shape
    out = []
    for j in range(rows):
        row = []
        for i in range(cols):
            terms = {}
            for k, t in enumerate(basis.mats):
                if t[j, i]:
                    e = [0] * n
                    e[k] = 1
                    terms[tuple(e)] = t[j, i]
            row.append(MultiPoly(n, terms))
        out.append(row)
    return out


def _check_target(basis: SubspaceBasis, d: int):
    if not isinstance(d, int) or d < 1:
        raise InvalidInstanceError(f"target rank must be a positive integer, got {d!r}")
    if d > min(basis.shape):
        raise InvalidInstanceError(f"target rank {d} exceeds min{basis.shape}")


def minors_all_zero(basis: SubspaceBasis, d: int) -> bool:
    """True iff every d x d minor of the symbolic pencil is the zero polynomial."""
    _check_target(basis, d)
    rows, cols = basis.shape
    count = comb(rows, d) * comb(cols, d)
    if d > MAX_MINOR_SIZE or basis.n > MAX_VARIABLES or count > MAX_MINORS:
        raise InstanceTooLargeError(
            f"oracle limit exceeded: minor size {d} (max {MAX_MINOR_SIZE}), "
            f"{basis.n} variables (max {MAX_VARIABLES}), {count} minors (max {MAX_MINORS})"
        )
    sym = symbolic_pencil(basis)
    for rsel in itertools.combinations(range(rows), d):
        for csel in itertools.combinations(range(cols), d):
            sub = [[sym[r][c] for c in csel] for r in rsel]
            if poly_det_symbolic(sub):
                return False
    return True


def grid_decide(basis: SubspaceBasis, d: int) -> bool:
    """True iff rank(sum u_k T_k) < d for every u in {0, ..., d}^n."""
    _check_target(basis, d)
    points = (d + 1) ** basis.n
    if points > MAX_GRID_POINTS:
        raise InstanceTooLargeError(f"grid has {points} points (max {MAX_GRID_POINTS})")
    for u in itertools.product(range(d + 1), repeat=basis.n):
        if rank_exact(lincomb(u, basis.mats)) >= d:
            return False
    return True
