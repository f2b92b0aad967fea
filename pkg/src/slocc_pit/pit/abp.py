"""Formula -> algebraic branching program -> determinant matrix -> pencil.

An ABP here has vertices 0..N-1 in topological order, source 0 and sink
N-1, and computes the sum over source-to-sink paths of the product of edge
weights. :func:`abp_to_matrix` produces an N x N matrix whose determinant is
exactly that path polynomial:

    B[j][k] = -(sum of weights on edges j -> k)
    B[j][j] = 1 for j != source
    B[sink][source] = 1

A cycle cover of B is one source-to-sink path closed by the back edge, with
self-loops on the remaining vertices. For a path of length l the cycle sign
(-1)^l cancels the (-1)^l from the negated weights.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidInstanceError
from ..linalg import ONE, ZERO, Mat
from ..oracle import MultiPoly
from .formula import Add, Const, Formula, Mul, Var, num_vars


@dataclass(frozen=True)
class ABP:
    n_vertices: int
    edges: tuple  # (from, to, weight) with weight a Var or Const

    def __post_init__(self):
        if self.n_vertices < 2:
            raise InvalidInstanceError("an ABP needs distinct source and sink")
        for a, b, w in self.edges:
            if not 0 <= a < b < self.n_vertices:
                raise InvalidInstanceError(f"edge {a}->{b} violates the topological order")
            if not isinstance(w, (Var, Const)):
                raise InvalidInstanceError(f"edge weight must be a variable or constant, got {w!r}")

    @property
    def source(self) -> int:
        return 0

    @property
    def sink(self) -> int:
        return self.n_vertices - 1


def formula_to_abp(f: Formula) -> ABP:
    """Series-parallel compilation; N <= e + 1 vertices for e leaves."""
    if isinstance(f, (Var, Const)):
        return ABP(2, ((0, 1, f),))
    left, right = formula_to_abp(f.left), formula_to_abp(f.right)
    nl, nr = left.n_vertices, right.n_vertices
    if isinstance(f, Add):
        # shared source and sink; right's inner vertices go between
        n = nl + nr - 2

        def move(v):
            if v == 0:
                return 0
            if v == nr - 1:
                return n - 1
            return nl - 2 + v

        left_edges = [(a if a < nl - 1 else n - 1, b if b < nl - 1 else n - 1, w)
                      for a, b, w in left.edges]
    else:
        # right's source is left's sink
        n = nl + nr - 1

        def move(v):
            return nl - 1 + v

        left_edges = list(left.edges)
    edges = left_edges + [(move(a), move(b), w) for a, b, w in right.edges]
    return ABP(n, tuple(edges))


def _weight_poly(w, nvars):
    if isinstance(w, Var):
        return MultiPoly.variable(w.index - 1, nvars)
    return MultiPoly.constant(w.value, nvars)


def _abp_vars(g: ABP) -> int:
    return max((w.index for _, _, w in g.edges if isinstance(w, Var)), default=0)


def path_polynomial(g: ABP, nvars: int = None) -> MultiPoly:
    """Sum over source-sink paths of weight products, by dynamic programming."""
    nvars = _abp_vars(g) if nvars is None else nvars
    reach = [MultiPoly.zero(nvars) for _ in range(g.n_vertices)]
    reach[0] = MultiPoly.constant(ONE, nvars)
    for a, b, w in sorted(g.edges, key=lambda e: e[0]):
        reach[b] = reach[b] + reach[a] * _weight_poly(w, nvars)
    return reach[g.sink]


@dataclass(frozen=True)
class AffineMatrix:
    """Square matrix of polynomials of total degree <= 1 in x_1..x_nvars."""

    nvars: int
    entries: tuple  # tuple of row tuples of MultiPoly

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise InvalidInstanceError("affine matrix must be square")
            for x in r:
                if x.nvars != self.nvars:
                    raise InvalidInstanceError("entry has the wrong variable count")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    def check_affine(self):
        for r in self.entries:
            for x in r:
                if x.degree() > 1:
                    raise InvalidInstanceError(f"entry {x} has degree {x.degree()} > 1")

    def tolist(self):
        return [list(r) for r in self.entries]


def abp_to_matrix(g: ABP, nvars: int = None) -> AffineMatrix:
    nvars = _abp_vars(g) if nvars is None else nvars
    n = g.n_vertices
    b = [[MultiPoly.zero(nvars) for _ in range(n)] for _ in range(n)]
    for j in range(1, n):
        b[j][j] = MultiPoly.constant(ONE, nvars)
    for a, c, w in g.edges:
        b[a][c] = b[a][c] - _weight_poly(w, nvars)
    b[g.sink][g.source] = b[g.sink][g.source] + MultiPoly.constant(ONE, nvars)
    return AffineMatrix(nvars, tuple(tuple(r) for r in b))


def compile_formula(f: Formula) -> AffineMatrix:
    return abp_to_matrix(formula_to_abp(f), num_vars(f))


@dataclass(frozen=True)
class PencilFamily:
    """Pi_0 + x_1 Pi_1 + ... + x_m Pi_m.

    ``coefficients[i-1]`` is Pi_i; it is kept (possibly zero) for every
    variable index so positions line up with x_i.
    """

    constant: Mat
    coefficients: tuple

    @property
    def mats(self) -> tuple:
        return (self.constant,) + tuple(self.coefficients)

    def nonzero_coefficients(self) -> dict:
        return {i + 1: m for i, m in enumerate(self.coefficients) if not m.is_zero()}

    def reassemble(self) -> AffineMatrix:
        nvars = len(self.coefficients)
        n = self.constant.rows
        rows = []
        for j in range(n):
            row = []
            for k in range(n):
                terms = {(0,) * nvars: self.constant[j, k]}
                for i, m in enumerate(self.coefficients):
                    e = [0] * nvars
                    e[i] = 1
                    terms[tuple(e)] = m[j, k]
                row.append(MultiPoly(nvars, terms))
            rows.append(tuple(row))
        return AffineMatrix(nvars, tuple(rows))


def pencil_split(a: AffineMatrix) -> PencilFamily:
    a.check_affine()
    n, m = a.size, a.nvars
    const = [[ZERO] * n for _ in range(n)]
    coeffs = [[[ZERO] * n for _ in range(n)] for _ in range(m)]
    for j, row in enumerate(a.entries):
        for k, x in enumerate(row):
            for exps, c in x.terms.items():
                if sum(exps) == 0:
                    const[j][k] = c
                else:
                    coeffs[exps.index(1)][j][k] = c
    return PencilFamily(Mat.from_rows(const) if n else Mat(0, 0, ()),
                        tuple(Mat.from_rows(c) for c in coeffs))

