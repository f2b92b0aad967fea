"""Reduce identity testing of a formula to an SLOCC decision instance."""
from __future__ import annotations

from typing import Optional

from ..decider import DecisionParams, DecisionReport, decide_slocc
from ..states import PureTensor3
from .abp import compile_formula, pencil_split
from .formula import Formula


def pit_to_slocc(f: Formula):
    """Return ``(psi, d)`` with psi feasible for target rank d iff f is not identically zero.

    The Charlie slices of psi are Pi_0, Pi_1, ..., Pi_m from the pencil of the
    compiled N x N determinant matrix, and d = N. The linear span of the
    slices contains a nonsingular matrix iff the affine family does, i.e. iff
    det(Pi_0 + sum x_i Pi_i) = f is a nonzero polynomial.
    """
    pencil = pencil_split(compile_formula(f))
    psi = PureTensor3.from_slices(pencil.mats)
    return psi, pencil.constant.rows


def pit_decide(f: Formula, params: Optional[DecisionParams] = None,
               exact: bool = False) -> DecisionReport:
    """YES means the formula's polynomial is not identically zero."""
    psi, d = pit_to_slocc(f)
    return decide_slocc(psi, d, params, exact=exact)
