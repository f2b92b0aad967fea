from .abp import (ABP, AffineMatrix, PencilFamily, abp_to_matrix, compile_formula,
                  formula_to_abp, path_polynomial, pencil_split)
from .formula import (Add, Const, Formula, Mul, Var, expand, num_vars, parse_formula,
                      size, to_text)
from .reduction import pit_decide, pit_to_slocc

__all__ = [
    "ABP", "AffineMatrix", "PencilFamily", "abp_to_matrix", "compile_formula",
    "formula_to_abp", "path_polynomial", "pencil_split",
    "Add", "Const", "Formula", "Mul", "Var", "expand", "num_vars", "parse_formula",
    "size", "to_text", "pit_decide", "pit_to_slocc",
]
