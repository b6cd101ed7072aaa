"""FOQ quantum programs: checking, evaluation, compilation and the function algebra."""

from ._foq import (
    AlgebraError,
    BudgetExceeded,
    CompileError,
    ParseError,
    Program,
    Term,
    check_pfoq,
    compile,
    diff_check,
    eval_algebra,
    examples,
    invert,
    level,
    parse,
    parse_term,
    phi_encode_bits,
    run,
    to_pfoq,
)

__all__ = [
    "AlgebraError",
    "BudgetExceeded",
    "CompileError",
    "ParseError",
    "Program",
    "Term",
    "check_pfoq",
    "compile",
    "diff_check",
    "eval_algebra",
    "examples",
    "invert",
    "level",
    "parse",
    "parse_term",
    "phi_encode_bits",
    "run",
    "to_pfoq",
]
