from ._core import (
    AnswerStream,
    BudgetExceeded,
    Fslp,
    Index,
    InvalidInput,
    Nsta,
    ParseError,
    brute_select,
    select_label_query,
    select_one_query,
)

__all__ = [
    "AnswerStream",
    "BudgetExceeded",
    "Fslp",
    "Index",
    "InvalidInput",
    "Nsta",
    "ParseError",
    "brute_select",
    "select_label_query",
    "select_one_query",
]
