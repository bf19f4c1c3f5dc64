"""Hybrid intensional-imperative type system: evaluator, join algebra,
context calculus, and the host type-adapter table."""

from hoil._hoil import (
    __version__,
    ctx_difference,
    ctx_hiding,
    ctx_intersection,
    ctx_override,
    ctx_projection,
    ctx_union,
    eval_expr,
    eval_with_stats,
    is_sub_context,
    join,
    kinds,
    mapping_table_text,
    typecheck,
)

__all__ = [
    "__version__",
    "ctx_difference",
    "ctx_hiding",
    "ctx_intersection",
    "ctx_override",
    "ctx_projection",
    "ctx_union",
    "eval_expr",
    "eval_with_stats",
    "is_sub_context",
    "join",
    "kinds",
    "mapping_table_text",
    "typecheck",
]
