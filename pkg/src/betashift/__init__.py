"""
betashift - covers, invariants and flow equivalence of sofic beta-shifts.

Exact arithmetic throughout: beta is an algebraic number with a rational
isolating interval, matrices hold Python integers.

Usage:
    >>> from betashift import parse_generating, fischer_cover, compare
    >>> g = parse_generating("11(10)")
    >>> len(fischer_cover(g).graph.edges)
    7
    >>> compare(parse_generating("(110)"), parse_generating("(20)")).outcome.value
    'Equivalent'

CLI:
    $ betashift cover "11(10)"
    $ betashift compare "1(110)" "11(110)"
"""

__version__ = "0.1.0"
__all__ = [
    # Sequences
    "EventuallyPeriodicSeq",
    "GeneratingSequence",
    "parse_sequence",
    "parse_generating",
    "normalize",
    "lex_compare",
    "validate_generating",
    "is_factor",
    "classify",
    # Arithmetic
    "AlgebraicNumber",
    "beta_expansion_of_one",
    "generating_sequence_from_expansion",
    "beta_from_generating",
    "algebraic_beta",
    # Covers
    "LabeledGraph",
    "fischer_cover",
    "krieger_cover",
    "fiber_product_cover",
    "covering_multiplicity",
    "path_language",
    # Invariants
    "smith_normal_form",
    "determinant",
    "bowen_franks",
    "period_sum",
    "verify_closed_forms",
    # Moves
    "binarize",
    "delete_zero",
    "insert_zero",
    "rotate_normalize",
    "canonical_form",
    # Reduction
    "UnlabeledGraph",
    "reduce_fiber_cover",
    "equivariant_fiber_compare",
    # Decisions
    "compare",
    "full_shift_class",
    "Verdict",
    # Config
    "BetaShiftConfig",
    "get_config",
    "set_config",
    # Catalog
    "get_sequence",
    "register_sequence",
    "enumerate_generating",
    # Parallel
    "ParallelRunner",
    "run_parallel",
    # Errors
    "BetaShiftError",
]

# Lazy imports: public name -> (module, attribute)
_LAZY_IMPORTS = {
    "EventuallyPeriodicSeq": ("seq", "EventuallyPeriodicSeq"),
    "GeneratingSequence": ("seq", "GeneratingSequence"),
    "parse_sequence": ("seq", "parse_sequence"),
    "parse_generating": ("seq", "parse_generating"),
    "normalize": ("seq", "normalize"),
    "lex_compare": ("seq", "lex_compare"),
    "validate_generating": ("seq", "validate_generating"),
    "is_factor": ("seq", "is_factor"),
    "classify": ("seq", "classify"),
    "AlgebraicNumber": ("arith", "AlgebraicNumber"),
    "beta_expansion_of_one": ("arith", "beta_expansion_of_one"),
    "generating_sequence_from_expansion": ("arith", "generating_sequence_from_expansion"),
    "beta_from_generating": ("arith", "beta_from_generating"),
    "algebraic_beta": ("arith", "algebraic_beta"),
    "LabeledGraph": ("covers", "LabeledGraph"),
    "fischer_cover": ("covers", "fischer_cover"),
    "krieger_cover": ("covers", "krieger_cover"),
    "fiber_product_cover": ("covers", "fiber_product_cover"),
    "covering_multiplicity": ("covers", "covering_multiplicity"),
    "path_language": ("covers", "path_language"),
    "smith_normal_form": ("invariants", "smith_normal_form"),
    "determinant": ("invariants", "determinant"),
    "bowen_franks": ("invariants", "bowen_franks"),
    "period_sum": ("invariants", "period_sum"),
    "verify_closed_forms": ("invariants", "verify_closed_forms"),
    "binarize": ("moves", "binarize"),
    "delete_zero": ("moves", "delete_zero"),
    "insert_zero": ("moves", "insert_zero"),
    "rotate_normalize": ("moves", "rotate_normalize"),
    "canonical_form": ("moves", "canonical_form"),
    "UnlabeledGraph": ("reduce", "UnlabeledGraph"),
    "reduce_fiber_cover": ("reduce", "reduce_fiber_cover"),
    "equivariant_fiber_compare": ("reduce", "equivariant_fiber_compare"),
    "compare": ("decide", "compare"),
    "full_shift_class": ("decide", "full_shift_class"),
    "Verdict": ("decide", "Verdict"),
    "BetaShiftConfig": ("config", "BetaShiftConfig"),
    "get_config": ("config", "get_config"),
    "set_config": ("config", "set_config"),
    "get_sequence": ("catalog", "get_sequence"),
    "register_sequence": ("catalog", "register_sequence"),
    "enumerate_generating": ("catalog", "enumerate_generating"),
    "ParallelRunner": ("parallel", "ParallelRunner"),
    "run_parallel": ("parallel", "run_parallel"),
    "BetaShiftError": ("errors", "BetaShiftError"),
}


def __getattr__(name: str):
    """Lazy import mechanism."""
    if name in _LAZY_IMPORTS:
        module_name, attr_name = _LAZY_IMPORTS[name]
        import importlib
        module = importlib.import_module(f".{module_name}", __name__)
        return getattr(module, attr_name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__():
    """Return list of available attributes for tab completion."""
    return __all__
