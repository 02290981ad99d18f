"""t-deformed polynomial algebras of generalized Cartan matrices, their
q,t- and eps,t-characters, and Kazhdan-Lusztig type polynomials."""

from .cartan import CartanData, named_matrix, validate_cartan
from .charalg import chi_eps_t, chi_qt, e_t, ft_algorithm, star_product, stops_probe
from .kl import KLResult, kl_decompose, kl_nonfinite
from .laurent import IntLaurent, split_sym_neg
from .yalgebra import AlgebraContext, AlgebraElement, ExponentVector

__all__ = [
    "AlgebraContext",
    "AlgebraElement",
    "CartanData",
    "ExponentVector",
    "IntLaurent",
    "KLResult",
    "chi_eps_t",
    "chi_qt",
    "e_t",
    "ft_algorithm",
    "kl_decompose",
    "kl_nonfinite",
    "named_matrix",
    "split_sym_neg",
    "star_product",
    "stops_probe",
    "validate_cartan",
]
