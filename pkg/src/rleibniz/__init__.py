"""Exact computations with restricted Leibniz algebras over finite fields."""

__version__ = "0.1.0"

from .algebra import Algebra, algebra_new, direct_sum, quotient, semidirect  # noqa: E402
from .decomp import indecomposable_decomposition, l_endomorphisms, p_compat_check  # noqa: E402
from .errors import RLeibnizError  # noqa: E402
from .gfield import GF, field_make  # noqa: E402
from .io import dumps, loads  # noqa: E402
from .presets import preset, random_algebra  # noqa: E402
from .restricted import PMap, is_restrictable, pmap_verify  # noqa: E402
from .toral import cartan_subalgebra, maximal_torus, root_decomposition  # noqa: E402

__all__ = [
    "Algebra", "GF", "PMap", "RLeibnizError", "algebra_new", "cartan_subalgebra",
    "direct_sum", "dumps", "field_make", "indecomposable_decomposition", "is_restrictable",
    "l_endomorphisms", "loads", "maximal_torus", "p_compat_check", "pmap_verify", "preset",
    "quotient", "random_algebra", "root_decomposition", "semidirect",
]
