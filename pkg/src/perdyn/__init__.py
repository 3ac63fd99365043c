"""Exact dynamical statistics of rational maps on P^1 over finite fields,
with the wreath-product and height machinery behind effective bounds on
image sizes and periodic-point proportions."""

from .errors import PerdynError
from .ffield import (
    FieldCtx,
    FieldElem,
    extension_field,
    field_from_order,
    field_with_modulus,
    generates,
    irreducible_polys,
    is_irreducible,
    prime_field,
)
from .family import (
    CritSet,
    critical_points,
    orbit_symbolic,
    phi_disjoint,
    places_of,
    specialize,
    unicritical_family,
)
from .heights import (
    HeightCtx,
    Place,
    b_const,
    c_const,
    function_field,
    height_elem,
    height_point,
    local_norm,
    n_eps,
    pair_height,
    product_formula_check,
    rationals,
)
from .mapexpr import build_map, parse_element, parse_point
from .padyn import (
    GraphStats,
    P1Point,
    RationalMap,
    conjugate,
    evaluate,
    graph_stats,
    image_size,
    successor_table,
)
from .polys import Poly, QQ, RatFunc, RatFuncField
from .verify import (
    Report,
    census_quadratic_average,
    check_cor11,
    check_image_size,
    check_thm12,
    check_thm13,
    check_thm64,
    check_thm63_bound,
    expected_cyclic_points,
    porism_threshold,
    random_map_baseline,
    write_csv,
)
from .wreath import ActionSpec, action_spec, fix_n, fix_n_oracle, juul_bound, wreath_order

__version__ = "0.1.0"
