from graphca.algebra.field import FiniteField, build_field, is_prime_power, prime_power
from graphca.algebra.groups import (
    ConnectionSet,
    ConnectionSetReport,
    FiniteGroup,
    build_group,
    cayley_graph,
    check_connection_set,
    even_cycles,
    group_from_table,
    left_translation,
    parse_group_spec,
)
from graphca.algebra.oa import OrthogonalArray, bush_oa, bush_rows, is_orthogonal_array, oa_prime_power

__all__ = [
    "ConnectionSet",
    "ConnectionSetReport",
    "FiniteField",
    "FiniteGroup",
    "OrthogonalArray",
    "build_field",
    "build_group",
    "bush_oa",
    "bush_rows",
    "cayley_graph",
    "check_connection_set",
    "even_cycles",
    "group_from_table",
    "is_orthogonal_array",
    "is_prime_power",
    "left_translation",
    "oa_prime_power",
    "parse_group_spec",
    "prime_power",
]
