"""Character tables of finite groups viewed as Perron similarities.

Builds groups and their character tables, decides membership in the
spectracone and spectratope of a matrix, reduces the cone inequalities for
character tables, computes spectratope volumes, and probes extremality.
"""

from ._config import get_tolerance, set_tolerance, tolerance
from .char_table import (
    CharacterTable,
    burnside_table,
    char_inner_product,
    dephased_f4_theta,
    dft_table,
    inverse_table,
    kron_tables,
    match_tables,
    tensor_multiplicities,
    walsh_table,
)
from .errors import CharPerronError, InputError, NumericalError, UnsupportedDimensionError
from .extremal import (
    abelian_factorization,
    conjecture_probe,
    farey,
    is_totally_extremal,
    karpelevic_circle_points,
)
from .geometry import (
    Simplex,
    emit_plot_data,
    occupancy_ratio,
    project_drop,
    simplex_volume,
    spectratope_volume,
    trace_polytope_volume,
)
from .groups import (
    FiniteGroup,
    build_cyclic,
    build_direct_product,
    build_from_cayley,
    build_from_generators,
    conjugacy_classes,
    load_group_file,
)
from .library import builtin_group, builtin_names
from .perron import (
    eigenpair_transform,
    format_inequality,
    is_ideal,
    is_irreducible,
    is_perron_similarity,
    is_rhc,
    necessary_conditions,
    realize,
    reduced_inequalities,
    redundancy_certificate,
    rescale_stochastic,
    row_cone_membership,
    spectracone_membership,
    spectratope_membership,
    structure_check,
)

__version__ = "0.1.0"
