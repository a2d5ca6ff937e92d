"""radsum: exact and analytic counting of sums of rational powers of integers.

The library studies the set of values u_1^(j/k) + ... + u_l^(j/k) over
positive integers u_i (k >= 2, j/k in lowest terms): exact enumeration and
counting, the staircase of generating jumps, its convolution exponential,
and zeta-based analytic estimates of both.
"""

from .arith import (
    KfreeSieve,
    QConvention,
    a_coeff,
    h_coeff,
    is_kfree,
    q_count,
    q_count_rational_power,
    totient,
)
from .counting import (
    Staircase,
    ZFormsResult,
    enumerate_elements,
    i_exact,
    i_staircase,
    i_via_q,
    s_exact,
    s_via_conv_exp,
    z_forms_check,
)
from .errors import (
    BudgetError,
    ConditioningError,
    DomainError,
    HeightCapError,
    IdentityError,
    PrecisionError,
    RadsumError,
    ZeroTableDataError,
    ZeroTableParseError,
)
from .estimates import (
    EstimateKind,
    ResidualReport,
    buchstab_factor,
    i_center,
    i_estimate,
    i_first,
    i_residue,
    residual_report,
    s_center,
    s_first,
    s_hybrid,
)
from .measure import (
    GridDensity,
    PointMassMeasure,
    build_dI,
    conv_exp,
    conv_exp_power_density,
    conv_exp_power_integral,
    convolve,
    cumulative,
    dump_measure,
    grid_conv_exp,
    grid_convolve,
)
from .radical import (
    CertifiedValue,
    Ordering,
    RadicalCombo,
    combo_add,
    combo_compare,
    combo_value,
    compare_threshold,
    format_combo,
    parse_combo,
    reduce_power,
)
# note: the zeta router itself stays at radsum.zeta.zeta; re-exporting the
# bare name here would shadow the submodule attribute
from .zeta import (
    ZeroTable,
    load_default_zeros,
    load_zeros,
    load_zeros_path,
    load_zeros_text,
    tri_zeta,
    zeta_deriv,
    zeta_em,
    zeta_reflect,
)

__version__ = "0.1.0"
