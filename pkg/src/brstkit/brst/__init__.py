from .omega import (
    GhostAlgebraError,
    GhostNames,
    GhostSystem,
    build_ghost_presentation,
    build_omega,
    canonical_omega,
    omega_from_tensors,
)
from .charge import (
    AnsatzResult,
    BrstCharge,
    DoubleComplexReport,
    GradingError,
    beta_special,
    build_c0,
    build_Q,
    double_complex_check,
    initial_charge,
    involution,
    solve_brst_ansatz,
    solve_levels,
    t_parameter,
    tilde_map,
    verify_nilpotent,
)
