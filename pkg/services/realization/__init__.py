from .chain import RealizationResult, check_realization, evaluate_limit, realize_chain
from .extension import ScottExtension, scott_extend
from .adjoint import (
    cantor_value,
    cylinder_pushforward_check,
    grid_pushforward,
    skorohod_compose,
    unit_adjoint,
)
from .convergence import ASConvergenceCertificate, empirical_convergence
