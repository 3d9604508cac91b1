from .transport import run_order, run_split, run_waybelow
from .realization import run_extend, run_realize
from .quantile import run_quantile
from .convergence import run_converge, run_portmanteau, run_skorohod_demo
from .sweep import run_sweep
from .verify import run_verify, verify_certificate
