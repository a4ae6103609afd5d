"""Special functions: gamma family, Hurwitz zeta, Lerch transcendent, constants."""

from .bernoulli import bernoulli
from .constants import Constants, constants
from .gamma import gamma, log_gamma, polygamma
from .lerch import (
    EvalRoute,
    LerchArgs,
    lerch_phi,
    lerch_phi_neg_int,
    lerch_phi_sderiv,
    phi,
    sderiv_method,
    select_route,
)
from .zeta import hurwitz_zeta, hurwitz_zeta_sderiv

__all__ = [
    "Constants",
    "EvalRoute",
    "LerchArgs",
    "bernoulli",
    "constants",
    "gamma",
    "hurwitz_zeta",
    "hurwitz_zeta_sderiv",
    "lerch_phi",
    "lerch_phi_neg_int",
    "lerch_phi_sderiv",
    "log_gamma",
    "phi",
    "polygamma",
    "sderiv_method",
    "select_route",
]
