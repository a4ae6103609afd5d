"""Registered identities and the residual checker."""

from .core import (
    AlternateOutcome,
    CheckResult,
    Identity,
    IdentityOutcome,
    Kind,
    ParamSample,
    ParamSpec,
    Reading,
    Tier,
    Verdict,
    check,
    check_infinite,
    check_tolerance,
    eval_side,
    lookup,
    registry,
    residuals,
    sample_domain,
    select,
    verify_identity,
)
from .env import POLE_THRESHOLD, Env

__all__ = [
    "AlternateOutcome",
    "CheckResult",
    "Env",
    "Identity",
    "IdentityOutcome",
    "Kind",
    "POLE_THRESHOLD",
    "ParamSample",
    "ParamSpec",
    "Reading",
    "Tier",
    "Verdict",
    "check",
    "check_infinite",
    "check_tolerance",
    "eval_side",
    "lookup",
    "registry",
    "residuals",
    "sample_domain",
    "select",
    "verify_identity",
]
