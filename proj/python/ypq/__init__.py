from ._ypq import (
    ConfigError,
    DomainError,
    Error,
    NewtonDivergence,
    NotCoprime,
    OutOfChart,
    OutOfRange,
    PoleSingularity,
    PQParams,
    SingularMetric,
    StepFailure,
    SuiteConfig,
    cone_ricci,
    hamiltonian,
    integrate,
    invariants,
    jacobian_rank,
    legendre_roundtrip,
    make_params,
    metric,
    momentum_map,
    ricci,
    toric_model,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
