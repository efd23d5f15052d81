"""Built-in solvable position-dependent-mass models and their spectra.

Each model is a one-dimensional Hamiltonian H = -d/dx[(1/2m(x)) d/dx] + V(x)
whose mass profile and potential close a shape-invariant ladder algebra: a
lowering operator L- connects eigenstate n to n-1, and the whole construction
downstream (coherent states, photon statistics, measures, the grid oracle)
consumes a model only through the scalar sequences defined here.

Sequences, with ``unit`` the model's natural energy quantum:

* ``energy(spec, n)``    absolute eigenvalue E_n,
* ``remainder(spec, k)`` shape-invariance increment E_k - E_{k-1}, k >= 1,
* ``step(spec, n)``      dimensionless e_n = (E_n - E_0) / unit, the squared
                         ladder coefficient (L- maps state n to sqrt(e_n)
                         times state n-1),
* ``rho_log(spec, n)``   ln rho_n with rho_n = e_1 e_2 ... e_n (rho_0 = 1),
                         the generalized factorial that normalizes coherent
                         states.

Built-in model ids
------------------
``nonlinear-osc``
    m(x) = (1 + lam x^2)^{-1} on the interval where the mass stays positive,
    V = m(x) alpha^2 x^2 / 2, in the lam < 0 regime where the spectrum is
    infinite.  Parameterized by the dimensionless nonlinearity
    q = |lam/alpha|/2 > 0:  e_n = n (1 + q (n + 1)),
    E_n = alpha (n + 1/2 + q n (n+1)), unit = alpha.

``bounded-osc``
    m(x) = (1 - (lam x)^2)^{-1}, V = m(x) alpha^2 x^2 / 2.  Identical
    sequences with q read as half the squared dimensionless profile slope;
    the two models share every downstream formula through q.

``exp-mass``
    m(x) = e^{-mu x} / 2 with a Morse-like partner potential.  E_n = n mu^2,
    e_n = n, unit = mu^2.  The physical coherent-state label carries the
    scale mu (``label_scale``), so rho in label units is n! mu^{2n}.

``harmonic``
    Constant-mass reference produced by ``harmonic_limit``; e_n = n,
    E_n = alpha (n + 1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import ConsistencyError
from .specfn import pochhammer_log

__all__ = [
    "MODEL_IDS",
    "ModelSpec",
    "SpectralSequence",
    "make_model",
    "harmonic_limit",
    "energy",
    "remainder",
    "step",
    "steps",
    "rho_log",
    "rho_log_table",
    "rho_log_label",
]

MODEL_IDS = ("nonlinear-osc", "bounded-osc", "exp-mass")

_SINGULAR_MASS_IDS = ("nonlinear-osc", "bounded-osc")


@dataclass(frozen=True)
class ModelSpec:
    """Immutable model identity plus parameters.

    step_bias is a fault-injection hook used only by the negative-control
    path of the verification CLI: it scales every ladder step by (1 + bias)
    so that cross-checks against unbiased quantities must fail.  Normal
    construction through make_model always leaves it at zero.
    """

    id: str
    alpha: float = 1.0
    nonlinearity: float | None = None
    mu: float | None = None
    step_bias: float = 0.0

    @property
    def energy_unit(self) -> float:
        if self.id == "exp-mass":
            return self.mu**2
        return self.alpha

    @property
    def label_scale(self) -> float:
        """Scale relating the physical coherent-state label to e_n units."""
        if self.id == "exp-mass":
            return self.mu
        return 1.0

    @property
    def hyp_b(self) -> float | None:
        """Lower 0F1 parameter 2 + 1/q, None for models without one."""
        if self.id in _SINGULAR_MASS_IDS:
            return 2.0 + 1.0 / self.nonlinearity
        return None


def make_model(
    model_id: str,
    alpha: float = 1.0,
    nonlinearity: float | None = None,
    mu: float | None = None,
    lambda_tilde: float | None = None,
) -> ModelSpec:
    """Validate parameters and build a ModelSpec.

    nonlinear-osc accepts either the nonlinearity q > 0 directly or the raw
    dimensionless mass parameter lambda_tilde = lam/alpha (negative in the
    infinite-spectrum regime handled here), in which case q = |lambda_tilde|/2.
    """
    if model_id not in MODEL_IDS:
        raise ValueError(
            f"unknown model {model_id!r}, expected one of {', '.join(MODEL_IDS)}"
        )
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")

    if model_id == "nonlinear-osc":
        if lambda_tilde is not None:
            if nonlinearity is not None:
                raise ValueError("give either nonlinearity or lambda_tilde, not both")
            if lambda_tilde > 0:
                raise ValueError(
                    "lambda_tilde > 0: finite spectrum regime out of scope"
                )
            if lambda_tilde == 0:
                raise ValueError(
                    "lambda_tilde = 0 is the constant-mass case; use harmonic_limit"
                )
            nonlinearity = abs(lambda_tilde) / 2.0
        if nonlinearity is None or not nonlinearity > 0:
            raise ValueError(
                f"nonlinear-osc needs nonlinearity > 0, got {nonlinearity}"
            )
        return ModelSpec("nonlinear-osc", alpha=alpha, nonlinearity=float(nonlinearity))

    if model_id == "bounded-osc":
        if lambda_tilde is not None:
            raise ValueError("lambda_tilde applies to nonlinear-osc only")
        if nonlinearity is None or not nonlinearity > 0:
            raise ValueError(
                f"bounded-osc needs nonlinearity > 0, got {nonlinearity}"
            )
        return ModelSpec("bounded-osc", alpha=alpha, nonlinearity=float(nonlinearity))

    # exp-mass
    if lambda_tilde is not None or nonlinearity is not None:
        raise ValueError("exp-mass takes mu (and alpha), not a nonlinearity")
    if mu is None or not mu > 0:
        raise ValueError(f"exp-mass needs mu > 0, got {mu}")
    return ModelSpec("exp-mass", alpha=alpha, mu=float(mu))


def harmonic_limit(spec: ModelSpec) -> ModelSpec:
    """Constant-mass harmonic reference in the same energy units.

    Defined for the two singular-mass models (q -> 0) and idempotent on a
    spec that is already harmonic.  exp-mass has no such limit.
    """
    if spec.id == "harmonic":
        return spec
    if spec.id not in _SINGULAR_MASS_IDS:
        raise ValueError(f"harmonic limit undefined for model {spec.id!r}")
    return ModelSpec("harmonic", alpha=spec.alpha)


def _check_n(n: int, name: str = "n") -> int:
    if n != int(n) or n < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {n}")
    return int(n)


def energy(spec: ModelSpec, n: int) -> float:
    """Absolute eigenvalue E_n."""
    n = _check_n(n)
    if spec.id == "exp-mass":
        return n * spec.mu**2
    if spec.id == "harmonic":
        return spec.alpha * (n + 0.5)
    q = spec.nonlinearity
    return spec.alpha * (n + 0.5 + q * n * (n + 1))


def remainder(spec: ModelSpec, k: int) -> float:
    """Shape-invariance energy increment E_k - E_{k-1}, defined for k >= 1."""
    k = _check_n(k, "k")
    if k < 1:
        raise ValueError(f"remainder is defined for k >= 1, got {k}")
    if spec.id == "exp-mass":
        return spec.mu**2
    if spec.id == "harmonic":
        return spec.alpha
    return spec.alpha * (1.0 + 2.0 * k * spec.nonlinearity)


def step(spec: ModelSpec, n: int) -> float:
    """Dimensionless ladder step e_n = (E_n - E_0) / energy_unit."""
    n = _check_n(n)
    if spec.id in _SINGULAR_MASS_IDS:
        base = n * (1.0 + spec.nonlinearity * (n + 1))
    else:
        base = float(n)
    return base * (1.0 + spec.step_bias)


def steps(spec: ModelSpec, n_max: int) -> np.ndarray:
    """Vector of e_n for n = 0..n_max."""
    n = np.arange(_check_n(n_max, "n_max") + 1, dtype=float)
    if spec.id in _SINGULAR_MASS_IDS:
        base = n * (1.0 + spec.nonlinearity * (n + 1))
    else:
        base = n
    return base * (1.0 + spec.step_bias)


def _rho_log_closed(spec: ModelSpec, n: int) -> float:
    # closed Gamma form of the step product; bias enters as n ln(1 + bias)
    out = math.lgamma(n + 1)
    if spec.id in _SINGULAR_MASS_IDS:
        q = spec.nonlinearity
        out += n * math.log(q) + pochhammer_log(2.0 + 1.0 / q, n)
    if spec.step_bias:
        out += n * math.log1p(spec.step_bias)
    return out


def rho_log(spec: ModelSpec, n: int) -> float:
    """ln rho_n, with rho_n = prod_{k=1..n} e_k and rho_0 = 1.

    Computed as the telescoping sum of ln e_k and cross-checked against the
    closed Gamma/Pochhammer form on every call; disagreement raises
    ConsistencyError.
    """
    n = _check_n(n)
    if n == 0:
        return 0.0
    product = math.fsum(math.log(step(spec, k)) for k in range(1, n + 1))
    closed = _rho_log_closed(spec, n)
    if abs(product - closed) > 1e-9 + 1e-12 * abs(product):
        raise ConsistencyError(
            f"rho_log({spec.id}, {n}): product form {product!r} vs closed "
            f"form {closed!r}"
        )
    return product


def rho_log_table(spec: ModelSpec, n_max: int) -> np.ndarray:
    """Array of ln rho_n for n = 0..n_max (cumulative sums of ln e_n).

    The endpoint is cross-checked against the closed form, which bounds any
    accumulation drift over the whole table.
    """
    n_max = _check_n(n_max, "n_max")
    table = np.zeros(n_max + 1)
    if n_max >= 1:
        table[1:] = np.cumsum(np.log(steps(spec, n_max)[1:]))
        closed = _rho_log_closed(spec, n_max)
        if abs(table[-1] - closed) > 1e-9 + 1e-12 * abs(closed):
            raise ConsistencyError(
                f"rho_log_table({spec.id}, {n_max}) endpoint {table[-1]!r} vs "
                f"closed form {closed!r}"
            )
    return table


def rho_log_label(spec: ModelSpec, n: int) -> float:
    """ln rho_n in physical-label units: rho_n * label_scale^(2n).

    This is the moment sequence of the resolution-of-unity measure on the
    physical label plane (n! mu^{2n} for exp-mass).
    """
    out = rho_log(spec, _check_n(n))
    scale = spec.label_scale
    if scale != 1.0:
        out += 2.0 * n * math.log(scale)
    return out


class SpectralSequence:
    """Thin bound view of the scalar sequences for one model.

    Purely a convenience: all state lives in the immutable spec, so
    instances are freely shareable across threads.
    """

    def __init__(self, spec: ModelSpec):
        self.spec = spec

    def energy(self, n: int) -> float:
        return energy(self.spec, n)

    def remainder(self, k: int) -> float:
        return remainder(self.spec, k)

    def step(self, n: int) -> float:
        return step(self.spec, n)

    def rho_log(self, n: int) -> float:
        return rho_log(self.spec, n)
