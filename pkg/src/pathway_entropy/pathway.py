"""Scalar pathway density family with power, stretch, scale and tail knobs.

The kernel on x >= 0 is

    g(x) = x^(gamma-1) * [1 - s(1-alpha) x^delta]^(beta/(1-alpha))

with gamma, delta, s, beta > 0.  The tail parameter alpha moves the family
through three regimes without changing the other knobs:

    alpha < 1   finite support [0, (s(1-alpha))^(-1/delta)], beta-type kernel
    alpha = 1   half-line stretched exponential x^(gamma-1) exp(-beta s x^delta)
    alpha > 1   half-line power tail [1 + s(alpha-1) x^delta]^(-beta/(alpha-1))

The alpha = 1 branch is selected by exact parameter equality and equals the
two-sided limit of the others, so density curves vary continuously in alpha.

Normalizing constants come from the substitution t = s|1-alpha| x^delta,
which turns the kernel integral into a Beta (alpha != 1) or Gamma (alpha = 1)
integral; `normalizing_constant_quadrature` recomputes the same constant by
adaptive quadrature so the two routes can be checked against each other.
For alpha > 1 the kernel decays like x^(gamma - 1 - delta*beta/(alpha-1)),
hence integrability requires beta/(alpha-1) - gamma/delta > 0; violations
raise NotNormalizable instead of silently returning an unnormalized kernel.

Kernel evaluation runs in log space (log1p for the bracket) so that large
delta or extreme x never produce inf * 0 intermediates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .entropy_continuous import DensitySpec
from .errors import DomainError, NoSignChange, NotNormalizable, UnknownName
from .quadrature import _NODES, _W_KRONROD, QuadratureSpec, find_root, integrate

__all__ = [
    "PathwayParams",
    "SupportInterval",
    "support",
    "is_normalizable",
    "normalizing_constant",
    "normalizing_constant_quadrature",
    "log_kernel",
    "kernel",
    "kernel_derivative",
    "density",
    "cdf",
    "quantile",
    "sample",
    "special_case",
    "SPECIAL_CASE_NAMES",
    "as_density_spec",
]


@dataclass(frozen=True)
class PathwayParams:
    alpha: float
    gamma: float = 1.0
    delta: float = 1.0
    s: float = 1.0
    beta_exp: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha", "gamma", "delta", "s", "beta_exp"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        for name in ("gamma", "delta", "s", "beta_exp"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be positive, got {getattr(self, name)!r}")


@dataclass(frozen=True)
class SupportInterval:
    lower: float
    upper: float

    def contains(self, x: float) -> bool:
        return self.lower <= x <= self.upper


def support(params: PathwayParams) -> SupportInterval:
    """[0, (s(1-alpha))^(-1/delta)] below alpha = 1, [0, inf) at and above."""
    if params.alpha < 1.0:
        edge = (params.s * (1.0 - params.alpha)) ** (-1.0 / params.delta)
        return SupportInterval(0.0, edge)
    return SupportInterval(0.0, math.inf)


def is_normalizable(params: PathwayParams) -> bool:
    """Kernel integrability over the support.

    Automatic for alpha <= 1; for alpha > 1 the power tail must decay faster
    than x^-1, i.e. beta/(alpha-1) - gamma/delta > 0.
    """
    if params.alpha <= 1.0:
        return True
    tail = params.beta_exp / (params.alpha - 1.0) - params.gamma / params.delta
    return tail > 0.0


def _require_normalizable(params: PathwayParams) -> None:
    if not is_normalizable(params):
        raise NotNormalizable(
            "kernel is not integrable: need beta_exp/(alpha-1) > gamma/delta "
            f"for alpha > 1, got {params}")


def normalizing_constant(params: PathwayParams) -> float:
    """Closed-form c with integral(c * kernel) = 1, computed in log space."""
    _require_normalizable(params)
    a = params.alpha
    g = params.gamma
    d = params.delta
    s = params.s
    b = params.beta_exp
    r = g / d
    if a < 1.0:
        log_c = (math.log(d) + r * math.log(s * (1.0 - a))
                 - _log_beta(r, b / (1.0 - a) + 1.0))
    elif a > 1.0:
        log_c = (math.log(d) + r * math.log(s * (a - 1.0))
                 - _log_beta(r, b / (a - 1.0) - r))
    else:
        log_c = math.log(d) + r * math.log(b * s) - math.lgamma(r)
    return math.exp(log_c)


def _log_beta(p: float, q: float) -> float:
    return math.lgamma(p) + math.lgamma(q) - math.lgamma(p + q)


def normalizing_constant_quadrature(params: PathwayParams,
                                    spec: QuadratureSpec | None = None) -> float:
    """c recomputed as 1 / integral(kernel): the cross-check route."""
    _require_normalizable(params)
    interval = support(params)
    if spec is None:
        spec = QuadratureSpec(interval.lower, interval.upper)
    else:
        spec = QuadratureSpec(interval.lower, interval.upper,
                              rel_tol=spec.rel_tol, abs_tol=spec.abs_tol,
                              max_subdivisions=spec.max_subdivisions)
    total = integrate(lambda x: kernel(params, x), spec)
    return 1.0 / total


def log_kernel(params: PathwayParams, x):
    """log g(x), vectorized; -inf where the kernel vanishes (including
    everywhere outside the support)."""
    a = params.alpha
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    out = np.full(x.shape, -math.inf)
    if a < 1.0:
        edge = (params.s * (1.0 - a)) ** (-1.0 / params.delta)
        inside = (x >= 0.0) & (x <= edge)
    else:
        inside = x >= 0.0
    xi = np.where(inside, x, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        power = np.where(xi > 0.0,
                         (params.gamma - 1.0) * np.log(np.where(xi > 0.0, xi, 1.0)),
                         (0.0 if params.gamma == 1.0 else
                          (-math.inf if params.gamma > 1.0 else math.inf)))
        if a == 1.0:
            bracket = -params.beta_exp * params.s * xi ** params.delta
        else:
            t = params.s * (1.0 - a) * xi ** params.delta
            bracket = (params.beta_exp / (1.0 - a)) * np.log1p(-np.minimum(t, 1.0))
    out[inside] = (power + bracket)[inside]
    return float(out[0]) if scalar else out


def kernel(params: PathwayParams, x):
    """Unnormalized kernel g(x); 0 outside the support."""
    lg = log_kernel(params, x)
    with np.errstate(over="ignore"):
        return np.exp(lg) if np.ndim(lg) else float(np.exp(lg))


def kernel_derivative(params: PathwayParams, x):
    """Analytic dg/dx.

    g'(x) = x^(gamma-2) u^(m-1) [ (gamma-1) u - s beta delta x^delta ]
    with u = 1 - s(1-alpha) x^delta and m = beta/(1-alpha); at alpha = 1 the
    bracket factor u^(m-1) becomes exp(-beta s x^delta) with u = 1.
    """
    a = params.alpha
    g = params.gamma
    d = params.delta
    s = params.s
    b = params.beta_exp
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x <= 0.0):
        raise DomainError("kernel_derivative needs x > 0")
    if a == 1.0:
        u = np.ones_like(x)
        tail = np.exp(-b * s * x ** d)
    else:
        u = 1.0 - s * (1.0 - a) * x ** d
        if np.any(u <= 0.0):
            raise DomainError("kernel_derivative needs x interior to the support")
        tail = u ** (b / (1.0 - a) - 1.0)
    value = x ** (g - 2.0) * tail * ((g - 1.0) * u - s * b * d * x ** d)
    return float(value[0]) if scalar else value


def density(params: PathwayParams, x):
    """Normalized density c * g(x); 0 outside the support."""
    c = normalizing_constant(params)
    value = kernel(params, x)
    return c * value


def cdf(params: PathwayParams, x: float,
        spec: QuadratureSpec | None = None) -> float:
    """P(X <= x) by quadrature of the kernel from 0, scaled by c."""
    c = normalizing_constant(params)
    interval = support(params)
    hi = min(float(x), interval.upper)
    if hi <= 0.0:
        return 0.0
    if spec is None:
        run = QuadratureSpec(0.0, hi)
    else:
        run = QuadratureSpec(0.0, hi, rel_tol=spec.rel_tol, abs_tol=spec.abs_tol,
                             max_subdivisions=spec.max_subdivisions)
    mass = c * integrate(lambda t: kernel(params, t), run)
    return min(mass, 1.0)


def quantile(params: PathwayParams, u: float,
             spec: QuadratureSpec | None = None) -> float:
    """Inverse CDF by bracketing root-find; exact endpoints at u = 0 and 1."""
    if not 0.0 <= u <= 1.0:
        raise DomainError(f"quantile level must lie in [0, 1], got {u}")
    interval = support(params)
    if u == 0.0:
        return 0.0
    if u == 1.0:
        return interval.upper
    if math.isfinite(interval.upper):
        hi = interval.upper
    else:
        hi = 1.0
        for _ in range(200):
            if cdf(params, hi, spec) >= u:
                break
            hi *= 2.0
        else:
            raise NoSignChange("failed to bracket the quantile level")
    return find_root(lambda t: cdf(params, t, spec) - u, (0.0, hi), 1e-10)


_TABLE_CELLS = 4096


@lru_cache(maxsize=32)
def _inverse_table(params: PathwayParams) -> tuple[np.ndarray, np.ndarray]:
    """(x grid, cdf grid) for interpolated inverse-CDF sampling.

    Cell masses are accumulated with a fixed 15-point rule per cell and the
    grid is renormalized to end at exactly 1, absorbing any truncated tail
    mass (below 1e-10 by construction of the cut point).
    """
    interval = support(params)
    if math.isfinite(interval.upper):
        cut = interval.upper
    else:
        cut = 1.0
        for _ in range(400):
            if cdf(params, cut) > 1.0 - 1e-10:
                break
            cut *= 2.0
    # geometric spacing resolves both a steep origin (gamma < 1) and a long
    # tail; the first cell starts at 0 so no mass is skipped
    xs = np.concatenate(([0.0], np.geomspace(cut * 1e-9, cut, _TABLE_CELLS)))
    mid = 0.5 * (xs[1:] + xs[:-1])
    half = 0.5 * np.diff(xs)
    nodes = mid[:, None] + half[:, None] * _NODES[None, :]
    values = np.exp(log_kernel(params, nodes.ravel())).reshape(nodes.shape)
    masses = (values * _W_KRONROD[None, :]).sum(axis=1) * half
    grid = np.concatenate(([0.0], np.cumsum(masses)))
    grid = np.maximum.accumulate(grid)
    grid /= grid[-1]
    return xs, grid


def sample(params: PathwayParams, n: int, seed: int) -> np.ndarray:
    """n inverse-CDF draws from a seeded generator; deterministic per seed."""
    if n < 0:
        raise DomainError("sample count must be non-negative")
    _require_normalizable(params)
    xs, grid = _inverse_table(params)
    rng = np.random.default_rng(seed)
    u = rng.random(n)
    return np.interp(u, grid, xs)


SPECIAL_CASE_NAMES = (
    "tsallis_q_exponential",
    "type1_beta",
    "type2_beta",
    "stretched_exponential",
    "maxwell_boltzmann",
    "gaussian_half",
    "weibull",
    "wigner",
)


def special_case(name: str, **kwargs) -> PathwayParams:
    """Named parameter points of the family.

    tsallis_q_exponential(alpha)            [1 + (alpha-1) x]^(-1/(alpha-1))
    type1_beta(alpha, gamma, delta, s)      finite support, alpha < 1
    type2_beta(alpha, gamma, delta, s)      power tail, alpha > 1
    stretched_exponential(delta, s)         exp(-s x^delta)
    maxwell_boltzmann(s)                    x^2 exp(-s x^2)
    gaussian_half(s)                        exp(-s x^2) on the half-line
    weibull(shape, s)                       x^(k-1) exp(-s x^k)
    wigner(q, beta_scale)                   [1 + beta_scale (q-1) x^2]^(-1/(q-1)),
                                            1 < q < 3 (the scale rides the s slot)
    """
    def take(allowed: dict) -> dict:
        extra = set(kwargs) - set(allowed)
        if extra:
            raise DomainError(f"{name} got unexpected arguments {sorted(extra)}")
        merged = dict(allowed)
        merged.update(kwargs)
        return merged

    if name == "tsallis_q_exponential":
        got = take({"alpha": 1.5})
        return PathwayParams(alpha=got["alpha"], gamma=1.0, delta=1.0, s=1.0)
    if name == "type1_beta":
        got = take({"alpha": 0.5, "gamma": 1.0, "delta": 1.0, "s": 1.0})
        if not got["alpha"] < 1.0:
            raise DomainError("type1_beta requires alpha < 1")
        return PathwayParams(**got)
    if name == "type2_beta":
        got = take({"alpha": 1.5, "gamma": 1.0, "delta": 1.0, "s": 1.0})
        if not got["alpha"] > 1.0:
            raise DomainError("type2_beta requires alpha > 1")
        return PathwayParams(**got)
    if name == "stretched_exponential":
        got = take({"delta": 1.0, "s": 1.0})
        return PathwayParams(alpha=1.0, gamma=1.0, **got)
    if name == "maxwell_boltzmann":
        got = take({"s": 1.0})
        return PathwayParams(alpha=1.0, gamma=3.0, delta=2.0, s=got["s"])
    if name == "gaussian_half":
        got = take({"s": 1.0})
        return PathwayParams(alpha=1.0, gamma=1.0, delta=2.0, s=got["s"])
    if name == "weibull":
        got = take({"shape": 2.0, "s": 1.0})
        if not got["shape"] > 0:
            raise DomainError("weibull requires shape > 0")
        return PathwayParams(alpha=1.0, gamma=got["shape"], delta=got["shape"],
                             s=got["s"])
    if name == "wigner":
        got = take({"q": 2.0, "beta_scale": 1.0})
        if not 1.0 < got["q"] < 3.0:
            raise DomainError(f"wigner requires 1 < q < 3, got {got['q']}")
        if not got["beta_scale"] > 0:
            raise DomainError("wigner requires beta_scale > 0")
        return PathwayParams(alpha=got["q"], gamma=1.0, delta=2.0,
                             s=got["beta_scale"])
    raise UnknownName(f"unknown special case {name!r}; "
                      f"known: {', '.join(SPECIAL_CASE_NAMES)}")


def as_density_spec(params: PathwayParams) -> DensitySpec:
    """Bridge into the continuous-entropy interface."""
    c = normalizing_constant(params)
    interval = support(params)

    def pdf(x):
        return c * np.exp(log_kernel(params, np.asarray(x, dtype=float)))

    return DensitySpec(pdf, interval.lower, interval.upper,
                       normalization_checked=True)
