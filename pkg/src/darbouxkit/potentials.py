"""Rotation-invariant Kahler potentials on C^n and their pointwise metric data.

A model is a smooth function Phi(t_1, ..., t_n) of the radial coordinates
t_j = |z_j|^2 together with its t-derivatives up to fourth order.  The
associated Kahler form is omega_Phi = (i/2) d dbar Phi, whose Hermitian
matrix in complex coordinates is

    g_{j kbar} = delta_{jk} Phi_j + conj(z_j) z_k Phi_{jk},

with Phi_j = dPhi/dt_j and Phi_{jk} the second t-derivatives.  The flat
potential Phi = sum t_j gives the identity metric and the standard form.

Shipped families:

* ``CigarProductPotential`` — separable sum of cigar factors, per-coordinate
  first derivative log(1 + t)/t;
* ``SolitonPotential``      — radial potential u(log sum t_j) wrapping a
  ``SolitonProfile`` (the n = 1 case coincides with the cigar);
* ``PolyTestPotential``     — polynomial in t (plumbing-test family; the
  default coupled instance is t1*t2 + t1 + t2).

Real tangent vectors use the interleaved ordering (x_1, y_1, ..., x_n, y_n),
which makes the standard two-form block-diagonal with [[0, 1], [-1, 0]].
"""

from __future__ import annotations

import functools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from math import factorial, log, log1p
from typing import Mapping, Sequence

import numpy as np
from scipy.special import logsumexp, spence

from .soliton import SolitonProfile, _series_coefficients

__all__ = [
    "PotentialModel",
    "CigarProductPotential",
    "SolitonPotential",
    "PolyTestPotential",
    "soliton_potential",
    "flat_potential",
    "poly_test_model",
    "fold_test_model",
    "model_from_descriptor",
    "shipped_models",
    "radial_coords",
    "metric_at",
    "two_form_at",
    "hermitian_to_two_form",
    "cigar_radial_deriv",
    "SampleRegion",
    "Cond0Report",
    "cond0_scan",
]

_CIGAR_SERIES_T = 0.25    # per-coordinate series/closed-form switch
_RADIAL_SERIES_S = 0.1    # radial chain-rule/series switch
_GAUSS_NODES = 96


def radial_coords(z: Sequence[complex]) -> np.ndarray:
    """t_j = |z_j|^2 = x_j^2 + y_j^2, componentwise."""
    z = np.asarray(z, dtype=complex)
    return z.real**2 + z.imag**2


# ---------------------------------------------------------------------------
# per-coordinate cigar derivatives
# ---------------------------------------------------------------------------


def cigar_radial_deriv(t: float, order: int) -> float:
    """Order-q t-derivative of the cigar summand phi(t); phi'(t) = log(1+t)/t.

    order 0 is phi itself, the antiderivative of log(1+t)/t vanishing at 0
    (equivalently -Li2(-t)).  Orders 1..4 use a power series below
    t = 0.25 and an exact closed form above, both cancellation-safe.
    """
    if t < 0.0:
        raise ValueError("radial coordinate must be nonnegative")
    if order == 0:
        return -float(spence(1.0 + t))
    p = order - 1
    if t < _CIGAR_SERIES_T:
        # phi'(t) = sum_k (-1)^k t^k / (k+1), differentiated p times
        acc = 0.0
        weight = float(factorial(p))  # (m+p)! / m! at m = 0
        power = 1.0
        for m in range(60):
            term = (-1.0) ** (m + p) * weight * power / (m + p + 1)
            acc += term
            if abs(term) < 1e-18 * abs(acc) + 1e-300:
                break
            power *= t
            weight *= (m + p + 1) / (m + 1)
        return acc
    inner = log1p(t) / t ** (p + 1)
    for j in range(1, p + 1):
        inner -= 1.0 / (j * (1.0 + t) ** j * t ** (p + 1 - j))
    return (-1.0) ** p * factorial(p) * inner


# ---------------------------------------------------------------------------
# model interface
# ---------------------------------------------------------------------------


class PotentialModel(ABC):
    """Potential Phi(t_1..t_n) with t-derivatives to order four.

    Subclasses provide ``deriv`` (arbitrary multi-index, |m| <= 4),
    ``value_from_radial``, fast tensor assembly, and an overflow-safe
    log-domain evaluator of the ray functional S(r) = sum_j Phi_j t_j.
    """

    n: int
    kind: str
    is_radial: bool = False
    is_separable: bool = False

    @property
    def name(self) -> str:
        return f"{self.kind}-n{self.n}"

    @abstractmethod
    def deriv(self, orders: Sequence[int], t: Sequence[float]) -> float:
        """d^|m| Phi / dt^m at t, for a per-coordinate order multi-index m."""

    @abstractmethod
    def value_from_radial(self, t: Sequence[float]) -> float:
        """Phi(t)."""

    @abstractmethod
    def derivative_tensors(self, t: Sequence[float], order: int) -> tuple[np.ndarray, ...]:
        """Tensors (D1, ..., D_order): D_q[j1..jq] = d^q Phi / dt_{j1}..dt_{jq}."""

    @abstractmethod
    def log_ray_growth(self, log_r: float, direction: Sequence[complex]) -> float:
        """log of S = sum_j Phi_j t_j at z = r * direction, safe for huge r."""

    def descriptor(self) -> dict:
        return {"kind": self.kind, "n": self.n}

    def value(self, z: Sequence[complex]) -> float:
        return self.value_from_radial(radial_coords(z))

    def first_derivs(self, t: Sequence[float]) -> np.ndarray:
        return self.derivative_tensors(t, 1)[0]

    def _check_orders(self, orders: Sequence[int]) -> tuple[int, ...]:
        m = tuple(int(q) for q in orders)
        if len(m) != self.n or any(q < 0 for q in m):
            raise ValueError(f"multi-index {orders!r} invalid for n={self.n}")
        if sum(m) > 4:
            raise ValueError("derivatives available only to total order 4")
        return m


class CigarProductPotential(PotentialModel):
    """Separable product-of-cigars potential: Phi(t) = sum_j phi(t_j)."""

    kind = "cigar"
    is_separable = True

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = int(n)
        self.is_radial = self.n == 1

    def deriv(self, orders, t):
        m = self._check_orders(orders)
        t = np.asarray(t, dtype=float)
        active = [j for j, q in enumerate(m) if q > 0]
        if not active:
            return self.value_from_radial(t)
        if len(active) > 1:
            return 0.0
        j = active[0]
        return cigar_radial_deriv(float(t[j]), m[j])

    def value_from_radial(self, t):
        t = np.asarray(t, dtype=float)
        return float(sum(cigar_radial_deriv(tj, 0) for tj in t))

    def derivative_tensors(self, t, order):
        t = np.asarray(t, dtype=float)
        n = self.n
        out: list[np.ndarray] = []
        for q in range(1, order + 1):
            diag = np.array([cigar_radial_deriv(tj, q) for tj in t])
            tensor = np.zeros((n,) * q)
            idx = tuple(np.arange(n) for _ in range(q))
            tensor[idx] = diag
            out.append(tensor)
        return tuple(out)

    def log_ray_growth(self, log_r, direction):
        d = np.asarray(direction, dtype=complex)
        with np.errstate(divide="ignore"):
            log_t = 2.0 * (log_r + np.log(np.abs(d)))
        summands = np.logaddexp(0.0, log_t)  # log(1 + t_j)
        total = float(np.sum(summands))
        return log(total) if total > 0.0 else -np.inf


class SolitonPotential(PotentialModel):
    """Radial potential Phi(t) = u(log s), s = sum t_j, from a soliton profile.

    All t-derivatives of order q coincide and equal
    C_q(s) = (sum of signed Stirling combinations of u', ..., u^(q)) / s^q;
    near s = 0 the same quantity is the cancellation-free series
    sum_k (k-1)(k-2)...(k-q+1) b_k s^(k-q) in the profile's expansion
    coefficients b_k.
    """

    kind = "soliton"
    is_radial = True

    # rows of signed Stirling numbers: C_q = sum_m row[m] * u^(m+1) / s^q
    _CHAIN_ROWS = {1: (1.0,), 2: (-1.0, 1.0), 3: (2.0, -3.0, 1.0), 4: (-6.0, 11.0, -6.0, 1.0)}

    def __init__(self, profile: SolitonProfile):
        self.profile = profile
        self.n = profile.n
        self.is_separable = self.n == 1
        self._value_at_one: float | None = None

    def descriptor(self) -> dict:
        return {"kind": self.kind, "n": self.n, "newton_tol": self.profile.newton_tol, "a0": self.profile.a0}

    def deriv(self, orders, t):
        m = self._check_orders(orders)
        t = np.asarray(t, dtype=float)
        q = sum(m)
        if q == 0:
            return self.value_from_radial(t)
        return self.radial_deriv(float(t.sum()), q)

    def radial_deriv(self, s: float, q: int) -> float:
        """C_q(s) = d^q Phi / (any q radial coordinates) at s = sum t_j."""
        if s < 0.0:
            raise ValueError("s must be nonnegative")
        if s < _RADIAL_SERIES_S:
            # Phi'(s) = u'(log s)/s = sum_k b_k s^(k-1), so q-th derivatives
            # carry the falling factorial (k-1)...(k-q+1), zero for k < q
            b = _series_coefficients(self.profile.n)
            acc = 0.0
            for k in range(q, len(b)):
                weight = 1.0
                for i in range(1, q):
                    weight *= k - i
                acc += weight * b[k] * s ** (k - q)
            return acc
        derivs = self.profile.derivatives(log(s))
        row = self._CHAIN_ROWS[q]
        return sum(c * d for c, d in zip(row, derivs)) / s**q

    def value_from_radial(self, t):
        t = np.asarray(t, dtype=float)
        s = float(t.sum())
        a0 = self.profile.a0
        if s == 0.0:
            return a0
        if s < _RADIAL_SERIES_S:
            b = _series_coefficients(self.profile.n)
            return a0 + sum(b[k] * s**k / k for k in range(1, len(b)))
        if s <= 1.0:
            return a0 + self._integral_c1(0.0, s)
        # int_1^s C_1(sigma) dsigma = int_0^{log s} u'(tau) dtau
        if self._value_at_one is None:
            self._value_at_one = self._integral_c1(0.0, 1.0)
        nodes, weights = _gauss_nodes()
        half = 0.5 * log(s)
        tau = half * (nodes + 1.0)
        tail = half * float(sum(w * self.profile.u_prime(x) for w, x in zip(weights, tau)))
        return a0 + self._value_at_one + tail

    def _integral_c1(self, lo: float, hi: float) -> float:
        nodes, weights = _gauss_nodes()
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        pts = mid + half * nodes
        return half * float(sum(w * self.radial_deriv(x, 1) for w, x in zip(weights, pts)))

    def derivative_tensors(self, t, order):
        t = np.asarray(t, dtype=float)
        s = float(t.sum())
        n = self.n
        return tuple(np.full((n,) * q, self.radial_deriv(s, q)) for q in range(1, order + 1))

    def log_ray_growth(self, log_r, direction):
        d = np.asarray(direction, dtype=complex)
        with np.errstate(divide="ignore"):
            log_t = 2.0 * (log_r + np.log(np.abs(d)))
        t_s = float(logsumexp(log_t))  # log s
        if t_s < -700.0:
            return t_s  # u'(t) ~ e^t, so log S ~ t
        return log(self.profile.u_prime(t_s))


def soliton_potential(profile: SolitonProfile) -> SolitonPotential:
    """Wrap a profile as a radial PotentialModel on C^n, n = profile.n."""
    return SolitonPotential(profile)


class PolyTestPotential(PotentialModel):
    """Polynomial potential Phi(t) = sum_a c_a * t^a (plumbing-test family).

    ``monomials`` maps exponent multi-indices to real coefficients.  The
    default instance is the coupled polynomial t1*t2 + t1 + t2.
    """

    def __init__(
        self,
        n: int,
        monomials: Mapping[Sequence[int], float] | None = None,
        label: str = "poly",
    ):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.n = int(n)
        self.kind = label
        if monomials is None:
            if n != 2:
                raise ValueError("the default coupled polynomial needs n = 2")
            monomials = {(1, 1): 1.0, (1, 0): 1.0, (0, 1): 1.0}
        self.monomials: dict[tuple[int, ...], float] = {}
        for a, c in monomials.items():
            a = tuple(int(q) for q in a)
            if len(a) != self.n or any(q < 0 for q in a):
                raise ValueError(f"bad exponent multi-index {a!r}")
            if c != 0.0:
                self.monomials[a] = float(c)
        degrees = [sum(a) for a in self.monomials]
        self.is_radial = self.n == 1
        self.is_separable = all(sum(1 for q in a if q > 0) <= 1 for a in self.monomials)
        self._max_degree = max(degrees, default=0)

    def descriptor(self) -> dict:
        return {
            "kind": "poly",
            "n": self.n,
            "label": self.kind,
            "monomials": {",".join(map(str, a)): c for a, c in sorted(self.monomials.items())},
        }

    def deriv(self, orders, t):
        m = self._check_orders(orders)
        t = np.asarray(t, dtype=float)
        acc = 0.0
        for a, c in self.monomials.items():
            term = c
            for j in range(self.n):
                if a[j] < m[j]:
                    term = 0.0
                    break
                for i in range(m[j]):
                    term *= a[j] - i
                term *= t[j] ** (a[j] - m[j])
            acc += term
        return acc

    def value_from_radial(self, t):
        return self.deriv((0,) * self.n, t)

    def derivative_tensors(self, t, order):
        t = np.asarray(t, dtype=float)
        n = self.n
        out = []
        for q in range(1, order + 1):
            tensor = np.empty((n,) * q)
            for idx in np.ndindex(*tensor.shape):
                m = [0] * n
                for j in idx:
                    m[j] += 1
                tensor[idx] = self.deriv(m, t)
            out.append(tensor)
        return tuple(out)

    def log_ray_growth(self, log_r, direction):
        d = np.asarray(direction, dtype=complex)
        with np.errstate(divide="ignore"):
            log_t = 2.0 * (log_r + np.log(np.abs(d)))
        terms, signs = [], []
        for a, c in self.monomials.items():
            degree = sum(a)
            if degree == 0:
                continue
            exps = np.asarray(a, dtype=float)
            mask = exps > 0  # skip zero exponents: 0 * log(0) must not poison the sum
            terms.append(log(abs(c) * degree) + float(np.dot(exps[mask], log_t[mask])))
            signs.append(1.0 if c > 0 else -1.0)
        if not terms:
            return -np.inf
        total, sign = logsumexp(terms, b=signs, return_sign=True)
        return float(total) if sign > 0 else -np.inf


def flat_potential(n: int) -> PolyTestPotential:
    """Phi = sum_j t_j: identity metric, identity coordinate map."""
    monomials = {tuple(1 if i == j else 0 for i in range(n)): 1.0 for j in range(n)}
    return PolyTestPotential(n, monomials, label="flat")


def poly_test_model() -> PolyTestPotential:
    """The shipped coupled polynomial t1*t2 + t1 + t2 on C^2."""
    return PolyTestPotential(2)


def fold_test_model() -> PolyTestPotential:
    """Phi = t - t^2/2 on C: violates the positivity condition past t = 1.

    Its coordinate map folds the disc |z| < 1 (the radii t and 1 - t collide),
    so it exercises the domain-error and injectivity-failure paths.
    """
    return PolyTestPotential(1, {(1,): 1.0, (2,): -0.5}, label="fold")


def model_from_descriptor(desc: Mapping) -> PotentialModel:
    """Build a model from a JSON-style descriptor {"kind": ..., "n": ..., ...}.

    Kinds: "cigar", "soliton" (optional "newton_tol", "a0"), "poly"
    (optional "monomials" mapping "a1,a2,..." -> coefficient, and "label";
    labels "flat" and "fold" select the corresponding stock polynomials).
    """
    if not isinstance(desc, Mapping):
        raise ValueError("model descriptor must be a mapping")
    try:
        kind = desc["kind"]
    except KeyError:
        raise ValueError("model descriptor missing 'kind'") from None
    if kind == "cigar":
        return CigarProductPotential(int(desc.get("n", 1)))
    if kind == "soliton":
        profile = SolitonProfile(
            int(desc.get("n", 1)),
            newton_tol=float(desc.get("newton_tol", 1e-13)),
            a0=float(desc.get("a0", 0.0)),
        )
        return SolitonPotential(profile)
    if kind == "poly":
        n = int(desc.get("n", 2))
        label = desc.get("label", "poly")
        if "monomials" in desc:
            monomials = {
                tuple(int(q) for q in key.split(",")): float(c)
                for key, c in desc["monomials"].items()
            }
            return PolyTestPotential(n, monomials, label=label)
        if label == "flat":
            return flat_potential(n)
        if label == "fold":
            return fold_test_model()
        return PolyTestPotential(n)
    raise ValueError(f"unknown model kind {kind!r}")


def shipped_models() -> list[PotentialModel]:
    """Every stock model exercised by the verification suite."""
    models: list[PotentialModel] = [CigarProductPotential(n) for n in (1, 2, 3, 4)]
    models += [SolitonPotential(SolitonProfile(n)) for n in (1, 2, 3)]
    models.append(poly_test_model())
    return models


# ---------------------------------------------------------------------------
# pointwise metric data
# ---------------------------------------------------------------------------


def metric_at(model: PotentialModel, z: Sequence[complex]) -> np.ndarray:
    """Hermitian matrix G[j,k] = delta_jk Phi_j + conj(z_j) z_k Phi_jk."""
    z = np.asarray(z, dtype=complex)
    t = radial_coords(z)
    d1, d2 = model.derivative_tensors(t, 2)
    if not (np.all(np.isfinite(d1)) and np.all(np.isfinite(d2))):
        raise ValueError("potential derivatives are not finite at this point")
    g = np.diag(d1).astype(complex) + np.outer(np.conj(z), z) * d2
    # fused-multiply-add kernels leave ~1e-17 asymmetry in the outer product;
    # averaging with the adjoint restores exact Hermitian symmetry
    return 0.5 * (g + g.conj().T)


def hermitian_to_two_form(g: np.ndarray) -> np.ndarray:
    """Real antisymmetric 2n x 2n matrix of omega(X, Y) = -Im h(X, Y).

    Interleaved real ordering (x_1, y_1, ...): per complex index pair (j, k)
    the 2x2 block is [[-Im g, Re g], [-Re g, -Im g]].
    """
    n = g.shape[0]
    out = np.zeros((2 * n, 2 * n))
    re, im = g.real, g.imag
    out[0::2, 0::2] = -im
    out[0::2, 1::2] = re
    out[1::2, 0::2] = -re
    out[1::2, 1::2] = -im
    return out


def two_form_at(model: PotentialModel, z: Sequence[complex]) -> np.ndarray:
    """Matrix of omega_Phi on real tangent vectors at z."""
    return hermitian_to_two_form(metric_at(model, z))


# ---------------------------------------------------------------------------
# sampling and the positivity scan
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampleRegion:
    """Polydisc sampling spec: ``count`` points, each |z_j| <= radius."""

    radius: float = 5.0
    count: int = 100
    seed: int = 20260814
    include_origin: bool = True

    def __post_init__(self) -> None:
        if self.radius <= 0 or self.count < 1:
            raise ValueError("radius must be positive and count >= 1")

    def sample(self, n: int, rng: np.random.Generator | None = None) -> np.ndarray:
        """(count, n) complex array, uniform per coordinate over the disc."""
        if rng is None:
            rng = np.random.default_rng(self.seed)
        radii = self.radius * np.sqrt(rng.uniform(size=(self.count, n)))
        angles = rng.uniform(0.0, 2.0 * np.pi, size=(self.count, n))
        pts = radii * np.exp(1j * angles)
        if self.include_origin:
            pts[0] = 0.0
        return pts


@dataclass(frozen=True)
class Cond0Report:
    """Minimum of each first derivative Phi_j over the sampled region."""

    model: str
    points_checked: int
    min_first_derivs: tuple[float, ...]
    min_metric_eigenvalue: float
    tolerance: float = 0.0

    @property
    def min_value(self) -> float:
        return min(self.min_first_derivs)

    @property
    def passed(self) -> bool:
        return self.min_value >= -self.tolerance

    def as_dict(self) -> dict:
        return {
            "model": self.model,
            "points_checked": self.points_checked,
            "min_first_derivs": list(self.min_first_derivs),
            "min_metric_eigenvalue": self.min_metric_eigenvalue,
            "pass": self.passed,
        }


def cond0_scan(model: PotentialModel, region: SampleRegion) -> Cond0Report:
    """Scan the positivity side condition Phi_j >= 0 over a sampled polydisc.

    Also records the smallest metric eigenvalue seen, since positive
    definiteness of G is the companion requirement.
    """
    pts = region.sample(model.n)
    mins = np.full(model.n, np.inf)
    min_eig = np.inf
    for z in pts:
        d1 = model.first_derivs(radial_coords(z))
        mins = np.minimum(mins, d1)
        eigs = np.linalg.eigvalsh(metric_at(model, z))
        min_eig = min(min_eig, float(eigs[0]))
    return Cond0Report(
        model=model.name,
        points_checked=len(pts),
        min_first_derivs=tuple(float(v) for v in mins),
        min_metric_eigenvalue=min_eig,
    )


@functools.lru_cache(maxsize=None)
def _gauss_nodes() -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(_GAUSS_NODES)
