"""Shared vocabulary: coherent amplitudes, the overlap kernel, input priors,
and classical guess strategies.

Amplitudes are plain Python complex numbers (dimensionless quadrature units).
The overlap fidelity between two coherent states with amplitudes a and b is
exp(-|a-b|^2), which is the single convention everything else in this package
is pinned to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "ComplexAmp",
    "GaussianIso",
    "UniformDisk",
    "TruncatedGaussian",
    "Prior",
    "Gain",
    "RadialCurve",
    "Strategy",
    "fidelity_kernel",
    "prior_density",
    "tail_mass",
    "apply_strategy",
]

# A coherent-state amplitude is just a point in the complex plane.
ComplexAmp = complex


def _require_finite(value: complex, name: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return z


def fidelity_kernel(alpha: ComplexAmp, beta: ComplexAmp) -> float:
    """Overlap fidelity exp(-|alpha - beta|^2) between two coherent states.

    Symmetric in its arguments, 1 exactly when they coincide, and strictly
    positive for any finite pair.
    """
    a = _require_finite(alpha, "alpha")
    b = _require_finite(beta, "beta")
    d = a - b
    return math.exp(-(d.real * d.real + d.imag * d.imag))


@dataclass(frozen=True)
class GaussianIso:
    """Isotropic Gaussian ensemble over the whole plane.

    Density (lam/pi) exp(-lam |beta|^2); lam is the inverse-width parameter,
    small lam means a wide ensemble.
    """

    lam: float

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam > 0.0):
            raise ValueError(f"GaussianIso requires lam > 0, got {self.lam}")

    def density(self, beta: ComplexAmp) -> float:
        b = _require_finite(beta, "beta")
        return (self.lam / math.pi) * math.exp(-self.lam * abs(b) ** 2)

    def radial_density(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return (self.lam / np.pi) * np.exp(-self.lam * r * r)

    def support_radius(self, tail: float) -> float:
        """Radius of the disk holding all but `tail` of the probability mass."""
        return math.sqrt(math.log(1.0 / tail) / self.lam)


@dataclass(frozen=True)
class UniformDisk:
    """Uniform ensemble over the origin-centered disk |beta| <= radius."""

    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"UniformDisk requires radius > 0, got {self.radius}")

    def density(self, beta: ComplexAmp) -> float:
        b = _require_finite(beta, "beta")
        if abs(b) <= self.radius:
            return 1.0 / (math.pi * self.radius**2)
        return 0.0

    def radial_density(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return np.where(r <= self.radius, 1.0 / (np.pi * self.radius**2), 0.0)

    def support_radius(self, tail: float) -> float:
        return self.radius


@dataclass(frozen=True)
class TruncatedGaussian:
    """Gaussian ensemble restricted to |beta| <= radius and renormalized.

    lam = 0 is allowed and reduces exactly to the uniform disk.
    """

    lam: float
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.lam) and self.lam >= 0.0):
            raise ValueError(f"TruncatedGaussian requires lam >= 0, got {self.lam}")
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"TruncatedGaussian requires radius > 0, got {self.radius}")

    def _norm(self) -> float:
        # Mass of (lam/pi) exp(-lam r^2) inside the disk; expm1 keeps the
        # lam -> 0 limit exact.
        return -math.expm1(-self.lam * self.radius**2)

    def density(self, beta: ComplexAmp) -> float:
        b = _require_finite(beta, "beta")
        if abs(b) > self.radius:
            return 0.0
        if self.lam == 0.0:
            return 1.0 / (math.pi * self.radius**2)
        return (self.lam / math.pi) * math.exp(-self.lam * abs(b) ** 2) / self._norm()

    def radial_density(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if self.lam == 0.0:
            return np.where(r <= self.radius, 1.0 / (np.pi * self.radius**2), 0.0)
        inside = (self.lam / np.pi) * np.exp(-self.lam * r * r) / self._norm()
        return np.where(r <= self.radius, inside, 0.0)

    def support_radius(self, tail: float) -> float:
        return self.radius


Prior = Union[GaussianIso, UniformDisk, TruncatedGaussian]


def prior_density(prior: Prior, beta: ComplexAmp) -> float:
    """Probability density of `prior` at the amplitude `beta`."""
    return prior.density(beta)


def tail_mass(lam: float, radius: float) -> float:
    """Probability mass of GaussianIso(lam) outside the disk of `radius`.

    Closed form exp(-lam radius^2), from the polar integral of the density.
    """
    if not (math.isfinite(lam) and lam > 0.0):
        raise ValueError(f"tail_mass requires lam > 0, got {lam}")
    if not (math.isfinite(radius) and radius > 0.0):
        raise ValueError(f"tail_mass requires radius > 0, got {radius}")
    return math.exp(-lam * radius**2)


@dataclass(frozen=True)
class Gain:
    """Proportional guess: measurement outcome alpha is mapped to g * alpha."""

    g: float

    def __post_init__(self):
        if not (math.isfinite(self.g) and self.g >= 0.0):
            raise ValueError(f"Gain requires g >= 0, got {self.g}")

    def guess_radius(self, r: np.ndarray) -> np.ndarray:
        return self.g * np.asarray(r, dtype=float)


@dataclass(frozen=True)
class RadialCurve:
    """Tabulated radial guess profile.

    nodes are (outcome radius, guess radius) pairs with strictly increasing
    radii starting at 0. Between nodes the guess radius is linear in the
    outcome radius; beyond the last node the last node's ratio is kept, so
    far out the curve behaves like a plain gain.
    """

    nodes: tuple

    def __post_init__(self):
        nodes = tuple((float(r), float(rho)) for r, rho in self.nodes)
        object.__setattr__(self, "nodes", nodes)
        if len(nodes) < 2:
            raise ValueError("RadialCurve needs at least 2 nodes")
        rs = [r for r, _ in nodes]
        rhos = [rho for _, rho in nodes]
        if rs[0] != 0.0:
            raise ValueError("RadialCurve nodes must start at radius 0")
        if any(not math.isfinite(v) for v in rs + rhos):
            raise ValueError("RadialCurve nodes must be finite")
        if any(r2 <= r1 for r1, r2 in zip(rs, rs[1:])):
            raise ValueError("RadialCurve node radii must be strictly increasing")
        if any(rho < 0.0 for rho in rhos):
            raise ValueError("RadialCurve guess radii must be >= 0")

    def guess_radius(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        rs = np.array([p[0] for p in self.nodes])
        rhos = np.array([p[1] for p in self.nodes])
        out = np.interp(r, rs, rhos)
        last_r, last_rho = self.nodes[-1]
        return np.where(r > last_r, (last_rho / last_r) * r, out)


Strategy = Union[Gain, RadialCurve]


def apply_strategy(strategy: Strategy, alpha: ComplexAmp) -> ComplexAmp:
    """Guess amplitude for the measurement outcome `alpha`.

    The guess keeps the direction of alpha; its modulus is the strategy's
    radial profile evaluated at |alpha|. The origin maps to the origin.
    """
    a = _require_finite(alpha, "alpha")
    if isinstance(strategy, Gain):
        return strategy.g * a
    r = abs(a)
    if r == 0.0:
        return 0j
    rho = float(strategy.guess_radius(np.array([r]))[0])
    return (rho / r) * a
