"""Kinetic/potential operator descriptions, Hamiltonian assembly, level
extraction, and variational tuning of the oscillator length."""

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable, Union

from .basis import BasisSpec, kinetic_matrix, potential_matrix, power_sum_matrix
from .errors import ValidationError
from .linalg import SymMatrix, eigh


# --- kinetic operators, as functions of p^2 -------------------------------

@dataclass(frozen=True)
class NonRel:
    """T = p^2 / (2 mu), one-body reduced form."""

    mu: float

    def __post_init__(self):
        if not (self.mu > 0 and math.isfinite(self.mu)):
            raise ValidationError(f"reduced mass mu must be positive, got {self.mu!r}")

    def function(self):
        mu = self.mu
        return lambda p2: p2 / (2.0 * mu)

    label = property(lambda self: f"nonrel(mu={self.mu:g})")


@dataclass(frozen=True)
class NonRelTwoBody:
    """T = 2m + p^2 / m, nonrelativistic two-body limit with rest masses."""

    m: float

    def __post_init__(self):
        if not (self.m > 0 and math.isfinite(self.m)):
            raise ValidationError(f"mass m must be positive, got {self.m!r}")

    def function(self):
        m = self.m
        return lambda p2: 2.0 * m + p2 / m

    label = property(lambda self: f"nonrel2(m={self.m:g})")


@dataclass(frozen=True)
class Salpeter:
    """T = 2 sqrt(p^2 + m^2), semirelativistic two-body kinetic operator.

    m = 0 is accepted (ultrarelativistic limit)."""

    m: float

    def __post_init__(self):
        if not (self.m >= 0 and math.isfinite(self.m)):
            raise ValidationError(f"mass m must be non-negative, got {self.m!r}")

    @property
    def ultrarelativistic(self):
        return self.m == 0

    def function(self):
        m2 = self.m * self.m
        return lambda p2: 2.0 * math.sqrt(p2 + m2)

    label = property(lambda self: f"salpeter(m={self.m:g})")


@dataclass(frozen=True)
class CustomKinetic:
    """Arbitrary T(p^2), finite on [0, inf)."""

    f: Callable[[float], float]
    label: str = "custom"

    def function(self):
        return self.f


KineticSpec = Union[NonRel, NonRelTwoBody, Salpeter, CustomKinetic]


# --- potentials, as functions of r ----------------------------------------

@dataclass(frozen=True)
class Coulomb:
    """V = -kappa / r."""

    kappa: float

    def __post_init__(self):
        if not (self.kappa > 0 and math.isfinite(self.kappa)):
            raise ValidationError(f"Coulomb coupling kappa must be positive, got {self.kappa!r}")

    def function(self):
        k = self.kappa
        return lambda r: -k / r

    def power_terms(self):
        return ((-self.kappa, -1.0),)

    label = property(lambda self: f"coulomb(kappa={self.kappa:g})")


@dataclass(frozen=True)
class Harmonic:
    """V = lambda r^2."""

    lam: float

    def __post_init__(self):
        if not (self.lam > 0 and math.isfinite(self.lam)):
            raise ValidationError(f"harmonic coupling must be positive, got {self.lam!r}")

    def function(self):
        lam = self.lam
        return lambda r: lam * r * r

    def power_terms(self):
        return ((self.lam, 2.0),)

    label = property(lambda self: f"harmonic(lambda={self.lam:g})")


@dataclass(frozen=True)
class TangentHarmonic:
    """V = (kappa / (2 r0^3)) r^2 - 3 kappa / (2 r0), tangent to -kappa/r at r0."""

    kappa: float
    r0: float

    def __post_init__(self):
        if not (self.kappa > 0 and math.isfinite(self.kappa)):
            raise ValidationError(f"kappa must be positive, got {self.kappa!r}")
        if not (self.r0 > 0 and math.isfinite(self.r0)):
            raise ValidationError(f"tangency radius r0 must be positive, got {self.r0!r}")

    def function(self):
        a = self.kappa / (2.0 * self.r0**3)
        c = -1.5 * self.kappa / self.r0
        return lambda r: a * r * r + c

    def power_terms(self):
        return (
            (self.kappa / (2.0 * self.r0**3), 2.0),
            (-1.5 * self.kappa / self.r0, 0.0),
        )

    label = property(lambda self: f"tangent_harmonic(kappa={self.kappa:g}, r0={self.r0:g})")


@dataclass(frozen=True)
class PowerSum:
    """V = sum of g * r^eta terms."""

    terms: tuple  # of (g, eta) pairs

    def __post_init__(self):
        terms = tuple((float(g), float(eta)) for g, eta in self.terms)
        if not terms:
            raise ValidationError("PowerSum needs at least one (g, eta) term")
        for g, eta in terms:
            if not (math.isfinite(g) and math.isfinite(eta)):
                raise ValidationError(f"non-finite PowerSum term ({g!r}, {eta!r})")
        object.__setattr__(self, "terms", terms)

    def function(self):
        terms = self.terms
        return lambda r: sum(g * r**eta for g, eta in terms)

    def power_terms(self):
        return self.terms

    label = property(
        lambda self: "powersum(" + ", ".join(f"{g:g}*r^{eta:g}" for g, eta in self.terms) + ")"
    )


@dataclass(frozen=True)
class CustomPotential:
    """Arbitrary V(r), finite on (0, inf)."""

    v: Callable[[float], float]
    label: str = "custom"

    def function(self):
        return self.v

    def power_terms(self):
        return None


@dataclass(frozen=True)
class Scaled:
    """V = g * v(r) for an inner potential v."""

    g: float
    inner: "PotentialSpec"

    def __post_init__(self):
        if not math.isfinite(self.g):
            raise ValidationError(f"coupling g must be finite, got {self.g!r}")

    def function(self):
        g = self.g
        inner = self.inner.function()
        return lambda r: g * inner(r)

    def power_terms(self):
        inner = self.inner.power_terms()
        if inner is None:
            return None
        return tuple((self.g * g, eta) for g, eta in inner)

    label = property(lambda self: f"{self.g:g} * {self.inner.label}")


PotentialSpec = Union[Coulomb, Harmonic, TangentHarmonic, PowerSum, CustomPotential, Scaled]


# --- assembly and solving --------------------------------------------------

@dataclass(frozen=True)
class Level:
    """One bound-state record: radial index n within the l block, energy E."""

    n: int
    l: int
    E: float


def assemble(T: KineticSpec, V: PotentialSpec, basis: BasisSpec) -> SymMatrix:
    """Matrix of T + V in the given basis.

    Power-law potentials use their exact basis integrals; other potentials
    go through the mesh function calculus of :func:`potential_matrix`.
    """
    terms = V.power_terms()
    if terms is None:
        vmat = potential_matrix(basis, V.function())
    else:
        vmat = power_sum_matrix(basis, terms)
    return kinetic_matrix(basis, T.function()) + vmat


def solve_levels(T: KineticSpec, V: PotentialSpec, basis: BasisSpec, count: int):
    """Lowest ``count`` levels of T + V at the basis angular momentum.

    The returned energies are Rayleigh-Ritz upper bounds to the exact
    spectrum when T + V is bounded below.
    """
    if count > basis.size:
        raise ValidationError(
            f"requested {count} levels from a basis of size {basis.size}"
        )
    dec = eigh(assemble(T, V, basis))
    return [Level(n=n, l=basis.l, E=float(dec.eigenvalues[n])) for n in range(count)]


@dataclass(frozen=True)
class ScaleOptimum:
    """Result of the oscillator-length search."""

    b: float
    energy: float
    at_boundary: bool


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def optimize_basis_scale(
    T: KineticSpec,
    V: PotentialSpec,
    basis: BasisSpec,
    target: int = 0,
    b_lo: float = 1e-3,
    b_hi: float = 1e3,
    iterations: int = 60,
) -> ScaleOptimum:
    """Golden-section search on log b minimizing the target eigenvalue.

    A minimizer pinned to the bracket edge (monotone energy over the bracket)
    is returned with ``at_boundary=True`` and a warning.
    """
    if target >= basis.size:
        raise ValidationError(
            f"target level {target} outside basis of size {basis.size}"
        )

    def energy(logb):
        bspec = replace(basis, b=math.exp(logb))
        return float(eigh(assemble(T, V, bspec)).eigenvalues[target])

    lo, hi = math.log(b_lo), math.log(b_hi)
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = energy(x1), energy(x2)
    for _ in range(iterations):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = energy(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = energy(x2)
    if f1 <= f2:
        logb, e = x1, f1
    else:
        logb, e = x2, f2
    at_boundary = (
        logb - math.log(b_lo) < 1e-2 * (math.log(b_hi) - math.log(b_lo))
        or math.log(b_hi) - logb < 1e-2 * (math.log(b_hi) - math.log(b_lo))
    )
    if at_boundary:
        warnings.warn(
            f"oscillator-length search hit the bracket edge at b={math.exp(logb):g}; "
            "the minimum is not bracketed",
            stacklevel=2,
        )
    return ScaleOptimum(b=math.exp(logb), energy=e, at_boundary=at_boundary)
