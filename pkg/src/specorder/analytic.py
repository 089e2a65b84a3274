"""Closed-form spectra and level differences used as ground truth.

Natural units; quantum-number combinations Q_ho = 2n + l + 3/2 and
Q_c = n + l + 1 appear throughout.
"""

import math
import warnings

from .errors import ValidationError


def q_ho(n, l):
    return 2 * n + l + 1.5


def q_c(n, l):
    return n + l + 1


def ho_energy(mu, lam, n, l):
    """Harmonic oscillator p^2/(2 mu) + lam r^2: sqrt(2 lam / mu) (2n + l + 3/2)."""
    return math.sqrt(2.0 * lam / mu) * q_ho(n, l)


def coulomb_energy(mu, kappa, n, l):
    """Coulomb p^2/(2 mu) - kappa/r: -mu kappa^2 / (2 (n + l + 1)^2)."""
    return -mu * kappa**2 / (2.0 * q_c(n, l) ** 2)


def tangent_harmonic(kappa, r0, r):
    """The harmonic potential tangent to -kappa/r at r0."""
    return kappa / (2.0 * r0**3) * r * r - 1.5 * kappa / r0


def tangent_harmonic_difference(kappa, r0, r):
    """Pointwise gap between the tangent harmonic potential and -kappa/r:
    (kappa / 2r) (r/r0 - 1)^2 (r/r0 + 2), non-negative for r > 0."""
    t = r / r0
    return kappa / (2.0 * r) * (t - 1.0) ** 2 * (t + 2.0)


def level_difference(kappa, mu, r0, n, l):
    """Closed-form eigenvalue gap between the tangent harmonic problem and the
    Coulomb problem at the same (n, l); always positive."""
    x = math.sqrt(kappa * mu * r0)
    qc = q_c(n, l)
    qho = q_ho(n, l)
    poly = x**3 - 3.0 * qc**2 * x + 2.0 * qho * qc**2
    return math.sqrt(kappa) * poly / (2.0 * r0 * math.sqrt(mu * r0) * qc**2)


def bracket_polynomial_min(n, l):
    """Minimum over x > 0 of x^3 - 3 Q_c^2 x + 2 Q_ho Q_c^2: located at
    x* = Q_c with value 2 Q_c^2 (Q_ho - Q_c) > 0."""
    qc = q_c(n, l)
    qho = q_ho(n, l)
    return float(qc), 2.0 * qc**2 * (qho - qc)


def salpeter_coulomb_bound(m, kappa, n, l):
    """Upper bound on the ground of 2 sqrt(p^2 + m^2) - kappa/r:
    2m sqrt(1 - kappa^2 / (4 Q_c^2)).

    Requires kappa <= 2 Q_c; at exact equality the (finite) limit 0 is
    returned with a warning.
    """
    qc = q_c(n, l)
    arg = 1.0 - kappa**2 / (4.0 * qc**2)
    if arg < 0:
        raise ValidationError(
            f"kappa={kappa!r} exceeds the bound-state reality limit 2(n+l+1)={2 * qc}"
        )
    if arg == 0.0:
        warnings.warn("kappa at the bound-state reality boundary; bound is 0", stacklevel=2)
    return 2.0 * m * math.sqrt(arg)


def nonrel_rest_coulomb(m, kappa, n, l):
    """Coulomb spectrum of 2m + p^2/m - kappa/r: 2m - m kappa^2 / (4 Q_c^2)."""
    qc = q_c(n, l)
    return 2.0 * m - m * kappa**2 / (4.0 * qc**2)
