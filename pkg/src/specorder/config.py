"""Flat key-value run configuration with dotted sections.

Example::

    problem.kinetic.kind = nonrel
    problem.kinetic.mu = 1.0
    problem.potential.kind = coulomb
    problem.potential.kappa = 1.0
    problem.l = 0, 1
    problem.levels = 3
    basis.n = 40
    basis.b = auto
    flow.grid = 101
    output.format = json

``compare`` and ``flow`` commands use ``problem1.*`` and ``problem2.*``
instead of ``problem.*``.  Unknown keys are rejected with their line number.
"""

from dataclasses import dataclass, field
from typing import Optional

from .errors import ConfigError
from .hamiltonian import (
    Coulomb,
    Harmonic,
    NonRel,
    NonRelTwoBody,
    PowerSum,
    Salpeter,
    Scaled,
    TangentHarmonic,
)

_KINETIC_KEYS = {"kind", "mu", "m"}
_POTENTIAL_KEYS = {"kind", "kappa", "lambda", "r0", "terms", "scale"}
_BASIS_KEYS = {"n", "b"}
_FLOW_KEYS = {"grid"}
_OUTPUT_KEYS = {"format", "path"}
_TOLERANCE_KEYS = {"verdict"}
_PROBLEM_KEYS = {"l", "levels"}


@dataclass
class ProblemConfig:
    kinetic: object = None
    potential: object = None


@dataclass
class RunConfig:
    """Parsed and validated run configuration."""

    problems: dict = field(default_factory=dict)  # "problem" | "problem1" | "problem2"
    l_values: tuple = (0,)
    level_count: int = 1
    basis_size: int = 40
    basis_b: Optional[float] = None  # None means "auto"
    flow_grid: int = 101
    out_format: str = "csv"
    out_path: Optional[str] = None
    verdict_tol: float = 1e-8
    raw: dict = field(default_factory=dict)  # key -> value as written


def _parse_lines(text):
    entries = {}
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise ConfigError("empty key or value", line=lineno)
        if key in entries:
            raise ConfigError(f"duplicate key '{key}'", line=lineno)
        entries[key] = (value, lineno)
    return entries


def _pop_float(entries, key, positive=False):
    if key not in entries:
        return None
    value, lineno = entries.pop(key)
    try:
        x = float(value)
    except ValueError:
        raise ConfigError(f"not a number: {value!r}", line=lineno, field=key) from None
    if positive and not x > 0:
        raise ConfigError(f"must be positive, got {x!r}", line=lineno, field=key)
    return x


def _pop_int(entries, key, minimum=None):
    if key not in entries:
        return None
    value, lineno = entries.pop(key)
    try:
        x = int(value)
    except ValueError:
        raise ConfigError(f"not an integer: {value!r}", line=lineno, field=key) from None
    if minimum is not None and x < minimum:
        raise ConfigError(f"must be >= {minimum}, got {x}", line=lineno, field=key)
    return x


def _build_kinetic(prefix, entries):
    key = f"{prefix}.kinetic.kind"
    if key not in entries:
        raise ConfigError("missing required key", field=key)
    kind, lineno = entries.pop(key)
    kind = kind.lower()
    if kind == "nonrel":
        mu = _pop_float(entries, f"{prefix}.kinetic.mu", positive=True)
        if mu is None:
            raise ConfigError("nonrel kinetic needs mu", line=lineno, field=f"{prefix}.kinetic.mu")
        return NonRel(mu)
    if kind in ("nonrel2", "nonrel_rest"):
        m = _pop_float(entries, f"{prefix}.kinetic.m", positive=True)
        if m is None:
            raise ConfigError("nonrel2 kinetic needs m", line=lineno, field=f"{prefix}.kinetic.m")
        return NonRelTwoBody(m)
    if kind == "salpeter":
        m = _pop_float(entries, f"{prefix}.kinetic.m")
        if m is None:
            raise ConfigError("salpeter kinetic needs m", line=lineno, field=f"{prefix}.kinetic.m")
        return Salpeter(m)
    raise ConfigError(f"unknown kinetic kind {kind!r}", line=lineno, field=key)


def _build_potential(prefix, entries):
    key = f"{prefix}.potential.kind"
    if key not in entries:
        raise ConfigError("missing required key", field=key)
    kind, lineno = entries.pop(key)
    kind = kind.lower()
    scale = _pop_float(entries, f"{prefix}.potential.scale")
    if kind == "coulomb":
        kappa = _pop_float(entries, f"{prefix}.potential.kappa", positive=True)
        if kappa is None:
            raise ConfigError("coulomb needs kappa", line=lineno, field=f"{prefix}.potential.kappa")
        pot = Coulomb(kappa)
    elif kind == "harmonic":
        lam = _pop_float(entries, f"{prefix}.potential.lambda", positive=True)
        if lam is None:
            raise ConfigError("harmonic needs lambda", line=lineno, field=f"{prefix}.potential.lambda")
        pot = Harmonic(lam)
    elif kind == "tangent_harmonic":
        kappa = _pop_float(entries, f"{prefix}.potential.kappa", positive=True)
        r0 = _pop_float(entries, f"{prefix}.potential.r0", positive=True)
        if kappa is None or r0 is None:
            raise ConfigError(
                "tangent_harmonic needs kappa and r0", line=lineno, field=key
            )
        pot = TangentHarmonic(kappa, r0)
    elif kind == "powersum":
        tkey = f"{prefix}.potential.terms"
        if tkey not in entries:
            raise ConfigError("powersum needs terms", line=lineno, field=tkey)
        value, tline = entries.pop(tkey)
        terms = []
        for chunk in value.split(","):
            parts = chunk.split(":")
            if len(parts) != 2:
                raise ConfigError(
                    f"term {chunk.strip()!r} is not 'g:eta'", line=tline, field=tkey
                )
            try:
                terms.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise ConfigError(
                    f"non-numeric term {chunk.strip()!r}", line=tline, field=tkey
                ) from None
        pot = PowerSum(tuple(terms))
    else:
        raise ConfigError(f"unknown potential kind {kind!r}", line=lineno, field=key)
    if scale is not None:
        pot = Scaled(scale, pot)
    return pot


def parse_config(text, problem_prefixes=("problem",)) -> RunConfig:
    """Parse configuration text into a :class:`RunConfig`.

    ``problem_prefixes`` is ``("problem",)`` for solve and
    ``("problem1", "problem2")`` for compare/flow.
    """
    entries = _parse_lines(text)
    raw = {k: v for k, (v, _) in entries.items()}
    cfg = RunConfig(raw=raw)

    from .errors import ValidationError

    for prefix in problem_prefixes:
        try:
            kin = _build_kinetic(prefix, entries)
            pot = _build_potential(prefix, entries)
        except ValidationError as exc:
            raise ConfigError(str(exc), field=prefix) from exc
        cfg.problems[prefix] = ProblemConfig(kinetic=kin, potential=pot)

    # shared problem-level keys live on the first prefix for solve, or bare
    # "problem" keys are not used for compare/flow; accept them on prefix 1
    lead = problem_prefixes[0]
    lkey = f"{lead}.l"
    if lkey in entries:
        value, lineno = entries.pop(lkey)
        try:
            ls = tuple(int(x) for x in value.split(","))
        except ValueError:
            raise ConfigError(f"not a list of integers: {value!r}", line=lineno, field=lkey) from None
        if not ls or any(l < 0 for l in ls):
            raise ConfigError("l values must be non-negative", line=lineno, field=lkey)
        cfg.l_values = ls
    count = _pop_int(entries, f"{lead}.levels", minimum=1)
    if count is not None:
        cfg.level_count = count

    size = _pop_int(entries, "basis.n", minimum=2)
    if size is not None:
        cfg.basis_size = size
    if "basis.b" in entries:
        value, lineno = entries.pop("basis.b")
        if value.lower() == "auto":
            cfg.basis_b = None
        else:
            try:
                cfg.basis_b = float(value)
            except ValueError:
                raise ConfigError(
                    f"expected a number or 'auto', got {value!r}", line=lineno, field="basis.b"
                ) from None
            if not cfg.basis_b > 0:
                raise ConfigError("b must be positive", line=lineno, field="basis.b")
    grid = _pop_int(entries, "flow.grid", minimum=2)
    if grid is not None:
        cfg.flow_grid = grid
    if "output.format" in entries:
        value, lineno = entries.pop("output.format")
        if value not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {value!r}", line=lineno, field="output.format")
        cfg.out_format = value
    if "output.path" in entries:
        value, _ = entries.pop("output.path")
        cfg.out_path = None if value == "-" else value
    tol = _pop_float(entries, "tolerance.verdict", positive=True)
    if tol is not None:
        cfg.verdict_tol = tol

    if entries:
        key = next(iter(entries))
        _, lineno = entries[key]
        raise ConfigError(f"unknown key '{key}'", line=lineno, field=key)
    return cfg
