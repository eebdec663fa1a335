"""Model primitives, derived thresholds, and config serialization.

Conventions used throughout the package:

* content type X is binary, X=0 means malicious; q = P[X=0] is the prior;
* the filter's signal is binary, pi0 = P[signal=0 | X=0] and
  pi1 = P[signal=0 | X=1], with pi0 >= pi1 (an informative, or at worst
  neutral, detector);
* payoffs per content: accepting clean content earns b, losing clean
  content (blocked or ignored) costs c1, accepting malicious content
  costs c2, losing malicious content is worth 0;
* lam is the unit price of mutual information, in utility per nat.

All logarithms are natural logs (nats); everything is 64-bit float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

__all__ = [
    "ModelParams",
    "Thresholds",
    "UtilityMatrix",
    "ParameterError",
    "validate",
    "require_valid",
    "thresholds",
    "utility_matrix",
    "parse_config",
    "load_config",
    "dump_config",
]

# e^x overflows 64-bit floats slightly above this
_EXP_OVERFLOW = 709.0

CONFIG_KEYS = ("q", "pi0", "pi1", "b", "c1", "c2", "lambda", "rho0")


class ParameterError(ValueError):
    """Raised for invalid model parameters or malformed config files."""


@dataclass(frozen=True)
class ModelParams:
    """All primitives of the content-filtering game."""

    q: float
    pi0: float
    pi1: float
    b: float
    c1: float
    c2: float
    lam: float

    @property
    def rho0(self) -> float:
        """Malicious-content rate q/(1-q) (expected malicious per clean)."""
        return self.q / (1.0 - self.q)

    def with_q(self, q: float) -> "ModelParams":
        return replace(self, q=q)

    def with_rho0(self, rho0: float) -> "ModelParams":
        return replace(self, q=rho0 / (1.0 + rho0))

    def with_signal(self, pi0: float, pi1: float) -> "ModelParams":
        return replace(self, pi0=pi0, pi1=pi1)


@dataclass(frozen=True)
class Thresholds:
    """Belief thresholds and the two quality/cost indices.

    q_L and q_H bracket the beliefs at which the consumer pays for
    attention: below q_L it accepts everything, above q_H it ignores
    everything.  Lambda is the cost-side threshold ((b+c1)/c2)(1-q_L)/q_L
    and Q_quality = (pi0/pi1)((1-pi1)/(1-pi0)) is the filter-quality
    index compared against it in the semi-aligned equilibrium analysis.
    """

    q_L: float
    q_H: float
    Lambda: float
    Q_quality: float


@dataclass(frozen=True)
class UtilityMatrix:
    """Consumer action payoffs, fully determined by (b, c1, c2)."""

    accept_malicious: float
    accept_clean: float
    lost_clean: float
    lost_malicious: float = 0.0


def utility_matrix(params: ModelParams) -> UtilityMatrix:
    return UtilityMatrix(
        accept_malicious=-params.c2,
        accept_clean=params.b,
        lost_clean=-params.c1,
    )


def validate(params: ModelParams) -> list[str]:
    """Return every violated invariant (empty list means the params are ok)."""
    v: list[str] = []
    for name in ("q", "pi0", "pi1", "b", "c1", "c2", "lam"):
        x = getattr(params, name)
        if not math.isfinite(x):
            v.append(f"{name} not finite")
    if v:
        return v
    if not 0.0 < params.q < 1.0:
        v.append("q not in open interval (0,1)")
    if not 0.0 < params.pi0 < 1.0:
        v.append("pi0 not in open interval (0,1)")
    if not 0.0 < params.pi1 < 1.0:
        v.append("pi1 not in open interval (0,1)")
    if params.pi0 < params.pi1:
        v.append("pi0 < pi1")
    for name in ("b", "c1", "c2", "lam"):
        if getattr(params, name) <= 0.0:
            v.append(f"{name} not strictly positive")
    return v


def require_valid(params: ModelParams) -> None:
    violations = validate(params)
    if violations:
        raise ParameterError("; ".join(violations))


def thresholds(params: ModelParams) -> Thresholds:
    """Compute (q_L, q_H, Lambda, Q_quality) from valid params.

    Rejects attention prices so small that the exponentials overflow,
    naming the offending ratio.
    """
    require_valid(params)
    for name, num in (("b", params.b), ("c1", params.c1), ("c1+c2", params.c1 + params.c2)):
        if num / params.lam > _EXP_OVERFLOW:
            raise ParameterError(
                f"exp({name}/lambda) overflows 64-bit floats; ratio {name}/lambda = {num / params.lam:g}"
            )
    eb = math.exp(params.b / params.lam)
    ec1 = math.exp(-params.c1 / params.lam)
    ec12 = math.exp(-(params.c1 + params.c2) / params.lam)
    q_H = (eb - ec1) / (eb - ec12)
    q_L = q_H * math.exp(-params.c2 / params.lam)
    Lambda = ((params.b + params.c1) / params.c2) * ((1.0 - q_L) / q_L)
    Q_quality = (params.pi0 / params.pi1) * ((1.0 - params.pi1) / (1.0 - params.pi0))
    return Thresholds(q_L=q_L, q_H=q_H, Lambda=Lambda, Q_quality=Q_quality)


def parse_config(text: str) -> ModelParams:
    """Parse a flat key-value config into ModelParams.

    Keys: q, pi0, pi1, b, c1, c2, lambda, and optionally rho0 which
    overrides q via q = rho0/(1+rho0).  Unknown keys are errors, not
    warnings.  Lines starting with '#' and blank lines are skipped.
    """
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" in line:
            key, _, val = line.partition("=")
        else:
            parts = line.split(None, 1)
            if len(parts) != 2:
                raise ParameterError(f"line {lineno}: expected 'key = value', got {raw!r}")
            key, val = parts
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ParameterError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ParameterError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = float(val.strip())
        except ValueError as exc:
            raise ParameterError(f"line {lineno}: bad value for {key!r}: {val.strip()!r}") from exc

    if "rho0" in values:
        rho0 = values.pop("rho0")
        if rho0 <= 0.0:
            raise ParameterError("rho0 not strictly positive")
        values["q"] = rho0 / (1.0 + rho0)
    missing = [k for k in ("q", "pi0", "pi1", "b", "c1", "c2", "lambda") if k not in values]
    if missing:
        raise ParameterError(f"missing keys: {', '.join(missing)}")
    params = ModelParams(
        q=values["q"],
        pi0=values["pi0"],
        pi1=values["pi1"],
        b=values["b"],
        c1=values["c1"],
        c2=values["c2"],
        lam=values["lambda"],
    )
    violations = validate(params)
    if violations:
        raise ParameterError("; ".join(violations))
    return params


def load_config(path: str) -> ModelParams:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def dump_config(params: ModelParams) -> str:
    lines = [
        f"q = {params.q!r}",
        f"pi0 = {params.pi0!r}",
        f"pi1 = {params.pi1!r}",
        f"b = {params.b!r}",
        f"c1 = {params.c1!r}",
        f"c2 = {params.c2!r}",
        f"lambda = {params.lam!r}",
    ]
    return "\n".join(lines) + "\n"
