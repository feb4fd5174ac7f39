"""Experiment configuration: JSON schema, validation, and model construction."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .bounds import EstimatorTable, builtin_estimator
from .errors import ConfigError, DomainError, PriorError
from .manifold import (
    BayesianModel,
    FamilySpec,
    ParametricFamily,
    PriorSpec,
    default_grid,
    family_from_spec,
    prior_from_spec,
)
from .quadrature import QuadratureGrid

TASK_TYPES = ("divergence", "metric", "metric_fd_check", "bound", "reductions", "fuzz")

PositiveFloat = Annotated[float, Field(gt=0, allow_inf_nan=False)]
FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class FamilyConfig(_Strict):
    type: Literal["bernoulli", "categorical", "binomial", "tilted"]
    d: Optional[Annotated[int, Field(ge=2)]] = None
    n: Optional[Annotated[int, Field(ge=1)]] = None
    base: Optional[list[PositiveFloat]] = None
    features: Optional[list[list[FiniteFloat]]] = None


class PriorConfig(_Strict):
    type: Literal["uniform_box", "trunc_beta", "tabulated"]
    domain: Annotated[list[tuple[FiniteFloat, FiniteFloat]], Field(min_length=1)]
    a: Optional[list[PositiveFloat]] = None
    b: Optional[list[PositiveFloat]] = None
    knots: Optional[list[list[FiniteFloat]]] = None
    values: Optional[list[list[FiniteFloat]]] = None


class GridConfig(_Strict):
    rule: Literal["trapezoid", "simpson"]
    n: Annotated[int, Field(ge=1)]


class EstimatorConfig(_Strict):
    type: Literal["builtin", "table"] = "builtin"
    values: Optional[list[list[FiniteFloat]]] = None


class FdConfig(_Strict):
    h_score: PositiveFloat = 1e-5
    h_metric: PositiveFloat = 1e-3
    h_christoffel: PositiveFloat = 1e-2


class TaskConfig(_Strict):
    type: Literal["divergence", "metric", "metric_fd_check", "bound", "reductions", "fuzz"]
    thetas: Optional[list[list[FiniteFloat]]] = None
    pairs: Optional[list[tuple[list[FiniteFloat], list[FiniteFloat]]]] = None
    points: Optional[Annotated[int, Field(ge=1)]] = None
    n_pairs: Optional[Annotated[int, Field(ge=1)]] = None
    d: Optional[Annotated[int, Field(ge=2)]] = None


class OutputConfig(_Strict):
    dir: str = "alphageo-out"


class ExperimentConfig(_Strict):
    family: FamilyConfig
    prior: PriorConfig
    alphas: Annotated[list[PositiveFloat], Field(min_length=1)]
    grid: Optional[GridConfig] = None
    estimator: EstimatorConfig = EstimatorConfig()
    fd: FdConfig = FdConfig()
    tasks: Annotated[list[TaskConfig], Field(min_length=1)]
    output: OutputConfig = OutputConfig()
    seed: Annotated[int, Field(ge=0, lt=2**64)] = 0

    @field_validator("tasks", mode="before")
    @classmethod
    def _expand_task_names(cls, v):
        if isinstance(v, list):
            return [{"type": t} if isinstance(t, str) else t for t in v]
        return v


@dataclass(frozen=True)
class ConfigIssue:
    path: str
    field: str
    reason: str

    def __str__(self):
        return f"{self.path}: {self.reason}"


class ConfigValidationError(ConfigError):
    def __init__(self, issues: list[ConfigIssue]):
        self.issues = issues
        super().__init__("; ".join(str(i) for i in issues))


def _loc_path(loc) -> str:
    out = ""
    for part in loc:
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += ("." if out else "") + str(part)
    return out


def parse_config(data) -> ExperimentConfig:
    """Validate a decoded JSON document; raises :class:`ConfigValidationError`."""
    try:
        cfg = ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        issues = []
        for err in exc.errors():
            # drop pydantic's union/tag markers so paths read like JSON paths
            loc = [p for p in err["loc"] if not (isinstance(p, str) and ("[" in p or p in ("str", "TaskConfig")))]
            path = _loc_path(loc) or "<root>"
            field = str(loc[-1]) if loc else ""
            issues.append(ConfigIssue(path, field, err["msg"]))
        raise ConfigValidationError(issues) from None
    build(cfg)
    return cfg


def validate_config(path) -> ExperimentConfig:
    """Read and fully validate a UTF-8 JSON config file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigValidationError([ConfigIssue(str(p), "", f"cannot read config: {exc}")]) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigValidationError([ConfigIssue(str(p), "", f"invalid JSON: {exc}")]) from None
    return parse_config(data)


def to_dict(cfg: ExperimentConfig) -> dict:
    return cfg.model_dump(mode="json", exclude_none=True)


def serialize(cfg: ExperimentConfig) -> str:
    return json.dumps(to_dict(cfg), indent=2, sort_keys=True) + "\n"


def config_digest(cfg: ExperimentConfig) -> str:
    """sha256 (first 16 hex digits) of the canonical config, output location excluded."""
    data = to_dict(cfg)
    data.pop("output", None)
    canon = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class Experiment:
    config: ExperimentConfig
    model: BayesianModel
    grid: QuadratureGrid
    estimator: Optional[EstimatorTable]
    estimator_error: Optional[str]
    digest: str

    @property
    def family(self) -> ParametricFamily:
        return self.model.family


def _tuple2(rows):
    return None if rows is None else tuple(tuple(r) for r in rows)


def build(cfg: ExperimentConfig) -> Experiment:
    """Construct model, grid and estimator; config-level failures become ConfigValidationError."""
    fc, pc = cfg.family, cfg.prior
    pspec = PriorSpec(pc.type, tuple(tuple(b) for b in pc.domain),
                      None if pc.a is None else tuple(pc.a), None if pc.b is None else tuple(pc.b),
                      _tuple2(pc.knots), _tuple2(pc.values))
    try:
        prior = prior_from_spec(pspec)
    except (ConfigError, DomainError, PriorError) as exc:
        raise ConfigValidationError([ConfigIssue("prior", "prior", str(exc))]) from None
    fspec = FamilySpec(fc.type, fc.d, fc.n, None if fc.base is None else tuple(fc.base), _tuple2(fc.features))
    try:
        family = family_from_spec(fspec, prior.domain)
    except (ConfigError, DomainError) as exc:
        where = "prior.domain" if "interior-safe" in str(exc) or "parameters but the domain" in str(exc) else "family"
        raise ConfigValidationError([ConfigIssue(where, where.split(".")[-1], str(exc))]) from None
    model = BayesianModel(family, prior)

    if cfg.grid is None:
        grid = default_grid(prior.domain)
    else:
        try:
            grid = QuadratureGrid.build(cfg.grid.rule, cfg.grid.n, prior.domain.boxes)
        except ConfigError as exc:
            raise ConfigValidationError([ConfigIssue("grid.n", "n", str(exc))]) from None

    est, est_err = None, None
    if cfg.estimator.type == "table":
        if cfg.estimator.values is None:
            raise ConfigValidationError([ConfigIssue("estimator.values", "values", "table estimator needs values")])
        est = EstimatorTable(cfg.estimator.values)
        if est.values.shape != (family.k, family.d):
            raise ConfigValidationError([ConfigIssue(
                "estimator.values", "values", f"table must be {family.k} x {family.d}, got {est.values.shape}")])
    else:
        try:
            est = builtin_estimator(family)
        except ConfigError as exc:
            est_err = str(exc)

    issues = []
    for i, t in enumerate(cfg.tasks):
        if t.type in ("bound", "reductions") and est is None:
            issues.append(ConfigIssue(f"tasks[{i}]", "type", est_err or "no estimator"))
        for j, th in enumerate(t.thetas or []):
            if len(th) != family.k:
                issues.append(ConfigIssue(f"tasks[{i}].thetas[{j}]", "thetas", f"expected {family.k} coordinates"))
        for j, pair in enumerate(t.pairs or []):
            if any(len(th) != family.k for th in pair):
                issues.append(ConfigIssue(f"tasks[{i}].pairs[{j}]", "pairs", f"expected {family.k} coordinates"))
    if issues:
        raise ConfigValidationError(issues)
    return Experiment(cfg, model, grid, est, est_err, config_digest(cfg))
