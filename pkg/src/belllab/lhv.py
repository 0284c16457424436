"""Finite weighted hidden-variable models and their correlation statistics.

A model assigns each hidden point a probability weight and a real value for
each of the four observables A, B, C, D.  Means, variances and covariances
are the weighted ensemble statistics; the Schwarz witness exposes the inner
product and norms whose Cauchy-Schwarz relation produces the general
inequality, so the bound can be inspected and not just asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .inequalities import CorrelationProfile

WEIGHT_SUM_TOL = 1e-12
DISPERSION_TOL = 1e-12

OBSERVABLES = ("A", "B", "C", "D")

_TABLE_FIELDS = {"A": "a", "B": "b", "C": "c", "D": "d"}


@dataclass(frozen=True, eq=False)
class LhvModel:
    """Finite hidden-parameter space: weights plus one value table per observable.

    Weights must be nonnegative and already normalized; an off-by-more-than
    1e-12 total is rejected rather than silently rescaled.
    """

    weights: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    bound: float | None = None

    def __post_init__(self) -> None:
        arrays = {}
        for name in ("weights", "a", "b", "c", "d"):
            try:
                arr = np.asarray(getattr(self, name), dtype=float)
            except (TypeError, ValueError) as exc:
                raise ValueError(f"model field {name} is not numeric: {exc}") from exc
            if arr.ndim != 1:
                raise ValueError(f"model field {name} must be one-dimensional")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"model field {name} contains non-finite values")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
            arrays[name] = arr
        n = arrays["weights"].size
        if n == 0:
            raise ValueError("model needs at least one hidden point")
        for name in ("a", "b", "c", "d"):
            if arrays[name].size != n:
                raise ValueError(
                    f"table {name.upper()} has {arrays[name].size} values for {n} weights"
                )
        if np.any(arrays["weights"] < 0.0):
            raise ValueError("weights must be nonnegative")
        total = float(arrays["weights"].sum())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1 within {WEIGHT_SUM_TOL}, got {total!r}")
        if self.bound is not None:
            limit = float(self.bound)
            if not limit > 0.0:
                raise ValueError("bound must be positive")
            for name in ("a", "b", "c", "d"):
                peak = float(np.max(np.abs(arrays[name]))) if n else 0.0
                if peak > limit + 1e-12:
                    raise ValueError(f"table {name.upper()} exceeds declared bound {limit!r}")

    @property
    def n_points(self) -> int:
        return self.weights.size

    def table(self, which: str) -> np.ndarray:
        if which not in _TABLE_FIELDS:
            raise ValueError(f"unknown observable {which!r}, expected one of {OBSERVABLES}")
        return getattr(self, _TABLE_FIELDS[which])

    @classmethod
    def from_dict(cls, data: dict) -> "LhvModel":
        if not isinstance(data, dict):
            raise ValueError("hidden-variable model must be a JSON object")
        required = {"weights", "A", "B", "C", "D"}
        missing = required - data.keys()
        if missing:
            raise ValueError(f"hidden-variable model is missing keys {sorted(missing)}")
        extra = data.keys() - required - {"bound"}
        if extra:
            raise ValueError(f"hidden-variable model has unexpected keys {sorted(extra)}")
        bound = data.get("bound")
        return cls(
            weights=data["weights"],
            a=data["A"],
            b=data["B"],
            c=data["C"],
            d=data["D"],
            bound=None if bound is None else float(bound),
        )

    def to_dict(self) -> dict:
        out = {
            "weights": [float(v) for v in self.weights],
            "A": [float(v) for v in self.a],
            "B": [float(v) for v in self.b],
            "C": [float(v) for v in self.c],
            "D": [float(v) for v in self.d],
        }
        if self.bound is not None:
            out["bound"] = float(self.bound)
        return out


class SchwarzWitness(NamedTuple):
    """Inner product and squared norms behind the general bound."""

    inner: float
    norm_u: float
    norm_v: float


def lhv_mean(model: LhvModel, which: str) -> float:
    table = model.table(which)
    return float(model.weights @ table)


def lhv_variance(model: LhvModel, which: str) -> float:
    """Weighted variance sum(rho * (O - mean)^2); exactly nonnegative."""
    table = model.table(which)
    deviation = table - float(model.weights @ table)
    return float(model.weights @ (deviation * deviation))


def lhv_covariance(model: LhvModel, which_x: str, which_y: str) -> float:
    """Weighted covariance sum(rho * X * Y) - mean(X) * mean(Y)."""
    x = model.table(which_x)
    y = model.table(which_y)
    return float(model.weights @ (x * y)) - lhv_mean(model, which_x) * lhv_mean(model, which_y)


def lhv_profile(model: LhvModel) -> CorrelationProfile:
    return CorrelationProfile(
        e_ac=lhv_covariance(model, "A", "C"),
        e_ad=lhv_covariance(model, "A", "D"),
        e_bc=lhv_covariance(model, "B", "C"),
        e_bd=lhv_covariance(model, "B", "D"),
        e_ab=lhv_covariance(model, "A", "B"),
        e_cd=lhv_covariance(model, "C", "D"),
        var_a=lhv_variance(model, "A"),
        var_b=lhv_variance(model, "B"),
        var_c=lhv_variance(model, "C"),
        var_d=lhv_variance(model, "D"),
    )


def schwarz_witness(model: LhvModel) -> SchwarzWitness:
    """Decompose the general bound into its Cauchy-Schwarz ingredients.

    With u = (A - B) - mean(A - B) and v = (C + D) - mean(C + D) under the
    weight measure, returns (sum(rho u v), sum(rho u^2), sum(rho v^2)).
    inner equals the correlation combination, norm_u equals
    varA + varB - 2 E(A,B), norm_v equals varC + varD + 2 E(C,D), and
    inner^2 <= norm_u * norm_v is the inequality itself.
    """
    diff = model.a - model.b
    total = model.c + model.d
    u = diff - float(model.weights @ diff)
    v = total - float(model.weights @ total)
    inner = float(model.weights @ (u * v))
    norm_u = float(model.weights @ (u * u))
    norm_v = float(model.weights @ (v * v))
    return SchwarzWitness(inner, norm_u, norm_v)


def is_dispersion_free(model: LhvModel, tol: float = DISPERSION_TOL) -> bool:
    """True when every observable has variance at most tol on this model."""
    return all(lhv_variance(model, which) <= tol for which in OBSERVABLES)


def random_model(seed: int, n_points: int, bound: float) -> LhvModel:
    """Deterministic random model: weights uniform then normalized, tables uniform in [-bound, bound].

    The draw order (weights, then tables A..D) is fixed, so one seed always
    yields one model.
    """
    if n_points < 1:
        raise ValueError("n_points must be at least 1")
    if not bound > 0.0:
        raise ValueError("bound must be positive")
    rng = np.random.default_rng(seed)
    weights = rng.random(n_points)
    weights = weights / weights.sum()
    tables = rng.uniform(-bound, bound, size=(4, n_points))
    return LhvModel(
        weights=weights,
        a=tables[0],
        b=tables[1],
        c=tables[2],
        d=tables[3],
        bound=float(bound),
    )
