"""Inequality evaluators over correlation-and-variance profiles.

Every inequality here is plain arithmetic on a CorrelationProfile: six
pairwise correlations E(X,Y) and four variances.  The same evaluators apply
unchanged to quantum profiles, finite hidden-variable profiles, and raw
user-supplied profiles, because the underlying bound is a property of the
numbers alone.

The general form bounds the combination E(A,C) + E(A,D) - E(B,C) - E(B,D):

    combination^2 <= (varA + varB - 2 E(A,B)) * (varC + varD + 2 E(C,D))

and the dispersion-free form is its zero-variance specialization

    combination^2 + 4 E(A,B) E(C,D) <= 0.

The term kernels accept scalars or numpy arrays so searches can evaluate
whole lattices in one shot with identical arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .geometry import Direction, DotProductConfig, gram_of

INEQUALITY_IDS = (
    "general",
    "dispersion_free",
    "epr_general",
    "epr_dispersion_free",
    "ghz_general",
    "ghz_dispersion_free",
    "chsh",
)

#: A verdict is "violated" only when margin exceeds this, so roundoff at a
#: saturated bound never reads as a violation.
VIOLATION_TOL = 1e-9

VARIANCE_TOL = 1e-12

_CLOSED_FORM_MODES = ("general", "dispersion_free")


@dataclass(frozen=True)
class CorrelationProfile:
    """Six pairwise correlations and four variances of observables A, B, C, D.

    Correlations are mean-subtracted: E(X,Y) = <XY> - <X><Y> (symmetrized
    when X and Y do not commute).  Variances must be nonnegative.
    """

    e_ac: float
    e_ad: float
    e_bc: float
    e_bd: float
    e_ab: float
    e_cd: float
    var_a: float
    var_b: float
    var_c: float
    var_d: float

    def __post_init__(self) -> None:
        for field in fields(self):
            value = float(getattr(self, field.name))
            object.__setattr__(self, field.name, value)
            if not np.isfinite(value):
                raise ValueError(f"profile field {field.name} must be finite, got {value!r}")
            if field.name.startswith("var_") and value < -VARIANCE_TOL:
                raise ValueError(f"variance {field.name} must be nonnegative, got {value!r}")

    def as_dict(self) -> dict[str, float]:
        return {field.name: getattr(self, field.name) for field in fields(self)}


@dataclass(frozen=True)
class InequalityVerdict:
    """One evaluated inequality: sides, margin = lhs - rhs, and the violation flag."""

    inequality_id: str
    lhs: float
    rhs: float
    margin: float
    violated: bool

    def as_dict(self) -> dict:
        return {
            "inequality": self.inequality_id,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "violated": self.violated,
        }


def make_verdict(
    inequality_id: str, lhs: float, rhs: float, tolerance: float = VIOLATION_TOL
) -> InequalityVerdict:
    if inequality_id not in INEQUALITY_IDS:
        raise ValueError(f"unknown inequality id {inequality_id!r}, expected one of {INEQUALITY_IDS}")
    lhs = float(lhs)
    rhs = float(rhs)
    margin = lhs - rhs
    return InequalityVerdict(inequality_id, lhs, rhs, margin, bool(margin > tolerance))


# ---------------------------------------------------------------------------
# Term kernels: scalar or ndarray inputs, identical arithmetic either way.


def correlation_combination(e_ac, e_ad, e_bc, e_bd):
    return e_ac + e_ad - e_bc - e_bd


def general_terms(e_ac, e_ad, e_bc, e_bd, e_ab, e_cd, var_a=1.0, var_b=1.0, var_c=1.0, var_d=1.0):
    """lhs and rhs of the general bound; unit variances by default."""
    combination = correlation_combination(e_ac, e_ad, e_bc, e_bd)
    lhs = combination * combination
    rhs = (var_a + var_b - 2.0 * e_ab) * (var_c + var_d + 2.0 * e_cd)
    return lhs, rhs


def dispersion_free_terms(e_ac, e_ad, e_bc, e_bd, e_ab, e_cd):
    """lhs of the dispersion-free bound; rhs is identically zero."""
    combination = correlation_combination(e_ac, e_ad, e_bc, e_bd)
    lhs = combination * combination + 4.0 * e_ab * e_cd
    # squared term keeps the zero rhs at +0.0 for any sign of the combination
    return lhs, combination * combination * 0.0


def chsh_terms(e_ac, e_ad, e_bc, e_bd):
    """CHSH with the +++- sign convention: |eAC + eAD + eBC - eBD| against 2."""
    lhs = abs(e_ac + e_ad + e_bc - e_bd)
    return lhs, lhs * 0.0 + 2.0


def epr_correlation_terms(ab, ac, ad, bc, bd, cd):
    """Singlet correlations from dot products: E(A,C) = -a.c etc., E(A,B) = +a.b, E(C,D) = +c.d."""
    return -ac, -ad, -bc, -bd, ab, cd


def ghz_correlation_terms(alpha, beta, gamma, delta):
    """Four-spin pair-product correlations from planar angles (radians)."""
    e_ac = -np.cos(2.0 * (alpha - gamma))
    e_ad = -np.cos(2.0 * (alpha - delta))
    e_bc = -np.cos(2.0 * (beta - gamma))
    e_bd = -np.cos(2.0 * (beta - delta))
    e_ab = np.cos(2.0 * (alpha - beta))
    e_cd = np.cos(2.0 * (gamma - delta))
    return e_ac, e_ad, e_bc, e_bd, e_ab, e_cd


# ---------------------------------------------------------------------------
# Profile-level verdicts.


def general_verdict(
    profile: CorrelationProfile,
    tolerance: float = VIOLATION_TOL,
    inequality_id: str = "general",
) -> InequalityVerdict:
    lhs, rhs = general_terms(
        profile.e_ac,
        profile.e_ad,
        profile.e_bc,
        profile.e_bd,
        profile.e_ab,
        profile.e_cd,
        profile.var_a,
        profile.var_b,
        profile.var_c,
        profile.var_d,
    )
    return make_verdict(inequality_id, lhs, rhs, tolerance)


def dispersion_free_verdict(
    profile: CorrelationProfile,
    tolerance: float = VIOLATION_TOL,
    inequality_id: str = "dispersion_free",
) -> InequalityVerdict:
    lhs, rhs = dispersion_free_terms(
        profile.e_ac, profile.e_ad, profile.e_bc, profile.e_bd, profile.e_ab, profile.e_cd
    )
    return make_verdict(inequality_id, lhs, rhs, tolerance)


def chsh_verdict(
    profile: CorrelationProfile,
    tolerance: float = VIOLATION_TOL,
    inequality_id: str = "chsh",
) -> InequalityVerdict:
    lhs, rhs = chsh_terms(profile.e_ac, profile.e_ad, profile.e_bc, profile.e_bd)
    return make_verdict(inequality_id, lhs, rhs, tolerance)


def verdict_for_profile(
    profile: CorrelationProfile,
    inequality_id: str,
    tolerance: float = VIOLATION_TOL,
) -> InequalityVerdict:
    """Evaluate any known inequality id on a profile.

    The id picks the formula family: chsh, the dispersion-free form, or the
    general variance-weighted form.  Prefixed ids keep their label in the
    verdict but share the generic formulas.
    """
    if inequality_id not in INEQUALITY_IDS:
        raise ValueError(f"inequality must be one of {INEQUALITY_IDS}, got {inequality_id!r}")
    if inequality_id == "chsh":
        return chsh_verdict(profile, tolerance)
    if inequality_id.endswith("dispersion_free"):
        return dispersion_free_verdict(profile, tolerance, inequality_id)
    return general_verdict(profile, tolerance, inequality_id)


# ---------------------------------------------------------------------------
# Closed forms for the two entangled-state families.  These are independent
# of the matrix route in the quantum module; tests hold the two within 1e-12.


def epr_profile_from_dots(dots: DotProductConfig) -> CorrelationProfile:
    """Singlet-state profile implied by pairwise dot products; all variances are 1."""
    e_ac, e_ad, e_bc, e_bd, e_ab, e_cd = epr_correlation_terms(
        dots.ab, dots.ac, dots.ad, dots.bc, dots.bd, dots.cd
    )
    return CorrelationProfile(e_ac, e_ad, e_bc, e_bd, e_ab, e_cd, 1.0, 1.0, 1.0, 1.0)


def ghz_profile_from_angles(
    alpha: float, beta: float, gamma: float, delta: float
) -> CorrelationProfile:
    """Four-spin pair-product profile at planar angles (radians); all variances are 1."""
    e_ac, e_ad, e_bc, e_bd, e_ab, e_cd = ghz_correlation_terms(alpha, beta, gamma, delta)
    return CorrelationProfile(e_ac, e_ad, e_bc, e_bd, e_ab, e_cd, 1.0, 1.0, 1.0, 1.0)


def _closed_form_ids(family: str, mode: str) -> str:
    if mode not in _CLOSED_FORM_MODES:
        raise ValueError(f"mode must be one of {_CLOSED_FORM_MODES}, got {mode!r}")
    return f"{family}_{mode}"


def epr_closed_form_from_dots(
    dots: DotProductConfig, mode: str, tolerance: float = VIOLATION_TOL
) -> InequalityVerdict:
    """Evaluate the singlet inequality directly from six dot products.

    mode "dispersion_free": (ac + ad - bc - bd)^2 + 4 ab cd <= 0.
    mode "general":         (ac + ad - bc - bd)^2 <= 4 (1 - ab)(1 + cd).
    """
    inequality_id = _closed_form_ids("epr", mode)
    profile = epr_profile_from_dots(dots)
    if mode == "general":
        return general_verdict(profile, tolerance, inequality_id)
    return dispersion_free_verdict(profile, tolerance, inequality_id)


def epr_closed_form(
    a: Direction,
    b: Direction,
    c: Direction,
    d: Direction,
    mode: str,
    tolerance: float = VIOLATION_TOL,
) -> InequalityVerdict:
    return epr_closed_form_from_dots(gram_of(a, b, c, d), mode, tolerance)


def ghz_closed_form(
    alpha: float,
    beta: float,
    gamma: float,
    delta: float,
    mode: str,
    tolerance: float = VIOLATION_TOL,
) -> InequalityVerdict:
    """Evaluate the four-spin inequality from planar angles (radians)."""
    inequality_id = _closed_form_ids("ghz", mode)
    profile = ghz_profile_from_angles(alpha, beta, gamma, delta)
    if mode == "general":
        return general_verdict(profile, tolerance, inequality_id)
    return dispersion_free_verdict(profile, tolerance, inequality_id)
