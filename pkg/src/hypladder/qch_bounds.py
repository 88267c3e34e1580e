"""Explicit constant chain for quasiconformally homogeneous ladder surfaces.

Starting from a dilatation K, a base curve length L, a fellow-traveling
constant R and an injectivity-radius lower bound, this module propagates the
closed-form spacing/separation constants, the area-window index m, and the
short-pants length bound, and assembles them into a BoundReport.

The injectivity-radius bound is a required input: the lower bound depending
only on K comes from an external theorem with no usable formula, so nothing
here guesses it.  Likewise the area constant A is surface-dependent and is
reported as not computed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ArccoshDomainError, InvalidDilatation, NonPositiveLength
from .hyp_core import R_FORMULA_NAME, collar_width, quasi_geodesic_stability_R

LOG4 = math.log(4.0)


def qi_constants(K: float) -> tuple[float, float]:
    """(multiplicative, additive) quasi-isometry constants of a
    K-quasiconformal self-map: (K, K*log4)."""
    if K < 1.0:
        raise InvalidDilatation(f"dilatation must be >= 1, got {K}")
    return K, K * LOG4


@dataclass(frozen=True)
class QCHParams:
    """Inputs of the constant chain.

    R defaults to the stability bound of hyp_core; pass an explicit value to
    override.  C is always K*log4.
    """

    K: float
    L: float
    m_inj: float
    R: float | None = None
    r_formula: str = R_FORMULA_NAME

    def __post_init__(self):
        if self.K < 1.0:
            raise InvalidDilatation(f"dilatation must be >= 1, got {self.K}")
        if self.L <= 0:
            raise NonPositiveLength(f"base curve length must be positive, got {self.L}")
        if self.m_inj <= 0:
            raise NonPositiveLength(
                f"injectivity radius bound must be positive, got {self.m_inj}"
            )
        if self.R is None:
            object.__setattr__(
                self, "R", quasi_geodesic_stability_R(self.K, self.L)
            )
        elif self.R < 0:
            raise ValueError(f"fellow-traveling constant must be >= 0, got {self.R}")
        else:
            object.__setattr__(self, "r_formula", "user-supplied")

    @property
    def C(self) -> float:
        return self.K * LOG4


def spacing(params: QCHParams) -> float:
    """Arc-length spacing 3*(R + K*L) between consecutive sample points along
    the distance-minimizing geodesic."""
    return 3.0 * (params.R + params.K * params.L)


def separation_bounds(params: QCHParams) -> tuple[float, float, float, float]:
    """Per-index separation constants (a, rho_upper, hausdorff_factor, b).

    a = R + 2KL and rho_upper = 5R + 7KL/2 bound the orthogeodesic distance
    between the special curves per unit of index difference; the Hausdorff
    distance picks up the collar factor KL/(2*eta(L/K)) + 1, giving
    b = factor * rho_upper.
    """
    K, L, R = params.K, params.L, params.R
    a = R + 2.0 * K * L
    rho_upper = 5.0 * R + 3.5 * K * L
    hausdorff_factor = K * L / (2.0 * collar_width(L / K)) + 1.0
    b = hausdorff_factor * rho_upper
    return a, rho_upper, hausdorff_factor, b


def area_window_m(params: QCHParams) -> int:
    """Smallest integer strictly greater than (K/a)*(b + C + R)."""
    a, _, _, b = separation_bounds(params)
    bound = (params.K / a) * (b + params.C + params.R)
    return math.floor(bound) + 1


def shortpants_step(M: float, m_inj: float) -> float:
    """One elementary-move step of the cuff-length bound:
    M -> M + arccosh(cosh(M/2)/sinh(m_inj/2))."""
    if M <= 0:
        raise NonPositiveLength(f"length bound must be positive, got {M}")
    if m_inj <= 0:
        raise NonPositiveLength(
            f"injectivity radius bound must be positive, got {m_inj}"
        )
    ratio = math.cosh(M / 2.0) / math.sinh(m_inj / 2.0)
    if ratio < 1.0:
        raise ArccoshDomainError(
            f"cosh(M/2)/sinh(m_inj/2) = {ratio} < 1: no orthogeodesic bound",
            ratio=ratio,
        )
    return M + math.acosh(ratio)


def shortpants_global(M: float, m_inj: float, diameter: int) -> float:
    """Iterate shortpants_step along a modular-pants-graph path of the given
    length; diameter 0 returns M unchanged."""
    if diameter < 0:
        raise ValueError(f"diameter must be >= 0, got {diameter}")
    bound = M
    for _ in range(diameter):
        bound = shortpants_step(bound, m_inj)
    return bound


@dataclass(frozen=True)
class BoundReport:
    """Full constant chain for one parameter set."""

    params: QCHParams
    C: float
    D: float
    a: float
    rho_upper: float
    hausdorff_factor: float
    b: float
    m_window: int
    pants_bound_per_step: float
    notes: str

    def to_dict(self) -> dict:
        return {
            "inputs": {
                "K": self.params.K,
                "L": self.params.L,
                "R": self.params.R,
                "m_inj": self.params.m_inj,
            },
            "constants": {
                "C": self.C,
                "D": self.D,
                "a": self.a,
                "rho_upper": self.rho_upper,
                "hausdorff_factor": self.hausdorff_factor,
                "b": self.b,
                "m_window": self.m_window,
                "pants_bound_per_step": self.pants_bound_per_step,
                "area_A": "surface-dependent, not computed",
            },
            "provenance": {"r_formula": self.notes},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def report(params: QCHParams) -> BoundReport:
    """Assemble every constant a verifier needs for the given parameters.

    pants_bound_per_step is the one-step short-pants increment starting from
    the cuff-length bound K*L of the special curves.
    """
    a, rho_upper, hausdorff_factor, b = separation_bounds(params)
    return BoundReport(
        params=params,
        C=params.C,
        D=spacing(params),
        a=a,
        rho_upper=rho_upper,
        hausdorff_factor=hausdorff_factor,
        b=b,
        m_window=area_window_m(params),
        pants_bound_per_step=shortpants_step(params.K * params.L, params.m_inj),
        notes=params.r_formula,
    )


def report_from_json(text: str) -> dict:
    return json.loads(text)
