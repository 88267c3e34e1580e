"""Hyperbolic trigonometry and isometry-matrix primitives.

Works in the upper half-plane model.  Isometries are 2x2 real unimodular
matrices acting by fractional linear transformations; traces give
translation lengths directly via ``2*arccosh(|tr|/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegeneratePentagon,
    EmptyAnnulus,
    InvalidDilatation,
    NonPositiveLength,
    NotHyperbolic,
)

ARCSINH_1 = math.asinh(1.0)

# thinness constant of the hyperbolic plane used by the stability bound
DELTA_H2 = ARCSINH_1


def _det2(a, b, c, d):
    """Exact 2x2 determinant; a*d - b*c in float cancels catastrophically
    for frame matrices with large entries."""
    return float(Fraction(a) * Fraction(d) - Fraction(b) * Fraction(c))


@dataclass(frozen=True)
class MobiusMap:
    """Unimodular 2x2 real matrix, an orientation-preserving isometry of H^2.

    Normalized on construction to determinant 1 with trace >= 0 (the sign of
    the matrix is immaterial in the isometry group).
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = _det2(self.a, self.b, self.c, self.d)
        # long products of unimodular matrices with large entries carry a
        # determinant drift of order |entries|^2 * eps; accept that and only
        # rescale matrices that are genuinely non-normalized
        drift = 64.0 * 2.3e-16 * max(1.0, self.max_entry() ** 2)
        if abs(det - 1.0) <= drift:
            s = 1.0
        elif det > 0:
            s = 1.0 / math.sqrt(det)
        else:
            raise ValueError(f"matrix must have positive determinant, got {det}")
        if s * (self.a + self.d) < 0:
            s = -s
        object.__setattr__(self, "a", self.a * s)
        object.__setattr__(self, "b", self.b * s)
        object.__setattr__(self, "c", self.c * s)
        object.__setattr__(self, "d", self.d * s)

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1.0, 0.0, 0.0, 1.0)

    @staticmethod
    def translation(t: float) -> "MobiusMap":
        """Translation by t along the imaginary axis (0 -> infinity)."""
        e = math.exp(t / 2.0)
        return MobiusMap(e, 0.0, 0.0, 1.0 / e)

    @staticmethod
    def perp_translation(d: float) -> "MobiusMap":
        """Translation by d along the unit semicircle (-1 -> 1), through i."""
        ch, sh = math.cosh(d / 2.0), math.sinh(d / 2.0)
        return MobiusMap(ch, sh, sh, ch)

    @staticmethod
    def rotation(phi: float) -> "MobiusMap":
        """Rotation about i; positive phi turns the forward direction left."""
        c, s = math.cos(phi / 2.0), math.sin(phi / 2.0)
        return MobiusMap(c, s, -s, c)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def trace(self) -> float:
        return self.a + self.d

    def max_entry(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def apply(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def dist_to_identity(self) -> float:
        """min over signs of the sup-norm distance to +-I."""
        plus = max(abs(self.a - 1), abs(self.b), abs(self.c), abs(self.d - 1))
        minus = max(abs(self.a + 1), abs(self.b), abs(self.c), abs(self.d + 1))
        return min(plus, minus)

    def fixed_points(self) -> tuple[float, float]:
        """Real fixed points (attracting last) of a hyperbolic element."""
        if abs(self.trace()) <= 2.0:
            raise NotHyperbolic("fixed points on the boundary require |trace| > 2")
        disc = math.sqrt((self.a - self.d) ** 2 + 4.0 * self.b * self.c)
        if self.c == 0:
            x1 = -self.b / (self.a - self.d)
            return (x1, math.inf) if abs(self.a) > abs(self.d) else (math.inf, x1)
        x1 = (self.a - self.d - disc) / (2.0 * self.c)
        x2 = (self.a - self.d + disc) / (2.0 * self.c)
        # derivative |a - c x|^{-2} < 1 at the attracting point
        if abs(self.a - self.c * x2) < 1.0:
            return (x1, x2)
        return (x2, x1)


def conjugate_exact(f: MobiusMap, x: MobiusMap) -> MobiusMap:
    """f @ x @ f^{-1} evaluated in exact rational arithmetic.

    Floats are exact rationals, so f @ x @ adj(f) / det(f) can be computed
    without rounding until the final conversion; this preserves the trace of
    x exactly even when f has very large entries, where naive float
    conjugation cancels catastrophically.
    """
    fa, fb, fc, fd = (Fraction(v) for v in (f.a, f.b, f.c, f.d))
    xa, xb, xc, xd = (Fraction(v) for v in (x.a, x.b, x.c, x.d))
    det = fa * fd - fb * fc
    # rows of f @ x
    ra, rb = fa * xa + fb * xc, fa * xb + fb * xd
    rc, rd = fc * xa + fd * xc, fc * xb + fd * xd
    # multiply by adj(f) = [[fd, -fb], [-fc, fa]] and divide by det
    return MobiusMap(
        float((ra * fd - rb * fc) / det),
        float((-ra * fb + rb * fa) / det),
        float((rc * fd - rd * fc) / det),
        float((-rc * fb + rd * fa) / det),
    )


def conjugate_exact_trace(f: MobiusMap, x: MobiusMap) -> float:
    """Trace of f @ x @ f^{-1}, rounded only once.

    The conjugated matrix can have entries so large that summing their float
    roundings destroys the trace; the exact rational sum does not.
    """
    fa, fb, fc, fd = (Fraction(v) for v in (f.a, f.b, f.c, f.d))
    xa, xb, xc, xd = (Fraction(v) for v in (x.a, x.b, x.c, x.d))
    det = fa * fd - fb * fc
    ra, rb = fa * xa + fb * xc, fa * xb + fb * xd
    rc, rd = fc * xa + fd * xc, fc * xb + fd * xd
    return abs(float(((ra * fd - rb * fc) + (-rc * fb + rd * fa)) / det))


def hyp_dist(z1: complex, z2: complex) -> float:
    """Hyperbolic distance between two points of the upper half-plane."""
    num = abs(z1 - z2) ** 2
    return math.acosh(1.0 + num / (2.0 * z1.imag * z2.imag))


@dataclass(frozen=True)
class PentagonSolution:
    """Side lengths (b, b, a, c, a) of the right-angled pentagon with two
    consecutive sides of equal length b."""

    b: float
    a: float
    c: float


def solve_pentagon(b: float) -> PentagonSolution:
    """Solve the right-angled pentagon with two consecutive sides of length b.

    Uses the relations cosh(c) = sinh(b)^2 and cosh(b) = sinh(a)*sinh(c).
    Degenerates when b <= arcsinh(1), where cosh(c) <= 1 forces c <= 0.
    """
    if b <= ARCSINH_1:
        raise DegeneratePentagon(
            f"b must exceed arcsinh(1) ~ {ARCSINH_1:.6f}, got {b}"
        )
    c = math.acosh(math.sinh(b) ** 2)
    a = math.asinh(math.cosh(b) / math.sinh(c))
    return PentagonSolution(b=b, a=a, c=c)


def polygon_closure_residual(sides: list[float]) -> float:
    """Closure defect of the right-angled polygon with the given side lengths.

    Walks the boundary (forward along each side, quarter left turn at each
    corner) and returns the sup-norm distance of the total holonomy to +-I.
    Zero exactly when the sides close up into a right-angled polygon.
    """
    g = MobiusMap.identity()
    turn = MobiusMap.rotation(math.pi / 2.0)
    for s in sides:
        g = g @ MobiusMap.translation(s) @ turn
    return g.dist_to_identity()


def pentagon_closure_residual(p: PentagonSolution) -> float:
    return polygon_closure_residual([p.b, p.b, p.a, p.c, p.a])


def pentagon_vertices(p: PentagonSolution) -> list[complex]:
    """Embed the pentagon in H^2; vertices in boundary order (b, b, a, c, a).

    Vertex k is the start point of side k; vertex 0 sits at i with the first
    b-side heading up the imaginary axis.
    """
    g = MobiusMap.identity()
    turn = MobiusMap.rotation(math.pi / 2.0)
    pts = []
    for s in [p.b, p.b, p.a, p.c, p.a]:
        pts.append(g.apply(1j))
        g = g @ MobiusMap.translation(s) @ turn
    return pts


def collar_width(length: float) -> float:
    """Half-width of the embedded collar about a simple closed geodesic."""
    if length <= 0:
        raise NonPositiveLength(f"geodesic length must be positive, got {length}")
    return math.asinh(1.0 / math.sinh(length / 2.0))


def collar_involution(length: float) -> float:
    """The doubled-collar map l -> 2*eta(l); an involution on (0, inf).

    sinh(eta(l)) * sinh(l/2) = 1 is symmetric in the two half-lengths, so
    applying the map twice returns l.  Fixed point at l = 2*arcsinh(1).
    """
    return 2.0 * collar_width(length)


def annulus_modulus(r_inner: float, r_outer: float) -> float:
    """Modulus of the round annulus r_inner < |z| < r_outer."""
    if r_inner <= 0 or r_outer <= r_inner:
        raise EmptyAnnulus(
            f"need 0 < r_inner < r_outer, got ({r_inner}, {r_outer})"
        )
    return math.log(r_outer / r_inner) / (2.0 * math.pi)


def geodesic_length_from_trace(t: float) -> float:
    """Translation length of a hyperbolic matrix from its trace."""
    if abs(t) <= 2.0:
        raise NotHyperbolic(f"|trace| must exceed 2 for a hyperbolic element, got {t}")
    return 2.0 * math.acosh(abs(t) / 2.0)


def trace_from_geodesic_length(length: float) -> float:
    if length <= 0:
        raise NonPositiveLength(f"length must be positive, got {length}")
    return 2.0 * math.cosh(length / 2.0)


#: name of the stability bound used by :func:`quasi_geodesic_stability_R`,
#: echoed in every BoundReport so downstream numbers carry their provenance.
R_FORMULA_NAME = "morse-stability:K^2*(2*K*log4 + 5*arcsinh1), 0 at K=1"


def quasi_geodesic_stability_R(K: float, length: float) -> float:
    """Fellow-traveling constant for images of closed geodesics.

    A K-quasiconformal self-map of a hyperbolic surface distorts a closed
    geodesic of the given length into a (K, K*log4)-quasi-geodesic; this
    returns an upper bound R on the Hausdorff distance between that image and
    its geodesic straightening.

    The bound used is the Morse-lemma-type constant

        R(K) = K^2 * (2*eps + 5*delta),   eps = K*log(4),  delta = arcsinh(1),

    with R(1) = 0 exactly (1-quasiconformal self-maps are isometries, so
    images of geodesics are geodesics).  delta is a thinness constant of the
    hyperbolic plane.  The bound is deliberately generous; the test suite
    cross-checks it against sampled piecewise-geodesic quasi-geodesics.  It
    does not use the length argument (a bound uniform in the length is in
    particular a valid length-dependent bound).
    """
    if K < 1.0:
        raise InvalidDilatation(f"dilatation must be >= 1, got {K}")
    if length <= 0:
        raise NonPositiveLength(f"geodesic length must be positive, got {length}")
    if K == 1.0:
        return 0.0
    eps = K * math.log(4.0)
    return K * K * (2.0 * eps + 5.0 * DELTA_H2)
