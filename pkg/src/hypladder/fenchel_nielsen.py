"""Fenchel-Nielsen coordinates and holonomy for ladder surfaces.

A ladder surface is cut into pants along curves a_k, b_k (the rungs) and c_k
(the separating curves): per index k the two pants are

    P_k1 with boundary (c_k, a_k, b_k)   and   P_k2 with boundary (a_k, b_k, c_{k+1}).

Coordinates are windowed over k in [-N, N], one sextuplet
(l_a, theta_a, l_b, theta_b, l_c, theta_c) per k.  Twists are angles in
[0, 2*pi); the arc-length of a twist is theta*length/(2*pi), left twist
positive, measured against the seams fixed by the per-pants orthogeodesic
frames (see TWIST_CONVENTION).  Holonomy of a cuff depends only on a fixed
combinatorial neighborhood, so windowed results are window-stable.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

from .errors import (
    NonPositiveLength,
    NotShiftInvariant,
    NumericalInstability,
)
from .hyp_core import (
    MobiusMap,
    conjugate_exact,
    conjugate_exact_trace,
    geodesic_length_from_trace,
)

TWIST_CONVENTION = (
    "twists are angles in [0,2pi); arc-length twist = theta*length/(2*pi); "
    "left twist positive; seams anchored at the orthogeodesic feet of the "
    "per-pants frames"
)

CURVE_FAMILIES = ("a", "b", "c")

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PantsCuffs:
    """Boundary geodesic lengths of a pair of pants."""

    l1: float
    l2: float
    l3: float

    def __post_init__(self):
        for l in (self.l1, self.l2, self.l3):
            if l <= 0:
                raise NonPositiveLength(f"cuff lengths must be positive, got {l}")


def _orthogeodesic(li: float, lj: float, lk: float) -> float:
    """Length of the orthogeodesic between cuffs i and j (lk opposite)."""
    num = math.cosh(lk / 2.0) + math.cosh(li / 2.0) * math.cosh(lj / 2.0)
    den = math.sinh(li / 2.0) * math.sinh(lj / 2.0)
    return math.acosh(num / den)


def pants_orthogeodesics(cuffs: PantsCuffs) -> tuple[float, float, float]:
    """Orthogeodesic lengths (d_12, d_13, d_23) between the cuff pairs."""
    d12 = _orthogeodesic(cuffs.l1, cuffs.l2, cuffs.l3)
    d13 = _orthogeodesic(cuffs.l1, cuffs.l3, cuffs.l2)
    d23 = _orthogeodesic(cuffs.l2, cuffs.l3, cuffs.l1)
    return d12, d13, d23


def normalize_angle(theta: float) -> tuple[float, int]:
    """Fold an angle into [0, 2*pi); returns (angle, removed full turns)."""
    turns = math.floor(theta / TWO_PI)
    folded = theta - turns * TWO_PI
    if folded >= TWO_PI:  # guard the representable edge cases: the division
        folded -= TWO_PI  # can round up across a multiple of 2*pi ...
        turns += 1
    if folded < 0.0:  # ... or underflow to -0.0 for denormal negatives
        folded += TWO_PI
        turns -= 1
        if folded >= TWO_PI:  # adding 2*pi to a tiny negative rounds back up
            folded = 0.0
            turns += 1
    return folded, turns


@dataclass(frozen=True)
class FNCoordinates:
    """Windowed Fenchel-Nielsen data for a ladder pants decomposition.

    ``coords[k]`` is the sextuplet (l_a, t_a, l_b, t_b, l_c, t_c) at index k
    for k in [-window, window].
    """

    window: int
    coords: dict[int, tuple[float, float, float, float, float, float]]

    def __post_init__(self):
        if self.window < 1:
            raise ValueError(f"window size must be >= 1, got {self.window}")
        for k in range(-self.window, self.window + 1):
            if k not in self.coords:
                raise ValueError(f"missing coordinates at index {k}")
            sextuple = self.coords[k]
            for l in sextuple[0::2]:
                if l <= 0:
                    raise NonPositiveLength(
                        f"length at index {k} must be positive, got {l}"
                    )

    def length(self, family: str, k: int) -> float:
        return self.coords[k][2 * CURVE_FAMILIES.index(family)]

    def twist(self, family: str, k: int) -> float:
        return self.coords[k][2 * CURVE_FAMILIES.index(family) + 1]

    def indices(self):
        return range(-self.window, self.window + 1)

    def curves(self):
        for k in self.indices():
            for family in CURVE_FAMILIES:
                yield family, k


def build_ladder_fn(N: int, lengths=1.0, twists=0.0) -> FNCoordinates:
    """Ladder FN coordinates on the window [-N, N].

    ``lengths`` and ``twists`` are either scalars applied to every curve or
    callables ``f(family, k)``.  Twists are normalized into [0, 2*pi).
    With the defaults this is the model surface whose sextuplets are all
    (1, 0, 1, 0, 1, 0).
    """
    if N < 1:
        raise ValueError(f"window size must be >= 1, got {N}")
    lfun = lengths if callable(lengths) else (lambda fam, k: lengths)
    tfun = twists if callable(twists) else (lambda fam, k: twists)
    coords = {}
    for k in range(-N, N + 1):
        sextuple = []
        for family in CURVE_FAMILIES:
            length = lfun(family, k)
            if length <= 0:
                raise NonPositiveLength(
                    f"length for {family}_{k} must be positive, got {length}"
                )
            sextuple.append(length)
            sextuple.append(normalize_angle(tfun(family, k))[0])
        coords[k] = tuple(sextuple)
    return FNCoordinates(window=N, coords=coords)


def normalize_twists(fn: FNCoordinates) -> tuple[FNCoordinates, dict]:
    """Fold all twists into [0, 2*pi); returns the folded coordinates and the
    integer number of full turns removed per curve."""
    coords = {}
    removed = {}
    for k in fn.indices():
        la, ta, lb, tb, lc, tc = fn.coords[k]
        ta, na = normalize_angle(ta)
        tb, nb = normalize_angle(tb)
        tc, nc = normalize_angle(tc)
        coords[k] = (la, ta, lb, tb, lc, tc)
        removed[("a", k)] = na
        removed[("b", k)] = nb
        removed[("c", k)] = nc
    return FNCoordinates(window=fn.window, coords=coords), removed


_J = MobiusMap(0.0, -1.0, 1.0, 0.0)  # z -> -1/z: reverses the imaginary axis


def _axis_normalizer(X: MobiusMap) -> MobiusMap:
    """Isometry taking the imaginary axis (0 -> inf) onto the axis of X,
    repelling to attracting; X == N @ translation(l) @ N^-1."""
    rep, att = X.fixed_points()
    if att == math.inf:
        return MobiusMap(1.0, rep, 0.0, 1.0)
    if rep == math.inf:
        return MobiusMap(att, -1.0, 1.0, 0.0)
    s = att - rep
    if s <= 0:
        # normalize orientation: scale columns to keep determinant positive
        return MobiusMap(att, -rep, 1.0, -1.0)
    return MobiusMap(att, rep, 1.0, 1.0)


@dataclass(frozen=True)
class PantsHolonomy:
    """Local Fuchsian data of one pair of pants: per-cuff matrices with
    product X1 @ X2 @ X3 = I, and per-cuff axis normalizers."""

    cuffs: tuple  # three (family, k) labels
    lengths: tuple[float, float, float]
    matrices: tuple[MobiusMap, MobiusMap, MobiusMap]
    normalizers: tuple[MobiusMap, MobiusMap, MobiusMap]

    def closure_residual(self) -> float:
        X1, X2, X3 = self.matrices
        return (X1 @ X2 @ X3).dist_to_identity()


def pants_holonomy(cuff_labels, lengths) -> PantsHolonomy:
    """Fuchsian triple of a pair of pants from its three cuff lengths.

    X1 translates along the imaginary axis; X2 along the geodesic at
    orthogeodesic distance d_12 across the unit semicircle; X3 closes the
    relation X1 @ X2 @ X3 = I and has |trace| = 2*cosh(l3/2) by the
    right-angled hexagon identities.
    """
    l1, l2, l3 = lengths
    cuffs = PantsCuffs(l1, l2, l3)
    d12, _, _ = pants_orthogeodesics(cuffs)
    P = MobiusMap.perp_translation(d12)
    X1 = MobiusMap.translation(l1)
    X2 = P @ MobiusMap.translation(-l2) @ P.inverse()
    X3 = (X1 @ X2).inverse()
    N1 = MobiusMap.identity()
    N2 = P @ _J  # X2 runs down its axis, so flip the model axis
    N3 = _axis_normalizer(X3)
    return PantsHolonomy(
        cuffs=tuple(cuff_labels),
        lengths=(l1, l2, l3),
        matrices=(X1, X2, X3),
        normalizers=(N1, N2, N3),
    )


@dataclass
class HolonomyMap:
    """Holonomy of a windowed ladder surface.

    Cuff matrices are reported in the frame of their canonical pants P_k1 =
    (c_k, a_k, b_k); ``global_matrix`` conjugates into the frame of the
    leftmost pants, guarded against overflow.  Frame transitions across
    gluings carry the twist data.
    """

    fn: FNCoordinates
    pants: dict = field(default_factory=dict)  # name -> PantsHolonomy
    frames: dict = field(default_factory=dict)  # name -> MobiusMap
    transitions: dict = field(default_factory=dict)  # (p, q, cuff) -> MobiusMap
    overflow_guard: float = 1e150

    def matrix(self, family: str, k: int) -> MobiusMap:
        """Holonomy of the cuff in the local frame of pants P_k1."""
        p = self.pants[("P1", k)]
        return p.matrices[p.cuffs.index((family, k))]

    def recovered_length(self, family: str, k: int) -> float:
        return geodesic_length_from_trace(self.matrix(family, k).trace())

    def global_matrix(self, family: str, k: int) -> MobiusMap:
        frame = self.frames[("P1", k)]
        if frame.max_entry() > self.overflow_guard:
            raise NumericalInstability(
                f"frame of pants P1[{k}] exceeds the overflow guard "
                f"{self.overflow_guard:g}"
            )
        # exact rational conjugation: large frame entries make the naive
        # float product lose the trace to cancellation
        return conjugate_exact(frame, self.matrix(family, k))

    def global_length(self, family: str, k: int) -> float:
        """Cuff length recovered from the trace of the global matrix.

        The trace is evaluated in exact arithmetic before rounding: reading
        it off the rounded entries of :meth:`global_matrix` cancels
        catastrophically once frame entries grow large.
        """
        frame = self.frames[("P1", k)]
        if frame.max_entry() > self.overflow_guard:
            raise NumericalInstability(
                f"frame of pants P1[{k}] exceeds the overflow guard "
                f"{self.overflow_guard:g}"
            )
        t = conjugate_exact_trace(frame, self.matrix(family, k))
        return geodesic_length_from_trace(t)


def _twist_transition(pants_from, cuff_from, pants_to, cuff_to, length, theta):
    """Frame transition across a gluing: align the two cuff axes with the
    model axis, twist by the arc-length theta*length/(2*pi), and reverse
    orientation so the boundary circles match up."""
    i = pants_from.cuffs.index(cuff_from)
    j = pants_to.cuffs.index(cuff_to)
    Np = pants_from.normalizers[i]
    Nq = pants_to.normalizers[j]
    t = theta * length / TWO_PI
    return Np @ MobiusMap.translation(t) @ _J @ Nq.inverse()


def holonomy_from_fn(fn: FNCoordinates, overflow_guard: float = 1e150) -> HolonomyMap:
    """Build per-pants Fuchsian triples and chained frames for a ladder FN
    datum.  Every cuff's trace recovers its coordinate length exactly up to
    roundoff; twists enter only the frame transitions."""
    hol = HolonomyMap(fn=fn, overflow_guard=overflow_guard)
    N = fn.window
    for k in fn.indices():
        la, _, lb, _, lc, _ = fn.coords[k]
        hol.pants[("P1", k)] = pants_holonomy(
            [("c", k), ("a", k), ("b", k)], (lc, la, lb)
        )
        if k + 1 <= N:
            lc_next = fn.length("c", k + 1)
            hol.pants[("P2", k)] = pants_holonomy(
                [("a", k), ("b", k), ("c", k + 1)], (la, lb, lc_next)
            )
    # chain frames left to right: P1[-N] -> P2[-N] -> P1[-N+1] -> ...
    hol.frames[("P1", -N)] = MobiusMap.identity()
    for k in fn.indices():
        p1 = hol.pants[("P1", k)]
        if ("P2", k) not in hol.pants:
            break
        p2 = hol.pants[("P2", k)]
        T = _twist_transition(
            p1, ("a", k), p2, ("a", k), fn.length("a", k), fn.twist("a", k)
        )
        hol.transitions[(("P1", k), ("P2", k), ("a", k))] = T
        hol.frames[("P2", k)] = hol.frames[("P1", k)] @ T
        nxt = hol.pants[("P1", k + 1)]
        T2 = _twist_transition(
            p2, ("c", k + 1), nxt, ("c", k + 1),
            fn.length("c", k + 1), fn.twist("c", k + 1),
        )
        hol.transitions[(("P2", k), ("P1", k + 1), ("c", k + 1))] = T2
        hol.frames[("P1", k + 1)] = hol.frames[("P2", k)] @ T2
    return hol


@dataclass(frozen=True)
class ShiftQuotient:
    """Closed surface obtained from a period-2 ladder by the index shift
    k -> k+2: four pants, six cuffs, Euler characteristic -4, genus 3."""

    pants: tuple
    cuffs: tuple
    euler_characteristic: int
    genus: int
    coords: dict


def quotient_by_shift(fn: FNCoordinates, period: int = 2) -> ShiftQuotient:
    """Quotient a shift-invariant ladder by the horizontal translation of the
    given period (default 2, the smallest giving a closed orientable
    quotient of this decomposition)."""
    tol = 1e-12
    for k in fn.indices():
        if k + period > fn.window:
            continue
        x, y = fn.coords[k], fn.coords[k + period]
        if any(abs(u - v) > tol for u, v in zip(x, y)):
            raise NotShiftInvariant(
                f"coordinates at k={k} and k={k + period} differ beyond {tol}",
                offending_index=k,
            )
    reps = list(range(period))
    pants = tuple(f"P{half}[{k}]" for k in reps for half in (1, 2))
    cuffs = tuple(f"{fam}[{k}]" for k in reps for fam in CURVE_FAMILIES)
    chi = -len(pants)
    genus = (2 - chi) // 2
    coords = {k: fn.coords[k] for k in reps}
    return ShiftQuotient(
        pants=pants,
        cuffs=cuffs,
        euler_characteristic=chi,
        genus=genus,
        coords=coords,
    )


def fn_to_json(fn: FNCoordinates) -> str:
    records = [
        {
            "k": k,
            "l_a": fn.coords[k][0],
            "t_a": fn.coords[k][1],
            "l_b": fn.coords[k][2],
            "t_b": fn.coords[k][3],
            "l_c": fn.coords[k][4],
            "t_c": fn.coords[k][5],
        }
        for k in fn.indices()
    ]
    return json.dumps(
        {"twist_convention": TWIST_CONVENTION, "window": fn.window, "records": records},
        sort_keys=True,
    )


def fn_to_csv(fn: FNCoordinates) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "l_a", "t_a", "l_b", "t_b", "l_c", "t_c"])
    for k in fn.indices():
        writer.writerow([k, *fn.coords[k]])
    return buf.getvalue()


def fn_from_json(text: str) -> FNCoordinates:
    data = json.loads(text)
    coords = {
        r["k"]: (r["l_a"], r["t_a"], r["l_b"], r["t_b"], r["l_c"], r["t_c"])
        for r in data["records"]
    }
    return FNCoordinates(window=data["window"], coords=coords)
