"""Decision tables for regular covers of closed surfaces.

A regular cover of a closed orientable surface is compact or homeomorphic
to one of six non-compact surfaces, determined by the deck group's
finiteness, the number of ends (1, 2, or a Cantor space, by Hopf's theorem
on end spaces of regular covers), and planarity; non-planar covers have all
ends non-planar by cocompactness of the deck action.

Planarity of an infinite cover is an input flag, not computed: deciding it
from a normal subgroup is beyond this artifact's scope.  Only constraints
the classification itself imposes are validated; combinations it is silent
about are returned with ``validated=False``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InconsistentInput


class Ends(Enum):
    NONE = "0"
    ONE = "1"
    TWO = "2"
    CANTOR = "cantor"


class CoverType(Enum):
    COMPACT = "compact"
    PLANE = "plane"
    PUNCTURED_PLANE = "punctured_plane"
    CANTOR_TREE = "cantor_tree"
    BLOOMING_CANTOR_TREE = "blooming_cantor_tree"
    LOCH_NESS = "loch_ness"
    LADDER = "ladder"


@dataclass(frozen=True)
class SurfaceType:
    """Topological type: genus (int or math.inf), end space, and whether the
    non-planar ends are none or all of the ends."""

    genus: float
    ends: Ends
    nonplanar_ends: str  # "none" or "all"

    def __post_init__(self):
        if self.nonplanar_ends not in ("none", "all"):
            raise InconsistentInput(
                f"nonplanar_ends must be 'none' or 'all', got {self.nonplanar_ends}"
            )
        compact = self.ends == Ends.NONE
        if compact and math.isinf(self.genus):
            raise InconsistentInput("a compact surface has finite genus")
        if self.nonplanar_ends == "all" and not compact and not math.isinf(self.genus):
            raise InconsistentInput("non-planar ends require infinite genus")
        if math.isinf(self.genus) and compact:
            raise InconsistentInput("infinite genus requires at least one end")

    @property
    def compact(self) -> bool:
        return self.ends == Ends.NONE


_SURFACE_OF_TYPE = {
    CoverType.PLANE: SurfaceType(0, Ends.ONE, "none"),
    CoverType.PUNCTURED_PLANE: SurfaceType(0, Ends.TWO, "none"),
    CoverType.CANTOR_TREE: SurfaceType(0, Ends.CANTOR, "none"),
    CoverType.BLOOMING_CANTOR_TREE: SurfaceType(math.inf, Ends.CANTOR, "all"),
    CoverType.LOCH_NESS: SurfaceType(math.inf, Ends.ONE, "all"),
    CoverType.LADDER: SurfaceType(math.inf, Ends.TWO, "all"),
}


@dataclass(frozen=True)
class DeckDescriptor:
    """Deck transformation group: finite of a given order, or infinite with
    1, 2, or infinitely many ends of the cover."""

    order: int | None  # None means infinite
    end_count: str | None = None  # "1", "2", "infinitely_many"

    def __post_init__(self):
        if self.order is not None:
            if self.order < 1:
                raise InconsistentInput(f"finite deck order must be >= 1, got {self.order}")
        elif self.end_count not in ("1", "2", "infinitely_many"):
            raise InconsistentInput(
                "an infinite deck group needs end_count in "
                f"{{'1', '2', 'infinitely_many'}}, got {self.end_count}"
            )

    @property
    def finite(self) -> bool:
        return self.order is not None


@dataclass(frozen=True)
class Classification:
    cover_type: CoverType
    surface: SurfaceType
    rule: str
    validated: bool


def finite_cover_genus(base_genus: int, deck_order: int) -> int:
    """Genus of a degree-n cover of a closed genus-g surface: 1 + n(g-1)."""
    if base_genus < 1 or deck_order < 1:
        raise InconsistentInput("base genus and deck order must be >= 1")
    return 1 + deck_order * (base_genus - 1)


def classify_cover(base_genus: int, deck: DeckDescriptor, cover_planar: bool) -> Classification:
    """Type of a regular cover of a closed genus >= 1 surface.

    Inconsistent inputs (a planar cover with a finite deck group; a planar
    two-ended cover of a genus >= 2 base, forbidden because a hyperbolic
    surface group has no normal cyclic subgroup) raise InconsistentInput.
    """
    if base_genus < 1:
        raise InconsistentInput(f"base genus must be >= 1, got {base_genus}")
    if deck.finite:
        if cover_planar:
            raise InconsistentInput(
                "a finite cover of a closed genus >= 1 surface is closed of "
                "genus >= 1, hence non-planar"
            )
        genus = finite_cover_genus(base_genus, deck.order)
        return Classification(
            cover_type=CoverType.COMPACT,
            surface=SurfaceType(genus, Ends.NONE, "none"),
            rule="finite deck group: compact cover of genus 1 + n(g-1)",
            validated=True,
        )
    if cover_planar:
        table = {
            "1": CoverType.PLANE,
            "2": CoverType.PUNCTURED_PLANE,
            "infinitely_many": CoverType.CANTOR_TREE,
        }
        ctype = table[deck.end_count]
        if ctype == CoverType.PUNCTURED_PLANE and base_genus != 1:
            raise InconsistentInput(
                "the punctured plane regularly covers only the torus: its "
                "deck group is cyclic and a hyperbolic surface group has no "
                "normal cyclic subgroup"
            )
        validated = ctype == CoverType.PUNCTURED_PLANE or base_genus >= 2
        rule = "planar infinite cover: ends determine plane / punctured plane / Cantor tree"
    else:
        table = {
            "1": CoverType.LOCH_NESS,
            "2": CoverType.LADDER,
            "infinitely_many": CoverType.BLOOMING_CANTOR_TREE,
        }
        ctype = table[deck.end_count]
        validated = base_genus >= 2
        rule = (
            "non-planar infinite cover: all ends non-planar; ends determine "
            "Loch Ness / ladder / blooming Cantor tree"
        )
    if not validated:
        rule += " (realizability over this base genus unvalidated)"
    return Classification(
        cover_type=ctype,
        surface=_SURFACE_OF_TYPE[ctype],
        rule=rule,
        validated=validated,
    )


def qch_admissible(s: SurfaceType) -> tuple[bool, str]:
    """Whether a surface of this type can be quasiconformally homogeneous.

    Admissible types are exactly the closed surfaces and the six non-compact
    regular-cover types; in particular a non-compact surface of positive
    finite genus is never admissible.
    """
    if s.compact:
        return True, "closed surfaces are quasiconformally homogeneous"
    for ctype, model in _SURFACE_OF_TYPE.items():
        if s == model:
            return True, f"matches the non-compact regular-cover type '{ctype.value}'"
    if 0 < s.genus < math.inf:
        return (
            False,
            "a non-compact surface of positive finite genus is not "
            "quasiconformally homogeneous",
        )
    return False, "does not match any regular-cover type"


def dist_min_geodesic_status(s: SurfaceType) -> str:
    """'never' for compact surfaces (a distance-minimizing geodesic is a
    proper image of the line), 'always' with at least two ends, otherwise
    'metric_dependent' (one-ended surfaces admit hyperbolic structures with
    and without such geodesics)."""
    if s.compact:
        return "never"
    if s.ends in (Ends.TWO, Ends.CANTOR):
        return "always"
    return "metric_dependent"
