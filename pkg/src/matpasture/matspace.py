"""Points of the matroid moduli spaces at small scale.

A point is modelled by its support, the set of r-subsets whose coordinate is
nonzero there.  Its residue pasture is built from the Pluecker relations with
the other coordinates set to zero.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceLimitError, ValidationError
from .foundation import plucker_presentation
from .intlat import group_structure
from .matroid import check_basis_axiom, elems_of, strong_instances, subsets, three_term_instances
from .pasture import PresentedPasture, pasteurize

MAX_COORDINATES = 24
SPACES = ("strong", "weak")


@dataclass(frozen=True)
class MatPoint:
    n: int
    r: int
    support: frozenset
    space: str = "strong"

    def __post_init__(self):
        if not self.support:
            raise ValidationError("a point has nonempty support")
        if self.space not in SPACES:
            raise ValidationError(f"unknown space {self.space!r}")
        object.__setattr__(self, "support", frozenset(self.support))

    @property
    def beta(self) -> int:
        return len(self.support)


@dataclass(frozen=True)
class ResidueReport:
    point: MatPoint
    pasture: PresentedPasture
    beta: int
    is_matroid_support: bool
    raw_free_rank: int


def _check_cap(n: int, r: int) -> list:
    if not 0 <= r <= n:
        raise ValidationError("need 0 <= r <= n")
    coords = list(subsets(n, r))
    if len(coords) > MAX_COORDINATES:
        raise ResourceLimitError(f"C({n},{r}) = {len(coords)} coordinates exceeds {MAX_COORDINATES}")
    return coords


def enumerate_points(n: int, r: int, space: str = "strong") -> list:
    """All nonempty supports, ordered by their bitmask over the colex-ordered r-subsets."""
    coords = _check_cap(n, r)
    out = []
    for code in range(1, 1 << len(coords)):
        sup = frozenset(c for k, c in enumerate(coords) if code >> k & 1)
        out.append(MatPoint(n, r, sup, space))
    return out


def residue_pasture(pt: MatPoint) -> ResidueReport:
    raw = plucker_presentation(pt.n, pt.r, pt.support, strong=pt.space == "strong")
    past = pasteurize(raw)
    if pt.space == "strong":
        ok = not past.collapsed
    else:
        ok = check_basis_axiom(pt.n, pt.r, pt.support)
    return ResidueReport(pt, past, pt.beta, ok, group_structure(raw.presentation).free_rank)


def collapses(pt: MatPoint) -> bool:
    """Whether the residue pasture collapses, without building it.

    Pasteurization only collapses on a relation with exactly one surviving
    term, and never creates such a relation, so this scan is exact.
    """
    insts = strong_instances(pt.n, pt.r) if pt.space == "strong" else three_term_instances(pt.n, pt.r)
    sup = pt.support
    for inst in insts:
        if sum(1 for _, a, b in inst if a in sup and b in sup) == 1:
            return True
    return False


def is_matroid_support(pt: MatPoint) -> bool:
    if pt.space == "strong":
        return not collapses(pt)
    return check_basis_axiom(pt.n, pt.r, pt.support)


def support_census(n: int, r: int, space: str = "strong") -> dict:
    if space not in SPACES:
        raise ValidationError(f"unknown space {space!r}")
    coords = _check_cap(n, r)
    points = [0] * (len(coords) + 1)
    supports = [0] * (len(coords) + 1)
    for pt in enumerate_points(n, r, space):
        points[pt.beta] += 1
        supports[pt.beta] += is_matroid_support(pt)
    hist = [{"beta": b, "points": points[b], "supports": supports[b]} for b in range(1, len(coords) + 1)]
    return {"n": n, "r": r, "space": space, "histogram": hist, "total_supports": sum(supports)}


def count_basis_families(n: int, r: int) -> int:
    """Independent count of basis families of rank r on {1..n} by the exchange axiom."""
    coords = _check_cap(n, r)
    total = 0
    for code in range(1, 1 << len(coords)):
        fam = [c for k, c in enumerate(coords) if code >> k & 1]
        total += check_basis_axiom(n, r, fam)
    return total


def duality_point_map(pt: MatPoint) -> MatPoint:
    full = (1 << pt.n) - 1
    return MatPoint(pt.n, pt.n - pt.r, frozenset(full & ~b for b in pt.support), pt.space)


def point_to_json(pt: MatPoint) -> dict:
    return {
        "n": pt.n,
        "r": pt.r,
        "space": pt.space,
        "support": [list(elems_of(b)) for b in sorted(pt.support)],
    }
