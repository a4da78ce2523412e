"""Cross ratios, Tutte groups, universal pastures and foundations of matroids.

Unit groups are written additively over generators ``eps`` and ``y[B]`` for
each basis ``B`` other than the colexicographically first one ``I0``; the
generator ``y[B]`` stands for the degree-zero monomial ``x_B / x_I0``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .intlat import (
    AbelianPresentation,
    IntegerSolver,
    group_structure,
    hermite_rows,
    kernel_of_map,
    lattice_membership,
    left_kernel,
)
from .matroid import (
    GPFunction,
    Matroid,
    connected_components,
    elems_of,
    mask_of,
    strong_instances,
    subsets,
    three_term_instances,
)
from .pasture import Pasture, PresentedPasture, enumerate_morphisms, mk_builtin, pasteurize


def basis_label(mask: int) -> str:
    return "y[" + ",".join(map(str, elems_of(mask))) + "]"


class _Monomials:
    """Word arithmetic for degree-zero monomials over a fixed support."""

    def __init__(self, support):
        self.support = sorted(support)
        self.ref = self.support[0]
        self.index = {b: i + 1 for i, b in enumerate(self.support[1:])}
        self.ngens = len(self.support)
        self.labels = ("eps",) + tuple(basis_label(b) for b in self.support[1:])

    def word(self, eps_exp: int, *pos, neg=()) -> list:
        w = [0] * self.ngens
        w[0] = eps_exp
        for b in pos:
            if b != self.ref:
                w[self.index[b]] += 1
        for b in neg:
            if b != self.ref:
                w[self.index[b]] -= 1
        return w

    def live_terms(self, inst) -> list:
        """Surviving terms of a Pluecker instance as words."""
        s = self.index
        out = []
        for e, a, b in inst:
            if (a == self.ref or a in s) and (b == self.ref or b in s):
                out.append(self.word(e, a, b))
        return out


def plucker_presentation(n: int, r: int, support, strong: bool) -> PresentedPasture:
    """Unpasteurized residue pasture at the point with the given support.

    Units are degree-zero monomials in the support variables together with
    eps; null generators are the Pluecker relations (3-term only unless
    ``strong``) with the other variables set to zero.
    """
    mon = _Monomials(support)
    insts = strong_instances(n, r) if strong else three_term_instances(n, r)
    gens = []
    for inst in insts:
        terms = mon.live_terms(inst)
        if terms:
            gens.append(tuple(map(tuple, terms)))
    eps2 = [2] + [0] * (mon.ngens - 1)
    return PresentedPasture(AbelianPresentation(mon.labels, (tuple(eps2),)), tuple(gens))


@lru_cache(maxsize=None)
def weak_universal_pasture(m: Matroid) -> PresentedPasture:
    return pasteurize(plucker_presentation(m.n, m.r, m.bases, strong=False))


@lru_cache(maxsize=None)
def universal_pasture(m: Matroid) -> PresentedPasture:
    return pasteurize(plucker_presentation(m.n, m.r, m.bases, strong=True))


# ---------------------------------------------------------------------------
# Quadrangles and cross ratios

KLEIN = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))


@dataclass(frozen=True)
class Quadrangle:
    I: int
    i: tuple  # (i1, i2, i3, i4)
    degenerate: bool = field(default=False, compare=False)

    def pair(self, a: int, b: int) -> int:
        """Mask of I together with the a-th and b-th entries (1-based)."""
        return self.I | mask_of((self.i[a - 1], self.i[b - 1]))

    def permuted(self, perm) -> "Quadrangle":
        return Quadrangle(self.I, tuple(self.i[k] for k in perm), self.degenerate)

    def rotated(self) -> "Quadrangle":
        return Quadrangle(self.I, self.i[1:] + self.i[:1], self.degenerate)

    def __str__(self):
        return f"({','.join(map(str, elems_of(self.I)))}|{','.join(map(str, self.i))})"


def _quadrangle(m: Matroid, I: int, cyc: tuple) -> Optional[Quadrangle]:
    q = Quadrangle(I, cyc)
    if not all(q.pair(a, b) in m.bases for a, b in ((1, 2), (2, 3), (3, 4), (4, 1))):
        return None
    deg = not (q.pair(1, 3) in m.bases and q.pair(2, 4) in m.bases)
    return Quadrangle(I, cyc, deg)


def omega(m: Matroid, canonical: bool = False) -> list:
    """Quadrangles of m with degeneracy flags.

    With ``canonical`` only one representative per dihedral class is kept:
    for a < b < c < d the cycles (a,b,c,d), (a,c,b,d), (a,b,d,c).  Every other
    quadrangle equals one of these under a Klein-four permutation (same cross
    ratio) or a rotation of it (inverse cross ratio).
    """
    if m.r < 2:
        return []
    full = (1 << m.n) - 1
    out = []
    for I in subsets(m.n, m.r - 2):
        rest = elems_of(full & ~I)
        for a, b, c, d in itertools.combinations(rest, 4):
            if canonical:
                cycles = [(a, b, c, d), (a, c, b, d), (a, b, d, c)]
            else:
                cycles = itertools.permutations((a, b, c, d))
            for cyc in cycles:
                q = _quadrangle(m, I, cyc)
                if q is not None:
                    out.append(q)
    return out


def canonical_form(q: Quadrangle) -> tuple:
    """(canonical quadrangle, exponent) with Cr(q) = Cr(canonical) ** exponent."""
    a, b, c, d = sorted(q.i)
    for cyc in ((a, b, c, d), (a, c, b, d), (a, b, d, c)):
        base = Quadrangle(q.I, cyc, q.degenerate)
        for perm in KLEIN:
            if base.permuted(perm).i == q.i:
                return base, 1
            if base.rotated().permuted(perm).i == q.i:
                return base, -1
    raise AssertionError("unreachable: dihedral classes cover all orderings")


def cross_ratio(g: GPFunction, q: Quadrangle):
    """D(I12) D(I34) / (D(I23) D(I41))."""
    p = g.pasture
    num = p.mul(g[q.pair(1, 2)], g[q.pair(3, 4)])
    den = p.mul(g[q.pair(2, 3)], g[q.pair(4, 1)])
    return p.mul(num, p.inv(den))


def cross_ratio_function(g: GPFunction, quads=None) -> tuple:
    m = Matroid(g.n, g.r, g.support)
    quads = omega(m, canonical=True) if quads is None else quads
    return tuple(cross_ratio(g, q) for q in quads)


# ---------------------------------------------------------------------------
# Tutte group


@dataclass(frozen=True)
class TutteGroupData:
    presentation: AbelianPresentation
    deg_E_matrix: tuple
    bases: tuple  # colexicographic order; bases[0] is the reference basis
    n: int


@lru_cache(maxsize=None)
def tutte_group(m: Matroid) -> TutteGroupData:
    """Tutte group from the 3-term relations with exactly two surviving terms."""
    mon = _Monomials(m.bases)
    g = mon.ngens
    rels = [[2] + [0] * (g - 1)]
    for inst in three_term_instances(m.n, m.r):
        terms = mon.live_terms(inst)
        if len(terms) == 2:
            u, v = terms
            rels.append([y - x - (i == 0) for i, (x, y) in enumerate(zip(u, v))])
        elif len(terms) == 1:
            raise AssertionError("a matroid has no 3-term relation with one surviving term")
    pres = AbelianPresentation(mon.labels, tuple(map(tuple, hermite_rows(rels, g))))
    deg = [[0] * g for _ in range(m.n)]
    for b, j in mon.index.items():
        for e in elems_of(b):
            deg[e - 1][j] += 1
        for e in elems_of(mon.ref):
            deg[e - 1][j] -= 1
    return TutteGroupData(pres, tuple(map(tuple, deg)), tuple(mon.support), m.n)


def inner_tutte_group(t: TutteGroupData) -> AbelianPresentation:
    return kernel_of_map(t.presentation, t.n, [list(r) for r in t.deg_E_matrix])


# ---------------------------------------------------------------------------
# Foundation


@dataclass(frozen=True)
class FoundationData:
    """Foundation pasture with its cross-ratio table.

    ``pasture`` is generated by eps and the universal cross ratios labelled
    T1, T2, ...; if those failed to generate the inner Tutte group the missing
    kernel generators are appended as X1, X2, ... and ``generated_by_cross_ratios``
    is False.  ``embedding`` gives each generator as a word in the Tutte group.
    """

    pasture: PresentedPasture
    cr_table: tuple  # ((Quadrangle, unit), ...) over canonical quadrangles
    embedding: tuple
    generated_by_cross_ratios: bool
    matroid: Matroid = field(compare=False)

    def cross_ratio_of(self, q: Quadrangle):
        base, e = canonical_form(q)
        u = dict(self.cr_table)[base]
        return u if e == 1 else self.pasture.inv(u)


def _cr_word(mon: _Monomials, q: Quadrangle) -> list:
    return mon.word(0, q.pair(1, 2), q.pair(3, 4), neg=(q.pair(2, 3), q.pair(4, 1)))


@lru_cache(maxsize=None)
def foundation(m: Matroid) -> FoundationData:
    t = tutte_group(m)
    mon = _Monomials(m.bases)
    g = mon.ngens
    R = [list(r) for r in t.presentation.relations]
    kept = [[1] + [0] * (g - 1)]
    labels = ["eps"]
    quads = omega(m, canonical=True)
    for q in quads:
        w = _cr_word(mon, q)
        if not lattice_membership(w, kept + R):
            kept.append(w)
            labels.append(f"T{len(labels)}")
    generated = True
    extra = 0
    for k in inner_tutte_group(t).ambient:
        if not lattice_membership(k, kept + R):
            kept.append(list(k))
            extra += 1
            labels.append(f"X{extra}")
            generated = False
    h = len(kept)
    stack = kept + R
    rels = [row[:h] for row in left_kernel(stack, g)]
    solver = IntegerSolver(stack, g)

    def express(w):
        z = solver.solve(w)
        if z is None:
            raise AssertionError("element outside the inner Tutte group")
        return z[:h]

    gens = []
    for inst in three_term_instances(m.n, m.r):
        terms = mon.live_terms(inst)
        if len(terms) == 3:
            t3 = terms[2]
            gens.append(tuple(tuple(express([x - y for x, y in zip(w, t3)])) for w in terms))
    pres = AbelianPresentation(tuple(labels), tuple(map(tuple, rels)) or ((2,) + (0,) * (h - 1),))
    pasture = pasteurize(PresentedPasture(pres, tuple(gens)))
    table = tuple((q, pasture.unit(express(_cr_word(mon, q)))) for q in quads)
    return FoundationData(pasture, table, tuple(map(tuple, kept)), generated, m)


def foundation_type(fd: FoundationData) -> Optional[str]:
    """'F1pm', 'F2' or None, by comparison with those two catalog pastures."""
    p = fd.pasture
    if p.collapsed or p.null_generators:
        return None
    st = p.structure
    if st.free_rank:
        return None
    if st.torsion_factors == (2,) and p.eps != p.one:
        return "F1pm"
    if st.torsion_factors == ():
        return "F2"
    return None


def classify(m: Matroid) -> dict:
    kind = foundation_type(foundation(m))
    return {"regular": kind == "F1pm", "binary": kind in ("F1pm", "F2")}


# ---------------------------------------------------------------------------
# Counting


def _pasture(p) -> Pasture:
    return mk_builtin(p) if isinstance(p, str) else p


def count_rescaling_classes(m: Matroid, p) -> int:
    return len(enumerate_morphisms(foundation(m).pasture, _pasture(p)))


def count_weak_lifts(m: Matroid, p) -> int:
    p = _pasture(p)
    c = len(connected_components(m))
    return (len(p.units())) ** (m.n - c) * count_rescaling_classes(m, p)


def count_strong_lifts(m: Matroid, p) -> int:
    return len(enumerate_morphisms(universal_pasture(m), _pasture(p)))


def laurent_split_check(m: Matroid) -> dict:
    t = tutte_group(m)
    outer = group_structure(t.presentation).free_rank
    inner = group_structure(inner_tutte_group(t)).free_rank
    s = outer - inner
    return {"s": s, "holds": s == m.n - len(connected_components(m))}


def foundation_report(m: Matroid) -> dict:
    fd = foundation(m)
    p = fd.pasture
    st = p.structure
    cls = classify(m)
    return {
        "units": {
            "free_rank": st.free_rank,
            "torsion": list(st.torsion_factors),
            "eps_is_one": p.eps == p.one,
        },
        "null_generators": [[p.format_element(u) for u in gen] for gen in p.null_units],
        "classification": cls,
        "counts": {name: count_rescaling_classes(m, name) for name in ("F2", "F3", "S", "F1pm")},
    }
