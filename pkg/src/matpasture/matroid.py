"""Matroids as basis families and Grassmann-Pluecker functions over pastures.

Subsets of the ground set {1..n} are bitmasks: element ``i`` is bit ``i-1``.
Integer order on masks of a fixed size is colexicographic order.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import ResourceLimitError, ValidationError
from .pasture import Pasture, PastureMorphism, is_zero

LIFT_NODE_CAP = 10 ** 8


def mask_of(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << (e - 1)
    return m


def elems_of(mask: int) -> tuple:
    out, i = [], 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@lru_cache(maxsize=None)
def subsets(n: int, k: int) -> tuple:
    """All k-subsets of {1..n} as masks, colexicographic order."""
    if k < 0 or k > n:
        return ()
    return tuple(sorted(mask_of(c) for c in itertools.combinations(range(1, n + 1), k)))


def lex_key(mask: int) -> tuple:
    return elems_of(mask)


def _to_mask(b) -> int:
    return b if isinstance(b, int) else mask_of(b)


def check_basis_axiom(n: int, r: int, bases) -> bool:
    """True iff ``bases`` is nonempty, consists of r-subsets of {1..n} and satisfies exchange."""
    bs = {_to_mask(b) for b in bases}
    if not bs:
        return False
    full = (1 << n) - 1
    if any(popcount(b) != r or b & ~full for b in bs):
        return False
    for b1 in bs:
        for b2 in bs:
            diff = b1 & ~b2
            if not diff:
                continue
            other = b2 & ~b1
            for i in elems_of(diff):
                base = b1 & ~(1 << (i - 1))
                if not any((base | (1 << (j - 1))) in bs for j in elems_of(other)):
                    return False
    return True


@dataclass(frozen=True)
class Matroid:
    n: int
    r: int
    bases: frozenset

    def __post_init__(self):
        object.__setattr__(self, "bases", frozenset(_to_mask(b) for b in self.bases))
        if not check_basis_axiom(self.n, self.r, self.bases):
            raise ValidationError("basis family fails the basis axioms")

    @property
    def sorted_bases(self) -> list:
        """Bases in colexicographic order."""
        return sorted(self.bases)

    def is_basis(self, mask: int) -> bool:
        return mask in self.bases

    def dual(self) -> "Matroid":
        full = (1 << self.n) - 1
        return Matroid(self.n, self.n - self.r, frozenset(full & ~b for b in self.bases))

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "bases": [list(elems_of(b)) for b in sorted(self.bases, key=lex_key)]}

    @classmethod
    def from_json(cls, data) -> "Matroid":
        try:
            n, r, bases = int(data["n"]), int(data["r"]), data["bases"]
            masks = []
            for b in bases:
                b = [int(e) for e in b]
                if len(set(b)) != len(b) or any(not 1 <= e <= n for e in b):
                    raise ValidationError(f"bad basis {b}")
                masks.append(mask_of(b))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed matroid: {exc}") from None
        return cls(n, r, frozenset(masks))


def uniform(r: int, n: int) -> Matroid:
    return Matroid(n, r, frozenset(subsets(n, r)))


def connected_components(m: Matroid) -> list:
    """Classes of the relation i ~ j whenever two bases differ by swapping i for j."""
    parent = list(range(m.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    bs = m.sorted_bases
    for a, b in itertools.combinations(bs, 2):
        x, y = a & ~b, b & ~a
        if popcount(x) == 1:
            parent[find(elems_of(x)[0])] = find(elems_of(y)[0])
    groups: dict = {}
    for e in range(1, m.n + 1):
        groups.setdefault(find(e), []).append(e)
    return sorted(groups.values())


# ---------------------------------------------------------------------------
# Pluecker relation instances.  Each instance is a tuple of terms
# (eps_exponent, A, B) standing for eps^e * D(A) * D(B).


@lru_cache(maxsize=None)
def three_term_instances(n: int, r: int) -> tuple:
    """All 3-term relations: I an (r-2)-subset, i1<i2<i3<i4 outside I."""
    if r < 2 or n < r + 2:
        return ()
    out = []
    full = (1 << n) - 1
    for I in subsets(n, r - 2):
        rest = elems_of(full & ~I)
        for a, b, c, d in itertools.combinations(rest, 4):
            p = lambda x, y: I | mask_of((x, y))
            out.append(((0, p(a, b), p(c, d)), (1, p(a, c), p(b, d)), (0, p(a, d), p(b, c))))
    return tuple(out)


@lru_cache(maxsize=None)
def strong_instances(n: int, r: int) -> tuple:
    """All Pluecker relations indexed by an (r-1)-subset J and an (r+1)-subset I'.

    With I' = {i_1 < ... < i_{r+1}} the k-th term is D(J+i_k) D(I'-i_k) with
    sign exponent k + #{j in J : j > i_k}; the second summand orders the set
    J+i_k so that i_k sits last, which keeps the relation sign-correct for
    set-indexed coordinates.  Terms with i_k in J are dropped.
    """
    if r < 1 or r >= n:
        return ()
    out = []
    for J in subsets(n, r - 1):
        jel = elems_of(J)
        for Ip in subsets(n, r + 1):
            terms = []
            for k, i in enumerate(elems_of(Ip), start=1):
                bit = 1 << (i - 1)
                if J & bit:
                    continue
                e = (k + sum(1 for j in jel if j > i)) % 2
                terms.append((e, J | bit, Ip & ~bit))
            if terms:
                out.append(tuple(terms))
    return tuple(out)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GPFunction:
    """Map from r-subsets to pasture elements; absent subsets are zero."""

    pasture: Pasture
    n: int
    r: int
    values: tuple  # sorted ((mask, unit), ...)

    def __post_init__(self):
        vals = self.values
        items = vals.items() if isinstance(vals, Mapping) else vals
        clean = {}
        for k, v in items:
            k = _to_mask(k)
            if popcount(k) != self.r or k >> self.n:
                raise ValidationError(f"{elems_of(k)} is not an {self.r}-subset of 1..{self.n}")
            if not is_zero(v):
                clean[k] = v
        if not clean:
            raise ValidationError("a Grassmann-Pluecker function must be nonzero somewhere")
        object.__setattr__(self, "values", tuple(sorted(clean.items())))

    @property
    def table(self) -> dict:
        return dict(self.values)

    def __getitem__(self, mask):
        return self.table.get(_to_mask(mask), 0)

    @property
    def support(self) -> frozenset:
        return frozenset(k for k, _ in self.values)

    def to_json(self) -> dict:
        p = self.pasture
        return {
            "pasture": p.name,
            "n": self.n,
            "r": self.r,
            "values": {
                ",".join(map(str, elems_of(k))): p.format_element(v)
                for k, v in sorted(self.values, key=lambda kv: lex_key(kv[0]))
            },
        }

    @classmethod
    def from_json(cls, data, pasture: Pasture) -> "GPFunction":
        try:
            n, r = int(data["n"]), int(data["r"])
            vals = {}
            for key, text in data["values"].items():
                elems = [int(x) for x in key.split(",")] if key.strip() else []
                if len(set(elems)) != len(elems) or any(not 1 <= e <= n for e in elems):
                    raise ValidationError(f"bad subset {key!r}")
                vals[mask_of(elems)] = pasture.parse_element(str(text))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"malformed GP function: {exc}") from None
        return cls(pasture, n, r, vals)


def _instance_terms(p: Pasture, table: dict, inst) -> list:
    out = []
    for e, a, b in inst:
        x, y = table.get(a, 0), table.get(b, 0)
        if is_zero(x) or is_zero(y):
            continue
        t = p.mul(x, y)
        if e:
            t = p.mul(t, p.eps)
        out.append(t)
    return out


def three_term_ok(g: GPFunction) -> bool:
    """Every 3-term relation is null; the support is not checked."""
    tbl, p = g.table, g.pasture
    return all(p.is_null(_instance_terms(p, tbl, inst)) for inst in three_term_instances(g.n, g.r))


def check_weak_gp(g: GPFunction) -> bool:
    if not check_basis_axiom(g.n, g.r, g.support):
        return False
    return three_term_ok(g)


def check_strong_gp(g: GPFunction) -> bool:
    tbl, p = g.table, g.pasture
    return all(p.is_null(_instance_terms(p, tbl, inst)) for inst in strong_instances(g.n, g.r))


def underlying(g: GPFunction) -> Matroid:
    return Matroid(g.n, g.r, g.support)


def pushforward(g: GPFunction, f: PastureMorphism) -> GPFunction:
    return GPFunction(f.target, g.n, g.r, {k: f(v) for k, v in g.values})


def inversions(inner: int, outer: int) -> int:
    """#{(a in inner, b in outer) : a > b}."""
    bs = elems_of(outer)
    return sum(1 for a in elems_of(inner) for b in bs if a > b)


def dual(g: GPFunction) -> GPFunction:
    """Rank n-r function D*(I) = eps^{inv(I, I^c)} D(I^c)."""
    p = g.pasture
    full = (1 << g.n) - 1
    vals = {}
    for k, v in g.values:
        I = full & ~k
        vals[I] = p.mul(v, p.eps) if inversions(I, k) % 2 else v
    return GPFunction(p, g.n, g.n - g.r, vals)


def rescale(g: GPFunction, t) -> GPFunction:
    """Multiply D(I) by the product of t(i) over i in I; ``t`` maps 1..n to units."""
    p = g.pasture
    tv = {i: t[i] for i in range(1, g.n + 1)}
    vals = {}
    for k, v in g.values:
        for i in elems_of(k):
            v = p.mul(v, tv[i])
        vals[k] = v
    return GPFunction(p, g.n, g.r, vals)


def scale(g: GPFunction, a) -> GPFunction:
    p = g.pasture
    return GPFunction(p, g.n, g.r, {k: p.mul(a, v) for k, v in g.values})


def normalized(g: GPFunction) -> tuple:
    """Canonical key of the projective class: divide by the value on the lex-first support set."""
    p = g.pasture
    keys = sorted(g.support, key=lex_key)
    c = p.inv(g.table[keys[0]])
    return tuple((k, p.mul(c, g.table[k])) for k in keys)


def projectively_equivalent(g1: GPFunction, g2: GPFunction) -> bool:
    if (g1.pasture.name, g1.n, g1.r) != (g2.pasture.name, g2.n, g2.r):
        return False
    if g1.support != g2.support:
        return False
    return normalized(g1) == normalized(g2)


def enumerate_lifts(m: Matroid, p: Pasture, mode: str = "weak") -> list:
    """One representative per projective class of weak or strong p-matroids with underlying m.

    Bases are assigned in lexicographic order with the first fixed to 1; each
    Pluecker relation is checked as soon as all of its bases are assigned.
    The search refuses to visit more than ``LIFT_NODE_CAP`` nodes.
    """
    if mode not in ("weak", "strong"):
        raise ValidationError(f"unknown mode {mode!r}")
    if not p.is_finite:
        raise ValidationError("lift enumeration needs a finite pasture")
    bases = sorted(m.bases, key=lex_key)
    pos = {b: i for i, b in enumerate(bases)}
    insts = three_term_instances(m.n, m.r) if mode == "weak" else strong_instances(m.n, m.r)
    checks: list = [[] for _ in bases]
    for inst in insts:
        live = [(e, a, b) for e, a, b in inst if a in pos and b in pos]
        if not live:
            continue
        if len(live) == 1:
            return []  # a single surviving term is never null
        last = max(max(pos[a], pos[b]) for _, a, b in live)
        checks[last].append(tuple(live))
    units = p.units()
    assign: dict = {bases[0]: p.one}
    out = []
    visited = 0

    def ok(i):
        return all(p.is_null(_instance_terms(p, assign, inst)) for inst in checks[i])

    def go(i):
        nonlocal visited
        if i == len(bases):
            out.append(GPFunction(p, m.n, m.r, dict(assign)))
            return
        for u in units:
            visited += 1
            if visited > LIFT_NODE_CAP:
                raise ResourceLimitError(f"lift search exceeded {LIFT_NODE_CAP} nodes")
            assign[bases[i]] = u
            if ok(i):
                go(i + 1)
        del assign[bases[i]]

    if ok(0):
        go(1)
    return out


def torus(p: Pasture, n: int):
    """All maps t: {1..n} -> units as dicts."""
    for combo in itertools.product(p.units(), repeat=n):
        yield dict(zip(range(1, n + 1), combo))


def rescaling_orbits(lifts: list, p: Pasture) -> list:
    """Partition projective classes into orbits of the rescaling action."""
    if not lifts:
        return []
    n = lifts[0].n
    index = {normalized(g): i for i, g in enumerate(lifts)}
    seen = set()
    orbits = []
    ts = list(torus(p, n))
    for i, g in enumerate(lifts):
        if i in seen:
            continue
        members = set()
        for t in ts:
            j = index.get(normalized(rescale(g, t)))
            if j is None:
                raise ValidationError("lift list is not closed under rescaling")
            members.add(j)
        seen |= members
        orbits.append([lifts[j] for j in sorted(members)])
    return orbits


def stabilizer_size(g: GPFunction) -> int:
    """Number of torus elements fixing the projective class of g."""
    key = normalized(g)
    return sum(1 for t in torus(g.pasture, g.n) if normalized(rescale(g, t)) == key)

