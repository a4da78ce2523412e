"""Pasture arithmetic.

A pasture is a multiplicative group of units with an absorbing zero, a
distinguished unit ``eps`` with ``eps**2 == 1``, and a set of "null" formal
sums of units.  The zero element is the Python integer ``0`` in every pasture;
unit representations depend on the pasture:

* ``F1pm``, ``S``: the integers ``1`` and ``-1``
* ``K``: the integer ``1``
* ``GF(p)``: integers ``1 .. p-1``
* ``GF(p^k)``: coefficient tuples, lowest degree first
* ``T``: positive ``fractions.Fraction`` values
* presented pastures: invariant-factor coordinate tuples of the unit group
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import UndecidedAtBound, ValidationError
from .intlat import (
    AbelianPresentation,
    GroupStructure,
    cyclic_structure,
    enumerate_homs,
    group_structure,
    hermite_rows,
)


def is_zero(x) -> bool:
    return not isinstance(x, tuple) and x == 0


@dataclass(frozen=True)
class FormalSum:
    """Multiset of units; zero terms are dropped on construction."""

    terms: tuple = ()

    def __post_init__(self):
        kept = [t for t in self.terms if not is_zero(t)]
        object.__setattr__(self, "terms", tuple(sorted(kept, key=_sort_key)))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


def _sort_key(x):
    return (type(x).__name__, x)


def _terms(s) -> list:
    return [t for t in s if not is_zero(t)]


class Pasture:
    """Common interface; see the module docstring for element encodings."""

    name: str = "?"
    one = 1
    eps = 1

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def power(self, a, k: int):
        if is_zero(a):
            if k < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 0 if k else self.one
        if k < 0:
            a, k = self.inv(a), -k
        out = self.one
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def times(self, a, b):
        """Product allowing zero factors."""
        if is_zero(a) or is_zero(b):
            return 0
        return self.mul(a, b)

    def is_null(self, s) -> bool:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return True

    def units(self) -> list:
        raise NotImplementedError

    @property
    def size(self) -> int:
        """Number of elements including zero."""
        return len(self.units()) + 1

    def unit_structure(self) -> GroupStructure:
        raise NotImplementedError

    def coords_of(self, u) -> tuple:
        raise NotImplementedError

    def unit_from_coords(self, c: Sequence[int]):
        raise NotImplementedError

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def format_element(self, x) -> str:
        raise NotImplementedError

    def parse_element(self, text: str):
        raise NotImplementedError


class _Cyclic(Pasture):
    """Finite builtin whose unit group is cyclic with a fixed generator."""

    def __init__(self, name: str, unit_list: list, generator, eps):
        self.name = name
        self._units = unit_list
        self.eps = eps
        self._exp = [self.one]
        while True:
            nxt = self._raw_mul(self._exp[-1], generator)
            if nxt == self.one:
                break
            self._exp.append(nxt)
        if len(self._exp) != len(unit_list):
            raise ValueError(f"{name}: generator does not generate the unit group")
        self._log = {u: i for i, u in enumerate(self._exp)}
        self._struct = cyclic_structure(len(unit_list))

    def _raw_mul(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        return self._exp[(self._log[a] + self._log[b]) % len(self._exp)]

    def inv(self, a):
        return self._exp[-self._log[a] % len(self._exp)]

    def units(self):
        return list(self._units)

    def is_unit(self, x):
        return not is_zero(x) and x in self._log

    def unit_structure(self):
        return self._struct

    def coords_of(self, u):
        return self._struct.normalize([self._log[u]])

    def unit_from_coords(self, c):
        k = self._struct.word(c)[0] if c else 0
        return self._exp[k % len(self._exp)]

    def __repr__(self):
        return f"<pasture {self.name}>"


class _Signs(_Cyclic):
    def __init__(self, name):
        super().__init__(name, [1, -1], -1, -1)

    def _raw_mul(self, a, b):
        return a * b

    def is_null(self, s):
        t = _terms(s)
        c = Counter(t)
        if self.name == "F1pm":
            return c[1] == c[-1]
        return not t or (c[1] > 0 and c[-1] > 0)

    def format_element(self, x):
        return str(x)

    def parse_element(self, text):
        v = int(text.strip())
        if v not in (0, 1, -1):
            raise ValidationError(f"{self.name}: bad element {text!r}")
        return v


class _Krasner(_Cyclic):
    def __init__(self):
        super().__init__("K", [1], 1, 1)

    def _raw_mul(self, a, b):
        return 1

    def is_null(self, s):
        return len(_terms(s)) != 1

    def format_element(self, x):
        return str(x)

    def parse_element(self, text):
        v = int(text.strip())
        if v not in (0, 1):
            raise ValidationError(f"K: bad element {text!r}")
        return v


class _PrimeField(_Cyclic):
    def __init__(self, p: int):
        self.p = p
        gen = next(g for g in range(1, p) if _mult_order(g, p) == p - 1)
        super().__init__(f"F{p}" if p <= 3 else f"GF{p}", list(range(1, p)), gen, p - 1)

    def _raw_mul(self, a, b):
        return a * b % self.p

    def is_null(self, s):
        return sum(_terms(s)) % self.p == 0

    def format_element(self, x):
        return str(x)

    def parse_element(self, text):
        v = int(text.strip())
        if not 0 <= v < self.p:
            raise ValidationError(f"{self.name}: bad element {text!r}")
        return v


def _mult_order(g, p):
    k, x = 1, g % p
    while x != 1:
        x = x * g % p
        k += 1
    return k


# Irreducible modulus per field size, coefficients lowest degree first.
_MODULI = {
    4: (2, (1, 1, 1)),
    8: (2, (1, 1, 0, 1)),
    9: (3, (2, 2, 1)),
    16: (2, (1, 1, 0, 0, 1)),
    25: (5, (2, 4, 1)),
    27: (3, (1, 2, 0, 1)),
    32: (2, (1, 0, 1, 0, 0, 1)),
}
_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


class _ExtensionField(_Cyclic):
    def __init__(self, q: int):
        p, modulus = _MODULI[q]
        self.p, self.k, self.modulus = p, len(modulus) - 1, modulus
        units = sorted(c for c in itertools.product(range(p), repeat=self.k) if any(c))
        self.one = (1,) + (0,) * (self.k - 1)
        eps = ((p - 1) % p,) + (0,) * (self.k - 1)
        gen = None
        for c in units:
            seen, x = 1, c
            while x != self.one:
                x = self._raw_mul(x, c)
                seen += 1
            if seen == q - 1:
                gen = c
                break
        if gen is None:
            raise ValueError(f"modulus for GF{q} is not primitive-capable")
        super().__init__(f"GF{q}", units, gen, eps)

    def _raw_mul(self, a, b):
        p, k = self.p, self.k
        prod_ = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod_[i + j] += x * y
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod_[deg] % p
            if c:
                for i, m in enumerate(self.modulus):
                    prod_[deg - k + i] -= c * m
        return tuple(x % p for x in prod_[:k])

    def is_null(self, s):
        acc = [0] * self.k
        for t in _terms(s):
            for i, x in enumerate(t):
                acc[i] += x
        return all(x % self.p == 0 for x in acc)

    def format_element(self, x):
        return "0" if is_zero(x) else ",".join(map(str, x))

    def parse_element(self, text):
        text = text.strip()
        if text == "0":
            return 0
        try:
            c = tuple(int(v) for v in text.split(","))
        except ValueError:
            raise ValidationError(f"{self.name}: bad element {text!r}") from None
        if len(c) != self.k or any(not 0 <= v < self.p for v in c):
            raise ValidationError(f"{self.name}: bad element {text!r}")
        return 0 if not any(c) else c


class _Tropical(Pasture):
    """Units are positive rationals; a sum is null iff its maximum occurs twice."""

    name = "T"
    one = Fraction(1)
    eps = Fraction(1)

    def mul(self, a, b):
        return Fraction(a) * Fraction(b)

    def inv(self, a):
        return 1 / Fraction(a)

    def is_null(self, s):
        t = _terms(s)
        if not t:
            return True
        top = max(t)
        return sum(1 for x in t if x == top) >= 2

    @property
    def is_finite(self):
        return False

    def units(self):
        raise ValueError("T has infinitely many units")

    @property
    def size(self):
        raise ValueError("T is infinite")

    def is_unit(self, x):
        return not is_zero(x) and Fraction(x) > 0

    def format_element(self, x):
        if is_zero(x):
            return "0"
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def parse_element(self, text):
        try:
            v = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"T: bad element {text!r}") from None
        if v < 0:
            raise ValidationError("T: units are positive")
        return 0 if v == 0 else v

    def __repr__(self):
        return "<pasture T>"


@lru_cache(maxsize=None)
def mk_builtin(name: str) -> Pasture:
    """Builtin pasture by name: F1pm, K, S, F2, F3, GF<q> (q <= 32) or T."""
    if name == "F1pm":
        return _Signs("F1pm")
    if name == "S":
        return _Signs("S")
    if name == "K":
        return _Krasner()
    if name == "T":
        return _Tropical()
    q = None
    if name in ("F2", "F3"):
        q = int(name[1:])
    elif name.startswith("GF") and name[2:].isdigit():
        q = int(name[2:])
    if q is None:
        raise ValidationError(f"unknown pasture {name!r}")
    if q in _PRIMES:
        return _PrimeField(q)
    if q in _MODULI:
        return _ExtensionField(q)
    raise ValidationError(f"unsupported field size {q}")


# ---------------------------------------------------------------------------
# Presented pastures


@dataclass(frozen=True)
class PresentedPasture(Pasture):
    """Unit group presentation (generator 0 is eps) plus formal null generators.

    Null generators are tuples of words (exponent vectors over the generators).
    The sum ``1 + eps`` is always null and is not listed.
    """

    presentation: AbelianPresentation
    null_generators: tuple = ()
    collapsed: bool = False

    name = "presented"

    def __post_init__(self):
        g = self.presentation.ngens
        gens = tuple(tuple(tuple(int(x) for x in w) for w in gen) for gen in self.null_generators)
        for gen in gens:
            for w in gen:
                if len(w) != g:
                    raise ValueError("null generator word has the wrong width")
        object.__setattr__(self, "null_generators", gens)

    @cached_property
    def structure(self) -> GroupStructure:
        return group_structure(self.presentation)

    @property
    def labels(self):
        return self.presentation.generator_labels

    def _live(self):
        if self.collapsed:
            raise ValidationError("the pasture is collapsed to {0}; it has no units")

    @property
    def one(self):
        return (0,) * len(self.structure.moduli)

    @property
    def eps(self):
        return self.unit(_basis(self.presentation.ngens, 0))

    def unit(self, word: Sequence[int]) -> tuple:
        """Unit represented by a generator word."""
        return self.structure.normalize(word)

    def word(self, u) -> list:
        return self.structure.word(u)

    def mul(self, a, b):
        return self.structure.reduce([x + y for x, y in zip(a, b)])

    def inv(self, a):
        return self.structure.reduce([-x for x in a])

    def is_unit(self, x):
        return isinstance(x, tuple) and len(x) == len(self.structure.moduli)

    @property
    def is_finite(self):
        return not self.collapsed and self.structure.is_finite

    def units(self):
        self._live()
        return [tuple(c) for c in self.structure.elements()]

    def unit_structure(self):
        return self.structure

    def coords_of(self, u):
        return tuple(u)

    def unit_from_coords(self, c):
        return self.structure.reduce(c)

    @cached_property
    def null_units(self) -> tuple:
        """Null generators as tuples of units."""
        return tuple(tuple(self.unit(w) for w in gen) for gen in self.null_generators)

    @property
    def max_generator_length(self) -> int:
        return max([2] + [len(g) for g in self.null_generators])

    @property
    def null_bound(self) -> int:
        m = self.max_generator_length
        return m + max(m, 3)

    def is_null(self, s) -> bool:
        terms = _terms(s)
        if not terms:
            return True
        self._live()
        if len(terms) > self.null_bound:
            raise UndecidedAtBound(
                f"sum of length {len(terms)} exceeds decidable bound {self.null_bound}"
            )
        gens = list(self.null_units) + [(self.one, self.eps)]
        return _decompose(tuple(sorted(terms)), tuple(gens), self)

    def format_element(self, x):
        if is_zero(x):
            return "0"
        w = self.word(x)
        parts = [f"eps^{w[0] % 2}"]
        for lbl, e in zip(self.labels[1:], w[1:]):
            if e:
                parts.append(f"{lbl}^{e}")
        return "*".join(parts)

    def parse_element(self, text):
        text = text.strip()
        if text == "0":
            return 0
        self._live()
        word = [0] * self.presentation.ngens
        if text != "1":
            index = {str(l): i for i, l in enumerate(self.labels)}
            for factor in text.split("*"):
                lbl, _, exp = factor.partition("^")
                if lbl not in index:
                    raise ValidationError(f"unknown generator {lbl!r}")
                try:
                    word[index[lbl]] += int(exp) if exp else 1
                except ValueError:
                    raise ValidationError(f"bad exponent in {factor!r}") from None
        return self.unit(word)

    def __repr__(self):
        st = "collapsed" if self.collapsed else f"{len(self.null_generators)} null generators"
        return f"<presented pasture on {list(self.labels)}, {st}>"


def _basis(n, i):
    v = [0] * n
    v[i] = 1
    return v


def _decompose(terms: tuple, gens: tuple, p: PresentedPasture) -> bool:
    memo: dict = {}

    def go(ts):
        if not ts:
            return True
        if ts in memo:
            return memo[ts]
        first = ts[0]
        result = False
        for gen in gens:
            if len(gen) > len(ts):
                continue
            for g in set(gen):
                a = p.mul(first, p.inv(g))
                need = Counter(p.mul(a, x) for x in gen)
                have = Counter(ts)
                if all(have[k] >= v for k, v in need.items()):
                    rest = tuple(sorted((have - need).elements()))
                    if go(rest):
                        result = True
                        break
            if result:
                break
        memo[ts] = result
        return result

    return go(terms)


def presented(labels, relations=(), null_generators=()) -> PresentedPasture:
    """Build an (unpasteurized) presented pasture; ``labels[0]`` must be eps."""
    labels = tuple(labels)
    g = len(labels)
    rels = [list(r) for r in relations]
    if not any(r == [2] + [0] * (g - 1) for r in rels):
        rels.append([2] + [0] * (g - 1))
    return PresentedPasture(AbelianPresentation(labels, tuple(map(tuple, rels))), tuple(null_generators))


def _canonical_generator(units: list, st: GroupStructure) -> tuple:
    best = None
    for t in units:
        shifted = tuple(sorted(st.reduce([x - y for x, y in zip(u, t)]) for u in units))
        if best is None or shifted < best:
            best = shifted
    return best


def pasteurize(p: PresentedPasture) -> PresentedPasture:
    """Saturate under the two pasteurization rules and canonicalize.

    A one-term null generator collapses the pasture.  A two-term generator
    ``u + v`` imposes ``v = eps * u``; afterwards it is implied by ``1 + eps``
    and dropped.  Relations are put in Hermite form and the remaining null
    generators in a canonical normal form, so the operation is idempotent.
    """
    pres = p.presentation
    g = pres.ngens
    eps_row = [2] + [0] * (g - 1)
    rels = [list(r) for r in pres.relations] + [eps_row]
    gens = [gen for gen in p.null_generators if gen]
    collapsed = p.collapsed or any(len(gen) == 1 for gen in gens)
    if collapsed:
        trivial = AbelianPresentation(pres.generator_labels, tuple(map(tuple, hermite_rows(_eye(g), g))))
        return PresentedPasture(trivial, (), True)
    for gen in gens:
        if len(gen) == 2:
            u, v = gen
            rels.append([y - x - (i == 0) for i, (x, y) in enumerate(zip(u, v))])
    new_pres = AbelianPresentation(pres.generator_labels, tuple(map(tuple, hermite_rows(rels, g))))
    st = group_structure(new_pres)
    canon = set()
    for gen in gens:
        if len(gen) > 2:
            canon.add(_canonical_generator([st.normalize(w) for w in gen], st))
    words = tuple(tuple(tuple(st.word(c)) for c in gen) for gen in sorted(canon))
    out = PresentedPasture(new_pres, words, False)
    out.__dict__["structure"] = st
    return out


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def is_trivial(p: PresentedPasture) -> bool:
    return p.collapsed


def f1pm_presented() -> PresentedPasture:
    return PresentedPasture(AbelianPresentation(("eps",), ((2,),)))


def f2_presented() -> PresentedPasture:
    return PresentedPasture(AbelianPresentation(("eps",), ((1,),)))


# ---------------------------------------------------------------------------
# Morphisms


@dataclass(frozen=True)
class PastureMorphism:
    """Multiplicative map fixed by the images of the source's unit generators.

    For a presented source ``images`` lists one target unit per presentation
    generator.  For a finite builtin source it holds the image of the source's
    cyclic generator.  A target with a single unit needs no images.
    """

    source: Pasture
    target: Pasture
    images: tuple = field(default=())

    def __call__(self, x):
        if is_zero(x):
            return 0
        tgt = self.target
        if tgt.is_finite and tgt.size == 2:
            return tgt.one
        if isinstance(self.source, PresentedPasture):
            word = self.source.word(x)
        else:
            word = self.source.unit_structure().word(self.source.coords_of(x))
        out = tgt.one
        for img, e in zip(self.images, word):
            if e:
                out = tgt.mul(out, tgt.power(img, e))
        return out


def terminal_morphism(p: Pasture) -> PastureMorphism:
    """The unique morphism to K (every unit goes to 1)."""
    return PastureMorphism(p, mk_builtin("K"), ())


def identity_morphism(p: Pasture) -> PastureMorphism:
    if isinstance(p, PresentedPasture):
        imgs = tuple(p.unit(_basis(p.presentation.ngens, i)) for i in range(p.presentation.ngens))
        return PastureMorphism(p, p, imgs)
    st = p.unit_structure()
    gen = p.unit_from_coords(st.normalize([1])) if st.basis_change else p.one
    return PastureMorphism(p, p, (gen,))


def builtin_morphism(source: Pasture, target: Pasture, generator_image) -> PastureMorphism:
    """Morphism out of a finite builtin given the image of its cyclic generator."""
    return PastureMorphism(source, target, (generator_image,))


def check_morphism(m: PastureMorphism, max_length: int = 4) -> bool:
    """True iff ``m`` respects the unit relations, eps and every null generator.

    Builtin sources have no finite list of null generators; for them every
    null sum of up to ``max_length`` terms is checked.
    """
    src, tgt = m.source, m.target
    if not all(tgt.is_unit(x) for x in m.images):
        return False
    if isinstance(src, PresentedPasture):
        if src.collapsed:
            return False
        for rel in src.presentation.relations:
            val = tgt.one
            for img, e in zip(m.images, rel):
                if e:
                    val = tgt.mul(val, tgt.power(img, e))
            if val != tgt.one:
                return False
        if m(src.eps) != tgt.eps:
            return False
        for gen in src.null_units:
            if not tgt.is_null([m(u) for u in gen]):
                return False
        return True
    if not src.is_finite:
        raise ValidationError("morphisms out of infinite builtins are not checked")
    order = len(src.units())
    if m.images:
        if tgt.power(m.images[0], order) != tgt.one:
            return False
    if m(src.eps) != tgt.eps:
        return False
    units = src.units()
    for k in range(1, max_length + 1):
        for combo in itertools.combinations_with_replacement(units, k):
            if src.is_null(combo) and not tgt.is_null([m(u) for u in combo]):
                return False
    return True


def enumerate_morphisms(src: PresentedPasture, tgt: Pasture) -> list:
    """All morphisms ``src -> tgt`` for a finite target, in a fixed order."""
    if src.collapsed:
        return []
    if not tgt.is_finite:
        raise ValidationError("target pasture must be finite")
    st = tgt.unit_structure()
    homs = enumerate_homs(src.presentation, st, {0: tgt.coords_of(tgt.eps)})
    out = []
    for h in homs:
        m = PastureMorphism(src, tgt, tuple(tgt.unit_from_coords(c) for c in h))
        if all(tgt.is_null([m(u) for u in gen]) for gen in src.null_units):
            out.append(m)
    return out
