"""Exact integer lattice algebra for finitely generated abelian groups.

Matrices are plain lists of lists of Python ints (row-major).  Group elements
are row vectors; a presentation with relation rows ``R`` presents the quotient
of ``Z^g`` by the row lattice of ``R``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Optional, Sequence

IntMatrix = list  # list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntMatrix, b: IntMatrix, inner: Optional[int] = None) -> IntMatrix:
    if inner is None:
        inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def vecmat(v: Sequence[int], m: IntMatrix, ncols: int) -> list[int]:
    """Row vector times matrix."""
    out = [0] * ncols
    for coeff, row in zip(v, m):
        if coeff:
            for j in range(ncols):
                out[j] += coeff * row[j]
    return out


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass
class _SNF:
    d: IntMatrix
    u: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix
    diag: list[int]
    rank: int


def _snf(m: IntMatrix, ncols: int) -> _SNF:
    rows, cols = len(m), ncols
    a = [list(map(int, r)) for r in m]
    u, u_inv = identity(rows), identity(rows)
    v, v_inv = identity(cols), identity(cols)

    # Every elementary operation is mirrored on u (rows), u_inv (columns),
    # v (columns) and v_inv (rows) so that u*m*v == d and the inverses track.
    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in u_inv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def add_row(dst, src, c):  # row dst += c * row src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]
        for r in u_inv:
            r[src] -= c * r[dst]

    def add_col(dst, src, c):  # col dst += c * col src
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]
        v_inv[src] = [x - c * y for x, y in zip(v_inv[src], v_inv[dst])]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in u_inv:
            r[i] = -r[i]

    t = 0
    while t < min(rows, cols):
        pivot = None
        best = 0
        for i in range(t, rows):
            for j in range(t, cols):
                x = a[i][j]
                if x and (pivot is None or abs(x) < best):
                    best, pivot = abs(x), (i, j)
        if pivot is None:
            break
        i, j = pivot
        if i != t:
            swap_rows(t, i)
        if j != t:
            swap_cols(t, j)
        p = a[t][t]
        clean = True
        for i in range(t + 1, rows):
            if a[i][t]:
                add_row(i, t, -(a[i][t] // p))
                clean = clean and a[i][t] == 0
        for j in range(t + 1, cols):
            if a[t][j]:
                add_col(j, t, -(a[t][j] // p))
                clean = clean and a[t][j] == 0
        if not clean:
            continue
        bad = next(
            ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
            None,
        )
        if bad is not None:
            add_row(t, bad[0], 1)
            continue
        if p < 0:
            negate_row(t)
        t += 1
    diag = [a[i][i] for i in range(min(rows, cols))]
    rank = sum(1 for x in diag if x)
    return _SNF(a, u, v, u_inv, v_inv, diag, rank)


def smith_normal_form(m: IntMatrix, ncols: Optional[int] = None):
    """Return ``(d, u, v)`` with ``u @ m @ v == d``, ``d`` diagonal with a divisibility chain.

    Pivoting picks the nonzero entry of least absolute value, ties broken by
    (row, column), so the output is reproducible.  ``ncols`` is only needed
    when ``m`` has no rows.
    """
    if ncols is None:
        ncols = len(m[0]) if m else 0
    s = _snf(m, ncols)
    return s.d, s.u, s.v


class IntegerSolver:
    """Solves ``z @ rows == target`` for many targets against one fixed matrix."""

    def __init__(self, rows: IntMatrix, ncols: int):
        self.nrows, self.ncols = len(rows), ncols
        self._s = _snf(rows, ncols)

    def solve(self, target: Sequence[int]) -> Optional[list]:
        s = self._s
        tv = vecmat(target, s.v, self.ncols)
        y = [0] * self.nrows
        for i, x in enumerate(tv):
            di = s.diag[i] if i < len(s.diag) else 0
            if di == 0:
                if x:
                    return None
            elif x % di:
                return None
            else:
                y[i] = x // di
        return vecmat(y, s.u, self.nrows) if self.nrows else []


def solve_integer(rows: IntMatrix, target: Sequence[int], ncols: Optional[int] = None):
    """Integer row vector ``z`` with ``z @ rows == target``, or ``None`` if none exists."""
    if ncols is None:
        ncols = len(target)
    return IntegerSolver(rows, ncols).solve(target)


def left_kernel(rows: IntMatrix, ncols: int) -> IntMatrix:
    """Basis of the integer vectors ``z`` with ``z @ rows == 0``."""
    s = _snf(rows, ncols)
    return [r[:] for r in s.u[s.rank:]]


def lattice_membership(v: Sequence[int], rows: IntMatrix) -> bool:
    """True iff ``v`` lies in the integer row span of ``rows``."""
    if not any(v):
        return True
    if not rows:
        return False
    return solve_integer(rows, v) is not None


def hermite_rows(rows: IntMatrix, ncols: int) -> IntMatrix:
    """Row-style Hermite normal form: a canonical basis of the row lattice."""
    a = [list(r) for r in rows if any(r)]
    top = 0
    for c in range(ncols):
        while True:
            live = [i for i in range(top, len(a)) if a[i][c]]
            if not live:
                break
            k = min(live, key=lambda i: (abs(a[i][c]), i))
            a[top], a[k] = a[k], a[top]
            done = True
            for i in range(top + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[top][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    done = done and a[i][c] == 0
            if done:
                break
        if top < len(a) and a[top][c]:
            if a[top][c] < 0:
                a[top] = [-x for x in a[top]]
            p = a[top][c]
            for i in range(top):
                q = a[i][c] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
            top += 1
    return a[:top]


@dataclass(frozen=True)
class AbelianPresentation:
    """Quotient of the free abelian group on ``generator_labels`` by the rows of ``relations``.

    ``ambient``, when set, expresses each generator as a row vector in the
    generators of a parent presentation (used for subgroups such as kernels).
    """

    generator_labels: tuple
    relations: tuple = ()
    ambient: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        g = len(self.generator_labels)
        rels = tuple(tuple(int(x) for x in r) for r in self.relations)
        for r in rels:
            if len(r) != g:
                raise ValueError(f"relation of width {len(r)} for {g} generators")
        object.__setattr__(self, "generator_labels", tuple(self.generator_labels))
        object.__setattr__(self, "relations", rels)

    @property
    def ngens(self) -> int:
        return len(self.generator_labels)

    def relation_matrix(self) -> IntMatrix:
        return [list(r) for r in self.relations]


@dataclass(frozen=True)
class GroupStructure:
    """Invariant-factor decomposition ``Z^free_rank + sum Z/d_i``.

    Structured coordinates list the torsion factors first, then the free ones.
    ``basis_change`` (generators x coordinates) sends a generator word ``x`` to
    ``x @ basis_change``; ``coordinate_words`` sends coordinates back to a word.
    """

    free_rank: int
    torsion_factors: tuple
    basis_change: tuple
    coordinate_words: tuple

    @property
    def moduli(self) -> tuple:
        return tuple(self.torsion_factors) + (0,) * self.free_rank

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Optional[int]:
        return prod(self.torsion_factors) if self.free_rank == 0 else None

    def normalize(self, word: Sequence[int]) -> tuple:
        """Canonical coordinates of the element represented by ``word``."""
        ncoords = len(self.moduli)
        y = [0] * ncoords
        for coeff, row in zip(word, self.basis_change):
            if coeff:
                for j in range(ncoords):
                    y[j] += coeff * row[j]
        return tuple(x % d if d else x for x, d in zip(y, self.moduli))

    def reduce(self, coords: Sequence[int]) -> tuple:
        return tuple(x % d if d else x for x, d in zip(coords, self.moduli))

    def word(self, coords: Sequence[int]) -> list[int]:
        ngens = len(self.basis_change)
        return vecmat(coords, [list(r) for r in self.coordinate_words], ngens)

    def elements(self):
        if self.free_rank:
            raise ValueError("group is infinite")
        return itertools.product(*(range(d) for d in self.torsion_factors))


def group_structure(p: AbelianPresentation) -> GroupStructure:
    g = p.ngens
    s = _snf(p.relation_matrix(), g)
    diag = s.diag + [0] * (g - len(s.diag))
    torsion_cols = [i for i, d in enumerate(diag) if d >= 2]
    free_cols = [i for i, d in enumerate(diag) if d == 0]
    cols = torsion_cols + free_cols
    change = tuple(tuple(s.v[i][c] for c in cols) for i in range(g))
    back = tuple(tuple(s.v_inv[c]) for c in cols)
    return GroupStructure(
        free_rank=len(free_cols),
        torsion_factors=tuple(diag[c] for c in torsion_cols),
        basis_change=change,
        coordinate_words=back,
    )


def cyclic_structure(order: int) -> GroupStructure:
    return group_structure(AbelianPresentation(("g",), ((order,),)))


def kernel_of_map(p: AbelianPresentation, target_dim: int, mapping: IntMatrix) -> AbelianPresentation:
    """Subgroup of ``p`` killed by a map into the free group ``Z^target_dim``.

    ``mapping`` has ``target_dim`` rows and one column per generator of ``p``.
    The result's ``ambient`` rows give each new generator in ``p``'s generators.
    """
    g = p.ngens
    if target_dim and len(mapping) != target_dim:
        raise ValueError("mapping must have target_dim rows")
    transposed = [[mapping[k][j] for k in range(target_dim)] for j in range(g)]
    for r in p.relations:
        if any(vecmat(r, transposed, target_dim)):
            raise ValueError("mapping does not vanish on the relations")
    basis = left_kernel(transposed, target_dim) if target_dim else identity(g)
    relations = []
    for r in p.relations:
        coeffs = solve_integer(basis, r, g)
        if coeffs is None:  # cannot happen: the kernel lattice is saturated
            raise ArithmeticError("relation outside kernel lattice")
        relations.append(coeffs)
    labels = tuple(f"k{i + 1}" for i in range(len(basis)))
    return AbelianPresentation(labels, tuple(map(tuple, relations)), ambient=tuple(map(tuple, basis)))


def hom_count(p: AbelianPresentation, target: GroupStructure) -> int:
    """Closed-form ``|Hom(p, target)|`` for a finite target."""
    if not target.is_finite:
        raise ValueError("target must be finite")
    s = group_structure(p)
    count = target.order ** s.free_rank
    for d in s.torsion_factors:
        for e in target.torsion_factors:
            count *= gcd(d, e)
    return count


def enumerate_homs(p: AbelianPresentation, target: GroupStructure, pins: Optional[dict] = None) -> list:
    """All homomorphisms ``p -> target`` as tuples of generator images.

    Images are coordinate tuples of ``target``.  ``pins`` maps generator
    indices to required images; an unsatisfiable pin yields an empty list.
    Output is sorted lexicographically by the image tuple.
    """
    if not target.is_finite:
        raise ValueError("target must be finite")
    pins = {k: target.reduce(v) for k, v in (pins or {}).items()}
    s = group_structure(p)
    mods = target.torsion_factors
    everything = list(target.elements())

    choices = []
    for d in s.torsion_factors:
        steps = [e // gcd(d, e) for e in mods]
        choices.append([x for x in everything if all(xi % st == 0 for xi, st in zip(x, steps))])
    for _ in range(s.free_rank):
        choices.append(everything)

    out = []
    change = s.basis_change
    for combo in itertools.product(*choices):
        images = []
        for row in change:
            img = [0] * len(mods)
            for coeff, x in zip(row, combo):
                if coeff:
                    for k in range(len(mods)):
                        img[k] += coeff * x[k]
            images.append(tuple(v % m for v, m in zip(img, mods)))
        if all(images[k] == v for k, v in pins.items()):
            out.append(tuple(images))
    out.sort()
    return out
