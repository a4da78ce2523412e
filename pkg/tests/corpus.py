"""Small matroids and pastures shared by the test modules."""
import itertools
from functools import lru_cache

from matpasture.cli import catalog
from matpasture.matroid import Matroid, check_basis_axiom, subsets

TEST_PASTURES = ("F2", "F3", "S", "F1pm")


@lru_cache(maxsize=None)
def rank2_on_at_most_4():
    """Every rank-2 matroid on a ground set {1..n}, 2 <= n <= 4 (labelled)."""
    out = []
    for n in (2, 3, 4):
        coords = subsets(n, 2)
        for k in range(1, len(coords) + 1):
            for fam in itertools.combinations(coords, k):
                if check_basis_axiom(n, 2, fam):
                    out.append(Matroid(n, 2, fam))
    return tuple(out)


@lru_cache(maxsize=None)
def rank2_on_4():
    return tuple(m for m in rank2_on_at_most_4() if m.n == 4)


@lru_cache(maxsize=None)
def extra_matroids():
    u35 = catalog("uniform(3,5)")
    # rank 3 on 5 elements: 4 and 5 parallel, and a rank-3 with a 3-point line
    par = Matroid(5, 3, [b for b in itertools.combinations(range(1, 6), 3) if not {4, 5} <= set(b)])
    line = Matroid(5, 3, [b for b in itertools.combinations(range(1, 6), 3) if b != (1, 2, 3)])
    return (catalog("u12"), catalog("u23"), catalog("single-basis(2)"), u35, par, line, catalog("fano"))


def corpus():
    return rank2_on_at_most_4() + extra_matroids()


# Pass/fail lines written by the acceptance suite, echoed in the pytest summary.
ACCEPTANCE_LINES = []
