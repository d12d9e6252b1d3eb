"""Chain complexes of free modules over Z[t, t^-1].

Homology over the ring itself is not computed in general; instead this
module provides what the fixtures need: ranks over the fraction field
(exact Gaussian elimination with rational-function entries), torsion
orders of square presentation matrices (determinants up to units), and
Euler characteristic cross-checks.

Convention: d_i maps degree i to degree i-1 and matrices act on column
vectors, so d_i has ranks[i-1] rows and ranks[i] columns. A complex with
modules in degrees 0..n stores [d_1, ..., d_n].
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import ONE, LaurentPoly
from .forms import Matrix, as_matrix, determinant, mat_mul


@dataclass(frozen=True)
class RationalFunction:
    """A fraction num/den of ring elements with den nonzero.

    Kept unreduced; equality is decided by cross-multiplication, which
    is exact and needs no gcd.
    """

    num: LaurentPoly
    den: LaurentPoly

    def __post_init__(self):
        if self.den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFunction":
        return cls(p, ONE)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.num.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num * other.den == other.num * self.den
        return NotImplemented

    def __hash__(self) -> int:
        raise TypeError("unreduced rational functions are not hashable")


def rank_qt(m) -> int:
    """Rank over the fraction field by exact Gaussian elimination."""
    rows = [[RationalFunction.from_poly(e) for e in row] for row in _rows_of(m)]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank, len(rows)):
            if not rows[r][col].is_zero:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col].is_zero:
                continue
            factor = rows[r][col] / pivot
            for c in range(col, ncols):
                rows[r][c] = rows[r][c] - factor * rows[rank][c]
        rank += 1
        if rank == len(rows):
            break
    return rank


def torsion_order(m) -> LaurentPoly:
    """The order of the cokernel of a square full-rank presentation.

    Returns the canonical associate of the determinant. Raises if the
    matrix is not square or not of full rank over the fraction field
    (the cokernel would not be torsion).
    """
    rows = _rows_of(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("torsion order needs a square presentation matrix")
    if rank_qt(rows) != n:
        raise ValueError("presentation is not of full rank; cokernel is not torsion")
    return determinant(rows).normalize_associate()[0]


def _rows_of(m) -> Matrix:
    entries = getattr(m, "entries", m)
    return as_matrix(entries)


class ChainComplex:
    """A finite chain complex of free modules, validated at construction."""

    __slots__ = ("ranks", "differentials")

    def __init__(self, ranks, differentials):
        ranks = tuple(int(r) for r in ranks)
        if any(r < 0 for r in ranks):
            raise ValueError("module ranks must be nonnegative")
        if not ranks:
            raise ValueError("complex needs at least one degree")
        diffs = tuple(as_matrix(d) for d in differentials)
        if len(diffs) != len(ranks) - 1:
            raise ValueError(
                f"expected {len(ranks) - 1} differentials for {len(ranks)} degrees, "
                f"got {len(diffs)}"
            )
        for k, d in enumerate(diffs, start=1):
            rows, cols = _shape(d)
            if ranks[k - 1] == 0 and rows == 0:
                # A matrix with zero rows cannot carry its column count.
                continue
            if (rows, cols) != (ranks[k - 1], ranks[k]):
                raise ValueError(
                    f"differential d_{k} has shape {rows}x{cols}, "
                    f"expected {ranks[k - 1]}x{ranks[k]}"
                )
        for k in range(len(diffs) - 1):
            d_low, d_high = diffs[k], diffs[k + 1]
            if not _is_zero_matrix(mat_mul(d_low, d_high)):
                raise ValueError(f"d_{k + 1} composed with d_{k + 2} is not zero")
        self.ranks = ranks
        self.differentials = diffs

    def betti_qt(self) -> list[int]:
        """Fraction-field Betti numbers, indexed by ascending degree."""
        n = len(self.ranks) - 1
        rk = [0] * (n + 2)  # rk[k] = rank of d_k over the fraction field
        for k in range(1, n + 1):
            rk[k] = rank_qt(self.differentials[k - 1])
        return [self.ranks[i] - rk[i] - rk[i + 1] for i in range(n + 1)]

    def euler_check(self) -> bool:
        """Alternating sums of module ranks and Betti numbers agree."""
        betti = self.betti_qt()
        lhs = sum((-1) ** i * r for i, r in enumerate(self.ranks))
        rhs = sum((-1) ** i * b for i, b in enumerate(betti))
        return lhs == rhs

    def to_json(self) -> dict:
        return {
            "ranks": [str(r) for r in self.ranks],
            "differentials": [
                [[e.to_json() for e in row] for row in d] for d in self.differentials
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "ChainComplex":
        if not isinstance(obj, dict) or "ranks" not in obj or "differentials" not in obj:
            raise ValueError("complex must be an object with ranks and differentials")
        ranks = [int(r) for r in obj["ranks"]]
        diffs = []
        for d in obj["differentials"]:
            diffs.append(
                tuple(tuple(LaurentPoly.from_json(e) for e in row) for row in d)
            )
        return cls(ranks, diffs)


def betti_qt(complex_: ChainComplex) -> list[int]:
    return complex_.betti_qt()


def euler_check(complex_: ChainComplex) -> bool:
    return complex_.euler_check()


def _shape(m: Matrix) -> tuple[int, int]:
    return len(m), len(m[0]) if m else 0


def _is_zero_matrix(m: Matrix) -> bool:
    return all(e.is_zero for row in m for e in row)
