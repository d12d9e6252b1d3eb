"""Hermitian forms over Z[t, t^-1] and the reduction-to-standard-form pipeline.

A Hermitian form is a square matrix A over the ring with A equal to its
involve-transpose A*. The standard rank-2g form is the g-fold block sum of
H2 = [[0, 1-t], [1-t^-1, 0]]. This module recognizes the block shape

    [[0, 1-t], [1-t^-1, c(1-t) + c~(1-t^-1)]]   (one block per genus)

recovers the witnesses c_k, builds the explicit base change reducing the
form to the standard one, and certifies the reduction together with the
determinant identity det(A) = (1-t)^g (1-t^-1)^g up to units.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .laurent import (
    ONE,
    ONE_MINUS_T,
    ONE_MINUS_T_INV,
    ZERO,
    LaurentPoly,
    UnitWitness,
    assoc_eq,
    iota,
)

Matrix = tuple[tuple[LaurentPoly, ...], ...]


class InternalCheckError(RuntimeError):
    """A mathematically guaranteed internal check failed; indicates a defect."""


# -- plain matrix helpers over the ring ----------------------------------


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    """Coerce nested sequences of LaurentPoly/int into a rectangular matrix."""
    out = []
    width = None
    for row in rows:
        coerced = tuple(x if isinstance(x, LaurentPoly) else iota(x) for x in row)
        if width is None:
            width = len(coerced)
        elif len(coerced) != width:
            raise ValueError("ragged matrix")
        out.append(coerced)
    return tuple(out)


def identity(n: int) -> Matrix:
    return tuple(
        tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a[0])} columns vs {len(b)} rows")
    return tuple(
        tuple(
            sum((a[i][k] * b[k][j] for k in range(len(b)) if not a[i][k].is_zero), ZERO)
            for j in range(len(b[0]) if b else 0)
        )
        for i in range(len(a))
    )


def involve_transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(
        tuple(m[i][j].involve() for i in range(len(m))) for j in range(len(m[0]))
    )


def block_diag(*blocks: Matrix) -> Matrix:
    n = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for row in b:
            rows.append(
                tuple([ZERO] * offset) + tuple(row) + tuple([ZERO] * (n - offset - len(row)))
            )
        offset += len(b)
    return tuple(rows)


def determinant(m) -> LaurentPoly:
    """Exact determinant by Laplace expansion memoized over column subsets."""
    rows = m.entries if isinstance(m, HermitianForm) else tuple(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return ONE
    memo: dict[int, LaurentPoly] = {0: ONE}

    def rec(colmask: int) -> LaurentPoly:
        cached = memo.get(colmask)
        if cached is not None:
            return cached
        row = rows[n - colmask.bit_count()]
        acc = ZERO
        sign = 1
        for j in range(n):
            bit = 1 << j
            if not colmask & bit:
                continue
            a = row[j]
            if not a.is_zero:
                term = a * rec(colmask & ~bit)
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[colmask] = acc
        return acc

    return rec((1 << n) - 1)


# -- domain types ----------------------------------------------------------


class HermitianForm:
    """A square matrix A over the ring with A = A* (involve-transpose)."""

    __slots__ = ("entries",)

    def __init__(self, rows: Sequence[Sequence]):
        m = as_matrix(rows)
        n = len(m)
        if any(len(r) != n for r in m):
            raise ValueError("Hermitian form must be square")
        for i in range(n):
            for j in range(i, n):
                if m[i][j] != m[j][i].involve():
                    raise ValueError(
                        f"not Hermitian at ({i},{j}): {m[i][j]} vs involve of {m[j][i]}"
                    )
        self.entries: Matrix = m

    @property
    def rank(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.entries[i][j]

    def augmented(self) -> tuple[tuple[int, ...], ...]:
        """The integer matrix of coefficient sums (evaluation at t = 1)."""
        return tuple(tuple(e.augment() for e in row) for row in self.entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, HermitianForm):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"HermitianForm[{body}]"

    def to_json(self) -> dict:
        return {
            "rank": str(self.rank),
            "entries": [e.to_json() for row in self.entries for e in row],
        }

    @classmethod
    def from_json(cls, obj) -> HermitianForm:
        rows = matrix_from_json(obj)
        return cls(rows)


def matrix_to_json(m: Matrix) -> dict:
    return {
        "rank": str(len(m)),
        "entries": [e.to_json() for row in m for e in row],
    }


def matrix_from_json(obj) -> Matrix:
    if not isinstance(obj, dict) or "rank" not in obj or "entries" not in obj:
        raise ValueError("matrix must be an object with rank and entries")
    n = int(obj["rank"])
    flat = obj["entries"]
    if not isinstance(flat, list) or len(flat) != n * n:
        raise ValueError(f"expected {n * n} entries for rank {n}, got {len(flat)}")
    polys = [LaurentPoly.from_json(e) for e in flat]
    return tuple(tuple(polys[i * n + j] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class BaseChange:
    """An invertible matrix P over the ring, with det(P) = +-t^k certified."""

    rank: int
    matrix: Matrix
    determinant_witness: UnitWitness

    def __post_init__(self):
        if len(self.matrix) != self.rank:
            raise ValueError("base change rank does not match its matrix")
        w = determinant(self.matrix).is_unit()
        if w is None or w != self.determinant_witness:
            raise ValueError("determinant witness does not certify the matrix")

    @classmethod
    def certify(cls, matrix: Matrix) -> BaseChange:
        w = determinant(matrix).is_unit()
        if w is None:
            raise ValueError("matrix is not invertible over the ring")
        return cls(len(matrix), matrix, w)


@dataclass(frozen=True)
class ReductionCertificate:
    """A replayable reduction of a recognized form to the standard one.

    Replaying congruence(P, form) must reproduce h2_sum(genus) entrywise,
    and det(form) must be associate to (1-t)^g (1-t^-1)^g; both canonical
    determinants are recorded.
    """

    form: HermitianForm
    genus: int
    c_list: tuple[LaurentPoly, ...]
    reduction: BaseChange
    det_canonical: LaurentPoly
    det_target_canonical: LaurentPoly

    def check(self) -> None:
        """Re-verify every certificate gate; raise InternalCheckError on defect."""
        g = self.genus
        replay = congruence(self.reduction.matrix, self.form)
        if replay.entries != h2_sum(g).entries:
            raise InternalCheckError("certificate replay does not give the standard form")
        det_a = determinant(self.form)
        if det_a.normalize_associate()[0] != self.det_canonical:
            raise InternalCheckError("recorded canonical determinant is wrong")
        target = (ONE_MINUS_T * ONE_MINUS_T_INV) ** g
        if target.normalize_associate()[0] != self.det_target_canonical:
            raise InternalCheckError("recorded canonical target determinant is wrong")
        if not assoc_eq(det_a, target):
            raise InternalCheckError("determinant is not associate to the target")

    def to_json(self) -> dict:
        return {
            "g": str(self.genus),
            "c_list": [c.to_json() for c in self.c_list],
            "P": matrix_to_json(self.reduction.matrix),
            "det_canonical": self.det_canonical.to_json(),
        }

    @classmethod
    def from_json(cls, obj, form: HermitianForm) -> ReductionCertificate:
        if not isinstance(obj, dict):
            raise ValueError("certificate must be an object")
        for key in ("g", "c_list", "P", "det_canonical"):
            if key not in obj:
                raise ValueError(f"certificate is missing {key!r}")
        g = int(obj["g"])
        cs = tuple(LaurentPoly.from_json(c) for c in obj["c_list"])
        p = matrix_from_json(obj["P"])
        det_canonical = LaurentPoly.from_json(obj["det_canonical"])
        target = ((ONE_MINUS_T * ONE_MINUS_T_INV) ** g).normalize_associate()[0]
        return cls(form, g, cs, BaseChange.certify(p), det_canonical, target)


# -- operations -------------------------------------------------------------


def h2_block() -> Matrix:
    return as_matrix([[ZERO, ONE_MINUS_T], [ONE_MINUS_T_INV, ZERO]])


def h2_sum(g: int) -> HermitianForm:
    """The block-diagonal sum of g copies of [[0, 1-t], [1-t^-1, 0]]."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    return HermitianForm(block_diag(*([h2_block()] * g)))


def congruence(p: Sequence[Sequence], a: HermitianForm) -> HermitianForm:
    """The congruent form P A P*, with P* the involve-transpose of P."""
    pm = as_matrix(p)
    if len(pm) != a.rank or any(len(r) != a.rank for r in pm):
        raise ValueError(f"base change rank {len(pm)} does not match form rank {a.rank}")
    return HermitianForm(mat_mul(mat_mul(pm, a.entries), involve_transpose(pm)))


def solve_hermitian_zero_aug(d: LaurentPoly) -> Optional[LaurentPoly]:
    """Solve c(1-t) + c~(1-t^-1) = d for an involution-fixed d.

    Writes d = m_0 * 2 + sum_{r>=1} m_r (t^r + t^-r) and telescopes the
    partial sums M_r = m_0 + ... + m_r into c = sum_r M_r t^r. A solution
    exists exactly when the augmentation of d vanishes; returns None
    otherwise.
    """
    if d != d.involve():
        raise ValueError("input is not involution-fixed")
    if d.augment() != 0:
        return None
    if d.is_zero:
        return ZERO
    top = d.max_exponent()
    running = d.coeff(0) // 2
    coeffs = {}
    if running:
        coeffs[0] = running
    for r in range(1, top + 1):
        running += d.coeff(r)
        if running:
            coeffs[r] = running
    c = LaurentPoly(coeffs)
    if c * ONE_MINUS_T + c.involve() * ONE_MINUS_T_INV != d:
        raise InternalCheckError("telescoped solution failed to reconstruct input")
    return c


def recognize_block_form(a: HermitianForm) -> Optional[list[LaurentPoly]]:
    """Recover [c_1, ..., c_g] when A is in the recognized block shape.

    The shape is block-diagonal in consecutive 2x2 blocks
    [[0, 1-t], [1-t^-1, d_k]] with d_k = c_k(1-t) + c_k~(1-t^-1); all
    cross-block entries must be exactly zero. Returns None otherwise.
    """
    cs, _ = _recognize_with_reason(a)
    return cs


def _recognize_with_reason(a: HermitianForm):
    n = a.rank
    if n % 2 != 0:
        return None, f"rank {n} is odd"
    g = n // 2
    e = a.entries
    for i in range(n):
        for j in range(n):
            if i // 2 == j // 2:
                continue
            if not e[i][j].is_zero:
                return None, f"cross-block entry ({i},{j}) is nonzero"
    cs = []
    for k in range(g):
        r = 2 * k
        if not e[r][r].is_zero:
            return None, f"block {k}: entry ({r},{r}) is not zero"
        if e[r][r + 1] != ONE_MINUS_T:
            return None, f"block {k}: entry ({r},{r + 1}) is not 1-t"
        if e[r + 1][r] != ONE_MINUS_T_INV:
            return None, f"block {k}: entry ({r + 1},{r}) is not 1-t^-1"
        c = solve_hermitian_zero_aug(e[r + 1][r + 1])
        if c is None:
            return None, (
                f"block {k}: diagonal entry has nonzero augmentation "
                f"{e[r + 1][r + 1].augment()}"
            )
        cs.append(c)
    return cs, None


def prenormalize_units(a: HermitianForm) -> tuple[Matrix, HermitianForm]:
    """Rescale basis vectors by units so off-diagonals become exactly 1-t.

    For each consecutive 2x2 block whose off-diagonal entry is associate
    to 1-t, the odd-indexed basis vector is rescaled by the unit making
    the entry exactly 1-t. Diagonal entries are unchanged by such a
    rescaling. Returns the diagonal base change D and D A D*.
    """
    n = a.rank
    units = [ONE] * n
    for k in range(n // 2):
        r = 2 * k
        e = a.entries[r][r + 1]
        if e.is_zero:
            continue
        canonical, unit = e.normalize_associate()
        if canonical != ONE_MINUS_T.normalize_associate()[0]:
            continue
        # e = unit * t^? * canonical form of 1-t; want 1 * e * u~ = 1-t.
        quotient = ONE_MINUS_T.divide_exact(e)
        if quotient is None:
            # associate, so 1-t = w * e for the unit w = (1-t)/e
            raise InternalCheckError("associate entry failed exact division")
        w = quotient.is_unit()
        if w is None:
            raise InternalCheckError("quotient of associates is not a unit")
        units[r + 1] = w.involve().as_poly()
    d = tuple(
        tuple(units[i] if i == j else ZERO for j in range(n)) for i in range(n)
    )
    return d, congruence(d, a)


def reduce_to_standard(
    a: HermitianForm, prenormalize: bool = False
) -> Optional[ReductionCertificate]:
    """Recognize the block shape and certify the reduction to the standard form.

    Returns None when recognition fails. Once the shape is recognized the
    reduction is mathematically forced, so any downstream check failure is
    raised as InternalCheckError rather than silently returning None.
    """
    d = identity(a.rank)
    working = a
    if prenormalize:
        d, working = prenormalize_units(a)
    cs = recognize_block_form(working)
    if cs is None:
        return None
    g = a.rank // 2
    blocks = [as_matrix([[ONE, ZERO], [-c, ONE]]) for c in cs]
    p0 = block_diag(*blocks)
    p = mat_mul(p0, d)
    reduced = congruence(p, a)
    target = h2_sum(g)
    if reduced.entries != target.entries:
        raise InternalCheckError("reduction replay does not give the standard form")
    det_a = determinant(a)
    det_target = (ONE_MINUS_T * ONE_MINUS_T_INV) ** g
    if not assoc_eq(det_a, det_target):
        raise InternalCheckError("recognized form has non-associate determinant")
    return ReductionCertificate(
        form=a,
        genus=g,
        c_list=tuple(cs),
        reduction=BaseChange.certify(p),
        det_canonical=det_a.normalize_associate()[0],
        det_target_canonical=det_target.normalize_associate()[0],
    )


def det_congruence_check(b: Sequence[Sequence], a: HermitianForm) -> bool:
    """Verify det(B A B*) = det(B) det(A) involve(det(B)) exactly."""
    bm = as_matrix(b)
    if len(bm) != a.rank:
        raise ValueError("rank mismatch")
    lhs = determinant(congruence(bm, a))
    det_b = determinant(bm)
    rhs = det_b * determinant(a) * det_b.involve()
    return lhs == rhs


@dataclass(frozen=True)
class ReductionVerdict:
    """Outcome of the full recognize/reduce/determinant pipeline."""

    accepted: bool
    genus: Optional[int]
    certificate: Optional[ReductionCertificate]
    reason: Optional[str]
    label: str

    def to_json(self) -> dict:
        out: dict = {"verdict": "accept" if self.accepted else "reject", "label": self.label}
        if self.accepted:
            out["g"] = str(self.genus)
            out["certificate"] = self.certificate.to_json()
        else:
            out["reason"] = self.reason
        return out


ACCEPT_LABEL = "isometric to the standard surface form H2^g: topologically unknotted"
REJECT_LABEL = "not recognized; no verdict"


def certify_reduction(a: HermitianForm, prenormalize: bool = False) -> ReductionVerdict:
    """Run recognition, reduction, and the determinant gate on a form."""
    working = a
    if prenormalize:
        _, working = prenormalize_units(a)
    cs, reason = _recognize_with_reason(working)
    if cs is None:
        return ReductionVerdict(False, None, None, f"recognition failed: {reason}", REJECT_LABEL)
    cert = reduce_to_standard(a, prenormalize=prenormalize)
    if cert is None:
        raise InternalCheckError("recognition succeeded but reduction returned nothing")
    return ReductionVerdict(True, cert.genus, cert, None, ACCEPT_LABEL)
