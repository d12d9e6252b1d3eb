"""The Wall self-intersection calculus for immersed surfaces.

Self-intersection values live in the quotient of the additive group of
Z[t, t^-1] identifying t^r with t^-r. A surface is modeled by its list of
intersection events together with the Euler number e of its normal
bundle; each event kind carries a fixed contribution rule:

    generic_double_point    +-t^k
    torus_piercing          +-t^k (1-t)
    disc_self_intersection  +-t^k (1-t)(1-t^-1)

The homological self-pairing is lambda = mu + mu~ + iota(e), computed by
lifting the quotient class symmetrically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .laurent import ONE_MINUS_T, ONE_MINUS_T_INV, LaurentPoly, iota, t_power
from .forms import solve_hermitian_zero_aug

GENERIC_DOUBLE_POINT = "generic_double_point"
TORUS_PIERCING = "torus_piercing"
DISC_SELF_INTERSECTION = "disc_self_intersection"

EVENT_KINDS = (GENERIC_DOUBLE_POINT, TORUS_PIERCING, DISC_SELF_INTERSECTION)


class WallClass:
    """An element of the quotient group identifying t^r with t^-r.

    Stored as a finite map from nonnegative r to a nonzero integer
    coefficient of the class [t^r].
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        data: dict[int, int] = {}
        if coeffs:
            for r, c in coeffs.items():
                if not isinstance(r, int) or r < 0:
                    raise ValueError("class indices must be nonnegative integers")
                if not isinstance(c, int):
                    raise TypeError("coefficients must be integers")
                if c != 0:
                    data[r] = c
        self._coeffs = data

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, r: int) -> int:
        return self._coeffs.get(r, 0)

    def terms(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._coeffs.items()))

    def __add__(self, other: "WallClass") -> "WallClass":
        out = dict(self._coeffs)
        for r, c in other._coeffs.items():
            s = out.get(r, 0) + c
            if s:
                out[r] = s
            else:
                del out[r]
        w = WallClass()
        w._coeffs = out
        return w

    def __neg__(self) -> "WallClass":
        w = WallClass()
        w._coeffs = {r: -c for r, c in self._coeffs.items()}
        return w

    def __eq__(self, other) -> bool:
        if isinstance(other, WallClass):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.terms())

    def __repr__(self) -> str:
        return f"WallClass({dict(self.terms())!r})"

    def to_json(self) -> dict:
        return {str(r): str(c) for r, c in self.terms()}


def project(p: LaurentPoly) -> WallClass:
    """The additive quotient map folding t^-r onto t^r."""
    out: dict[int, int] = {}
    for e, c in p.terms():
        r = abs(e)
        s = out.get(r, 0) + c
        if s:
            out[r] = s
        else:
            del out[r]
    w = WallClass()
    w._coeffs = out
    return w


def hermitize(w: WallClass) -> LaurentPoly:
    """Lift w and add the involuted lift: 2a_0 + sum a_r (t^r + t^-r).

    Independent of the choice of lift, since flipping the sign of an
    exponent permutes the two summands.
    """
    coeffs: dict[int, int] = {}
    for r, c in w.terms():
        if r == 0:
            coeffs[0] = coeffs.get(0, 0) + 2 * c
        else:
            coeffs[r] = c
            coeffs[-r] = c
    return LaurentPoly(coeffs)


@dataclass(frozen=True)
class IntersectionEvent:
    """One intersection event: a kind, a sign, and an exponent k."""

    kind: str
    sign: int
    exponent: int

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError("event sign must be +1 or -1")

    def contribution(self) -> LaurentPoly:
        """The lift of this event's contribution to the ring."""
        base = t_power(self.exponent)
        if self.kind == TORUS_PIERCING:
            base = base * ONE_MINUS_T
        elif self.kind == DISC_SELF_INTERSECTION:
            base = base * ONE_MINUS_T * ONE_MINUS_T_INV
        return base if self.sign > 0 else -base

    def to_json(self) -> dict:
        return {"kind": self.kind, "sign": f"{self.sign:+d}", "k": str(self.exponent)}

    @classmethod
    def from_json(cls, obj) -> "IntersectionEvent":
        if not isinstance(obj, dict):
            raise ValueError("event must be an object")
        for key in ("kind", "sign", "k"):
            if key not in obj:
                raise ValueError(f"event is missing {key!r}")
        return cls(str(obj["kind"]), int(obj["sign"]), int(obj["k"]))


@dataclass(frozen=True)
class SurfaceModel:
    """A labeled list of intersection events plus a normal Euler number."""

    label: str
    events: tuple[IntersectionEvent, ...]
    euler: int

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "euler": str(self.euler),
            "events": [e.to_json() for e in self.events],
        }

    @classmethod
    def from_json(cls, obj) -> "SurfaceModel":
        if not isinstance(obj, dict):
            raise ValueError("surface must be an object")
        for key in ("label", "euler", "events"):
            if key not in obj:
                raise ValueError(f"surface is missing {key!r}")
        events = tuple(IntersectionEvent.from_json(e) for e in obj["events"])
        return cls(str(obj["label"]), events, int(obj["euler"]))


def mu(surface: SurfaceModel) -> WallClass:
    """The self-intersection class: the signed sum of event contributions."""
    total = WallClass()
    for event in surface.events:
        total = total + project(event.contribution())
    return total


def lambda_self(surface: SurfaceModel) -> LaurentPoly:
    """The homological self-pairing mu + mu~ + iota(e); involution-fixed."""
    return hermitize(mu(surface)) + iota(surface.euler)


def pairing_shape_check(surface: SurfaceModel) -> Optional[LaurentPoly]:
    """Return c with lambda = c(1-t) + c~(1-t^-1).

    Requires euler = 0 and no generic double points; under that
    precondition lambda always has this shape, so a None from the solver
    indicates a defect and is raised.
    """
    if surface.euler != 0:
        raise ValueError("pairing shape requires Euler number 0")
    if any(e.kind == GENERIC_DOUBLE_POINT for e in surface.events):
        raise ValueError("pairing shape requires no generic double points")
    c = solve_hermitian_zero_aug(lambda_self(surface))
    if c is None:
        raise RuntimeError("shape solver failed under its guaranteed precondition")
    return c


def relabel_invariance(surface: SurfaceModel, permutation: Sequence[int]) -> bool:
    """Check mu and lambda are unchanged by a data-preserving relabeling.

    The relabeling is given as a permutation of event indices; it
    tautologically preserves each event's (kind, sign, exponent).
    """
    n = len(surface.events)
    if sorted(permutation) != list(range(n)):
        raise ValueError("relabeling must be a permutation of the event indices")
    relabeled = SurfaceModel(
        label=surface.label,
        events=tuple(surface.events[i] for i in permutation),
        euler=surface.euler,
    )
    return mu(relabeled) == mu(surface) and lambda_self(relabeled) == lambda_self(surface)
