"""Point predicates over the plane F^2, with witness production.

Positivity is semantics-relative: in Constructible mode P(x) means x > 0;
in NonArchimedean mode node 0 reads P(x) as "positive and not
infinitesimal" while node 1 reads it classically.  Strict betweenness B
demands P of both gap lengths; the non-strict T is the classical closure
and never consults P.  Distinctness (#) of two points is P of their
squared distance, witnessed by a betweenness point; angle positivity is
the cross-product criterion, witnessed by an apex (isosceles) pair or the
right-angle reflection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .field import FieldElement, Q, sqrt_nonneg

# semantics tags
CONSTRUCTIBLE = "constructible"
NODE0 = "node0"
NODE1 = "node1"


class ArityMismatch(Exception):
    pass


class NotPositiveAngle(Exception):
    pass


def _lift(v) -> FieldElement:
    if isinstance(v, FieldElement):
        return v
    return Q(Fraction(v))


@dataclass(frozen=True, eq=False)
class Point:
    x: FieldElement
    y: FieldElement

    def __eq__(self, other):
        return (isinstance(other, Point)
                and self.x == other.x and self.y == other.y)

    def __repr__(self):
        from .field import render_element
        return f"({render_element(self.x)}, {render_element(self.y)})"


def pt(x, y) -> Point:
    return Point(_lift(x), _lift(y))


# -- vector helpers ----------------------------------------------------------

def vsub(p: Point, q: Point):
    return (p.x - q.x, p.y - q.y)


def dot(u, v) -> FieldElement:
    return u[0] * v[0] + u[1] * v[1]


def cross(u, v) -> FieldElement:
    return u[0] * v[1] - u[1] * v[0]


def sqdist(p: Point, q: Point) -> FieldElement:
    d = vsub(p, q)
    return dot(d, d)


def padd(p: Point, q: Point) -> Point:
    return Point(p.x + q.x, p.y + q.y)


def pscale(p: Point, s) -> Point:
    s = _lift(s)
    return Point(p.x * s, p.y * s)


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2, (p.y + q.y) / 2)


def reflect_in_point(p: Point, c: Point) -> Point:
    return Point(2 * c.x - p.x, 2 * c.y - p.y)


def rot90(u):
    """Counterclockwise quarter turn of a vector."""
    return (-u[1], u[0])


# -- positivity --------------------------------------------------------------

def positive(x: FieldElement, sem: str = CONSTRUCTIBLE) -> bool:
    if x.sign() <= 0:
        return False
    if sem == NODE0:
        return x.valuation() <= 0
    return True


# -- core predicates ---------------------------------------------------------

def collinear(u: Point, v: Point, w: Point) -> bool:
    return cross(vsub(w, u), vsub(w, v)).is_zero()


def between(u: Point, v: Point, w: Point, sem: str = CONSTRUCTIBLE) -> bool:
    """Strict betweenness B(u,v,w): both gaps positively long."""
    if not collinear(u, v, w):
        return False
    if not positive(sqdist(u, v), sem) or not positive(sqdist(v, w), sem):
        return False
    return dot(vsub(v, u), vsub(w, v)).sign() > 0


def nonstrict_between(u: Point, v: Point, w: Point) -> bool:
    """T(u,v,w) = not(u != v and not B and v != w); a classical relation."""
    if u == v or v == w:
        return True
    if not collinear(u, v, w):
        return False
    return dot(vsub(v, u), vsub(w, v)).sign() > 0


def congruent(a: Point, b: Point, c: Point, d: Point) -> bool:
    return sqdist(a, b) == sqdist(c, d)


def distinct(a: Point, b: Point, sem: str = CONSTRUCTIBLE) -> bool:
    return positive(sqdist(a, b), sem)


def on_ray(a: Point, b: Point, x: Point) -> bool:
    """x lies on Ray(a,b): T(e,a,x) where e reflects b in a."""
    e = reflect_in_point(b, a)
    return nonstrict_between(e, a, x)


def right_angle(a: Point, b: Point, c: Point, sem: str = CONSTRUCTIBLE) -> bool:
    return (distinct(a, b, sem) and distinct(c, b, sem) and distinct(a, c, sem)
            and dot(vsub(a, b), vsub(c, b)).is_zero())


def pos_angle(a: Point, b: Point, c: Point, sem: str = CONSTRUCTIBLE) -> bool:
    if not distinct(a, b, sem) or not distinct(c, b, sem):
        return False
    cr = cross(vsub(a, b), vsub(c, b))
    return positive(cr * cr, sem)


def angle_lt_pi(a: Point, b: Point, c: Point, sem: str = CONSTRUCTIBLE) -> bool:
    """abc < pi: the supplement (with d the reflection of a in b) is positive."""
    d = reflect_in_point(a, b)
    return pos_angle(d, b, c, sem)


def angle_cong(a: Point, b: Point, c: Point,
               a2: Point, b2: Point, c2: Point) -> bool:
    """Equal angles at b and b2, by the equal-cosine criterion (exact)."""
    q1, q2 = sqdist(a, b), sqdist(c, b)
    p1, p2 = sqdist(a2, b2), sqdist(c2, b2)
    if q1.is_zero() or q2.is_zero() or p1.is_zero() or p2.is_zero():
        return False
    d = dot(vsub(a, b), vsub(c, b))
    e = dot(vsub(a2, b2), vsub(c2, b2))
    if d.sign() != e.sign():
        return False
    return d * d * p1 * p2 == e * e * q1 * q2


# -- witnesses ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DistinctWitness:
    e: Point
    clause: str  # outer-left | inner | outer-right


@dataclass(frozen=True, eq=False)
class AngleWitness:
    kind: str  # apex | right | right-triangle
    u: Point | None = None
    v: Point | None = None
    d: Point | None = None
    copy: tuple | None = None
    right_at: str | None = None


def distinct_witness(a: Point, b: Point) -> DistinctWitness:
    return DistinctWitness(e=midpoint(a, b), clause="inner")


def apex_witness(a: Point, b: Point, c: Point,
                 sem: str = CONSTRUCTIBLE) -> AngleWitness:
    """Equidistant points on the two rays of a positive angle: u = a and v
    laid off on Ray(b,c) at distance |ba|."""
    if not pos_angle(a, b, c, sem):
        raise NotPositiveAngle(f"angle {a} {b} {c} is not positive")
    t = sqrt_nonneg(sqdist(b, a) / sqdist(b, c))
    v = Point(b.x + (c.x - b.x) * t, b.y + (c.y - b.y) * t)
    return AngleWitness(kind="apex", u=a, v=v)


def angle_witness(a: Point, b: Point, c: Point,
                  sem: str = CONSTRUCTIBLE) -> AngleWitness:
    if dot(vsub(a, b), vsub(c, b)).is_zero():
        return AngleWitness(kind="right", d=reflect_in_point(a, b))
    return apex_witness(a, b, c, sem)


def verify_witness(kind: str, args, witness, sem: str = CONSTRUCTIBLE) -> bool:
    """Re-check a witness's defining relations exactly."""
    if kind == "Distinct":
        a, b = args
        w: DistinctWitness = witness
        if w.clause == "inner":
            return between(a, w.e, b, sem)
        if w.clause == "outer-left":
            return between(w.e, a, b, sem)
        return between(a, b, w.e, sem)
    if kind == "PosAngle":
        a, b, c = args
        if witness.kind == "right":
            d = witness.d
            return (between(a, b, d, sem)
                    and congruent(a, b, b, d)
                    and congruent(a, c, d, c)
                    and distinct(a, b, sem) and distinct(c, b, sem)
                    and distinct(a, c, sem))
        if witness.kind == "apex":
            u, v = witness.u, witness.v
            return (on_ray(b, a, u) and on_ray(b, c, v)
                    and congruent(b, u, b, v)
                    and distinct(u, v, sem) and distinct(b, u, sem))
    return False


# -- dispatch ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PredicateResult:
    holds: bool
    witness: DistinctWitness | AngleWitness | None = None


_ARITY = {
    "E": 4, "L": 3, "B": 3, "T": 3, "Distinct": 2, "Ray": 3,
    "RightAngle": 3, "PosAngle": 3, "AngleLtPi": 3, "AngleCong": 6,
}


def predicate_eval(kind: str, args, sem: str = CONSTRUCTIBLE) -> PredicateResult:
    args = tuple(args)
    if kind not in _ARITY:
        raise ArityMismatch(f"unknown predicate kind {kind!r}")
    if len(args) != _ARITY[kind]:
        raise ArityMismatch(
            f"{kind} expects {_ARITY[kind]} points, got {len(args)}")
    if kind == "E":
        return PredicateResult(congruent(*args))
    if kind == "L":
        return PredicateResult(collinear(*args))
    if kind == "B":
        return PredicateResult(between(*args, sem))
    if kind == "T":
        return PredicateResult(nonstrict_between(*args))
    if kind == "Distinct":
        if distinct(*args, sem):
            return PredicateResult(True, distinct_witness(*args))
        return PredicateResult(False)
    if kind == "Ray":
        return PredicateResult(on_ray(*args))
    if kind == "RightAngle":
        return PredicateResult(right_angle(*args, sem))
    if kind == "PosAngle":
        if pos_angle(*args, sem):
            return PredicateResult(True, angle_witness(*args, sem))
        return PredicateResult(False)
    if kind == "AngleLtPi":
        return PredicateResult(angle_lt_pi(*args, sem))
    return PredicateResult(angle_cong(*args))
