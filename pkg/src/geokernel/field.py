"""Exact arithmetic in towers of quadratic extensions.

A FieldElement lives in a tower Q(sqrt(r1))(sqrt(r2))... over a base field
that is either the rationals (Constructible mode) or the rational functions
in a positive infinitesimal ``eps`` (NonArchimedean mode).  Representation:
a depth-k element is a nested pair tree whose leaves are base values; the
pair (a, b) at level i denotes a + b*sqrt(r_i).

Every operation is exact.  Comparison is decided recursively: the sign of
a + b*sqrt(r) follows from the signs of a and b and a comparison of a^2
with b^2*r.  A new sqrt node is created only after the radicand is checked
positive and not already a square in the tower (attempted by solving
c^2 = r recursively), so zero-testing is structural.
"""

from __future__ import annotations

from fractions import Fraction

from .nafield import RatFunc, frac_sqrt

# ---------------------------------------------------------------------------
# errors


class FieldError(Exception):
    pass


class NotPositive(FieldError):
    """inv_positive called on an element that is not strictly positive."""


class Negative(FieldError):
    """sqrt_nonneg called on a strictly negative element."""


# ---------------------------------------------------------------------------
# base-field helpers (leaves are Fraction or RatFunc)


def _bsign(v) -> int:
    if isinstance(v, Fraction):
        return 1 if v > 0 else (-1 if v < 0 else 0)
    return v.sign()


def _bsqrt(v):
    if isinstance(v, Fraction):
        return frac_sqrt(v)
    return v.sqrt_exact()


def _bzero(v):
    return Fraction(0) if isinstance(v, Fraction) else RatFunc.const(0)


def _bone(v):
    return Fraction(1) if isinstance(v, Fraction) else RatFunc.const(1)


# ---------------------------------------------------------------------------
# rep-level arithmetic; a rep of depth 0 is a base value, of depth k a pair


def _rzero(depth, proto):
    if depth == 0:
        return _bzero(proto)
    z = _rzero(depth - 1, proto)
    return (z, z)


def _rconst(q, depth, proto):
    if depth == 0:
        return Fraction(q) if isinstance(proto, Fraction) else RatFunc.const(q)
    return (_rconst(q, depth - 1, proto), _rzero(depth - 1, proto))


def _rlift(rep, fromdepth, todepth, proto):
    for d in range(fromdepth, todepth):
        rep = (rep, _rzero(d, proto))
    return rep


def _radd(x, y, depth):
    if depth == 0:
        return x + y
    return (_radd(x[0], y[0], depth - 1), _radd(x[1], y[1], depth - 1))


def _rneg(x, depth):
    if depth == 0:
        return -x
    return (_rneg(x[0], depth - 1), _rneg(x[1], depth - 1))


def _rsub(x, y, depth):
    return _radd(x, _rneg(y, depth), depth)


def _rmul(x, y, rads, depth):
    if depth == 0:
        return x * y
    a, b = x
    c, d = y
    r = rads[depth - 1]
    ac = _rmul(a, c, rads, depth - 1)
    bd = _rmul(b, d, rads, depth - 1)
    ad = _rmul(a, d, rads, depth - 1)
    bc = _rmul(b, c, rads, depth - 1)
    return (_radd(ac, _rmul(bd, r, rads, depth - 1), depth - 1),
            _radd(ad, bc, depth - 1))


def _ris_zero(x, depth) -> bool:
    if depth == 0:
        return (x == 0) if isinstance(x, Fraction) else x.is_zero()
    return _ris_zero(x[0], depth - 1) and _ris_zero(x[1], depth - 1)


def _rsign(x, rads, depth) -> int:
    if depth == 0:
        return _bsign(x)
    a, b = x
    sb = _rsign(b, rads, depth - 1)
    if sb == 0:
        return _rsign(a, rads, depth - 1)
    sa = _rsign(a, rads, depth - 1)
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    # a and b*sqrt(r) pull in opposite directions: compare a^2 with b^2*r
    r = rads[depth - 1]
    aa = _rmul(a, a, rads, depth - 1)
    bbr = _rmul(_rmul(b, b, rads, depth - 1), r, rads, depth - 1)
    c = _rsign(_rsub(aa, bbr, depth - 1), rads, depth - 1)
    if c == 0:
        return 0
    return sa if c > 0 else sb


def _rinv(x, rads, depth):
    if depth == 0:
        if isinstance(x, Fraction):
            return 1 / x
        return RatFunc.const(1) / x
    a, b = x
    r = rads[depth - 1]
    den = _rsub(_rmul(a, a, rads, depth - 1),
                _rmul(_rmul(b, b, rads, depth - 1), r, rads, depth - 1),
                depth - 1)
    dinv = _rinv(den, rads, depth - 1)
    return (_rmul(a, dinv, rads, depth - 1),
            _rneg(_rmul(b, dinv, rads, depth - 1), depth - 1))


def _rdiv(x, y, rads, depth):
    return _rmul(x, _rinv(y, rads, depth), rads, depth)


def _rhalf(x, rads, depth, proto):
    return _rmul(x, _rconst(Fraction(1, 2), depth, proto), rads, depth)


def _sqrt_in(rads, x, depth, proto):
    """Square root of rep x inside the tower, or None if none exists there."""
    if depth == 0:
        return _bsqrt(x)
    a, b = x
    if _ris_zero(b, depth - 1):
        s = _sqrt_in(rads, a, depth - 1, proto)
        if s is not None:
            return (s, _rzero(depth - 1, proto))
        # maybe sqrt(a) = d*sqrt(r) with d^2 = a/r
        r = rads[depth - 1]
        q = _rdiv(a, r, rads, depth - 1)
        d = _sqrt_in(rads, q, depth - 1, proto)
        if d is not None:
            return (_rzero(depth - 1, proto), d)
        return None
    # want (c + d*sqrt(r))^2 = a + b*sqrt(r):
    #   c^2 + d^2 r = a, 2cd = b  =>  c^2 = (a +- sqrt(a^2 - b^2 r)) / 2
    r = rads[depth - 1]
    disc = _rsub(_rmul(a, a, rads, depth - 1),
                 _rmul(_rmul(b, b, rads, depth - 1), r, rads, depth - 1),
                 depth - 1)
    s = _sqrt_in(rads, disc, depth - 1, proto)
    if s is None:
        return None
    for t in (_radd(a, s, depth - 1), _rsub(a, s, depth - 1)):
        c2 = _rhalf(t, rads, depth - 1, proto)
        c = _sqrt_in(rads, c2, depth - 1, proto)
        if c is not None and not _ris_zero(c, depth - 1):
            twoc_inv = _rinv(_radd(c, c, depth - 1), rads, depth - 1)
            d = _rmul(b, twoc_inv, rads, depth - 1)
            cand = (c, d)
            if _ris_zero(_rsub(_rmul(cand, cand, rads, depth), x, depth), depth):
                return cand
    return None


# ---------------------------------------------------------------------------
# FieldElement


class FieldElement:
    """Immutable exact element of a quadratic-extension tower."""

    __slots__ = ("tower", "rep", "_rads", "_proto")

    def __init__(self, tower, rep):
        self.tower = tower
        self.rep = rep
        self._rads = tuple(t.rep for t in tower)
        p = rep
        for _ in range(len(tower)):
            p = p[0]
        self._proto = p  # a leaf, identifies the base field

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, q) -> "FieldElement":
        return cls((), Fraction(q))

    @classmethod
    def from_ratfunc(cls, rf: RatFunc) -> "FieldElement":
        return cls((), rf)

    @property
    def depth(self) -> int:
        return len(self.tower)

    @property
    def mode(self) -> str:
        return "constructible" if isinstance(self._proto, Fraction) else "nonarch"

    def _const(self, q) -> "FieldElement":
        return FieldElement((), Fraction(q) if isinstance(self._proto, Fraction)
                            else RatFunc.const(q))

    def zero(self) -> "FieldElement":
        return self._const(0)

    def one(self) -> "FieldElement":
        return self._const(1)

    # -- normalization and tower merging ------------------------------------

    def _normalized(self) -> "FieldElement":
        tower, rep = self.tower, self.rep
        while tower and _ris_zero(rep[1], len(tower) - 1):
            rep = rep[0]
            tower = tower[:-1]
        if tower is self.tower:
            return self
        return FieldElement(tower, rep)

    def _to_nonarch(self) -> "FieldElement":
        if self.mode == "nonarch":
            return self

        def conv(rep, depth):
            if depth == 0:
                return RatFunc.const(rep)
            return (conv(rep[0], depth - 1), conv(rep[1], depth - 1))

        tower = []
        for i, rad in enumerate(self.tower):
            tower.append(FieldElement(tuple(tower[:i]), conv(rad.rep, i)))
        return FieldElement(tuple(tower), conv(self.rep, self.depth))

    @staticmethod
    def _same_tower(ta, tb) -> bool:
        if ta is tb:
            return True
        if len(ta) != len(tb):
            return False
        return all(x.rep == y.rep for x, y in zip(ta, tb))

    @staticmethod
    def _merge(ta, tb):
        """Embed tower tb into an extension T of ta; return (T, emb) where
        emb[i] is the rep over T of sqrt of tb's i-th radicand."""
        T = list(ta)
        emb: list = []

        def tower_tuple():
            return tuple(T)

        def convert(rep, depth, proto):
            # rep over tb[:depth] -> rep over T, using emb[:depth]
            if depth == 0:
                return _rlift(rep, 0, len(T), proto)
            rads = tuple(t.rep for t in T)
            u = convert(rep[0], depth - 1, proto)
            v = convert(rep[1], depth - 1, proto)
            return _radd(u, _rmul(v, emb[depth - 1], rads, len(T)), len(T))

        for i, rad in enumerate(tb):
            proto = rad._proto
            r_rep = convert(rad.rep, i, proto)
            rads = tuple(t.rep for t in T)
            s = _sqrt_in(rads, r_rep, len(T), proto)
            if s is None:
                T.append(FieldElement(tower_tuple(), r_rep))
                emb = [(e, _rzero(len(T) - 1, proto)) for e in emb]
                s = (_rzero(len(T) - 1, proto), _rconst(1, len(T) - 1, proto))
            emb.append(s)
        return tower_tuple(), emb, convert

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            a, b = self, other
            if a.mode != b.mode:
                a, b = a._to_nonarch(), b._to_nonarch()
            return a, b
        if isinstance(other, (int, Fraction)):
            return self, self._const(other)
        return self, None

    @staticmethod
    def _align(a: "FieldElement", b: "FieldElement"):
        """Bring two same-mode elements into one tower; return (tower, xa, xb)."""
        if FieldElement._same_tower(a.tower, b.tower):
            return a.tower, a.rep, b.rep
        if not b.tower:
            return a.tower, a.rep, _rlift(b.rep, 0, a.depth, b._proto)
        if not a.tower:
            return b.tower, _rlift(a.rep, 0, b.depth, a._proto), b.rep
        T, emb, convert = FieldElement._merge(a.tower, b.tower)
        xa = _rlift(a.rep, a.depth, len(T), a._proto)
        xb = convert(b.rep, b.depth, b._proto)
        return T, xa, xb

    # -- arithmetic ----------------------------------------------------------

    def _binop(self, other, op):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        T, xa, xb = FieldElement._align(a, b)
        rads = tuple(t.rep for t in T)
        d = len(T)
        if op == "add":
            rep = _radd(xa, xb, d)
        elif op == "sub":
            rep = _rsub(xa, xb, d)
        elif op == "mul":
            rep = _rmul(xa, xb, rads, d)
        else:  # div
            if _ris_zero(xb, d):
                raise ZeroDivisionError("field division by zero")
            rep = _rdiv(xa, xb, rads, d)
        return FieldElement(T, rep)._normalized()

    def __add__(self, other):
        return self._binop(other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, "sub")

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self._binop(other, "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, "div")

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        return b._binop(a, "div")

    def __neg__(self):
        return FieldElement(self.tower, _rneg(self.rep, self.depth))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent; use inv_positive")
        out = self.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return _ris_zero(self.rep, self.depth)

    def sign(self) -> int:
        return _rsign(self.rep, self._rads, self.depth)

    def __eq__(self, other):
        a, b = self._coerce(other)
        if b is None:
            return NotImplemented
        if FieldElement._same_tower(a.tower, b.tower):
            return a.rep == b.rep
        return (a - b).is_zero()

    def __lt__(self, other):
        a, b = self._coerce(other)
        return (a - b).sign() < 0

    def __le__(self, other):
        a, b = self._coerce(other)
        return (a - b).sign() <= 0

    def __gt__(self, other):
        a, b = self._coerce(other)
        return (a - b).sign() > 0

    def __ge__(self, other):
        a, b = self._coerce(other)
        return (a - b).sign() >= 0

    def __hash__(self):
        raise TypeError("FieldElement is not hashable (use explicit keys)")

    def __repr__(self):
        return f"FieldElement({render_element(self)})"

    # -- valuation (NonArchimedean mode) --------------------------------------

    def valuation(self) -> Fraction | None:
        """eps-adic valuation; None for zero.  Constructible elements have
        valuation 0 unless zero."""
        if self.is_zero():
            return None
        if self.mode == "constructible":
            return Fraction(0)
        if self.depth == 0:
            return Fraction(self.rep.valuation())
        d = self.depth
        y = self ** (2 ** d)  # valuation of y is an integer
        y2 = y * y

        def geq(k: int) -> bool:
            # val(y) >= k  <=>  y^2 < eps^(2k-1)  (odd exponent breaks ties)
            bound = FieldElement.from_ratfunc(RatFunc.eps_power(2 * k - 1))
            return (y2 - bound).sign() < 0

        # geq(k) is true exactly for k <= val(y); find the largest true k
        if geq(1):
            lo = 1
            while geq(lo * 2):
                lo *= 2
            hi = lo * 2
        elif geq(0):
            return Fraction(0)
        else:
            lo = -1
            while not geq(lo):
                lo *= 2
            hi = 0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if geq(mid):
                lo = mid
            else:
                hi = mid
        return Fraction(lo, 2 ** d)


# ---------------------------------------------------------------------------
# module-level API


def ring_op(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    if kind not in ("add", "sub", "mul"):
        raise ValueError(f"unknown ring op {kind!r}")
    return a._binop(b, kind)


def compare(a: FieldElement, b: FieldElement) -> str:
    s = (a - b).sign()
    return "less" if s < 0 else ("greater" if s > 0 else "equal")


def inv_positive(a: FieldElement) -> FieldElement:
    if a.sign() <= 0:
        raise NotPositive(f"not strictly positive: {render_element(a)}")
    return FieldElement(a.tower, _rinv(a.rep, a._rads, a.depth))._normalized()


def sqrt_nonneg(a: FieldElement) -> FieldElement:
    sg = a.sign()
    if sg < 0:
        raise Negative(f"negative radicand: {render_element(a)}")
    if sg == 0:
        return a.zero()
    a = a._normalized()
    s = _sqrt_in(a._rads, a.rep, a.depth, a._proto)
    if s is not None:
        root = FieldElement(a.tower, s)._normalized()
        return -root if root.sign() < 0 else root
    tower = a.tower + (a,)
    rep = (_rzero(a.depth, a._proto), _rconst(1, a.depth, a._proto))
    return FieldElement(tower, rep)


def Q(num, den=1) -> FieldElement:
    """Rational constant in Constructible mode."""
    return FieldElement.from_rational(Fraction(num, den))


def NA(rf) -> FieldElement:
    """Constant in NonArchimedean mode."""
    if isinstance(rf, RatFunc):
        return FieldElement.from_ratfunc(rf)
    return FieldElement.from_ratfunc(RatFunc.const(Fraction(rf)))


EPS_ELEMENT = None  # initialized lazily to avoid import-order issues


def eps() -> FieldElement:
    global EPS_ELEMENT
    if EPS_ELEMENT is None:
        EPS_ELEMENT = FieldElement.from_ratfunc(RatFunc.eps_power(1))
    return EPS_ELEMENT


# ---------------------------------------------------------------------------
# numeric approximation (render-time only; never used in comparisons)


def approx(x: FieldElement, use_shadow: bool = False) -> float:
    """Float approximation of a Constructible element, or of the eps -> 0
    shadow of a finitely bounded NonArchimedean element."""
    def leaf(v) -> float:
        if isinstance(v, Fraction):
            return float(v)
        if not use_shadow:
            raise ValueError("NonArchimedean element has no float value")
        s = v.shadow()
        if s is None:
            raise ValueError("unbounded element has no shadow")
        return float(s)

    def go(rep, depth, rad_floats) -> float:
        if depth == 0:
            return leaf(rep)
        a, b = rep
        fa = go(a, depth - 1, rad_floats)
        fb = go(b, depth - 1, rad_floats)
        return fa + fb * rad_floats[depth - 1]

    x = x._normalized()
    rad_floats: list[float] = []
    for i, rad in enumerate(x.tower):
        v = go(rad.rep, i, rad_floats)
        rad_floats.append(max(v, 0.0) ** 0.5)
    return go(x.rep, x.depth, rad_floats)


# ---------------------------------------------------------------------------
# canonical rendering and parsing


def _atomic(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and i > 0:
            return False
    return not (s.startswith("-") and any(c in "+-" for c in s[1:]))


def _wrap(s: str) -> str:
    return s if _atomic(s) else f"({s})"


def render_element(x: FieldElement) -> str:
    def rend(rep, depth, tower):
        if depth == 0:
            return str(rep)
        a, b = rep
        ra = rend(a, depth - 1, tower)
        rr = rend(tower[depth - 1].rep, depth - 1, tower)
        if _ris_zero(b, depth - 1):
            return ra
        rb = rend(b, depth - 1, tower)
        term = f"{_wrap(rb)}*sqrt({rr})"
        if _ris_zero(a, depth - 1):
            return term
        return f"{_wrap(ra)}+{term}"

    x = x._normalized()
    return rend(x.rep, x.depth, x.tower)


class ElementParseError(FieldError):
    pass


def parse_element(text: str, mode: str = "constructible") -> FieldElement:
    """Parse the canonical expression grammar into a FieldElement."""
    toks = _tokenize(text)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else None

    def take(expected=None):
        t = peek()
        if t is None or (expected is not None and t != expected):
            raise ElementParseError(f"expected {expected!r}, got {t!r} in {text!r}")
        pos[0] += 1
        return t

    const = Q if mode == "constructible" else NA

    def parse_expr():
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term():
        node = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_factor()
            node = node * rhs if op == "*" else node / rhs
        return node

    def parse_factor():
        node = parse_atom()
        while peek() == "^":
            take()
            n = take()
            if not n.isdigit():
                raise ElementParseError(f"expected integer exponent, got {n!r}")
            node = node ** int(n)
        return node

    def parse_atom():
        t = peek()
        if t == "-":
            take()
            return -parse_atom()
        if t == "(":
            take()
            node = parse_expr()
            take(")")
            return node
        if t == "sqrt":
            take()
            take("(")
            node = parse_expr()
            take(")")
            return sqrt_nonneg(node)
        if t == "eps":
            take()
            if mode == "constructible":
                raise ElementParseError(
                    "eps is only valid in NonArchimedean mode")
            return eps()
        if t is not None and t[0].isdigit():
            take()
            return const(Fraction(t))
        raise ElementParseError(f"unexpected token {t!r} in {text!r}")

    node = parse_expr()
    if peek() is not None:
        raise ElementParseError(f"trailing input at {peek()!r} in {text!r}")
    return node


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/()^":
            toks.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(text[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalnum():
                j += 1
            toks.append(text[i:j])
            i = j
        else:
            raise ElementParseError(f"bad character {ch!r} in {text!r}")
    return toks
