"""Exact scalar arithmetic: multivariate Laurent polynomials and rational functions.

Everything is built over exact rationals (``fractions.Fraction``).  The
variables are fixed once and for all:

* ``q`` -- Laurent variable (exponents may be negative),
* ``X``, ``Y`` -- ordinary polynomial variables,
* ``T`` -- ordinary polynomial variable standing in for ``q**(2*x)``, so
  that "does not depend on x" becomes the decidable statement
  "has T-degree 0".

Rational functions keep their denominator as a multiset of normalized
factors.  This makes the cancellations that occur in q-Pochhammer
quotients cheap (trial exact division by each factor) without requiring a
full multivariate polynomial GCD.  Equality is decided by
cross-multiplication, so completeness of the cancellation is a
performance matter, never a correctness one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

VARS = ("q", "X", "Y", "T")
_QI, _XI, _YI, _TI = 0, 1, 2, 3

Exponent = tuple[int, int, int, int]

Scalar = Union[int, Fraction]


class ExactAlgError(Exception):
    """Base error for the exact-arithmetic layer."""


class ZeroDenominator(ExactAlgError, ZeroDivisionError):
    """A denominator became identically zero."""


def _as_fraction(c: Scalar) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class MPoly:
    """Multivariate Laurent polynomial in q, X, Y, T over the rationals.

    Stored sparsely as a map from exponent vectors ``(e_q, e_X, e_Y, e_T)``
    to nonzero Fraction coefficients.  ``e_q`` may be negative; the other
    exponents are nonnegative.  Instances are immutable.
    """

    __slots__ = ("terms", "_hash", "_key")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                c = _as_fraction(c)
                if c:
                    if exp[_XI] < 0 or exp[_YI] < 0 or exp[_TI] < 0:
                        raise ExactAlgError(
                            "negative exponent for non-Laurent variable: %r" % (exp,))
                    clean[exp] = c
        self.terms = clean
        self._hash = None
        self._key = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(c: Scalar) -> "MPoly":
        return MPoly({(0, 0, 0, 0): c})

    @staticmethod
    def monomial(c: Scalar, eq: int = 0, ex: int = 0, ey: int = 0, et: int = 0) -> "MPoly":
        return MPoly({(eq, ex, ey, et): c})

    @staticmethod
    def var(name: str) -> "MPoly":
        i = VARS.index(name)
        exp = [0, 0, 0, 0]
        exp[i] = 1
        return MPoly({tuple(exp): 1})

    # -- basic predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0, 0, 0, 0): Fraction(1)}

    def is_constant(self) -> bool:
        return all(e == (0, 0, 0, 0) for e in self.terms)

    def as_constant(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ExactAlgError("not a constant: %s" % self)
        return self.terms[(0, 0, 0, 0)]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- canonical order / hashing ----------------------------------------

    def key(self):
        """Canonical tuple of (exponent, coefficient) pairs.

        Term order is graded lexicographic on (e_q, e_X, e_Y, e_T),
        descending, which fixes printing and hashing.
        """
        if self._key is None:
            items = sorted(self.terms.items(),
                           key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
            self._key = tuple((exp, c) for exp, c in items)
        return self._key

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, Fraction(0)) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return _raw_poly(terms)

    __radd__ = __add__

    def __neg__(self):
        return _raw_poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_poly(other) + (-self)

    def __mul__(self, other):
        other = _coerce_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in a.items():
            q1, x1, y1, t1 = e1
            for e2, c2 in b.items():
                exp = (q1 + e2[0], x1 + e2[1], y1 + e2[2], t1 + e2[3])
                s = out.get(exp)
                p = c1 * c2
                if s is None:
                    out[exp] = p
                else:
                    s += p
                    if s:
                        out[exp] = s
                    else:
                        del out[exp]
        return _raw_poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ExactAlgError("negative power of a polynomial; use RatFunc")
        result = MPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- structure ---------------------------------------------------------

    def degree(self, var: str) -> int:
        """Highest exponent of ``var``; 0 for the zero polynomial."""
        i = VARS.index(var)
        if not self.terms:
            return 0
        return max(e[i] for e in self.terms)

    def low_degree(self, var: str) -> int:
        i = VARS.index(var)
        if not self.terms:
            return 0
        return min(e[i] for e in self.terms)

    def content(self) -> Fraction:
        """Positive rational c with self/c primitive (integer coefficients, gcd 1)."""
        if not self.terms:
            return Fraction(1)
        from math import gcd
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def leading_coeff(self) -> Fraction:
        """Coefficient of the canonically largest term."""
        if not self.terms:
            return Fraction(0)
        exp = max(self.terms, key=lambda e: (sum(e), e))
        return self.terms[exp]

    def scale(self, c: Scalar) -> "MPoly":
        c = _as_fraction(c)
        if not c:
            return MPoly()
        return _raw_poly({e: co * c for e, co in self.terms.items()})

    def shift_q(self, k: int) -> "MPoly":
        """Multiply by q**k (always legal: q is Laurent)."""
        if k == 0:
            return self
        return _raw_poly({(e[0] + k, e[1], e[2], e[3]): c
                          for e, c in self.terms.items()})

    def divexact(self, d: "MPoly") -> "MPoly | None":
        """Exact quotient self/d, or None if d does not divide self."""
        if d.is_zero():
            raise ZeroDenominator("division by zero polynomial")
        if self.is_zero():
            return MPoly()
        if d.is_monomial():
            (dexp, dc), = d.terms.items()
            out = {}
            for e, c in self.terms.items():
                exp = (e[0] - dexp[0], e[1] - dexp[1], e[2] - dexp[2], e[3] - dexp[3])
                if exp[_XI] < 0 or exp[_YI] < 0 or exp[_TI] < 0:
                    return None
                out[exp] = c / dc
            return _raw_poly(out)
        # shift q exponents to be nonnegative; in a Laurent ring the naive
        # division loop would otherwise not terminate for inexact inputs
        slow = self.low_degree("q")
        dlow = d.low_degree("q")
        rem = {(e[0] - slow, e[1], e[2], e[3]): c for e, c in self.terms.items()}
        dterms = {(e[0] - dlow, e[1], e[2], e[3]): c for e, c in d.terms.items()}
        dlead = max(dterms, key=lambda e: (sum(e), e))
        dc = dterms[dlead]
        quot: dict[Exponent, Fraction] = {}
        while rem:
            rlead = max(rem, key=lambda e: (sum(e), e))
            exp = (rlead[0] - dlead[0], rlead[1] - dlead[1],
                   rlead[2] - dlead[2], rlead[3] - dlead[3])
            if exp[0] < 0 or exp[_XI] < 0 or exp[_YI] < 0 or exp[_TI] < 0:
                return None
            c = rem[rlead] / dc
            quot[exp] = c
            # rem -= c * monomial(exp) * d
            for de, dco in dterms.items():
                tgt = (exp[0] + de[0], exp[1] + de[1], exp[2] + de[2], exp[3] + de[3])
                s = rem.get(tgt, Fraction(0)) - c * dco
                if s:
                    rem[tgt] = s
                else:
                    rem.pop(tgt, None)
        return _raw_poly(quot).shift_q(slow - dlow)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Evaluate at rationals.  q must be nonzero if negative powers occur."""
        vals = [_as_fraction(point[v]) for v in VARS]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for i, ex in enumerate(e):
                if ex:
                    term *= vals[i] ** ex
            total += term
        return total

    def substitute_poly(self, assignments: Mapping[str, "RatFunc"]) -> "RatFunc":
        """Substitute RatFunc values for some variables; others stay put."""
        idx = {VARS.index(v): val for v, val in assignments.items()}
        total = RatFunc.zero()
        for e, c in self.terms.items():
            rest = [0, 0, 0, 0]
            factor = RatFunc.from_poly(MPoly.constant(c))
            for i, ex in enumerate(e):
                if i in idx:
                    if ex:
                        factor = factor * (idx[i] ** ex)
                else:
                    rest[i] = ex
            factor = factor * RatFunc.from_poly(MPoly.monomial(1, *rest))
            total = total + factor
        return total

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.key():
            factors = []
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(VARS[i])
                elif e:
                    factors.append("%s^%d" % (VARS[i], e))
            if not factors:
                body = str(c)
            elif c == 1:
                body = "*".join(factors)
            elif c == -1:
                body = "-" + "*".join(factors)
            else:
                body = str(c) + "*" + "*".join(factors)
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return "MPoly(%s)" % self


def _raw_poly(terms: dict[Exponent, Fraction]) -> MPoly:
    p = MPoly.__new__(MPoly)
    p.terms = terms
    p._hash = None
    p._key = None
    return p


def _coerce_poly(x) -> MPoly | None:
    if isinstance(x, MPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MPoly.constant(x)
    return None


ZERO = MPoly()
ONE = MPoly.constant(1)
q = MPoly.var("q")
X = MPoly.var("X")
Y = MPoly.var("Y")
T = MPoly.var("T")


def _normalize_factor(f: MPoly) -> tuple[MPoly, Fraction]:
    """Return (primitive positive-leading factor, removed rational multiplier)."""
    c = f.content()
    if f.leading_coeff() < 0:
        c = -c
    return f.divexact(MPoly.constant(c)), c


class RatFunc:
    """Normalized quotient of MPolys; the universal scalar of the package.

    The denominator is kept as a multiset of primitive factors with
    positive leading coefficient; the rational content lives in the
    numerator.  ``den`` reassembles the expanded denominator on demand.
    Equality is by cross-multiplication.
    """

    __slots__ = ("num", "den_factors", "_den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        if den is None or den.is_one():
            self.num = num
            self.den_factors: dict[MPoly, int] = {}
        else:
            if den.is_zero():
                raise ZeroDenominator("zero denominator")
            r = RatFunc._build(num, {den: 1})
            self.num = r.num
            self.den_factors = r.den_factors
        self._den = None
        if self.num.is_zero():
            self.den_factors = {}

    @staticmethod
    def _build(num: MPoly, factors: dict[MPoly, int]) -> "RatFunc":
        """Assemble num / prod(factors), normalizing and cancelling."""
        if num.is_zero():
            return RatFunc.zero()
        clean: dict[MPoly, int] = {}
        for f, mult in factors.items():
            if mult == 0:
                continue
            if f.is_zero():
                raise ZeroDenominator("zero denominator factor")
            if f.is_constant():
                num = num.scale(1 / f.as_constant() ** mult)
                continue
            g, c = _normalize_factor(f)
            if c != 1:
                num = num.scale(Fraction(1) / c ** mult)
            if g.is_monomial():
                # pure monomial factor: q-part shifts, X/Y/T parts divide or stay
                (gexp, gc), = g.terms.items()
                if gexp[_XI] == 0 and gexp[_YI] == 0 and gexp[_TI] == 0:
                    num = num.scale(Fraction(1) / gc ** mult).shift_q(-gexp[_QI] * mult)
                    continue
            clean[g] = clean.get(g, 0) + mult
        # cancel factors into the numerator where possible
        out: dict[MPoly, int] = {}
        for f in sorted(clean, key=MPoly.key):
            mult = clean[f]
            while mult > 0:
                quo = num.divexact(f)
                if quo is None:
                    break
                num = quo
                mult -= 1
            if mult:
                out[f] = mult
        r = RatFunc.__new__(RatFunc)
        r.num = num
        r.den_factors = out
        r._den = None
        return r

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "RatFunc":
        r = RatFunc.__new__(RatFunc)
        r.num = ZERO
        r.den_factors = {}
        r._den = None
        return r

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc.from_poly(ONE)

    @staticmethod
    def from_poly(p: MPoly) -> "RatFunc":
        r = RatFunc.__new__(RatFunc)
        r.num = p
        r.den_factors = {}
        r._den = None
        return r

    @staticmethod
    def from_scalar(c: Scalar) -> "RatFunc":
        return RatFunc.from_poly(MPoly.constant(c))

    @property
    def den(self) -> MPoly:
        """Expanded denominator (product of the stored factors)."""
        if self._den is None:
            d = ONE
            for f, mult in self.den_factors.items():
                d = d * f ** mult
            self._den = d
        return self._den

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den_factors

    def as_poly(self) -> MPoly:
        if self.den_factors:
            raise ExactAlgError("not a polynomial: %s" % self)
        return self.num

    def as_constant(self) -> Fraction:
        return self.as_poly().as_constant()

    def degree(self, var: str) -> int:
        """Degree in ``var`` of the reduced representation (num minus den)."""
        return self.num.degree(var) - self.den.degree(var)

    def depends_on(self, var: str) -> bool:
        i = VARS.index(var)
        if any(e[i] for e in self.num.terms):
            return True
        return any(any(e[i] for e in f.terms) for f in self.den_factors)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        common: dict[MPoly, int] = {}
        for f, m in self.den_factors.items():
            m2 = other.den_factors.get(f, 0)
            if m2:
                common[f] = min(m, m2)
        def extra(r, base):
            p = ONE
            for f, m in r.den_factors.items():
                m -= base.get(f, 0)
                if m:
                    p = p * f ** m
            return p
        e1 = extra(self, common)
        e2 = extra(other, common)
        num = self.num * e2 + other.num * e1
        # lcm of the two factor multisets
        factors: dict[MPoly, int] = {}
        for f in set(self.den_factors) | set(other.den_factors):
            factors[f] = max(self.den_factors.get(f, 0), other.den_factors.get(f, 0))
        return RatFunc._build(num, factors)

    __radd__ = __add__

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.num = -self.num
        r.den_factors = dict(self.den_factors)
        r._den = self._den
        return r

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_rf(other) + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatFunc.zero()
        factors = dict(self.den_factors)
        for f, m in other.den_factors.items():
            factors[f] = factors.get(f, 0) + m
        return RatFunc._build(self.num * other.num, factors)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDenominator("inverse of zero")
        return RatFunc._build(self.den, {self.num: 1})

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return _coerce_rf(other) * self.inv()

    def __pow__(self, n: int):
        if n == 0:
            return RatFunc.one()
        base = self if n > 0 else self.inv()
        n = abs(n)
        result = RatFunc.one()
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero():
            return other.num.is_zero()
        if other.num.is_zero():
            return False
        if self.den_factors == other.den_factors:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        # hash through the canonical (num, den) pair; collisions for
        # unreduced-but-equal values are resolved by __eq__
        return hash((self.num, self.den))

    # -- evaluation / substitution ----------------------------------------

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        d = self.num.evaluate(point)
        for f, m in self.den_factors.items():
            v = f.evaluate(point)
            if not v:
                raise ZeroDenominator("denominator vanishes at %r" % (point,))
            d /= v ** m
        return d

    def substitute(self, assignments: Mapping[str, "RatFunc | MPoly | Scalar"]) -> "RatFunc":
        """Exact substitution followed by normalization.

        Raises ZeroDenominator if the substitution kills a denominator
        factor.
        """
        assigns = {v: _coerce_rf(val) for v, val in assignments.items()}
        out = self.num.substitute_poly(assigns)
        for f, m in self.den_factors.items():
            fv = f.substitute_poly(assigns)
            if fv.is_zero():
                raise ZeroDenominator(
                    "substitution makes denominator factor %s vanish" % f)
            out = out / fv ** m
        return out

    # -- printing ----------------------------------------------------------

    def canonical(self) -> str:
        """Deterministic text form used for JSON reports and goldens."""
        if self.is_polynomial():
            return str(self.num)
        return "(%s) / (%s)" % (self.num, self.den)

    def __str__(self):
        return self.canonical()

    def __repr__(self):
        return "RatFunc(%s)" % self


def _coerce_rf(x) -> RatFunc | None:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, MPoly):
        return RatFunc.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return RatFunc.from_scalar(x)
    return None


RF_ZERO = RatFunc.zero()
RF_ONE = RatFunc.one()
RF_Q = RatFunc.from_poly(q)
RF_X = RatFunc.from_poly(X)
RF_Y = RatFunc.from_poly(Y)
RF_T = RatFunc.from_poly(T)


def qpow(k: int) -> RatFunc:
    """q**k as a RatFunc (k may be negative)."""
    return RatFunc.from_poly(MPoly.monomial(1, eq=k))


def _base_exponent(base) -> int:
    """Extract k from a pure power base = q**k."""
    base = _coerce_rf(base)
    p = base.num if base.is_polynomial() else None
    if p is None or not p.is_monomial():
        raise ExactAlgError("q-Pochhammer base must be a pure power of q")
    (exp, c), = p.terms.items()
    if c != 1 or exp[_XI] or exp[_YI] or exp[_TI]:
        raise ExactAlgError("q-Pochhammer base must be a pure power of q")
    return exp[_QI]


def qpoch(a, base, n: int) -> RatFunc:
    """q-Pochhammer (a; base)_n with base a pure power of q.

    For n >= 0 this is prod_{j=0}^{n-1} (1 - a*base**j); for n < 0 the
    reciprocal convention 1 / (a*base**-1; base**-1)_{-n} applies.
    """
    k = _base_exponent(base)
    a = _coerce_rf(a)
    if n >= 0:
        out = RF_ONE
        for j in range(n):
            out = out * (RF_ONE - a * qpow(k * j))
        return out
    rec = qpoch(a * qpow(-k), qpow(-k), -n)
    if rec.is_zero():
        raise ZeroDenominator("negative-index q-Pochhammer hits a zero factor")
    return rec.inv()


def qbinom(n: int, k: int, zero_outside: bool = False) -> MPoly:
    """Gaussian binomial coefficient [n choose k]_q as a polynomial in q."""
    if k < 0 or k > n:
        if zero_outside:
            return ZERO
        raise ExactAlgError("qbinom out of range: n=%d k=%d" % (n, k))
    r = qpoch(q, q, n) / (qpoch(q, q, k) * qpoch(q, q, n - k))
    return r.as_poly()


def qexp(n: int, k: int) -> int:
    """The exponent e(n, k) = k(k+1)/2 - k*n."""
    return k * (k + 1) // 2 - k * n


def substitute(f: RatFunc, assignments: Mapping[str, RatFunc | MPoly | Scalar]) -> RatFunc:
    """Module-level convenience wrapper around RatFunc.substitute."""
    return f.substitute(assignments)
