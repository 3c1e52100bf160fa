"""Arbitrary-precision 6j evaluation: the ground truth for every other method.

Values are kept as SqrtRational numbers q*sqrt(p) (q rational, p a square-free
nonnegative integer) so that equality, products and same-radicand sums are
exact.  The single-sum evaluation uses only integer factorials; nothing is
rounded before an explicit conversion to float.
"""

import math
import threading
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import OutOfRange, PatternError
from .screen import Screen
from .spins import ScreenParams, triad_ok


class _FactorialCache:
    """Grow-only factorial table; reads are lock-free, growth is serialized."""

    def __init__(self):
        self._table = [1, 1]
        self._lock = threading.Lock()

    def __call__(self, n):
        table = self._table
        if n < len(table):
            return table[n]
        with self._lock:
            table = self._table
            if n < len(table):
                return table[n]
            grown = list(table)
            while len(grown) <= n:
                grown.append(grown[-1] * len(grown))
            self._table = grown  # publish atomically
            return grown[n]


factorial = _FactorialCache()


class _PrimeTable:
    """Grow-only sorted prime list with the same publish discipline."""

    def __init__(self):
        self._primes = [2, 3, 5, 7, 11, 13]
        self._lock = threading.Lock()

    def upto(self, n):
        ps = self._primes
        if ps[-1] < n:
            with self._lock:
                ps = self._primes
                if ps[-1] < n:
                    limit = max(n, 2 * ps[-1])
                    sieve = np.ones(limit + 1, dtype=bool)
                    sieve[:2] = False
                    for p in range(2, int(limit ** 0.5) + 1):
                        if sieve[p]:
                            sieve[p * p:: p] = False
                    ps = [int(p) for p in np.nonzero(sieve)[0]]
                    self._primes = ps
        for k, p in enumerate(ps):
            if p > n:
                return ps[:k]
        return ps


_prime_table = _PrimeTable()


def _primes_upto(n):
    """Primes up to n inclusive, grown by sieve on demand."""
    return _prime_table.upto(n)


def _legendre(n, p):
    """Exponent of prime p in n!."""
    total = 0
    while n:
        n //= p
        total += n
    return total


def _sqrt_factorial_ratio(numerator_facts, denominator_facts):
    """sqrt(prod(n_i!) / prod(d_j!)) as (k, s): value = k * sqrt(s).

    k is a Fraction, s a square-free positive integer.  Works entirely on
    prime exponent vectors, so no big integer is ever factored.
    """
    hi = max(list(numerator_facts) + list(denominator_facts))
    k = Fraction(1)
    s = 1
    for p in _primes_upto(hi):
        e = sum(_legendre(n, p) for n in numerator_facts)
        e -= sum(_legendre(n, p) for n in denominator_facts)
        r = e % 2
        m = (e - r) // 2
        if r:
            s *= p
        if m > 0:
            k *= p ** m
        elif m < 0:
            k /= p ** (-m)
    return k, s


@lru_cache(maxsize=1 << 16)
def _delta_parts(ta, tb, tc):
    """sqrt of the triangle coefficient squared, as (k, s): k*sqrt(s).

    Cached per triad: screens reuse each triad once per row or column.
    """
    return _sqrt_factorial_ratio(
        ((ta + tb - tc) // 2, (ta - tb + tc) // 2, (-ta + tb + tc) // 2),
        ((ta + tb + tc) // 2 + 1,))


def squarefree_split(n):
    """n = s * k**2 with s square-free; returns (s, k).  n must be >= 1."""
    s = 1
    k = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            k *= d ** (e // 2)
            if e % 2:
                s *= d
        d += 1 if d == 2 else 2
    return s * n, k


class SqrtRational:
    """Exact signed value q*sqrt(p), normalized so p is square-free.

    Normal form: p is a square-free nonnegative integer (perfect-square parts
    of the radicand are migrated into q); zero is stored as (0, 1).  Equality
    of normal forms is therefore decidable.
    """

    __slots__ = ("q", "p")

    def __init__(self, q, p=1):
        q = Fraction(q)
        if isinstance(p, float):
            raise TypeError("radicand must be exact (int or Fraction)")
        p = Fraction(p)
        if p < 0:
            raise ValueError("radicand must be nonnegative")
        if q == 0 or p == 0:
            self.q = Fraction(0)
            self.p = 1
            return
        # sqrt(n/d) = sqrt(n*d)/d
        n = p.numerator * p.denominator
        s, k = squarefree_split(n)
        self.q = q * Fraction(k, p.denominator)
        self.p = s

    @classmethod
    def _raw(cls, q, p):
        """Internal: build from an already-normalized pair."""
        obj = cls.__new__(cls)
        obj.q = q
        obj.p = p
        return obj

    @classmethod
    def zero(cls):
        return cls._raw(Fraction(0), 1)

    def is_zero(self):
        return self.q == 0

    def __eq__(self, other):
        if isinstance(other, SqrtRational):
            return self.q == other.q and self.p == other.p
        if isinstance(other, (int, Fraction)):
            return self.p == 1 and self.q == other
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.p))

    def __neg__(self):
        return SqrtRational._raw(-self.q, self.p)

    def __abs__(self):
        return SqrtRational._raw(abs(self.q), self.p)

    def __mul__(self, other):
        if isinstance(other, SqrtRational):
            if self.q == 0 or other.q == 0:
                return SqrtRational.zero()
            g = math.gcd(self.p, other.p)
            return SqrtRational._raw(
                self.q * other.q * g, (self.p // g) * (other.p // g))
        if isinstance(other, (int, Fraction)):
            q = self.q * other
            return SqrtRational._raw(q, self.p) if q else SqrtRational.zero()
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, SqrtRational):
            return NotImplemented
        if self.q == 0:
            return other
        if other.q == 0:
            return self
        if self.p != other.p:
            raise ValueError("cannot add exact values with different radicands")
        q = self.q + other.q
        return SqrtRational._raw(q, self.p) if q else SqrtRational.zero()

    def __sub__(self, other):
        return self + (-other)

    def signed_square(self):
        """sign * q^2 * p as a Fraction (a faithful rational encoding)."""
        sq = self.q * self.q * self.p
        return sq if self.q >= 0 else -sq

    def to_real(self):
        """Correctly-rounded-to-~1ulp double of q*sqrt(p)."""
        if self.q == 0:
            return 0.0
        sign = 1.0 if self.q > 0 else -1.0
        r2 = self.q * self.q * self.p
        f = float(r2)
        if f == 0.0 or math.isinf(f):
            # rescale by a power of 4 so the square fits in double range
            shift = (r2.denominator.bit_length() - r2.numerator.bit_length()) // 2
            f = float(r2 * Fraction(4) ** shift)
            return sign * math.sqrt(f) * math.ldexp(1.0, -shift)
        return sign * math.sqrt(f)

    __float__ = to_real

    def __repr__(self):
        return "SqrtRational(%s, %s)" % (self.q, self.p)


def _triads(tj1, tj2, tj3, tj4, tj5, tj6):
    return ((tj1, tj2, tj3), (tj1, tj5, tj6), (tj4, tj2, tj6), (tj4, tj5, tj3))


def sixj_exact(tj1, tj2, tj3, tj4, tj5, tj6):
    """Exact {j1 j2 j3; j4 j5 j6} via the single-sum formula, two-j args.

    Inadmissible triads give exact zero (selection-rule convention).
    """
    args = (tj1, tj2, tj3, tj4, tj5, tj6)
    if min(args) < 0:
        return SqrtRational.zero()
    triads = _triads(*args)
    if not all(triad_ok(*t) for t in triads):
        return SqrtRational.zero()
    tri = [(a + b + c) // 2 for a, b, c in triads]
    box = [(tj1 + tj2 + tj4 + tj5) // 2,
           (tj2 + tj3 + tj5 + tj6) // 2,
           (tj1 + tj3 + tj4 + tj6) // 2]
    t_lo = max(tri)
    t_hi = min(box)
    # sum over a common denominator: every term becomes an integer
    den_facts = [t_hi - s for s in tri] + [b - t_lo for b in box]
    total = 0
    for t in range(t_lo, t_hi + 1):
        term = factorial(t + 1)
        for s in tri:
            term *= factorial(t_hi - s) // factorial(t - s)
        for b in box:
            term *= factorial(b - t_lo) // factorial(b - t)
        total += -term if t % 2 else term
    if total == 0:
        return SqrtRational.zero()
    denom = 1
    for f in den_facts:
        denom *= factorial(f)
    # radicand = product of the four triangle-coefficient squares
    k = Fraction(total, denom)
    s = 1
    for triad in triads:
        k_t, s_t = _delta_parts(*triad)
        g = math.gcd(s, s_t)
        k *= k_t * g
        s = (s // g) * (s_t // g)
    return SqrtRational._raw(k, s)


def u_exact(two_x, two_y, params: ScreenParams):
    """Exact U(x,y) = sqrt((2x+1)(2y+1)) {a b x; c d y} on the screen."""
    if not params.contains(two_x, two_y):
        raise OutOfRange("(%d,%d) is not on the screen lattice" % (two_x, two_y))
    sixj = sixj_exact(params.two_a, params.two_b, two_x,
                      params.two_c, params.two_d, two_y)
    return sixj * SqrtRational(1, (two_x + 1) * (two_y + 1))


# --- closed forms for 6j symbols with a unit entry -----------------------
#
# Families are stated for {A B C; 1 C1 B1} with the unit below A; every other
# placement is reached through the 24-element symmetry group.  Each family
# returns (prefactor as Fraction, radicand numerator, radicand denominator).

def _family_m1m1(tA, tB, tC):
    s = (tA + tB + tC) // 2
    num = s * (s + 1) * (s - tA - 1) * (s - tA)
    den = (tB - 1) * tB * (tB + 1) * (tC - 1) * tC * (tC + 1)
    return Fraction((-1) ** s), num, den


def _family_m1z(tA, tB, tC):
    s = (tA + tB + tC) // 2
    num = 2 * (s + 1) * (s - tA) * (s - tB) * (s - tC + 1)
    den = tB * (tB + 1) * (tB + 2) * (tC - 1) * tC * (tC + 1)
    return Fraction((-1) ** s), num, den


def _family_m1p1(tA, tB, tC):
    s = (tA + tB + tC) // 2
    num = (s - tB - 1) * (s - tB) * (s - tC + 1) * (s - tC + 2)
    den = (tB + 1) * (tB + 2) * (tB + 3) * (tC - 1) * tC * (tC + 1)
    return Fraction((-1) ** s), num, den


def _family_zz(tA, tB, tC):
    s = (tA + tB + tC) // 2
    pref = Fraction((-1) ** (s + 1)) * Fraction(
        tB * (tB + 2) + tC * (tC + 2) - tA * (tA + 2), 2)
    den = tB * (tB + 1) * (tB + 2) * tC * (tC + 1) * (tC + 2)
    return pref, 1, den


_FAMILIES = {(-2, -2): _family_m1m1, (-2, 0): _family_m1z,
             (-2, 2): _family_m1p1, (0, 0): _family_zz}

_COLUMN_ORDERS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))
_PAIR_FLIPS = ((), (0, 1), (0, 2), (1, 2))


def _unit_parts(tjs):
    """Dispatch a unit-argument 6j to a closed-form family.

    Returns (prefactor, num, den) with value = prefactor*sqrt(num/den),
    or None for an exact zero.  Raises PatternError if no entry equals 1.
    """
    if min(tjs) < 0:
        return None
    if not all(triad_ok(*t) for t in _triads(*tjs)):
        return None
    if 2 not in tjs:
        raise PatternError("no unit entry in %r" % (tjs,))
    cols = ((tjs[0], tjs[3]), (tjs[1], tjs[4]), (tjs[2], tjs[5]))
    for order in _COLUMN_ORDERS:
        for flip in _PAIR_FLIPS:
            c = [cols[i] for i in order]
            for i in flip:
                c[i] = c[i][::-1]
            if c[0][1] != 2:
                continue
            tA, tB, tC = c[0][0], c[1][0], c[2][0]
            tC1, tB1 = c[1][1], c[2][1]
            fam = _FAMILIES.get((tC1 - tC, tB1 - tB))
            if fam is not None:
                return fam(tA, tB, tC)
    raise PatternError("unit entry present but no family matched %r" % (tjs,))


def sixj_unit(tj1, tj2, tj3, tj4, tj5, tj6):
    """Exact 6j with one entry equal to 1, from algebraic closed forms.

    Bit-for-bit equal to sixj_exact on the same arguments.
    """
    parts = _unit_parts((tj1, tj2, tj3, tj4, tj5, tj6))
    if parts is None:
        return SqrtRational.zero()
    pref, num, den = parts
    if pref == 0 or num == 0:
        return SqrtRational.zero()
    return SqrtRational(pref, Fraction(num, den))


def sixj_unit_float(tj1, tj2, tj3, tj4, tj5, tj6):
    """Double-precision fast path of sixj_unit (same dispatch, float math)."""
    parts = _unit_parts((tj1, tj2, tj3, tj4, tj5, tj6))
    if parts is None:
        return 0.0
    pref, num, den = parts
    if pref == 0 or num == 0:
        return 0.0
    return float(pref) * math.sqrt(num / den)


def sixj_zero_entry(two_a, two_b, two_x):
    """Closed form for {a b x; 0 x b} = (-1)^(a+b+x)/sqrt((2b+1)(2x+1))."""
    if not triad_ok(two_a, two_b, two_x):
        return SqrtRational.zero()
    sign = (-1) ** ((two_a + two_b + two_x) // 2)
    return SqrtRational(Fraction(sign), Fraction(1, (two_b + 1) * (two_x + 1)))


def screen_oracle(params: ScreenParams):
    """Dense screen of exact U values converted to double at the end."""
    xs = params.x_lattice()
    ys = params.y_lattice()
    values = np.empty((len(xs), len(ys)))
    for iy, ty in enumerate(ys):
        for ix, tx in enumerate(xs):
            values[ix, iy] = u_exact(int(tx), int(ty), params).to_real()
    return Screen(params=params, values=values, method="oracle",
                  diagnostics={})
