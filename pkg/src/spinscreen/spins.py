"""Half-integer angular momentum arithmetic on the two-j integer lattice.

Every angular momentum is stored as ``two_j = 2*j`` so that half-integer spins
are exact integers.  Screen lattices step by 2 in two-j units (by 1 in j).
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import EmptyScreen, ParityError


def triad_ok(two_a, two_b, two_c):
    """True iff (a,b,c) couples: triangle inequality plus integer parity."""
    if (two_a + two_b + two_c) % 2:
        return False
    return abs(two_a - two_b) <= two_c <= two_a + two_b


@dataclass(frozen=True)
class ScreenParams:
    """The four fixed parameters (a,b,c,d) of a screen, two-j units."""

    two_a: int
    two_b: int
    two_c: int
    two_d: int

    def __post_init__(self):
        for t in self.as_tuple():
            if t < 0 or t != int(t):
                raise ValueError("two-j values must be nonnegative integers")
        if (self.two_a + self.two_b + self.two_c + self.two_d) % 2:
            raise EmptyScreen("a+b+c+d must be integral (two-j sum even)")
        if self.two_x_min > self.two_x_max or self.two_y_min > self.two_y_max:
            raise EmptyScreen(
                "empty ranges for parameters %s" % (self.as_tuple(),))

    def as_tuple(self):
        return (self.two_a, self.two_b, self.two_c, self.two_d)

    @cached_property
    def two_x_min(self):
        return max(abs(self.two_a - self.two_b), abs(self.two_c - self.two_d))

    @cached_property
    def two_x_max(self):
        return min(self.two_a + self.two_b, self.two_c + self.two_d)

    @cached_property
    def two_y_min(self):
        return max(abs(self.two_a - self.two_d), abs(self.two_b - self.two_c))

    @cached_property
    def two_y_max(self):
        return min(self.two_a + self.two_d, self.two_b + self.two_c)

    @property
    def two_s(self):
        """Half-sum s = (a+b+c+d)/2 in two-j units."""
        return (self.two_a + self.two_b + self.two_c + self.two_d) // 2

    @property
    def two_kappa(self):
        """Common range width 2*kappa in two-j units (x_max - x_min)."""
        return self.two_x_max - self.two_x_min

    @property
    def side(self):
        """Number of lattice points per side, 2*kappa + 1."""
        return self.two_kappa // 2 + 1

    def x_lattice(self):
        return np.arange(self.two_x_min, self.two_x_max + 1, 2)

    def y_lattice(self):
        return np.arange(self.two_y_min, self.two_y_max + 1, 2)

    def contains(self, two_x, two_y):
        return (self.two_x_min <= two_x <= self.two_x_max
                and self.two_y_min <= two_y <= self.two_y_max
                and (two_x - self.two_x_min) % 2 == 0
                and (two_y - self.two_y_min) % 2 == 0)

    def x_index(self, two_x):
        return (two_x - self.two_x_min) // 2

    def y_index(self, two_y):
        return (two_y - self.two_y_min) // 2


def screen_ranges(two_a, two_b, two_c, two_d):
    """Build validated ScreenParams; raises EmptyScreen for bad ranges."""
    return ScreenParams(two_a, two_b, two_c, two_d)


def regge_conjugate(two_a, two_b, two_c, two_d):
    """The Regge-transformed parameter set (s-a, s-b, s-c, s-d)."""
    tot = two_a + two_b + two_c + two_d
    if tot % 2:
        raise ParityError("a+b+c+d must be integral for the Regge transform")
    two_s = tot // 2
    return (two_s - two_a, two_s - two_b, two_s - two_c, two_s - two_d)


# Parameter images that keep x in the upper-right and y in the lower-right
# slot; names record the classical exchange that produced each image.
_CLASSICAL_PERMS = (
    ("identity", lambda a, b, c, d: (a, b, c, d)),
    ("swap-ab-cd", lambda a, b, c, d: (b, a, d, c)),
    ("swap-rows", lambda a, b, c, d: (c, d, a, b)),
    ("reverse", lambda a, b, c, d: (d, c, b, a)),
)


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical representative of a screen's symmetry orbit."""

    params: ScreenParams
    regge_applied: bool
    permutation_applied: str
    xy_swapped: bool

    def map_point(self, two_x, two_y):
        """Map a lattice point of the original screen onto the canonical one."""
        return (two_y, two_x) if self.xy_swapped else (two_x, two_y)


def symmetry_orbit(two_a, two_b, two_c, two_d):
    """All 16 parameter images: 4 classical x Regge x column exchange."""
    out = []
    regge = regge_conjugate(two_a, two_b, two_c, two_d)
    for use_regge, base in ((False, (two_a, two_b, two_c, two_d)), (True, regge)):
        for name, perm in _CLASSICAL_PERMS:
            q = perm(*base)
            out.append((q, use_regge, name, False))
            # b <-> d exchange carries x <-> y with it
            a, b, c, d = q
            out.append(((a, d, c, b), use_regge, name, True))
    return out


def canonicalize(two_a, two_b, two_c, two_d):
    """Canonical form: smallest entry first and a <= b <= d.

    Ties resolved deterministically: prefer the non-Regge set, then the
    lexicographically smallest (a,b,c,d), then the unswapped orientation.
    """
    ScreenParams(two_a, two_b, two_c, two_d)  # validate early
    orbit = symmetry_orbit(two_a, two_b, two_c, two_d)
    global_min = min(min(q) for q, _, _, _ in orbit)
    candidates = [
        entry for entry in orbit
        if entry[0][0] == global_min and entry[0][0] <= entry[0][1] <= entry[0][3]
    ]
    q, use_regge, name, swapped = min(
        candidates, key=lambda e: (e[1], e[0], e[3], e[2]))
    return CanonicalForm(
        params=ScreenParams(*q),
        regge_applied=use_regge,
        permutation_applied=name,
        xy_swapped=swapped,
    )


def canonical_c_range_ok(form: CanonicalForm):
    """Membership check for the canonical c between d-a+b and d+a-b.

    The two bounds are compared as min/max because their printed order
    inverts when a < b.
    """
    a, b, c, d = form.params.as_tuple()
    lo, hi = sorted((d - a + b, d + a - b))
    return lo <= c <= hi
