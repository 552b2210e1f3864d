"""Exact arithmetic, primality and factorization in Z[omega_m].

Supported rings are the integers of Q(sqrt(-m)) for m in {1, 2, 3, 7, 11},
exactly the imaginary quadratic rings that are Euclidean for the field norm.
Elements are pairs of arbitrary-precision integers in the (1, omega) basis;
nothing here ever rounds.

omega = sqrt(-m)        for m in {1, 2}   (-m = 2, 3 mod 4),
omega = (1+sqrt(-m))/2  for m in {3, 7, 11}  (-m = 1 mod 4),

so omega satisfies x^2 - t*x + n = 0 with (t, n) = (0, m) resp. (1, (1+m)/4).
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .errors import CapacityError, DomainError, RingMismatchError

SUPPORTED_M = (1, 2, 3, 7, 11)
DEFAULT_FACTOR_BOUND = 10**6


@dataclass(frozen=True)
class RingDesc:
    """Descriptor of the ring Z[omega_m]."""

    m: int

    def __post_init__(self):
        if self.m not in SUPPORTED_M:
            raise DomainError(f"unsupported ring m={self.m}, need one of {SUPPORTED_M}")

    @property
    def residue_class(self) -> int:
        """(-m) mod 4; selects the omega formula."""
        return (-self.m) % 4

    @property
    def omega_is_half(self) -> bool:
        return self.residue_class == 1

    @property
    def omega_trace(self) -> int:
        """t with omega^2 = t*omega - n."""
        return 1 if self.omega_is_half else 0

    @property
    def omega_norm(self) -> int:
        """n = N(omega)."""
        return (1 + self.m) // 4 if self.omega_is_half else self.m

    @property
    def discriminant(self) -> int:
        return -self.m if self.omega_is_half else -4 * self.m

    def el(self, re: int, im: int = 0) -> "QuadInt":
        return QuadInt(re, im, self)

    @property
    def zero(self) -> "QuadInt":
        return QuadInt(0, 0, self)

    @property
    def one(self) -> "QuadInt":
        return QuadInt(1, 0, self)

    @property
    def omega(self) -> "QuadInt":
        return QuadInt(0, 1, self)

    def __repr__(self):
        return f"RingDesc(m={self.m})"


@lru_cache(maxsize=None)
def ring(m: int) -> RingDesc:
    return RingDesc(m)


@dataclass(frozen=True)
class QuadInt:
    """Element re + im*omega of Z[omega_m]."""

    re: int
    im: int
    ring: RingDesc

    def _same(self, other: "QuadInt"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "QuadInt") -> "QuadInt":
        self._same(other)
        return QuadInt(self.re + other.re, self.im + other.im, self.ring)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        self._same(other)
        return QuadInt(self.re - other.re, self.im - other.im, self.ring)

    def __neg__(self) -> "QuadInt":
        return QuadInt(-self.re, -self.im, self.ring)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        self._same(other)
        t, n = self.ring.omega_trace, self.ring.omega_norm
        a, b, c, d = self.re, self.im, other.re, other.im
        return QuadInt(a * c - n * b * d, a * d + b * c + t * b * d, self.ring)

    def conj(self) -> "QuadInt":
        t = self.ring.omega_trace
        return QuadInt(self.re + t * self.im, -self.im, self.ring)

    def norm(self) -> int:
        t, n = self.ring.omega_trace, self.ring.omega_norm
        a, b = self.re, self.im
        return a * a + t * a * b + n * b * b

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_rational(self) -> bool:
        return self.im == 0

    def __pow__(self, k: int) -> "QuadInt":
        if k < 0:
            raise DomainError("negative powers leave the ring")
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self) -> str:
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*w"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im), "m": self.ring.m}

    @staticmethod
    def from_json(obj: dict) -> "QuadInt":
        return QuadInt(int(obj["re"]), int(obj["im"]), ring(int(obj["m"])))


_INT_RE = _re.compile(r"^([+-]?\d+)$")
_W_RE = _re.compile(r"^([+-]?)(?:(\d+)\*)?w$")
_FULL_RE = _re.compile(r"^([+-]?\d+)([+-])(?:(\d+)\*)?w$")


def parse_quadint(text: str, rng: RingDesc) -> QuadInt:
    """Parse the textual element format "a+b*w" (also bare "a", "w", "-w")."""
    s = text.replace(" ", "")
    mo = _INT_RE.match(s)
    if mo:
        return QuadInt(int(mo.group(1)), 0, rng)
    mo = _W_RE.match(s)
    if mo:
        b = int(mo.group(2) or 1)
        return QuadInt(0, -b if mo.group(1) == "-" else b, rng)
    mo = _FULL_RE.match(s)
    if mo:
        a = int(mo.group(1))
        b = int(mo.group(3) or 1)
        return QuadInt(a, -b if mo.group(2) == "-" else b, rng)
    raise DomainError(f"cannot parse ring element {text!r}")


# ---------------------------------------------------------------------------
# division


def exact_div(a: QuadInt, b: QuadInt) -> QuadInt | None:
    """a/b when b exactly divides a, else None."""
    if b.is_zero():
        raise DomainError("division by zero")
    t = a * b.conj()
    n = b.norm()
    if t.re % n or t.im % n:
        return None
    return QuadInt(t.re // n, t.im // n, a.ring)


def divides(b: QuadInt, a: QuadInt) -> bool:
    return exact_div(a, b) is not None


def _round_half_down(num: int, den: int) -> int:
    # nearest integer to num/den with halves toward -infinity; den > 0
    return -((den - 2 * num) // (2 * den))


def euclid_div(a: QuadInt, b: QuadInt) -> tuple[QuadInt, QuadInt]:
    """Quotient and remainder with norm(r) < norm(b).

    The exact coordinates of a/b are rounded half-down, then the four
    floor/ceil corners of the containing cell are tried in a fixed order.
    One of them always lands inside the unit-norm ball for the five
    supported rings (the covering radius of each lattice is < 1).
    """
    a._same(b)
    if b.is_zero():
        raise DomainError("division by zero")
    t = a * b.conj()
    n = b.norm()
    fx, fy = t.re // n, t.im // n
    cands = [
        (_round_half_down(t.re, n), _round_half_down(t.im, n)),
        (fx, fy),
        (fx, fy + 1),
        (fx + 1, fy),
        (fx + 1, fy + 1),
    ]
    nb = b.norm()
    seen = set()
    for q0, q1 in cands:
        if (q0, q1) in seen:
            continue
        seen.add((q0, q1))
        q = QuadInt(q0, q1, a.ring)
        r = a - q * b
        if r.norm() < nb:
            return q, r
    raise AssertionError("norm-Euclidean division failed; ring invariant broken")


def gcd(a: QuadInt, b: QuadInt) -> QuadInt:
    """Greatest common divisor, returned as a canonical associate."""
    a._same(b)
    if a.is_zero() and b.is_zero():
        raise DomainError("gcd(0, 0) is undefined")
    x, y = a, b
    while not y.is_zero():
        _, r = euclid_div(x, y)
        x, y = y, r
    return canonical_associate(x)


# ---------------------------------------------------------------------------
# units and canonical associates


@lru_cache(maxsize=None)
def units(rng: RingDesc) -> tuple[QuadInt, ...]:
    """All units of the ring: 4 for m=1, 6 for m=3, 2 otherwise."""
    if rng.m == 1:
        coords = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    elif rng.m == 3:
        coords = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)]
    else:
        coords = [(1, 0), (-1, 0)]
    out = tuple(QuadInt(a, b, rng) for a, b in coords)
    assert all(u.norm() == 1 for u in out)
    return out


def unit_inverse(u: QuadInt) -> QuadInt:
    if not u.is_unit():
        raise DomainError(f"{u} is not a unit")
    return u.conj()


def canonical_associate(a: QuadInt) -> QuadInt:
    """The unique associate with im >= 0 (re > 0 when im = 0), minimizing
    (im, |re|) and preferring re > 0 on ties."""
    if a.is_zero():
        return a
    cands = [u * a for u in units(a.ring)]
    cands = [c for c in cands if c.im > 0 or (c.im == 0 and c.re > 0)]
    key = lambda c: (c.im, abs(c.re), 0 if c.re > 0 else 1)
    best = min(cands, key=key)
    assert sum(1 for c in cands if key(c) == key(best)) == 1
    return best


def is_associate(a: QuadInt, b: QuadInt) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    d = exact_div(a, b)
    return d is not None and d.is_unit()


def rational_associate(a: QuadInt) -> int | None:
    """p > 0 with a ~ p in Z, or None when a has no rational associate."""
    for u in units(a.ring):
        c = u * a
        if c.im == 0:
            return abs(c.re)
    return None


# ---------------------------------------------------------------------------
# rational integer helpers


def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _factor_int(n: int) -> list[tuple[int, int]]:
    out = []
    for p in (2, 3):
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            out.append((p, k))
    p = 5
    while p * p <= n:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            out.append((p, k))
        p += 2 if p % 3 == 2 else 4  # skip multiples of 2 and 3
    if n > 1:
        out.append((n, 1))
    return out


def _sqrt_mod(a: int, p: int) -> int | None:
    """Square root of a mod odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    c = pow(z, q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        t = t * b % p * b % p
        c = b * b % p
        m = i
    return x


# ---------------------------------------------------------------------------
# primality


class PrimeKind(Enum):
    SPLIT = "Split"
    INERT = "Inert"
    RAMIFIED = "Ramified"
    NORM_PRIME = "NormPrime"


@dataclass(frozen=True)
class Primality:
    is_prime: bool
    kind: PrimeKind | None
    detail: str


def rational_prime_kind(rng: RingDesc, p: int) -> PrimeKind:
    """Splitting behaviour of a rational prime, per the discriminant."""
    delta = rng.discriminant
    if delta % p == 0:
        return PrimeKind.RAMIFIED
    if p == 2:
        # 2 is inert exactly when -m = 5 (mod 8)
        return PrimeKind.INERT if (-rng.m) % 8 == 5 else PrimeKind.SPLIT
    legendre = pow(delta % p, (p - 1) // 2, p)
    return PrimeKind.INERT if legendre == p - 1 else PrimeKind.SPLIT


def primality(a: QuadInt) -> Primality:
    """Primality of a with a witness of which criterion fired."""
    if a.is_zero() or a.is_unit():
        raise DomainError("primality is undefined for zero and units")
    p = rational_associate(a)
    if p is not None:
        if not _is_prime_int(p):
            return Primality(False, None, f"{p} is composite in Z")
        kind = rational_prime_kind(a.ring, p)
        if kind is PrimeKind.INERT:
            return Primality(True, kind, f"{p} does not divide delta and is a non-residue")
        return Primality(False, kind, f"{p} {kind.value.lower()}s in the ring")
    n = a.norm()
    if _is_prime_int(n):
        return Primality(True, PrimeKind.NORM_PRIME, f"norm {n} is a rational prime")
    return Primality(False, None, f"norm {n} is composite and element is irrational")


def is_prime(a: QuadInt) -> bool:
    return primality(a).is_prime


def canonical_prime(a: QuadInt) -> QuadInt:
    if not is_prime(a):
        raise DomainError(f"{a} is not prime")
    return canonical_associate(a)


def prime_sort_key(p: QuadInt) -> tuple[int, int, int]:
    return (p.norm(), p.im, p.re)


@lru_cache(maxsize=None)
def primes_above(rng: RingDesc, p: int) -> tuple[tuple[QuadInt, int], ...]:
    """Canonical primes over the rational prime p with their exponents in p.

    Inert: ((p, 1),); split: ((pi, 1), (pibar, 1)); ramified: ((pi, 2),).
    """
    if not _is_prime_int(p):
        raise DomainError(f"{p} is not a rational prime")
    kind = rational_prime_kind(rng, p)
    if kind is PrimeKind.INERT:
        return ((QuadInt(p, 0, rng), 1),)
    t, n = rng.omega_trace, rng.omega_norm
    if p == 2:
        roots = sorted({r for r in (0, 1) if (r * r - t * r + n) % 2 == 0})
    else:
        s = _sqrt_mod(rng.discriminant % p, p)
        assert s is not None  # split or ramified
        inv2 = pow(2, -1, p)
        roots = sorted({(t + s) * inv2 % p, (t - s) * inv2 % p})
    pe = QuadInt(p, 0, rng)
    out = []
    exp = 2 if kind is PrimeKind.RAMIFIED else 1
    for r in roots:
        pi = canonical_associate(gcd(pe, rng.omega - rng.el(r)))
        out.append((pi, exp))
    out.sort(key=lambda pair: prime_sort_key(pair[0]))
    if kind is PrimeKind.RAMIFIED:
        assert len(out) == 1
    else:
        assert len(out) == 2
    return tuple(out)


def factor(a: QuadInt, bound: int = DEFAULT_FACTOR_BOUND) -> tuple[QuadInt, list[tuple[QuadInt, int]]]:
    """Factor a into a unit times canonical prime powers.

    Trial division happens on the rational norm; norms above `bound`
    raise CapacityError rather than silently degrading.
    """
    if a.is_zero():
        raise DomainError("cannot factor zero")
    n = a.norm()
    if n > bound:
        raise CapacityError(f"norm {n} exceeds factor bound {bound}")
    rest = a
    out = []
    for p, _ in _factor_int(n):
        for pi, _e in primes_above(a.ring, p):
            k = 0
            while True:
                d = exact_div(rest, pi)
                if d is None:
                    break
                rest = d
                k += 1
            if k:
                out.append((pi, k))
    assert rest.is_unit()
    out.sort(key=lambda pair: prime_sort_key(pair[0]))
    return rest, out


def primes_of_norm_up_to(rng: RingDesc, bound: int) -> list[QuadInt]:
    """All canonical primes of norm <= bound, in (norm, im, re) order."""
    out = []
    p = 2
    while p <= bound:
        if _is_prime_int(p):
            for pi, _e in primes_above(rng, p):
                if pi.norm() <= bound:
                    out.append(pi)
        p += 1
    out.sort(key=prime_sort_key)
    return out


# ---------------------------------------------------------------------------
# the R(alpha) lemma checker


def check_r_alpha_lemma(a: QuadInt, convention: str = "m") -> bool:
    """Instance check of the norm-prime coordinate lemma.

    For alpha prime of rational-prime norm p: if p divides R(alpha) or m,
    then m = p and alpha is associate to omega (= sqrt(-m)).  The stated
    congruence gate is ambiguous between m and -m; convention "m" admits
    m in {1, 2} (where omega = sqrt(-m) and the lemma's proof applies),
    convention "neg-m" admits m in {2, 3, 7, 11}.  Returns the literal
    truth of the implication on this instance.
    """
    rng_ = a.ring
    m = rng_.m
    allowed = {1, 2} if convention == "m" else {2, 3, 7, 11}
    if convention not in ("m", "neg-m"):
        raise DomainError(f"unknown convention {convention!r}")
    if m not in allowed:
        raise DomainError(f"ring m={m} outside convention {convention!r}")
    p = a.norm()
    if not _is_prime_int(p):
        raise DomainError("norm must be a rational prime")
    if a.re % p != 0 and m % p != 0:
        return True  # antecedent false
    return m == p and is_associate(a, rng_.omega)
