"""Arithmetic of Q and imaginary quadratic fields Q(sqrt(-d)).

Elements of the maximal order are written ``a + b*omega`` in the integral
basis ``(1, omega)``, where ``omega = sqrt(-d)`` when ``-d = 2, 3 mod 4`` and
``omega = (1 + sqrt(-d))/2`` when ``-d = 1 mod 4``.  In both cases
``omega**2 = t*omega - n`` with ``(t, n) = (0, d)`` or ``(1, (1 + d)/4)``.

Ideals are stored in Hermite normal form over that basis:
``I = (a*Z + (b + c*omega)*Z) / den`` with ``c | a``, ``c | b``,
``0 <= b < a``, and ``gcd(a, b, c, den) = 1``.  The normal form is unique,
so ideals compare and hash by value.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import FactoringBoundError, InputError

RATIONAL = "rational"
IMAG_QUADRATIC = "imag_quadratic"

DEFAULT_FACTOR_BOUND = 10**6


class Valuation(enum.Enum):
    """Sentinel returned for the valuation of zero."""

    INFINITE = "oo"

    def __repr__(self):
        return "Valuation.INFINITE"


INFINITE_VALUATION = Valuation.INFINITE


# --- integer helpers -------------------------------------------------------


def factor_integer(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> dict[int, int]:
    """Trial-division factorisation of ``|n|``.

    Complete whenever the cofactor left after dividing out primes up to
    ``bound`` is 1 or below ``bound**2``; otherwise FactoringBoundError.
    """
    n = abs(int(n))
    if n == 0:
        raise InputError("cannot factor 0")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 5
    step = 2
    while p * p <= n:
        if p > bound:
            raise FactoringBoundError(
                f"cofactor {n} has no prime factor <= {bound}; factoring bound too small"
            )
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factor_integer(n).values())


def moebius_int(n: int) -> int:
    f = factor_integer(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def moebius_table(n_max: int) -> np.ndarray:
    """mu(0..n_max) by a linear sieve; mu(0) is set to 0."""
    mu = np.ones(n_max + 1, dtype=np.int8)
    mu[0] = 0
    is_comp = np.zeros(n_max + 1, dtype=bool)
    for p in range(2, n_max + 1):
        if is_comp[p]:
            continue
        is_comp[2 * p :: p] = True
        mu[p::p] *= -1
        pp = p * p
        if pp <= n_max:
            mu[pp::pp] = 0
    return mu


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 0."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for integers n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2 or k == 1:
        return n
    if n < 2**52:
        x = int(round(n ** (1.0 / k)))
    else:
        # Newton from above converges monotonically to the floor
        x = 1 << -(-n.bit_length() // k)
        while True:
            y = ((k - 1) * x + n // x ** (k - 1)) // k
            if y >= x:
                break
            x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


# --- fields ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldData:
    kind: str
    d: int  # 0 for Q, else the squarefree d > 0 of Q(sqrt(-d))
    disc: int  # |discriminant|
    r1: int
    r2: int
    h: int
    w: int
    R: float
    t: int  # omega^2 = t*omega - n
    n: int
    class_reps: tuple = field(default=(), repr=False)
    roots_of_unity: tuple = field(default=(), repr=False)

    @property
    def key(self):
        return (self.kind, self.d)

    @property
    def degree(self) -> int:
        return self.r1 + 2 * self.r2

    @property
    def is_rational(self) -> bool:
        return self.kind == RATIONAL

    @property
    def name(self) -> str:
        if self.is_rational:
            return "Q"
        if self.d == 1:
            return "Q(i)"
        return f"Q(sqrt(-{self.d}))"

    def __eq__(self, other):
        return isinstance(other, FieldData) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FieldData({self.name}, D={self.disc}, h={self.h}, w={self.w})"

    # convenient constructors
    def element(self, a, b=0) -> "FieldElement":
        return FieldElement(self, Fraction(a), Fraction(b))

    def one(self) -> "FieldElement":
        return self.element(1)

    def unit_ideal(self) -> "IdealRep":
        return self.class_reps[0]

    def omega_complex(self) -> complex:
        return complex(self.t / 2, math.sqrt(4 * self.n - self.t * self.t) / 2)


def parse_field_spec(spec) -> FieldData:
    """Accepts ``Q``, ``Q(i)``, ``Q(sqrt(-5))``, ``Q(sqrt-5)``, ``-5`` or the int 5."""
    if isinstance(spec, FieldData):
        return spec
    if spec is None:
        return make_field(None)
    if isinstance(spec, int):
        return make_field(spec)
    s = str(spec).strip().replace(" ", "")
    if s.lower() in ("q", "rational", "qq"):
        return make_field(None)
    if s.lower() in ("q(i)", "qi", "q(sqrt(-1))", "q(sqrt-1)"):
        return make_field(1)
    body = s
    for prefix in ("Q(sqrt(", "Q(sqrt", "q(sqrt(", "q(sqrt"):
        if body.startswith(prefix):
            body = body[len(prefix):].rstrip(")")
            break
    if body.startswith("d="):
        body = body[2:]
    try:
        val = int(body)
    except ValueError:
        raise InputError(f"unrecognised field specification {spec!r}") from None
    return make_field(-val if val < 0 else val)


@lru_cache(maxsize=None)
def make_field(d=None) -> FieldData:
    """Q for ``d in (None, 0, 'Q')``; otherwise the imaginary quadratic field Q(sqrt(-d))."""
    if d is None or d == 0 or d == "Q":
        F = FieldData(RATIONAL, 0, 1, 1, 0, 1, 2, 1.0, 0, 0)
        object.__setattr__(F, "class_reps", (IdealRep(F, 1, 0, 1, 1),))
        object.__setattr__(F, "roots_of_unity", (F.element(1), F.element(-1)))
        return F
    d = int(d)
    if d <= 0:
        raise InputError(f"d must be a positive squarefree integer, got {d}")
    if not is_squarefree(d):
        raise InputError(f"d={d} is not squarefree")
    if (-d) % 4 == 1:
        t, n, D = 1, (1 + d) // 4, d
    else:
        t, n, D = 0, d, 4 * d
    if d == 1:
        w = 4
    elif d == 3:
        w = 6
    else:
        w = 2
    forms = reduced_forms(D)
    F = FieldData(IMAG_QUADRATIC, d, D, 0, 1, len(forms), w, 1.0, t, n)
    reps = []
    for a, b, _c in forms:
        I = IdealRep.from_hnf(F, a, ((-b - t) // 2) % a, 1)
        if not _hnf_is_ideal(a, ((-b - t) // 2) % a, 1, t, n):
            raise AssertionError("form does not map to an ideal")
        reps.append(I)
    object.__setattr__(F, "class_reps", tuple(reps))
    object.__setattr__(F, "roots_of_unity", tuple(_roots_of_unity(F)))
    return F


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced primitive positive definite forms (a, b, c) with b^2 - 4ac = -D."""
    out = []
    a = 1
    while 3 * a * a <= D:
        for b in range(-a + 1, a + 1):
            if (b * b + D) % (4 * a):
                continue
            c = (b * b + D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
        a += 1
    out.sort(key=lambda f: (f[0], abs(f[1]), -f[1]))
    return out


def _roots_of_unity(F: FieldData) -> list["FieldElement"]:
    # all elements of norm 1
    units = []
    bmax = math.isqrt(4 // max(1, 4 * F.n - F.t * F.t)) + 1
    for b in range(-bmax, bmax + 1):
        for a in range(-2, 3):
            if pair_norm(a, b, F.t, F.n) == 1:
                units.append(F.element(a, b))
    units.sort(key=lambda u: (u != F.one(), u.a, u.b))
    return units


# --- elements --------------------------------------------------------------


def pair_mul(x, y, t, n):
    a, b = x
    c, e = y
    be = b * e
    return (a * c - n * be, a * e + b * c + t * be)


def pair_norm(a, b, t, n):
    return a * a + t * a * b + n * b * b


@dataclass(frozen=True)
class FieldElement:
    field: FieldData
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InputError("elements from different fields")
            return other
        return FieldElement(self.field, Fraction(other), Fraction(0))

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        F = self.field
        a, b = pair_mul((self.a, self.b), (o.a, o.b), F.t, F.n)
        return FieldElement(F, a, b)

    __rmul__ = __mul__

    def conjugate(self) -> "FieldElement":
        return FieldElement(self.field, self.a + self.b * self.field.t, -self.b)

    def norm(self) -> Fraction:
        """Absolute norm; equals ``x**2`` over Q up to sign convention (returns x itself for Q)."""
        if self.field.is_rational:
            return self.a
        return pair_norm(self.a, self.b, self.field.t, self.field.n)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.field.is_rational:
            return FieldElement(self.field, 1 / self.a, Fraction(0))
        c = self.conjugate()
        nm = self.norm()
        return FieldElement(self.field, c.a / nm, c.b / nm)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def denominator(self) -> int:
        return math.lcm(self.a.denominator, self.b.denominator)

    def pair(self) -> tuple[int, int]:
        if not self.is_integral():
            raise InputError(f"{self} is not integral")
        return (int(self.a), int(self.b))

    def __complex__(self):
        return float(self.a) + float(self.b) * self.field.omega_complex()

    def abs_v(self) -> float:
        """Normalised archimedean absolute value |x|_v (|x| over Q, |x|^2 at a complex place)."""
        if self.field.is_rational:
            return abs(float(self.a))
        return float(self.norm())

    def sort_key(self):
        return (self.a, self.b)

    def __repr__(self):
        return f"FieldElement({self}, {self.field.name})"

    def __str__(self):
        if self.field.is_rational or self.b == 0:
            return str(self.a)
        if self.a == 0:
            return _fmt_coeff(self.b) + "w"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{_fmt_coeff(abs(self.b))}w"


def _fmt_coeff(c: Fraction) -> str:
    if c == 1:
        return ""
    if c == -1:
        return "-"
    return str(c)


def parse_element(F: FieldData, text: str) -> FieldElement:
    """Parse literals such as ``3``, ``-2/3``, ``1+2w``, ``w``, ``1/2-w``."""
    s = text.strip().replace(" ", "").replace("*", "")
    if not s:
        raise InputError("empty coordinate")
    a = Fraction(0)
    b = Fraction(0)
    # split into signed terms
    terms = []
    cur = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    try:
        for term in terms:
            if not term:
                continue
            if term.endswith("w"):
                coeff = term[:-1]
                if coeff in ("", "+"):
                    b += 1
                elif coeff == "-":
                    b -= 1
                else:
                    b += Fraction(coeff)
            else:
                a += Fraction(term)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse coordinate {text!r}") from None
    if b and F.is_rational:
        raise InputError(f"coordinate {text!r} uses w but the field is Q")
    return FieldElement(F, a, b)


# --- ideals ----------------------------------------------------------------


def _hnf(vectors, *, rational=False) -> tuple[int, int, int]:
    """HNF (a, b, c) of the Z-lattice spanned by integer vectors (u, v)."""
    if rational:
        g = 0
        for u, _v in vectors:
            g = math.gcd(g, u)
        if g == 0:
            raise InputError("zero ideal")
        return (g, 0, 1)
    pu, pv = 0, 0  # pivot vector with v = gcd of v's seen
    a = 0
    for u, v in vectors:
        if v == 0:
            a = math.gcd(a, u)
            continue
        if pv == 0:
            pu, pv = u, v
            continue
        g, x, y = _xgcd(pv, v)
        nu, nv = x * pu + y * u, g
        # combination with zero v-coordinate
        ku = (v // g) * pu - (pv // g) * u
        a = math.gcd(a, ku)
        pu, pv = nu, nv
    if pv == 0 or a == 0:
        raise InputError("lattice is not of full rank")
    if pv < 0:
        pu, pv = -pu, -pv
    return (a, pu % a, pv)


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _hnf_is_ideal(a, b, c, t, n) -> bool:
    # omega * a and omega * (b + c*omega) must lie in the lattice
    def contains(u, v):
        return v % c == 0 and (u - (v // c) * b) % a == 0

    return contains(0, a) and contains(-c * n, b + c * t)


@dataclass(frozen=True, eq=False)
class IdealRep:
    field: FieldData = field(repr=False)
    a: int
    b: int
    c: int
    den: int = 1

    @classmethod
    def from_hnf(cls, F: FieldData, a, b, c, den=1) -> "IdealRep":
        g = math.gcd(math.gcd(a, b), math.gcd(c, den)) if not F.is_rational else math.gcd(a, den)
        if F.is_rational:
            return cls(F, a // g, 0, 1, den // g)
        return cls(F, a // g, b // g, c // g, den // g)

    @classmethod
    def from_generators(cls, F: FieldData, gens: Sequence) -> "IdealRep":
        """The ideal generated (as an O-module) by the given field elements."""
        elems = [g if isinstance(g, FieldElement) else F.element(g) for g in gens]
        elems = [e for e in elems if not e.is_zero()]
        if not elems:
            raise InputError("zero ideal")
        den = math.lcm(*(e.denominator() for e in elems))
        vecs = []
        for e in elems:
            u, v = int(e.a * den), int(e.b * den)
            vecs.append((u, v))
            if not F.is_rational:
                vecs.append(pair_mul((u, v), (0, 1), F.t, F.n))
        a, b, c = _hnf(vecs, rational=F.is_rational)
        return cls.from_hnf(F, a, b, c, den)

    @classmethod
    def principal(cls, x) -> "IdealRep":
        return cls.from_generators(x.field, [x])

    # value semantics
    def _key(self):
        return (self.field.key, self.a, self.b, self.c, self.den)

    def __eq__(self, other):
        return isinstance(other, IdealRep) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.field.is_rational:
            return f"Ideal({Fraction(self.a, self.den)})"
        s = f"Ideal[{self.a}, {self.b}+{self.c}w]"
        return s if self.den == 1 else f"{s}/{self.den}"

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def is_unit(self) -> bool:
        return self.a == 1 and self.c == 1 and self.den == 1

    def norm(self) -> Fraction:
        if self.field.is_rational:
            return Fraction(self.a, self.den)
        return Fraction(self.a * self.c, self.den * self.den)

    def basis(self) -> tuple[FieldElement, FieldElement]:
        F = self.field
        return (F.element(Fraction(self.a, self.den)), F.element(Fraction(self.b, self.den), Fraction(self.c, self.den)))

    def contains(self, x) -> bool:
        F = self.field
        if not isinstance(x, FieldElement):
            x = F.element(x)
        u, v = x.a * self.den, x.b * self.den
        if u.denominator != 1 or v.denominator != 1:
            return False
        u, v = int(u), int(v)
        if F.is_rational:
            return u % self.a == 0
        return v % self.c == 0 and (u - (v // self.c) * self.b) % self.a == 0

    def contains_pair(self, u: int, v: int) -> bool:
        # integral ideal membership of u + v*omega
        return v % self.c == 0 and (u - (v // self.c) * self.b) % self.a == 0

    def __mul__(self, other) -> "IdealRep":
        if isinstance(other, FieldElement):
            other = IdealRep.principal(other)
        F = self.field
        if F.is_rational:
            return IdealRep.from_hnf(F, self.a * other.a, 0, 1, self.den * other.den)
        b1 = ((self.a, 0), (self.b, self.c))
        b2 = ((other.a, 0), (other.b, other.c))
        vecs = [pair_mul(x, y, F.t, F.n) for x in b1 for y in b2]
        a, b, c = _hnf(vecs)
        return IdealRep.from_hnf(F, a, b, c, self.den * other.den)

    def __pow__(self, k: int) -> "IdealRep":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.unit_ideal()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, q) -> "IdealRep":
        """Multiply by a nonzero rational number."""
        q = abs(Fraction(q))
        if q == 0:
            raise InputError("zero ideal")
        k = q.numerator
        return IdealRep.from_hnf(self.field, self.a * k, self.b * k, self.c * k, self.den * q.denominator)

    def conjugate(self) -> "IdealRep":
        F = self.field
        if F.is_rational:
            return self
        a, b, c = _hnf([(self.a, 0), (self.b + self.c * F.t, -self.c)])
        return IdealRep.from_hnf(F, a, b, c, self.den)

    def inverse(self) -> "IdealRep":
        F = self.field
        if F.is_rational:
            return IdealRep.from_hnf(F, self.den, 0, 1, self.a)
        # (J/den)^-1 = den * conj(J) / N(J)
        cj = IdealRep(F, self.a, self.b, self.c, 1).conjugate()
        d = self.den
        return IdealRep.from_hnf(F, cj.a * d, cj.b * d, cj.c * d, self.a * self.c)

    def __truediv__(self, other) -> "IdealRep":
        if isinstance(other, FieldElement):
            other = IdealRep.principal(other)
        return self * other.inverse()

    def divides(self, other: "IdealRep") -> bool:
        """``self | other``, i.e. ``other`` is contained in ``self``."""
        return all(self.contains(e) for e in other.basis())


def ideal_norm(I: IdealRep) -> Fraction:
    return I.norm()


def ideal_pow(P: IdealRep, k: int) -> IdealRep:
    return _ideal_pow_cached(P, k)


@lru_cache(maxsize=4096)
def _ideal_pow_cached(P: IdealRep, k: int) -> IdealRep:
    if k == 0:
        return P.field.unit_ideal()
    if k == 1:
        return P
    half = _ideal_pow_cached(P, k // 2)
    sq = half * half
    return sq * P if k % 2 else sq


@lru_cache(maxsize=4096)
def primes_above(F: FieldData, p: int) -> tuple[IdealRep, ...]:
    """Prime ideals over the rational prime p, with their residue degree encoded by the norm."""
    if F.is_rational:
        return (IdealRep(F, p, 0, 1, 1),)
    chi = kronecker(-F.disc, p)
    if chi == -1:
        return (IdealRep.from_hnf(F, p, 0, p),)
    roots = _quadratic_roots_mod_p(F.t, F.n, p)
    primes = []
    for r in roots:
        # (p, omega - r)
        primes.append(IdealRep.from_hnf(F, p, (-r) % p, 1))
    primes = sorted(set(primes), key=lambda I: I.b)
    return tuple(primes)


def _quadratic_roots_mod_p(t, n, p) -> list[int]:
    # roots of x^2 - t x + n mod p
    if p < 500:
        return [r for r in range(p) if (r * r - t * r + n) % p == 0]
    from sympy.ntheory import sqrt_mod

    disc = (t * t - 4 * n) % p
    inv2 = pow(2, -1, p)
    sq = sqrt_mod(disc, p, all_roots=True) or []
    return sorted({((t + s) * inv2) % p for s in sq})


def factor_ideal(I: IdealRep, bound: int = DEFAULT_FACTOR_BOUND) -> list[tuple[IdealRep, int]]:
    """Prime factorisation of an integral ideal as ``[(P, e), ...]`` sorted by norm."""
    if not I.is_integral:
        raise InputError("factor_ideal expects an integral ideal")
    F = I.field
    nrm = I.norm()
    if nrm == 1:
        return []
    out = []
    for p in sorted(factor_integer(int(nrm), bound)):
        for P in primes_above(F, p):
            e = 0
            while ideal_pow(P, e + 1).divides(I):
                e += 1
            if e:
                out.append((P, e))
    return out


def ideal_valuation(I: IdealRep, P: IdealRep) -> int:
    """Exponent of the prime P in a nonzero fractional ideal I."""
    if I.den != 1:
        D = IdealRep.from_hnf(I.field, I.den, 0, 1 if I.field.is_rational else I.den)
        return ideal_valuation(I * D, P) - ideal_valuation(D, P)
    e = 0
    while ideal_pow(P, e + 1).divides(I):
        e += 1
    return e


def element_valuation(x: FieldElement, P: IdealRep):
    """v_P(x) for nonzero x; ``INFINITE_VALUATION`` for x = 0."""
    if x.is_zero():
        return INFINITE_VALUATION
    den = x.denominator()
    u, v = int(x.a * den), int(x.b * den)
    val = pair_valuation(u, v, P)
    if den != 1:
        val -= pair_valuation(den, 0, P)
    return val


def pair_valuation(u: int, v: int, P: IdealRep) -> int:
    """v_P of the nonzero integral element u + v*omega."""
    F = P.field
    if F.is_rational:
        p = P.a
        e = 0
        while u % p == 0:
            u //= p
            e += 1
        return e
    e = 0
    while ideal_pow(P, e + 1).contains_pair(u, v):
        e += 1
    return e


def moebius_ideal(I: IdealRep, bound: int = DEFAULT_FACTOR_BOUND) -> int:
    fac = factor_ideal(I, bound)
    if any(e > 1 for _P, e in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def integral_ideals_of_norm(F: FieldData, nrm: int) -> list[IdealRep]:
    """All integral ideals of the given norm, found by scanning Hermite normal forms."""
    if F.is_rational:
        return [IdealRep(F, nrm, 0, 1, 1)]
    out = []
    c = 1
    while c * c <= nrm:
        if nrm % (c * c) == 0:
            a = nrm // c
            for b in range(0, a, c):
                if _hnf_is_ideal(a, b, c, F.t, F.n):
                    out.append(IdealRep(F, a, b, c, 1))
        c += 1
    return out


def integral_ideals_up_to(F: FieldData, bound: int) -> Iterator[IdealRep]:
    for nrm in range(1, int(bound) + 1):
        yield from integral_ideals_of_norm(F, nrm)


# --- principal ideals and classes -----------------------------------------


def principal_generator(I: IdealRep):
    """A generator of I if I is principal, else None."""
    F = I.field
    if F.is_rational:
        return F.element(I.norm())
    # reduce the lattice basis of the integral ideal den*I for the norm form
    t, n = F.t, F.n
    b1 = (I.a, 0)
    b2 = (I.b, I.c)

    def q(x):
        return pair_norm(x[0], x[1], t, n)

    def bil2(x, y):  # 2 * B(x, y)
        return q((x[0] + y[0], x[1] + y[1])) - q(x) - q(y)

    while True:
        if q(b2) < q(b1):
            b1, b2 = b2, b1
        mu = round(Fraction(bil2(b1, b2), 2 * q(b1)))
        if mu == 0:
            break
        b2 = (b2[0] - mu * b1[0], b2[1] - mu * b1[1])
    if q(b1) != I.a * I.c:
        return None
    return F.element(Fraction(b1[0], I.den), Fraction(b1[1], I.den))


def is_principal(I: IdealRep) -> bool:
    return principal_generator(I) is not None


def ideal_class_index(I: IdealRep) -> int:
    """Index into ``field.class_reps`` of the class of I."""
    F = I.field
    for k, A in enumerate(F.class_reps):
        if is_principal(A / I):
            return k
    raise AssertionError(f"no class representative matches {I}")


# --- Dedekind zeta ---------------------------------------------------------


def _zeta_partial(s: int, N: int) -> tuple[float, float]:
    n = np.arange(1, N + 1, dtype=np.float64)
    head = math.fsum((n ** (-float(s))).tolist())
    lo = (N + 1) ** (1 - s) / (s - 1)
    hi = N ** (1 - s) / (s - 1)
    return head + (lo + hi) / 2, (hi - lo) / 2 + 1e-15 * head


@lru_cache(maxsize=64)
def _character_table(D: int) -> np.ndarray:
    return np.array([kronecker(-D, r) for r in range(D)], dtype=np.float64)


def _l_partial(D: int, s: int, N: int) -> tuple[float, float]:
    chi = _character_table(D)
    n = np.arange(1, N + 1)
    terms = chi[n % D] * (n.astype(np.float64) ** (-float(s)))
    head = math.fsum(terms.tolist())
    # two valid tail bounds: the trivial one and the Abel-summation one for a
    # character with vanishing period sums
    bound = min(N ** (1 - s) / (s - 1), D * float(N) ** (-s))
    return head, bound + 1e-15


def dedekind_zeta_with_error(F: FieldData, s: int, tol: float) -> tuple[float, float]:
    """(value, rigorous error bound) for zeta_F(s), error <= tol."""
    if tol <= 0:
        raise InputError("tol must be positive")
    if int(s) != s or s < 2:
        raise InputError("s must be an integer >= 2")
    s = int(s)
    N = 64
    while True:
        z, ez = _zeta_partial(s, N)
        if F.is_rational:
            if ez <= tol:
                return z, ez
        else:
            L, eL = _l_partial(F.disc, s, N)
            err = abs(z) * eL + abs(L) * ez + ez * eL
            if err <= tol:
                return z * L, err
        if N > 50_000_000:
            raise InputError(f"tolerance {tol} too small for direct summation")
        N *= 2


def dedekind_zeta(F: FieldData, s: int, tol: float = 1e-10) -> float:
    return dedekind_zeta_with_error(F, s, tol)[0]
