"""Weights, rational points of weighted projective spaces, and their sizes.

A point of P(W)(k) is an orbit of ``k^m \\ {0}`` under ``a_*x = (a^w_i x_i)``.
Points are stored through a canonical representative:

* its weighted content ideal is a fixed integral representative of its
  ideal class (the unit ideal over Q and whenever h = 1);
* among the remaining finitely many unit images it is the distinguished one
  (sign rule over Q, lexicographic minimum over quadratic fields).

Sizes are algebraic numbers of the form ``q**(1/r)`` with ``q`` rational;
they are kept exactly as :class:`Radical` so that comparisons against a
bound never depend on floating point.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, NotWellFormedError
from .number_field import (
    FieldData,
    FieldElement,
    IdealRep,
    factor_integer,
    iroot,
    make_field,
    pair_norm,
    pair_valuation,
    parse_element,
    primes_above,
    principal_generator,
)

# --- exact radicals --------------------------------------------------------


def _perfect_root(q: Fraction, k: int):
    """q**(1/k) if it is rational, else None."""
    if k == 1:
        return q
    num = iroot(q.numerator, k)
    if num**k != q.numerator:
        return None
    den = iroot(q.denominator, k)
    if den**k != q.denominator:
        return None
    return Fraction(num, den)


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InputError(f"bound must be finite, got {x}")
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"cannot parse number {x!r}") from None
    return Fraction(x)


@functools.total_ordering
class Radical:
    """The positive real ``value ** (1/root)`` with ``value`` rational, in lowest terms."""

    __slots__ = ("value", "root")

    def __init__(self, value, root: int = 1):
        value = to_fraction(value)
        if value < 0:
            raise InputError("radicand must be nonnegative")
        root = int(root)
        if root < 1:
            raise InputError("root must be >= 1")
        if value in (0, 1):
            root = 1
        else:
            for p in sorted(factor_integer(root), reverse=True):
                while root % p == 0:
                    r = _perfect_root(value, p)
                    if r is None:
                        break
                    value, root = r, root // p
        self.value = value
        self.root = root

    @classmethod
    def of(cls, x) -> "Radical":
        return x if isinstance(x, Radical) else cls(x, 1)

    def __float__(self):
        if self.root == 1:
            return float(self.value)
        # log form avoids overflow for large radicands
        num, den = self.value.numerator, self.value.denominator
        return math.exp((math.log(num) - math.log(den)) / self.root) if num else 0.0

    def evaluate(self, digits: int = 30):
        import mpmath

        with mpmath.workdps(digits):
            return mpmath.root(mpmath.mpf(self.value.numerator) / self.value.denominator, self.root)

    def __pow__(self, k: int) -> "Radical":
        k = int(k)
        if k < 0:
            return Radical(1 / self.value, self.root) ** (-k)
        return Radical(self.value**k, self.root)

    def __mul__(self, other) -> "Radical":
        o = Radical.of(other)
        L = math.lcm(self.root, o.root)
        return Radical(self.value ** (L // self.root) * o.value ** (L // o.root), L)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Radical":
        o = Radical.of(other)
        return self * Radical(1 / o.value, o.root)

    def __rtruediv__(self, other) -> "Radical":
        return Radical.of(other) / self

    def _cmp_pair(self, other):
        o = Radical.of(other)
        L = math.lcm(self.root, o.root)
        return self.value ** (L // self.root), o.value ** (L // o.root)

    def __eq__(self, other):
        if not isinstance(other, (Radical, int, Fraction)):
            return NotImplemented
        a, b = self._cmp_pair(other)
        return a == b

    def __lt__(self, other):
        if not isinstance(other, (Radical, int, Fraction)):
            return NotImplemented
        a, b = self._cmp_pair(other)
        return a < b

    def __hash__(self):
        return hash((self.value, self.root))

    def floor_pow(self, k: int) -> int:
        """floor(self ** k) for integer k >= 0, exactly."""
        v = self.value**k
        # floor((num/den)^(1/r)) = largest n with n^r * den <= num
        n = iroot(v.numerator // v.denominator, self.root)
        while (n + 1) ** self.root * v.denominator <= v.numerator:
            n += 1
        return n

    def __repr__(self):
        if self.root == 1:
            return f"Radical({self.value})"
        return f"Radical({self.value}^(1/{self.root}))"

    def __str__(self):
        return str(self.value) if self.root == 1 else f"{self.value}^(1/{self.root})"


def radical_product_le(terms: Iterable[tuple[Radical, int]], bound: Radical) -> bool:
    """Exact test of ``prod(r**a) <= bound``."""
    terms = list(terms)
    L = bound.root
    for r, _a in terms:
        L = math.lcm(L, r.root)
    lhs = Fraction(1)
    for r, a in terms:
        lhs *= r.value ** (a * (L // r.root))
    return lhs <= bound.value ** (L // bound.root)


# --- weights ---------------------------------------------------------------


def offending_subset(entries: Sequence[int]):
    """An (m-1)-subset with gcd > 1, or None when the weight is well-formed."""
    entries = tuple(entries)
    m = len(entries)
    if m == 1:
        return None if entries[0] == 1 else entries
    for skip in range(m):
        sub = entries[:skip] + entries[skip + 1 :]
        if math.gcd(*sub) != 1:
            return sub
    return None


def is_well_formed(entries: Sequence[int]) -> bool:
    entries = tuple(entries)
    if not entries:
        raise InputError("weight must be nonempty")
    if any(int(e) != e or e < 1 for e in entries):
        raise InputError(f"weights must be positive integers, got {entries}")
    return offending_subset(entries) is None


@dataclass(frozen=True)
class Weight:
    """Positive integer weights with overall gcd 1.

    The orbit description of rational points only needs the overall gcd to
    be 1, so that is all the constructor enforces; the stricter
    well-formedness condition is checked by :func:`require_well_formed`
    wherever the asymptotic theory relies on it.
    """

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        is_well_formed(entries)  # validates positivity / nonemptiness
        entries = tuple(int(e) for e in entries)
        object.__setattr__(self, "entries", entries)
        if math.gcd(*entries) != 1:
            raise NotWellFormedError(entries, entries)

    @property
    def well_formed(self) -> bool:
        return offending_subset(self.entries) is None

    @classmethod
    def parse(cls, text) -> "Weight":
        if isinstance(text, Weight):
            return text
        if isinstance(text, str):
            parts = text.replace(" ", "").rstrip(",").split(",")
            try:
                entries = tuple(int(t) for t in parts)
            except ValueError:
                raise InputError(f"malformed weight {text!r}") from None
        else:
            entries = tuple(text)
        return cls(entries)

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    @property
    def w_min(self) -> int:
        return min(self.entries)

    @property
    def lcm(self) -> int:
        return math.lcm(*self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __str__(self):
        return ",".join(map(str, self.entries))


@dataclass(frozen=True)
class DivisorClass:
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        object.__setattr__(self, "a", a)
        if not a or any(x < 0 for x in a) or not any(a):
            raise InputError(f"divisor must be effective (entries >= 0, one positive), got {a}")

    @classmethod
    def parse(cls, text) -> "DivisorClass":
        if isinstance(text, DivisorClass):
            return text
        if isinstance(text, str):
            try:
                return cls(tuple(int(t) for t in text.replace(" ", "").split(",") if t))
            except ValueError:
                raise InputError(f"malformed divisor {text!r}") from None
        return cls(tuple(text))

    def __len__(self):
        return len(self.a)

    def __str__(self):
        return ",".join(map(str, self.a))


def require_well_formed(W) -> Weight:
    W = Weight.parse(W)
    sub = offending_subset(W.entries)
    if sub is not None:
        raise NotWellFormedError(W.entries, sub)
    return W


def anticanonical_divisor(weights: Sequence[Weight]) -> DivisorClass:
    if not weights:
        raise InputError("need at least one factor")
    return DivisorClass(tuple(Weight.parse(W).total for W in weights))


# --- points ----------------------------------------------------------------


@dataclass(frozen=True)
class WpsPoint:
    field: FieldData
    weight: Weight
    coords: tuple[FieldElement, ...]
    content: IdealRep  # the weighted content of ``coords``, a class representative
    class_index: int = 0

    def __str__(self):
        return "[" + " : ".join(str(c) for c in self.coords) + "]"

    def integers(self) -> tuple[int, ...]:
        if not self.field.is_rational:
            raise InputError("integers() is only meaningful over Q")
        return tuple(int(c.a) for c in self.coords)


@dataclass(frozen=True)
class ProductPoint:
    factors: tuple[WpsPoint, ...]

    def __post_init__(self):
        fields = {P.field for P in self.factors}
        if len(fields) > 1:
            raise InputError("all factors must be over the same field")


def _as_elements(x, F: FieldData) -> tuple[FieldElement, ...]:
    out = []
    for c in x:
        if isinstance(c, FieldElement):
            if c.field != F:
                raise InputError("coordinate from a different field")
            out.append(c)
        elif isinstance(c, str):
            out.append(parse_element(F, c))
        else:
            out.append(F.element(c))
    return tuple(out)


def _check_input(x, W: Weight, F: FieldData):
    W = Weight.parse(W)
    xs = _as_elements(x, F)
    if len(xs) != W.m:
        raise InputError(f"point has {len(xs)} coordinates but the weight has {W.m}")
    if all(c.is_zero() for c in xs):
        raise InputError("the zero tuple is not a point")
    return xs, W


def act(a, x: Sequence[FieldElement], W: Weight) -> tuple[FieldElement, ...]:
    """The weighted scaling ``a_*x``."""
    return tuple(c * a**w for c, w in zip(x, W.entries))


def parse_point(F: FieldData, text: str) -> tuple[FieldElement, ...]:
    return tuple(parse_element(F, t) for t in text.split(","))


# --- weighted content ------------------------------------------------------


def _integral_content_exponents(pairs, weights, F: FieldData) -> dict:
    """{prime ideal: exponent} of the weighted content of an integral tuple."""
    nz = [(p, w) for p, w in zip(pairs, weights) if p != (0, 0)]
    if F.is_rational:
        g = 0
        for (u, _v), _w in nz:
            g = math.gcd(g, u)
    else:
        g = 0
        for (u, v), _w in nz:
            g = math.gcd(g, pair_norm(u, v, F.t, F.n))
    out = {}
    if g == 1:
        return out
    for p in factor_integer(g):
        for P in primes_above(F, p):
            e = min(pair_valuation(u, v, P) // w for (u, v), w in nz)
            if e:
                out[P] = e
    return out


def weighted_content(x, W, F: FieldData) -> IdealRep:
    """The fractional ideal I(x) with I(x)^-1 = {a : a_*x integral}."""
    xs, W = _check_input(x, W, F)
    L = math.lcm(*(c.denominator() for c in xs))
    if L != 1:
        xs = act(F.element(L), xs, W)
    pairs = [c.pair() for c in xs]
    ideal = F.unit_ideal()
    for P, e in _integral_content_exponents(pairs, W.entries, F).items():
        ideal = ideal * P**e
    if L != 1:
        ideal = ideal.scale(Fraction(1, L))
    return ideal


def content_is_trivial_int(x: Sequence[int], W: Sequence[int]) -> bool:
    """Over Q: no prime p with p^w_i | x_i for every i."""
    g = 0
    for c in x:
        g = math.gcd(g, c)
    if g == 0:
        return False
    if g == 1:
        return True
    for p in factor_integer(g):
        if all(c % p**w == 0 for c, w in zip(x, W)):
            return False
    return True


# --- heights and sizes -----------------------------------------------------


def h_infinity_exact(x, W, F: FieldData) -> Radical:
    xs, W = _check_input(x, W, F)
    best = None
    for c, w in zip(xs, W.entries):
        if c.is_zero():
            continue
        r = Radical(abs(c.a) if F.is_rational else c.norm(), w)
        if best is None or r > best:
            best = r
    return best


def h_infinity(x, W, F: FieldData, prec=None):
    """Archimedean factor max_i |x_i|_v^(1/w_i) with |x|_v = |x|^2 at the complex place."""
    r = h_infinity_exact(x, W, F)
    return float(r) if prec is None else r.evaluate(prec)


def size_exact(P: WpsPoint) -> Radical:
    return h_infinity_exact(P.coords, P.weight, P.field) / P.content.norm()


def size(P: WpsPoint, prec=None):
    r = size_exact(P)
    return float(r) if prec is None else r.evaluate(prec)


def size_of(x, W, F: FieldData) -> Radical:
    """Size of the point represented by an arbitrary (non-canonical) tuple."""
    return h_infinity_exact(x, W, F) / weighted_content(x, W, F).norm()


def size_divisor_exact(P: ProductPoint, D: DivisorClass) -> Radical:
    D = DivisorClass.parse(D)
    if len(D) != len(P.factors):
        raise InputError(f"divisor has {len(D)} entries but the point has {len(P.factors)} factors")
    out = Radical(1)
    for Q, a in zip(P.factors, D.a):
        out = out * size_exact(Q) ** a
    return out


def size_divisor(P: ProductPoint, D: DivisorClass, prec=None):
    r = size_divisor_exact(P, D)
    return float(r) if prec is None else r.evaluate(prec)


# --- canonical representatives --------------------------------------------


def _sign_canonical(ints: Sequence, W: Weight):
    for c, w in zip(ints, W.entries):
        if w % 2 and c != 0:
            return c > 0
    return True


def _lex_key(xs):
    return tuple((c.a, c.b) for c in xs)


def canonicalize(x, W, F: FieldData = None) -> WpsPoint:
    if F is None:
        F = make_field(None)
    xs, W = _check_input(x, W, F)
    J = weighted_content(xs, W, F)
    if F.is_rational:
        g = J.norm()  # positive generator
        ys = act(F.element(1 / g), xs, W)
        if not _sign_canonical([c.a for c in ys], W):
            ys = act(F.element(-1), ys, W)
        return WpsPoint(F, W, ys, F.unit_ideal(), 0)
    for k, A in enumerate(F.class_reps):
        gen = principal_generator(A / J)
        if gen is not None:
            break
    else:  # pragma: no cover - class reps cover every class
        raise AssertionError("ideal class not found")
    ys = act(gen, xs, W)
    best = min((act(u, ys, W) for u in F.roots_of_unity), key=_lex_key)
    return WpsPoint(F, W, best, A, k)


def canonical_product(xs: Sequence, weights: Sequence, F: FieldData = None) -> ProductPoint:
    return ProductPoint(tuple(canonicalize(x, W, F) for x, W in zip(xs, weights)))


def orbit_min_h_infinity(x: Sequence[int], W, budget: int = 10**6) -> Radical:
    """Brute-force min of H_inf over integral points in the Q-orbit of x.

    Only scalars ``a = r/s`` with s^w_i | x_i for all i can keep the tuple
    integral, and only ``|a| <= 1`` can lower H_inf below that of x.
    """
    W = Weight.parse(W)
    F = make_field(None)
    xs = [int(c) for c in x]
    base = h_infinity_exact(xs, W, F)
    best = base
    nz = [abs(c) for c in xs if c]
    s_max = min(nz)
    visited = 0
    for s in range(1, s_max + 1):
        if any(c % s**w for c, w in zip(xs, W.entries)):
            continue
        for r in range(1, s + 1):
            visited += 1
            if visited > budget:
                raise InputError("orbit search budget exceeded")
            if math.gcd(r, s) != 1:
                continue
            a = Fraction(r, s)
            ys = [c * a**w for c, w in zip(xs, W.entries)]
            if all(y.denominator == 1 for y in ys):
                h = h_infinity_exact(ys, W, F)
                if h < best:
                    best = h
    return best
