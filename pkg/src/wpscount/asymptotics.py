"""Leading constants, fundamental-domain volumes and the composition rule for products."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import InputError
from .number_field import FieldData, dedekind_zeta_with_error, make_field
from .weighted_space import DivisorClass, Weight, require_well_formed

AS_PRINTED = "as-printed"
LEMMA_DERIVED = "lemma-derived"
MODES = (AS_PRINTED, LEMMA_DERIVED)

MC_CHUNK = 1 << 16
MC_MIN_SAMPLES = 10**4


@dataclass(frozen=True)
class AsymptoticForm:
    """N(T) ~ C * T**alpha * (log T)**beta."""

    C: float
    alpha: Fraction
    beta: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if not self.C > 0:
            raise InputError(f"constant must be positive, got {self.C}")
        if self.alpha <= 0:
            raise InputError("alpha must be positive")
        if int(self.beta) != self.beta or self.beta < 0:
            raise InputError("beta must be a nonnegative integer")
        object.__setattr__(self, "beta", int(self.beta))

    def __call__(self, T: float) -> float:
        T = float(T)
        if T <= 0:
            return 0.0
        v = self.C * T ** float(self.alpha)
        if self.beta:
            v *= math.log(T) ** self.beta if T > 1 else 0.0
        return v


# --- unit-lattice frames and volumes ----------------------------------------


@dataclass(frozen=True)
class UnitLatticeFrame:
    """Archimedean data of a field with unit rank <= 1.

    ``places`` lists (kind, N_v) with kind "real" or "complex".  For rank 1
    the single fundamental unit has log vector ``unit_log`` in the trace-zero
    hyperplane and ``dual(y) = pr(y)[0] / unit_log[0]``.
    """

    r1: int
    r2: int
    R: float
    places: tuple[tuple[str, int], ...]
    unit_log: tuple[float, ...] = ()

    @property
    def rank(self) -> int:
        return self.r1 + self.r2 - 1

    @property
    def N(self) -> int:
        return sum(n for _k, n in self.places)

    def pr(self, y: np.ndarray) -> np.ndarray:
        """Projection along (N_v) onto the trace-zero hyperplane; y has places on the last axis."""
        Nv = np.array([n for _k, n in self.places], dtype=float)
        return y - (y.sum(axis=-1, keepdims=True) / self.N) * Nv

    def dual(self, y: np.ndarray) -> np.ndarray:
        return self.pr(y)[..., 0] / self.unit_log[0]

    def check(self, tol: float = 1e-12):
        if self.rank == 1:
            u = np.array(self.unit_log)
            if abs(float(self.dual(u)) - 1) > tol:
                raise AssertionError("dual functional does not evaluate to 1 on the unit")
            if abs(u.sum()) > tol:
                raise AssertionError("unit log vector is not trace-zero")
        return self


def rational_frame() -> UnitLatticeFrame:
    return UnitLatticeFrame(1, 0, 1.0, (("real", 1),))


def complex_frame() -> UnitLatticeFrame:
    return UnitLatticeFrame(0, 1, 1.0, (("complex", 2),))


def real_quadratic_frame(R: float) -> UnitLatticeFrame:
    if not R > 0:
        raise InputError("regulator must be positive")
    return UnitLatticeFrame(2, 0, float(R), (("real", 1), ("real", 1)), (float(R), -float(R))).check()


def fundamental_volume(r1: int, r2: int, R: float, W) -> float:
    """2^(m r1) pi^(m r2) R |W|^(r1 + r2 - 1)."""
    W = Weight.parse(W)
    if r1 < 0 or r2 < 0 or r1 + r2 < 1:
        raise InputError("need r1 + r2 >= 1")
    if not R > 0:
        raise InputError("regulator must be positive")
    m = W.m
    return 2.0 ** (m * r1) * math.pi ** (m * r2) * R * W.total ** (r1 + r2 - 1)


def _mc_box(frame: UnitLatticeFrame, W: Weight):
    """Per place, per coordinate: half-width of the sampling box.

    Rank 0: the single place forces max |Z_i|_v^(1/w_i) <= 1, i.e. |Z_i| <= 1.
    Rank 1 with two real places: eta_2 <= eta_1 < eta_2 + 2R together with
    eta_1 + eta_2 <= 0 gives eta_1 < R and eta_2 <= 0, so |Z_1i| <= e^(R w_i)
    and |Z_2i| <= 1.
    """
    if frame.rank == 0:
        return [[1.0] * W.m]
    if frame.rank == 1 and frame.places == (("real", 1), ("real", 1)):
        return [[math.exp(frame.R * w) for w in W.entries], [1.0] * W.m]
    raise InputError("Monte-Carlo volume supports unit rank 0 and real quadratic frames only")


def _mc_chunk(frame: UnitLatticeFrame, W: Weight, caps, n: int, seed_seq) -> int:
    rng = np.random.default_rng(seed_seq)
    w = np.array(W.entries, dtype=float)
    etas = []
    for (kind, _Nv), cap in zip(frame.places, caps):
        cap = np.array(cap)
        if kind == "real":
            z = rng.uniform(-1.0, 1.0, size=(n, W.m)) * cap
            logs = np.log(np.abs(z)) / w
        else:
            re = rng.uniform(-1.0, 1.0, size=(n, W.m)) * cap
            im = rng.uniform(-1.0, 1.0, size=(n, W.m)) * cap
            logs = np.log(re * re + im * im) / w  # |z|_v = |z|^2
        etas.append(logs.max(axis=1))
    eta = np.stack(etas, axis=1)
    ok = eta.sum(axis=1) <= 0
    if frame.rank == 1:
        d = frame.dual(eta)
        ok &= (d >= 0) & (d < 1)
    return int(ok.sum())


def monte_carlo_volume(frame: UnitLatticeFrame, W, samples: int, seed: int, *, workers: int = 1):
    """(estimate, stderr) of the volume of the fundamental domain by uniform box sampling.

    Samples are drawn in fixed-size chunks, each with its own spawned seed,
    so the result depends only on (seed, samples).
    """
    W = Weight.parse(W)
    samples = int(samples)
    if samples < MC_MIN_SAMPLES:
        raise InputError(f"need at least {MC_MIN_SAMPLES} samples")
    caps = _mc_box(frame, W)
    box = 1.0
    for (kind, _Nv), cap in zip(frame.places, caps):
        for c in cap:
            box *= (2 * c) ** (2 if kind == "complex" else 1)
    sizes = [MC_CHUNK] * (samples // MC_CHUNK)
    if samples % MC_CHUNK:
        sizes.append(samples % MC_CHUNK)
    seqs = np.random.SeedSequence(int(seed)).spawn(len(sizes))
    jobs = list(zip(sizes, seqs))
    fn = lambda job: _mc_chunk(frame, W, caps, job[0], job[1])
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            hits = sum(ex.map(fn, jobs))
    else:
        hits = sum(map(fn, jobs))
    p = hits / samples
    return box * p, box * math.sqrt(p * (1 - p) / samples)


# --- single-space constant -------------------------------------------------


@dataclass(frozen=True)
class ConstantBreakdown:
    value: float
    error: float
    h: int
    zeta: float
    zeta_error: float
    disc_factor: float  # (2^(r1+r2) pi^r2 / sqrt(D))^m
    R_over_w: float
    weight_factor: float  # |W|^(r1+r2-1)

    def as_dict(self):
        return dict(self.__dict__)


def theorem_a_breakdown(F, W, tol: float = 1e-10) -> ConstantBreakdown:
    F = F if isinstance(F, FieldData) else make_field(F)
    W = require_well_formed(W)
    if W.total < 2:
        raise InputError("|W| = 1 puts the zeta factor at its pole")
    z, zerr = dedekind_zeta_with_error(F, W.total, tol)
    disc = (2.0 ** (F.r1 + F.r2) * math.pi**F.r2 / math.sqrt(abs(F.disc))) ** W.m
    Rw = F.R / F.w
    wf = float(W.total) ** (F.r1 + F.r2 - 1)
    value = F.h / z * disc * Rw * wf
    # 1/zeta is the only inexact factor; add a few ulps for the float products
    err = float(F.h / (z - zerr) * disc * Rw * wf - value + 8 * np.finfo(float).eps * value)
    return ConstantBreakdown(value, err, F.h, z, zerr, disc, Rw, wf)


def theorem_a_constant(F, W, tol: float = 1e-10) -> float:
    return theorem_a_breakdown(F, W, tol).value


def predicted_count(F, W, e: int, T, tol: float = 1e-10) -> float:
    """C * T^(|W|/e)."""
    if int(e) < 1:
        raise InputError("e must be a positive integer")
    T = float(T)
    if T <= 0:
        return 0.0
    W = Weight.parse(W)
    return theorem_a_constant(F, W, tol) * T ** (W.total / int(e))


# --- products ---------------------------------------------------------------


def combine_asymptotics(X: AsymptoticForm, Y: AsymptoticForm) -> AsymptoticForm:
    if Y.beta != 0:
        raise InputError("the second form must have beta = 0")
    if X.alpha < Y.alpha:
        raise InputError("order the arguments so that alpha(X) >= alpha(Y)")
    if X.alpha == Y.alpha:
        return AsymptoticForm(X.C * Y.C * float(X.alpha) / (X.beta + 1), X.alpha, X.beta + 1)
    return AsymptoticForm(X.C * Y.C * float(Y.alpha) / float(X.alpha - Y.alpha), X.alpha, X.beta)


def fold_asymptotics(forms: Sequence[AsymptoticForm]) -> AsymptoticForm:
    forms = sorted(forms, key=lambda f: f.alpha, reverse=True)
    acc = forms[0]
    for f in forms[1:]:
        acc = combine_asymptotics(acc, f)
    return acc


def theorem_b_constant(F, weights, mode: str = LEMMA_DERIVED, tol: float = 1e-10) -> AsymptoticForm:
    """Anticanonical product form (C, 1, k-1).

    ``as-printed`` carries a k! in the denominator; ``lemma-derived`` folds the
    composition rule and gives prod C_i / (k-1)!.  They differ by exactly k.
    """
    F = F if isinstance(F, FieldData) else make_field(F)
    ws = [require_well_formed(W) for W in weights]
    if not ws:
        raise InputError("need at least one factor")
    k = len(ws)
    Cs = [theorem_a_constant(F, W, tol) for W in ws]
    if mode == LEMMA_DERIVED:
        return fold_asymptotics([AsymptoticForm(C, 1, 0) for C in Cs])
    if mode != AS_PRINTED:
        raise InputError(f"mode must be one of {MODES}")
    zetas = [dedekind_zeta_with_error(F, W.total, tol)[0] for W in ws]
    disc = 2.0 ** (F.r1 + F.r2) * math.pi**F.r2 / math.sqrt(abs(F.disc))
    C = F.h**k / (math.factorial(k) * math.prod(zetas))
    C *= disc ** sum(W.m for W in ws) * (F.R / F.w) ** k
    C *= math.prod(float(W.total) ** (F.r1 + F.r2 - 1) for W in ws)
    return AsymptoticForm(C, 1, k - 1)


def divisor_asymptotic(F, weights, D, tol: float = 1e-10) -> AsymptoticForm:
    F = F if isinstance(F, FieldData) else make_field(F)
    ws = [Weight.parse(W) for W in weights]
    D = DivisorClass.parse(D)
    if len(D) != len(ws):
        raise InputError("divisor length must match the number of factors")
    if any(a == 0 for a in D.a):
        raise InputError("a zero divisor entry makes the count infinite")
    forms = [AsymptoticForm(theorem_a_constant(F, W, tol), Fraction(W.total, a), 0) for W, a in zip(ws, D.a)]
    return fold_asymptotics(forms)


# --- diagnostics ------------------------------------------------------------


@dataclass(frozen=True)
class SeriesFit:
    ratios: tuple[tuple[float, float], ...]
    slope: float | None = None
    intercept: float | None = None


def fit_series(series, form: AsymptoticForm) -> SeriesFit:
    """Ratios count / form(T); for beta >= 1 also the least-squares slope of
    count / T^alpha against (log T)^beta."""
    rows = [(float(T), r.count) for T, r in getattr(series, "rows", series)]
    if not rows:
        raise InputError("empty series")
    ratios = tuple((T, c / form(T) if form(T) > 0 else math.nan) for T, c in rows)
    if form.beta < 1 or len(rows) < 2:
        return SeriesFit(ratios)
    x = np.array([math.log(T) ** form.beta for T, _ in rows])
    y = np.array([c / T ** float(form.alpha) for T, c in rows])
    slope, intercept = np.polyfit(x, y, 1)
    return SeriesFit(ratios, float(slope), float(intercept))
