"""Optimal complex flows on wheels and prisms, and the geometry behind them.

A flow on ``W_n`` is handled through its point sequence ``p_0..p_{n-1}``
(see :class:`~cflow.flow.PointSequence`).  For odd ``n`` the optimal sequences
keep every point in the annulus between the circles of radius 1 (inner) and
``lam`` (outer), and every chord ``p_{j-1} -> p_j`` has length in ``[1, lam]``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.optimize import bisect

from .errors import InfeasibleConfiguration, InvalidParameter, OutOfRange, Unclassifiable
from .flow import FlowAssignment, PointSequence, points_to_flow
from .graph import prism_graph

SQRT2 = math.sqrt(2.0)
# e^{i pi/3} written so that |q| == |q - 1| == 1 exactly in binary floating point
UNIT_SIXTH = complex(0.5, math.sqrt(3.0) / 2.0)


def theorem1_value(n: int) -> float:
    """Complex flow number of the wheel ``W_n``."""
    if n < 3:
        raise InvalidParameter(f"wheels need n >= 3, got {n}")
    if n % 2 == 0:
        return 2.0
    if n % 6 == 5:
        return 1.0 + 2.0 * math.sin(math.pi / 6 * (n + 1) / n)
    return 1.0 + 2.0 * math.sin(math.pi / 6 * n / (n - 1))


def optimal_sequence(n: int) -> PointSequence:
    """Optimal point sequence for odd ``n``; the construction depends on ``n mod 6``.

    * ``n = 5 (mod 6)``: vertices of the regular star polygon ``{n/(t+1)}``, ``t = n // 6``.
    * ``n = 1 (mod 6)``: one clockwise unit chord ``p_0 -> p_1``, then equal
      anticlockwise chords on the unit circle.
    * ``n = 3 (mod 6)``: as above but ``p_1`` sits on the outer circle, reached
      and left by two clockwise unit chords.
    """
    if n < 3 or n % 2 == 0:
        raise InvalidParameter(f"optimal_sequence needs odd n >= 3, got {n} (see even_wheel_flow)")
    if n % 6 == 5:
        step = math.pi / 3 * (n + 1) / n
        return PointSequence([cmath.exp(1j * j * step) for j in range(n)])
    step = math.pi / 3 * n / (n - 1)
    if n % 6 == 1:
        pts = [cmath.exp(1j * math.pi / 3)]
        pts += [cmath.exp(1j * j * step) for j in range(n - 1)]
        return PointSequence(pts)
    phi = math.pi / 6 * (2 * n - 3) / (n - 1)
    lam = 2.0 * math.sin(math.pi / 6 * n / (n - 1))
    pts = [cmath.exp(2j * phi), lam * cmath.exp(1j * phi)]
    pts += [cmath.exp(1j * j * step) for j in range(n - 2)]
    return PointSequence(pts)


def even_wheel_sequence(n: int) -> PointSequence:
    if n < 4 or n % 2:
        raise InvalidParameter(f"even_wheel_flow needs even n >= 4, got {n}")
    return PointSequence([1.0 if j % 2 == 0 else UNIT_SIXTH for j in range(n)])


def even_wheel_flow(n: int) -> FlowAssignment:
    """Flow on ``W_n`` (``n`` even) with every value of norm exactly 1."""
    return points_to_flow(even_wheel_sequence(n))


def wheel_sequence(n: int) -> PointSequence:
    """Optimal sequence for any ``n >= 3`` (odd construction or the even two-point one)."""
    return even_wheel_sequence(n) if n % 2 == 0 else optimal_sequence(n)


def optimal_flow(n: int) -> FlowAssignment:
    return points_to_flow(wheel_sequence(n))


def lambda_of(seq: PointSequence) -> float:
    """Largest of all ``|p_j|`` and ``|p_j - p_{j-1}|``."""
    return float(seq.norms().max())


@dataclass(frozen=True)
class AngleSet:
    """Half-angles at the centre: ``alpha`` for a unit chord on the outer circle,
    ``beta`` for a chord of length ``lam`` on the inner circle."""

    alpha: float
    beta: float
    alpha_prime: float
    beta_prime: float


def angle_set(lam: float) -> AngleSet:
    if not 1.0 < lam <= SQRT2 + 1e-12:
        raise OutOfRange(f"lambda must lie in (1, sqrt(2)], got {lam!r}")
    alpha = math.asin(1.0 / (2.0 * lam))
    beta = math.asin(min(lam / 2.0, 1.0))
    slack = 1e-12  # inclusive ends tolerate the input slack above sqrt(2)
    if not (math.asin(SQRT2 / 4) - slack <= alpha < math.pi / 6 < beta <= math.pi / 4 + slack):
        raise AssertionError(f"angle bounds violated at lambda={lam!r}")
    if not alpha + beta > math.pi / 3:
        raise AssertionError(f"alpha + beta <= pi/3 at lambda={lam!r}")
    return AngleSet(alpha, beta, math.pi / 2 - alpha, math.pi / 2 - beta)


@dataclass(frozen=True)
class VectorType:
    """Chord label ``XY*``: X/Y are the circles (I inner, E outer) of the two
    endpoints, ``*`` the sign of the angular step."""

    start: str
    end: str
    sign: str

    def __post_init__(self):
        if self.start not in "IE" or self.end not in "IE" or self.sign not in "+-":
            raise InvalidParameter(f"bad vector type {self.start}{self.end}{self.sign}")
        if len(self.start) != 1 or len(self.end) != 1 or len(self.sign) != 1:
            raise InvalidParameter("vector type fields are single characters")

    def __str__(self):
        return f"{self.start}{self.end}{self.sign}"

    @classmethod
    def parse(cls, text: str) -> "VectorType":
        if len(text) != 3:
            raise InvalidParameter(f"bad vector type {text!r}")
        return cls(text[0], text[1], text[2])


def _circle_of(radius: float, lam: float, tol: float) -> str:
    on_inner = abs(radius - 1.0) <= tol
    on_outer = abs(radius - lam) <= tol
    if on_inner and on_outer:
        raise Unclassifiable(f"lambda={lam} is too close to 1 to separate the circles")
    if on_inner:
        return "I"
    if on_outer:
        return "E"
    raise Unclassifiable(f"radius {radius} lies on neither circle")


def classify_vector(seq: PointSequence, j: int, lam: float, tol: float = 1e-9) -> VectorType:
    prev, cur = seq[j - 1], seq[j]
    step = cmath.phase(cur / prev) if prev != 0 else 0.0
    if step == 0.0:
        raise Unclassifiable(f"chord {j} has zero angular step")
    return VectorType(
        _circle_of(abs(prev), lam, tol),
        _circle_of(abs(cur), lam, tol),
        "+" if step > 0 else "-",
    )


def classify_sequence(seq: PointSequence, lam: Optional[float] = None, tol: float = 1e-9) -> List[VectorType]:
    if lam is None:
        lam = lambda_of(seq)
    return [classify_vector(seq, j, lam, tol) for j in range(len(seq))]


class ConfigKind(enum.Enum):
    CONFIG_I = "IE-,EI-,II+,...,II+"
    CONFIG_II = "II-,II+,...,II+"
    CONFIG_III = "II+,...,II+"


def config_types(kind: ConfigKind, n: int) -> List[VectorType]:
    head = {
        ConfigKind.CONFIG_I: ["IE-", "EI-"],
        ConfigKind.CONFIG_II: ["II-"],
        ConfigKind.CONFIG_III: [],
    }[kind]
    return [VectorType.parse(t) for t in head + ["II+"] * (n - len(head))]


def _closure_angle(kind: ConfigKind, n: int, lam: float) -> float:
    """Total signed angle swept at the centre by the configuration's chords."""
    beta = math.asin(lam / 2.0)
    if kind is ConfigKind.CONFIG_III:
        return n * 2 * beta
    if kind is ConfigKind.CONFIG_II:
        # one clockwise unit chord on the inner circle sweeps pi/3
        return (n - 1) * 2 * beta - math.pi / 3
    # two clockwise unit chords between the circles sweep pi/2 - beta each
    return (n - 2) * 2 * beta - 2 * (math.pi / 2 - beta)


def config_lambda(n: int, kind: ConfigKind) -> float:
    """Smallest ``lam`` in ``(1, 2)`` that closes the configuration up with a whole number of turns."""
    if n < 3 or n % 2 == 0:
        raise InvalidParameter(f"config_lambda needs odd n >= 3, got {n}")
    if kind is ConfigKind.CONFIG_I and n < 5:
        # two clockwise unit chords and a single II+ chord: the closure is degenerate
        raise InfeasibleConfiguration("CONFIG_I needs n >= 5; use table1_lambda for n = 3")
    lo, hi = 1.0, 2.0
    t_lo, t_hi = _closure_angle(kind, n, lo), _closure_angle(kind, n, hi)
    turns = math.floor(t_lo / (2 * math.pi)) + 1
    if turns < 0:
        turns = 0
    target = 2 * math.pi * turns
    if not t_lo < target < t_hi:
        raise InfeasibleConfiguration(f"{kind.name} cannot close up for n={n}")
    if kind is ConfigKind.CONFIG_III:
        return 2.0 * math.sin(turns * math.pi / n)
    return bisect(lambda x: _closure_angle(kind, n, x) - target, lo, hi, xtol=1e-15, maxiter=200)


def table1_lambda(n: int, kind: ConfigKind) -> float:
    """Closed form of the same quantity, by ``n mod 6`` (odd ``n``)."""
    if n < 3 or n % 2 == 0:
        raise InvalidParameter(f"table1_lambda needs odd n >= 3, got {n}")
    # (numerator offset, denominator offset) of  2 sin(pi/6 * (n + a) / (n + b))
    table = {
        1: {ConfigKind.CONFIG_I: (2, -1), ConfigKind.CONFIG_II: (0, -1), ConfigKind.CONFIG_III: (5, 0)},
        3: {ConfigKind.CONFIG_I: (0, -1), ConfigKind.CONFIG_II: (4, -1), ConfigKind.CONFIG_III: (3, 0)},
        5: {ConfigKind.CONFIG_I: (4, -1), ConfigKind.CONFIG_II: (2, -1), ConfigKind.CONFIG_III: (1, 0)},
    }
    a, b = table[n % 6][kind]
    return 2.0 * math.sin(math.pi / 6 * (n + a) / (n + b))


OPTIMAL_CONFIG = {1: ConfigKind.CONFIG_II, 3: ConfigKind.CONFIG_I, 5: ConfigKind.CONFIG_III}


def best_config(n: int):
    """(kind, lam) minimising :func:`config_lambda`; infeasible kinds are skipped.

    For ``n = 3`` the closure equations do not apply and the closed forms are compared instead.
    """
    if n == 3:
        lam, kind = min((table1_lambda(3, k), k) for k in ConfigKind if k is not ConfigKind.CONFIG_II)
        return kind, lam
    found = []
    for kind in ConfigKind:
        try:
            found.append((config_lambda(n, kind), kind))
        except InfeasibleConfiguration:
            pass
    lam, kind = min(found, key=lambda t: t[0])
    return kind, lam


def _block(n: int, h: int, k: int) -> List[int]:
    h, k = h % n, k % n
    if h == k:
        raise InvalidParameter("h and k must differ")
    return [(h + i) % n for i in range((k - h) % n + 1)]


def rho(seq: PointSequence, h: int, k: int, theta: float) -> PointSequence:
    """Rotate ``p_h, p_{h+1}, ..., p_k`` (cyclically, inclusive) about the origin by ``theta``.

    Only the chord entering ``p_h`` and the chord leaving ``p_k`` change
    length, unless the block is the whole cycle.
    """
    pts = seq.points.copy()
    idx = _block(len(pts), h, k)
    pts[idx] *= cmath.exp(1j * theta)
    return PointSequence(pts)


def sigma(seq: PointSequence, h: int, k: int, theta: float) -> PointSequence:
    """Rotate ``p_h`` about ``p_k`` by ``theta``."""
    n = len(seq)
    if h % n == k % n:
        raise InvalidParameter("h and k must differ")
    pts = seq.points.copy()
    pivot = pts[k % n]
    pts[h % n] = (pts[h % n] - pivot) * cmath.exp(1j * theta) + pivot
    return PointSequence(pts)


def radial_scale(seq: PointSequence, k: int, factor: float) -> PointSequence:
    """Multiply ``p_k`` by the positive real ``factor``."""
    if factor <= 0:
        raise InvalidParameter("factor must be positive")
    pts = seq.points.copy()
    pts[k % len(pts)] *= factor
    return PointSequence(pts)


def prism_flow(n: int) -> FlowAssignment:
    """Optimal flow on :func:`~cflow.graph.prism_graph` built from the wheel sequence.

    Outer edge ``j`` carries ``p_j`` and inner edge ``j`` carries ``-p_j``.  The
    matching edge ``j`` is oriented outer -> inner, so it carries ``-z_j``
    (that is ``z_j`` flowing from the inner cycle to the outer one).
    """
    seq = wheel_sequence(n)
    p = seq.points
    z = seq.chords()
    return FlowAssignment(prism_graph(n), np.concatenate([p, -p, -z]))
