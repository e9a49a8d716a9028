"""Curvature data: angles as exact multiples of pi or raw radians.

The closed-form quantities ``epsilon``, ``q`` and ``p`` are computed from the
floors of the partial sums of the angles measured in full turns.  For angles
given as rational multiples of pi all of this is exact integer arithmetic;
real angles are snapped to the nearest integer turn within ``SNAP_TOL``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from typing import Iterable, Sequence

TWO_PI = 2.0 * math.pi

#: snapping tolerance (in turns) for real-radian input
SNAP_TOL = 1e-12


class AngleSyntaxError(ValueError):
    """A token does not match the angle grammar."""


class AngleDomainError(ValueError):
    """An angle lies outside its admissible range."""


class MixedAngleError(ValueError):
    """A tuple mixes rational-pi and real-radian angles."""


@dataclass(frozen=True)
class Angle:
    """An angle stored either as ``rational_pi * pi`` or as ``real_radians``.

    Exactly one of the two fields is set.  ``Fraction`` keeps the rational
    form in lowest terms with a positive denominator.
    """

    rational_pi: Fraction | None = None
    real_radians: float | None = None

    def __post_init__(self):
        if (self.rational_pi is None) == (self.real_radians is None):
            raise ValueError("Angle needs exactly one of rational_pi, real_radians")
        if self.rational_pi is not None:
            object.__setattr__(self, "rational_pi", Fraction(self.rational_pi))
        else:
            object.__setattr__(self, "real_radians", float(self.real_radians))
        if not self.radians > 0:
            raise AngleDomainError(f"angle must be positive, got {self.token}")

    @classmethod
    def pi(cls, num: int | Fraction, den: int = 1) -> "Angle":
        return cls(rational_pi=Fraction(num, den))

    @classmethod
    def rad(cls, x: float) -> "Angle":
        return cls(real_radians=x)

    @property
    def is_rational(self) -> bool:
        return self.rational_pi is not None

    @property
    def kind(self) -> str:
        return "rational_pi" if self.is_rational else "real_radians"

    @property
    def radians(self) -> float:
        if self.rational_pi is not None:
            return math.pi * self.rational_pi.numerator / self.rational_pi.denominator
        return self.real_radians

    @property
    def turns(self) -> Fraction | float:
        """The angle divided by 2*pi (exact for rational angles)."""
        if self.rational_pi is not None:
            return self.rational_pi / 2
        return self.real_radians / TWO_PI

    @property
    def token(self) -> str:
        """Render back into the CLI grammar."""
        if self.rational_pi is not None:
            r = self.rational_pi
            return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"
        return f"{self.real_radians!r}r"

    def phase(self) -> complex:
        """e^{i * angle}.  Multiples of pi/2 are returned exactly."""
        if self.rational_pi is not None:
            quarter = self.rational_pi * 2
            if quarter.denominator == 1:
                return (1, 1j, -1, -1j)[quarter.numerator % 4]
        x = self.radians
        return complex(math.cos(x), math.sin(x))

    def is_turn_multiple(self) -> bool:
        return is_integer_turns(self.turns)

    def reduced(self) -> "Angle":
        """Representative of the angle modulo 2*pi in [0, 2*pi)."""
        if self.rational_pi is not None:
            return Angle.pi(self.rational_pi % 2)
        return Angle.rad(math.fmod(self.real_radians, TWO_PI))

    def __add__(self, other: "Angle") -> "Angle":
        if self.is_rational != other.is_rational:
            raise MixedAngleError("cannot add rational-pi and real angles")
        if self.rational_pi is not None:
            return Angle.pi(self.rational_pi + other.rational_pi)
        return Angle.rad(self.real_radians + other.real_radians)

    def complement(self) -> "Angle":
        """2*pi minus the angle."""
        if self.rational_pi is not None:
            return Angle.pi(2 - self.rational_pi)
        return Angle.rad(TWO_PI - self.real_radians)


def is_integer_turns(t: Fraction | float) -> bool:
    if isinstance(t, Fraction):
        return t.denominator == 1
    return abs(t - round(t)) <= SNAP_TOL


def floor_turns(t: Fraction | float) -> int:
    if isinstance(t, Fraction):
        return math.floor(t)
    r = round(t)
    if abs(t - r) <= SNAP_TOL:
        return int(r)
    return math.floor(t)


@dataclass(frozen=True)
class GeneralizedCurvatureData:
    """Angle tuple with entries in (0, inf), none a multiple of 2*pi.

    Produced internally when two angles are merged into their sum.
    """

    angles: tuple[Angle, ...]

    def __post_init__(self):
        object.__setattr__(self, "angles", tuple(self.angles))
        if len(self.angles) < 1:
            raise AngleDomainError("curvature data needs at least one angle")
        kinds = {a.is_rational for a in self.angles}
        if len(kinds) > 1:
            raise MixedAngleError("all angles in a tuple must share a representation")
        self._check_angles()

    def _check_angles(self) -> None:
        for a in self.angles:
            if a.is_turn_multiple():
                raise AngleDomainError(f"angle {a.token} is a multiple of 2*pi")

    @property
    def n(self) -> int:
        return len(self.angles)

    @property
    def is_rational(self) -> bool:
        return self.angles[0].is_rational

    def __len__(self) -> int:
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)

    def __getitem__(self, i):
        return self.angles[i]

    @property
    def tokens(self) -> list[str]:
        return [a.token for a in self.angles]

    def radians(self) -> list[float]:
        return [a.radians for a in self.angles]

    def phases(self) -> list[complex]:
        return [a.phase() for a in self.angles]

    def total_turns(self) -> Fraction | float:
        if self.is_rational:
            return sum((a.turns for a in self.angles), Fraction(0))
        return math.fsum(a.turns for a in self.angles)

    def reduced(self) -> "GeneralizedCurvatureData":
        """Every entry taken modulo 2*pi; the polygon space is unchanged."""
        angles = tuple(a.reduced() for a in self.angles)
        if self.n >= 2 and all(0 < a.turns < 1 for a in angles):
            return CurvatureData(angles)
        return GeneralizedCurvatureData(angles)

    def __str__(self) -> str:
        return "(" + ", ".join(self.tokens) + ")"


class CurvatureData(GeneralizedCurvatureData):
    """Curvature tuple (k_1, ..., k_n), n >= 2, every k_i strictly in (0, 2*pi)."""

    def _check_angles(self) -> None:
        if len(self.angles) < 2:
            raise AngleDomainError("curvature data needs n >= 2 angles")
        for a in self.angles:
            # open interval applied literally, exact for rationals
            if not (0 < a.turns < 1):
                raise AngleDomainError(f"angle {a.token} is not in the open interval (0, 2*pi)")


_RATIONAL = re.compile(r"^(\d+)\s*/\s*(\d+)$")
_INTEGER = re.compile(r"^(\d+)$")
_REAL = re.compile(r"^([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*r$")


def parse_angle(token: str) -> Angle:
    """Parse ``a/b`` (a/b * pi), ``a`` (a * pi) or ``x r`` (x radians)."""
    tok = token.strip()
    if m := _RATIONAL.match(tok):
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise AngleSyntaxError(f"zero denominator in {token!r}")
        value = Fraction(num, den)
        if value <= 0:
            raise AngleDomainError(f"angle {tok} is not in the open interval (0, 2*pi)")
        return Angle(rational_pi=value)
    if m := _INTEGER.match(tok):
        value = Fraction(int(m.group(1)))
        if value <= 0:
            raise AngleDomainError(f"angle {tok} is not in the open interval (0, 2*pi)")
        return Angle(rational_pi=value)
    if m := _REAL.match(tok):
        x = float(m.group(1))
        if not x > 0:
            raise AngleDomainError(f"angle {tok} is not in the open interval (0, 2*pi)")
        return Angle(real_radians=x)
    raise AngleSyntaxError(f"bad angle token {token!r}")


def parse_curvature(text: str) -> CurvatureData:
    """Parse a comma-separated angle tuple such as ``"1/2, 1/2, 1"``."""
    tokens = [t for t in text.split(",")]
    if any(not t.strip() for t in tokens):
        raise AngleSyntaxError(f"empty token in {text!r}")
    angles = [parse_angle(t) for t in tokens]
    if len({a.is_rational for a in angles}) > 1:
        raise MixedAngleError("mixed rational-pi and real-radian angles")
    return CurvatureData(angles)


def curvature(values: Iterable[Fraction | int | float | str | Angle]) -> CurvatureData:
    """Convenience constructor.

    Ints and Fractions (or strings like ``"3/4"``) are multiples of pi; floats
    are radians.
    """
    angles = []
    for v in values:
        if isinstance(v, Angle):
            angles.append(v)
        elif isinstance(v, str):
            angles.append(parse_angle(v))
        elif isinstance(v, (int, Fraction)):
            angles.append(Angle.pi(v))
        else:
            angles.append(Angle.rad(v))
    return CurvatureData(angles)


@dataclass(frozen=True)
class PartialSumLedger:
    """Floors of the partial sums measured in turns."""

    floors: tuple[int, ...]
    total_is_2pi_multiple: bool


def partial_sums(kappa: GeneralizedCurvatureData) -> PartialSumLedger:
    if kappa.is_rational:
        sums = list(accumulate((a.turns for a in kappa), initial=Fraction(0)))[1:]
    else:
        # fsum per prefix keeps the float route order-independent
        turns = [a.turns for a in kappa]
        sums = [math.fsum(turns[: i + 1]) for i in range(len(turns))]
    floors = tuple(floor_turns(s) for s in sums)
    return PartialSumLedger(floors, is_integer_turns(sums[-1]))


def epsilon(kappa: GeneralizedCurvatureData) -> int:
    return int(partial_sums(kappa).total_is_2pi_multiple)


def q_of(kappa: GeneralizedCurvatureData) -> int:
    """Number of steps i -> i+1 at which the partial-sum floor does not change."""
    floors = partial_sums(kappa).floors
    return sum(1 for a, b in zip(floors, floors[1:]) if a == b)


def p_of(kappa: GeneralizedCurvatureData) -> int:
    p = kappa.n - 1 - q_of(kappa) - epsilon(kappa)
    if p < 0:
        raise ArithmeticError(f"negative p for {kappa}: upstream bug")
    return p


def closed_form_signature(kappa: GeneralizedCurvatureData) -> tuple[int, int]:
    return p_of(kappa), q_of(kappa)


def permute(kappa: CurvatureData, sigma: Sequence[int]) -> CurvatureData:
    """Return (k_{sigma(1)}, ..., k_{sigma(n)}).

    ``sigma`` is one-line notation with 1-based images.
    """
    n = kappa.n
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{list(sigma)} is not a permutation of 1..{n}")
    return type(kappa)(tuple(kappa[s - 1] for s in sigma))


def transposition(n: int, i: int, j: int) -> tuple[int, ...]:
    """One-line notation of the transposition (i j) on 1..n."""
    sigma = list(range(1, n + 1))
    sigma[i - 1], sigma[j - 1] = j, i
    return tuple(sigma)
