"""Exact scalar arithmetic over the rationals and over prime fields.

Scalars are plain Python values: `fractions.Fraction` over Q, `int` in
[0, p) over F_p.  Every value is kept in canonical form (Fraction reduces
itself with a positive denominator; mod-p ints are always reduced), so
equality of scalars is plain `==` and comparisons are bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (kind "Q") or the integers modulo a prime (kind "Fp")."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise FieldError("rational field takes no modulus")
        elif self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise FieldError(f"modulus must be prime, got {self.p!r}")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    # -- constants ---------------------------------------------------------

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def of_int(self, n: int):
        return Fraction(n) if self.kind == "Q" else n % self.p

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.p

    def neg(self, a):
        return -a if self.kind == "Q" else (-a) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "Q" else (a * b) % self.p

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return 1 / Fraction(a)
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def is_one(self, a) -> bool:
        return a == self.one

    # -- text encoding -----------------------------------------------------

    def parse(self, text):
        """Parse a scalar: "num/den" or "num" over Q, an integer in [0,p) over F_p."""
        if self.kind == "Q":
            if isinstance(text, bool):
                raise FieldError(f"not a rational scalar: {text!r}")
            if isinstance(text, int):
                return Fraction(text)
            if isinstance(text, str):
                try:
                    return Fraction(text.strip())
                except (ValueError, ZeroDivisionError) as exc:
                    raise FieldError(f"not a rational scalar: {text!r}") from exc
            raise FieldError(f"not a rational scalar: {text!r}")
        if isinstance(text, bool):
            raise FieldError(f"not a mod-{self.p} scalar: {text!r}")
        if isinstance(text, str):
            try:
                text = int(text.strip())
            except ValueError as exc:
                raise FieldError(f"not a mod-{self.p} scalar: {text!r}") from exc
        if not isinstance(text, int):
            raise FieldError(f"not a mod-{self.p} scalar: {text!r}")
        if not 0 <= text < self.p:
            raise FieldError(f"scalar {text} out of range [0,{self.p})")
        return text

    def fmt(self, a):
        """Canonical text form; JSON-friendly (str over Q, int over F_p)."""
        if self.kind == "Q":
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return int(a)

    def __repr__(self):
        return "Q" if self.kind == "Q" else f"F{self.p}"


QQ = Field("Q")


def GF(p: int) -> Field:
    return Field("Fp", p)
