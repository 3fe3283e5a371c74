"""Exact coefficient rings: the integers, the rationals and prime fields.

Elements are plain Python objects (``int`` for Z and Z/p, ``Fraction`` for
Q).  Each ring knows how to bring an element into canonical form, so two
elements are equal exactly when ``==`` says so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import RingError


class Ring:
    is_field = False
    token = "?"

    def normalize(self, x):
        raise NotImplementedError

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def div(self, a, b):
        """Exact quotient a / b; raises ArithmeticError when b does not divide a."""
        return self.normalize(a * self.inv(b))

    def divides(self, b, a) -> bool:
        return b != 0

    @property
    def zero(self):
        return self.normalize(0)

    @property
    def one(self):
        return self.normalize(1)

    def __str__(self) -> str:
        return self.token


@dataclass(frozen=True)
class Integers(Ring):
    token = "z"

    def normalize(self, x):
        return int(x)

    def is_unit(self, x) -> bool:
        return x == 1 or x == -1

    def inv(self, x):
        if not self.is_unit(x):
            raise ArithmeticError(f"{x} is not a unit in Z")
        return x

    def div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a}")
        return q

    def divides(self, b, a) -> bool:
        return a == 0 if b == 0 else a % b == 0


@dataclass(frozen=True)
class Rationals(Ring):
    is_field = True
    token = "q"

    def normalize(self, x):
        return Fraction(x)

    def is_unit(self, x) -> bool:
        return x != 0

    def inv(self, x):
        return 1 / Fraction(x)


@dataclass(frozen=True)
class PrimeField(Ring):
    p: int = 2
    is_field = True

    def __post_init__(self):
        if not _is_prime(self.p):
            raise RingError(f"p must be prime, got {self.p}")

    @property
    def token(self):
        return f"zp:{self.p}"

    def normalize(self, x):
        return int(x) % self.p

    def is_unit(self, x) -> bool:
        return x % self.p != 0

    def inv(self, x):
        return pow(int(x), -1, self.p)

    def __str__(self) -> str:
        return self.token


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


ZZ = Integers()
QQ = Rationals()
GF2 = PrimeField(2)


def parse_ring(token: str) -> Ring:
    """``z`` | ``q`` | ``zp:<prime>``."""
    t = token.strip().lower()
    if t == "z":
        return ZZ
    if t == "q":
        return QQ
    if t.startswith("zp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise RingError(f"bad prime in ring {token!r}") from None
        return PrimeField(p)
    raise RingError(f"unknown ring {token!r}; use z, q or zp:<prime>")


def ring_name(R: Ring) -> str:
    if isinstance(R, Integers):
        return "Z"
    if isinstance(R, Rationals):
        return "Q"
    return f"Z/{R.p}"
