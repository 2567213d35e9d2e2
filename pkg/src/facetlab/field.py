"""Prime-field arithmetic GF(p)."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

# products of two residues must fit in a signed 64-bit word inside the kernels
MAX_MODULUS = 2**31


class NonPrimeModulus(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldContext:
    """Arithmetic mod a prime ``p``. Scalars are plain ints in ``[0, p)``."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2:
            raise NonPrimeModulus(f"modulus must be an integer >= 2, got {self.p!r}")
        if self.p >= MAX_MODULUS:
            raise NonPrimeModulus(f"modulus {self.p} exceeds the machine-word limit {MAX_MODULUS}")
        if not is_prime(self.p):
            raise NonPrimeModulus(f"{self.p} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(%d)" % self.p)
        return pow(a, -1, self.p)

    def sign(self, s: int) -> int:
        """Embed an integer sign (+1/-1) as a field element."""
        return s % self.p


@lru_cache(maxsize=None)
def field_context(p: int) -> FieldContext:
    return FieldContext(p)
