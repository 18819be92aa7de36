"""Binary polynomial arithmetic over GF(2)[x].

Polynomials are packed into Python ints, bit i holding the coefficient of x^i,
so addition is XOR and shifting multiplies by powers of x.
"""

from dataclasses import dataclass
from functools import reduce


@dataclass(frozen=True, order=True)
class Gf2Poly:
    """A polynomial with coefficients in {0, 1}, lowest degree in bit 0."""

    bits: int

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError(f"Polynomial bits must be non-negative, got {self.bits}")

    @classmethod
    def from_coeffs(cls, coeffs) -> "Gf2Poly":
        """Build from a coefficient sequence, lowest degree first."""
        bits = 0
        for i, c in enumerate(coeffs):
            if int(c) & 1:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def from_exponents(cls, *exponents: int) -> "Gf2Poly":
        """Build from the exponents of the nonzero terms, e.g. (3, 1, 0) -> x^3+x+1."""
        bits = 0
        for e in exponents:
            bits ^= 1 << e
        return cls(bits)

    @property
    def degree(self) -> int | None:
        """Degree of the polynomial, or None for the zero polynomial."""
        if self.bits == 0:
            return None
        return self.bits.bit_length() - 1

    @property
    def coeffs(self) -> list[int]:
        """Coefficient list, lowest degree first, without trailing zeros."""
        return [(self.bits >> i) & 1 for i in range(self.bits.bit_length())]

    @property
    def weight(self) -> int:
        """Number of nonzero coefficients."""
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.bits ^ other.bits)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return poly_mul(self, other)

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        terms = []
        for e in range(self.degree, -1, -1):
            if (self.bits >> e) & 1:
                if e == 0:
                    terms.append("1")
                elif e == 1:
                    terms.append("x")
                else:
                    terms.append(f"x^{e}")
        return "+".join(terms)


ONE = Gf2Poly(1)


def poly_mul(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Carry-less product of two binary polynomials."""
    x, y = a.bits, b.bits
    result = 0
    while y:
        if y & 1:
            result ^= x
        x <<= 1
        y >>= 1
    return Gf2Poly(result)


def poly_divmod(a: Gf2Poly, b: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
    """
    Long division in GF(2)[x].

    Returns:
        Tuple (q, r) with a = q*b + r and deg r < deg b

    Raises:
        ZeroDivisionError: If b is the zero polynomial
    """
    if b.is_zero():
        raise ZeroDivisionError("Division by the zero polynomial")

    db = b.degree
    rem = a.bits
    quot = 0
    while rem and rem.bit_length() - 1 >= db:
        shift = rem.bit_length() - 1 - db
        quot |= 1 << shift
        rem ^= b.bits << shift
    return Gf2Poly(quot), Gf2Poly(rem)


def poly_gcd(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Greatest common divisor (monic by construction over GF(2))."""
    while not b.is_zero():
        a, b = b, poly_divmod(a, b)[1]
    return a


def poly_lcm(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    """Least common multiple; lcm(a, b) * gcd(a, b) = a * b."""
    if a.is_zero() or b.is_zero():
        return Gf2Poly(0)
    q, r = poly_divmod(poly_mul(a, b), poly_gcd(a, b))
    assert r.is_zero()
    return q


def poly_lcm_all(polys) -> Gf2Poly:
    """lcm over an iterable of polynomials (1 for an empty iterable)."""
    return reduce(poly_lcm, polys, ONE)
