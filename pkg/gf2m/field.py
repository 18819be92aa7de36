"""GF(2^m) arithmetic with log/antilog tables, cyclotomic cosets and minimal polynomials."""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .poly import Gf2Poly

# Minimum-weight primitive polynomials, one per extension degree.
# Pinned: the choice fixes coordinate labels, so golden values depend on it.
PRIMITIVE_POLYS = {
    2: Gf2Poly.from_exponents(2, 1, 0),
    3: Gf2Poly.from_exponents(3, 1, 0),
    4: Gf2Poly.from_exponents(4, 1, 0),
    5: Gf2Poly.from_exponents(5, 2, 0),
    6: Gf2Poly.from_exponents(6, 1, 0),
    7: Gf2Poly.from_exponents(7, 3, 0),
    8: Gf2Poly.from_exponents(8, 4, 3, 2, 0),
    9: Gf2Poly.from_exponents(9, 4, 0),
    10: Gf2Poly.from_exponents(10, 3, 0),
    11: Gf2Poly.from_exponents(11, 2, 0),
    12: Gf2Poly.from_exponents(12, 6, 4, 1, 0),
    13: Gf2Poly.from_exponents(13, 4, 3, 1, 0),
    14: Gf2Poly.from_exponents(14, 10, 6, 1, 0),
    15: Gf2Poly.from_exponents(15, 1, 0),
    16: Gf2Poly.from_exponents(16, 12, 3, 1, 0),
}


class FieldError(Exception):
    """Raised when a field construction or field operation is invalid."""

    pass


@dataclass(frozen=True, eq=False)
class FieldTable:
    """
    Log/antilog tables realizing i -> alpha^i for GF(2^m).

    antilog_table has length 2^m - 1; log_table[0] is unused (-1).
    """

    m: int
    primitive_poly: Gf2Poly
    log_table: np.ndarray = field(repr=False)
    antilog_table: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        """Number of field elements, 2^m."""
        return 1 << self.m

    @property
    def multiplicative_order(self) -> int:
        """2^m - 1."""
        return (1 << self.m) - 1

    def alpha_pow(self, i: int) -> int:
        """Packed value of alpha^i (any integer exponent)."""
        return int(self.antilog_table[i % self.multiplicative_order])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(
            self.antilog_table[
                (self.log_table[a] + self.log_table[b]) % self.multiplicative_order
            ]
        )

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("Zero has no multiplicative inverse")
        return int(self.antilog_table[(-self.log_table[a]) % self.multiplicative_order])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.antilog_table[(self.log_table[a] * e) % self.multiplicative_order])

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value, self)


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(2^m), packed over the power basis {1, alpha, ..., alpha^(m-1)}."""

    value: int
    table: FieldTable = field(compare=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.value < self.table.order:
            raise FieldError(f"Value {self.value} out of range for GF(2^{self.table.m})")

    @property
    def m(self) -> int:
        return self.table.m

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return gf_add(self, other)

    __sub__ = __add__

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return gf_mul(self, other)

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.table.pow(self.value, e), self.table)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.table.inv(self.value), self.table)


@lru_cache(maxsize=None)
def field_table_new(m: int) -> FieldTable:
    """
    Build the GF(2^m) tables from the pinned primitive polynomial for m.

    Args:
        m: Extension degree, 2 <= m <= 16

    Returns:
        Immutable FieldTable (cached per m)

    Raises:
        FieldError: If m is unsupported or the pinned polynomial is not primitive
    """
    if m not in PRIMITIVE_POLYS:
        raise FieldError(f"Unsupported extension degree m={m} (supported: 2..16)")

    prim = PRIMITIVE_POLYS[m]
    size = 1 << m
    n = size - 1
    antilog = np.zeros(n, dtype=np.int64)
    log = np.full(size, -1, dtype=np.int64)

    value = 1
    for i in range(n):
        if log[value] != -1:
            raise FieldError(f"{prim} is not primitive: alpha has order {i}")
        antilog[i] = value
        log[value] = i
        value <<= 1
        if value & size:
            value ^= prim.bits
    if value != 1:
        raise FieldError(f"{prim} is not primitive for m={m}")

    antilog.setflags(write=False)
    log.setflags(write=False)
    return FieldTable(m=m, primitive_poly=prim, log_table=log, antilog_table=antilog)


def _check_same_field(a: FieldElement, b: FieldElement):
    if a.table.m != b.table.m:
        raise FieldError(f"Elements from different fields: m={a.table.m} vs m={b.table.m}")


def gf_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """Product in GF(2^m)."""
    _check_same_field(a, b)
    return FieldElement(a.table.mul(a.value, b.value), a.table)


def gf_add(a: FieldElement, b: FieldElement) -> FieldElement:
    """Sum in GF(2^m) (bitwise XOR, characteristic 2)."""
    _check_same_field(a, b)
    return FieldElement(a.value ^ b.value, a.table)


def cyclotomic_coset(j: int, m: int) -> list[int]:
    """
    Orbit of j under doubling modulo 2^m - 1.

    Returns:
        Sorted list of exponents, e.g. m=3, j=3 -> [3, 5, 6]
    """
    n = (1 << m) - 1
    if not 1 <= j <= n - 1:
        raise ValueError(f"Exponent j={j} outside [1, {n - 1}]")
    coset = set()
    e = j % n
    while e not in coset:
        coset.add(e)
        e = (2 * e) % n
    return sorted(coset)


def minimal_polynomial(j: int, table: FieldTable) -> Gf2Poly:
    """
    Minimal polynomial of alpha^j over GF(2).

    Expands prod over c in coset(j) of (x - alpha^c) inside GF(2^m) and checks
    that every coefficient landed in {0, 1}.

    Raises:
        FieldError: If an expanded coefficient is not binary
    """
    coeffs = [1]  # field values, lowest degree first
    for c in cyclotomic_coset(j, table.m):
        root = table.alpha_pow(c)
        shifted = [0] + coeffs
        for i, v in enumerate(coeffs):
            shifted[i] ^= table.mul(root, v)
        coeffs = shifted

    if any(c not in (0, 1) for c in coeffs):
        raise FieldError(f"Minimal polynomial of alpha^{j} has non-binary coefficients")
    return Gf2Poly.from_coeffs(coeffs)


def poly_eval(p: Gf2Poly, x: int, table: FieldTable) -> int:
    """Evaluate a binary polynomial at a packed field value (Horner)."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = table.mul(acc, x) ^ c
    return acc
