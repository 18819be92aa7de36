"""BCH and punctured Reed-Muller code construction from generator polynomials."""

import hashlib
import json
from dataclasses import dataclass, replace
from enum import StrEnum
from math import comb

from gf2m import (
    Gf2Poly,
    cyclotomic_coset,
    field_table_new,
    minimal_polynomial,
    poly_divmod,
    poly_lcm_all,
    poly_mul,
)


class CodeConstructionError(Exception):
    """Raised when a code cannot be constructed or a construction check fails."""

    pass


class CodeFamily(StrEnum):
    BCH = "bch"
    PUNCTURED_RM = "prm"


@dataclass(frozen=True)
class CodeSpec:
    """
    A binary cyclic code of length 2^m - 1, optionally extended by an overall parity bit.

    Coordinate p of the cyclic code holds the coefficient of x^p. In the extended
    code, coordinate 0 is the overall parity bit and coordinate p+1 holds x^p.
    """

    family: CodeFamily
    m: int
    k: int
    generator: Gf2Poly
    check_poly: Gf2Poly
    design_param: int
    extended: bool = False

    @property
    def n_cyclic(self) -> int:
        return (1 << self.m) - 1

    @property
    def n(self) -> int:
        """Length of the code as transmitted (2^m when extended)."""
        return self.n_cyclic + 1 if self.extended else self.n_cyclic

    @property
    def rate(self) -> float:
        return self.k / self.n

    @property
    def label(self) -> str:
        name = "BCH" if self.family == CodeFamily.BCH else "PuncturedRM"
        if self.extended:
            name = "eBCH" if self.family == CodeFamily.BCH else "RM"
        return f"{name}({self.n},{self.k})"

    def to_dict(self) -> dict:
        return {
            "family": str(self.family),
            "m": self.m,
            "delta_or_r": self.design_param,
            "n": self.n,
            "k": self.k,
            "extended": self.extended,
            "generator_coeffs": self.generator.coeffs,
            "primitive_poly": field_table_new(self.m).primitive_poly.coeffs,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CodeSpec":
        """Rebuild a spec from its JSON form and verify it against a fresh construction."""
        try:
            family = CodeFamily(data["family"])
            m, param = int(data["m"]), int(data["delta_or_r"])
            extended = bool(data.get("extended", False))
        except (KeyError, ValueError) as e:
            raise CodeConstructionError(f"Malformed code document: {e}")

        if family == CodeFamily.BCH:
            spec = build_bch(m, param, extended=extended)
        else:
            spec = build_punctured_rm(m, param, extended=extended)

        if spec.generator.coeffs != list(data.get("generator_coeffs", spec.generator.coeffs)):
            raise CodeConstructionError(f"Generator mismatch for {spec.label}")
        stored_poly = data.get("primitive_poly")
        if stored_poly is not None and list(stored_poly) != spec.to_dict()["primitive_poly"]:
            raise CodeConstructionError(f"Primitive polynomial mismatch for {spec.label}")
        return spec

    def code_hash(self) -> str:
        """SHA-256 of the canonical JSON form."""
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def x_n_minus_1(n: int) -> Gf2Poly:
    return Gf2Poly.from_exponents(n, 0)


def check_polynomial(spec: CodeSpec) -> Gf2Poly:
    """
    h(x) = (x^n - 1) / g(x).

    Raises:
        CodeConstructionError: If g does not divide x^n - 1
    """
    return _check_polynomial(spec.generator, spec.n_cyclic)


def _check_polynomial(generator: Gf2Poly, n: int) -> Gf2Poly:
    q, r = poly_divmod(x_n_minus_1(n), generator)
    if not r.is_zero():
        raise CodeConstructionError(f"g(x)={generator} does not divide x^{n}-1")
    return q


def _from_generator(
    family: CodeFamily, m: int, generator: Gf2Poly, param: int, extended: bool
) -> CodeSpec:
    n = (1 << m) - 1
    k = n - generator.degree
    if k <= 0:
        raise CodeConstructionError(f"Degenerate code: deg g = {generator.degree} leaves k={k}")
    h = _check_polynomial(generator, n)
    if poly_mul(generator, h) != x_n_minus_1(n) or h.degree != k:
        raise CodeConstructionError("g(x)h(x) != x^n - 1")
    return CodeSpec(
        family=family,
        m=m,
        k=k,
        generator=generator,
        check_poly=h,
        design_param=param,
        extended=extended,
    )


def build_bch(m: int, delta: int, extended: bool = False) -> CodeSpec:
    """
    Primitive narrow-sense BCH code with designed distance 2*delta + 1.

    g(x) = lcm{M1(x), M3(x), ..., M(2delta-1)(x)}

    Args:
        m: Field degree (n = 2^m - 1)
        delta: Design parameter, >= 1
        extended: Append the overall parity bit

    Raises:
        CodeConstructionError: If the resulting code is degenerate (k <= 0)
    """
    if delta < 1:
        raise ValueError(f"BCH design parameter must be >= 1, got {delta}")
    table = field_table_new(m)
    n = (1 << m) - 1
    if 2 * delta - 1 > n - 1:
        raise CodeConstructionError(f"delta={delta} too large for n={n}")

    generator = poly_lcm_all(minimal_polynomial(j, table) for j in range(1, 2 * delta, 2))
    return _from_generator(CodeFamily.BCH, m, generator, delta, extended)


def build_punctured_rm(m: int, r: int, extended: bool = False) -> CodeSpec:
    """
    r-th order punctured Reed-Muller code of length 2^m - 1.

    g(x) = lcm{M_j(x) : 1 <= j <= 2^m - 2, 1 <= w2(j) <= m - r - 1}

    With extended=True this is the RM(r, m) code itself.

    Raises:
        CodeConstructionError: If no exponent qualifies or the dimension check fails
    """
    if not 0 <= r <= m - 2:
        raise ValueError(f"RM order must satisfy 0 <= r <= m-2, got r={r}, m={m}")
    table = field_table_new(m)
    n = (1 << m) - 1

    exponents = [j for j in range(1, n) if 1 <= j.bit_count() <= m - r - 1]
    if not exponents:
        raise CodeConstructionError(f"Empty generator set for m={m}, r={r}")

    # one representative per coset
    reps = sorted({cyclotomic_coset(j, m)[0] for j in exponents})
    generator = poly_lcm_all(minimal_polynomial(j, table) for j in reps)
    spec = _from_generator(CodeFamily.PUNCTURED_RM, m, generator, r, extended)

    expected_k = sum(comb(m, i) for i in range(r + 1))
    if spec.k != expected_k:
        raise CodeConstructionError(f"Punctured RM dimension {spec.k} != {expected_k}")
    return spec


def extend(spec: CodeSpec) -> CodeSpec:
    """The same code with the overall parity bit prepended."""
    return replace(spec, extended=True)


def puncture(spec: CodeSpec) -> CodeSpec:
    """The cyclic code obtained by deleting the overall parity bit."""
    return replace(spec, extended=False)
