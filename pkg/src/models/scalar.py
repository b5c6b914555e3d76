"""Exact scalars in the group generated by one generic parameter and the N-th roots of unity.

A scalar is the monomial ``q^free_exp * zeta_N^tor_exp`` where ``q`` has infinite
order and ``zeta_N`` is a fixed primitive N-th root of unity. Every equality that
the classification needs (``q^a zeta^b = 1``, membership in ``R_n``) is then a
question about integers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import TYPE_CHECKING

from ..core.exceptions import ConfigurationError, ScalarParseError

if TYPE_CHECKING:
    from collections.abc import Iterable

_TERM_RE = re.compile(r"^(?:(1)|q(?:\^(-?\d+))?|z(\d+)(?:\^(-?\d+))?)$")


@dataclass(frozen=True, slots=True, order=True)
class Scalar:
    """Monomial ``q^free_exp * zeta_N^tor_exp`` with ``tor_exp`` reduced mod N."""

    free_exp: int
    tor_exp: int
    torsion: int

    def __post_init__(self) -> None:
        if self.torsion < 1:
            raise ConfigurationError(
                "Torsion order must be positive", torsion=self.torsion
            )
        object.__setattr__(self, "tor_exp", self.tor_exp % self.torsion)

    def _check(self, other: Scalar) -> None:
        if self.torsion != other.torsion:
            raise ConfigurationError(
                "Scalars use different torsion orders",
                left=self.torsion,
                right=other.torsion,
            )

    def __mul__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(
            self.free_exp + other.free_exp, self.tor_exp + other.tor_exp, self.torsion
        )

    def __truediv__(self, other: Scalar) -> Scalar:
        self._check(other)
        return Scalar(
            self.free_exp - other.free_exp, self.tor_exp - other.tor_exp, self.torsion
        )

    def __pow__(self, k: int) -> Scalar:
        return Scalar(self.free_exp * k, self.tor_exp * k, self.torsion)

    def __neg__(self) -> Scalar:
        return Scalar(self.free_exp, self.tor_exp + self.torsion // 2, self.torsion)

    def __str__(self) -> str:
        return format_scalar(self)

    def inverse(self) -> Scalar:
        return Scalar(-self.free_exp, -self.tor_exp, self.torsion)

    def is_one(self) -> bool:
        return self.free_exp == 0 and self.tor_exp == 0

    def is_minus_one(self) -> bool:
        return self.free_exp == 0 and 2 * self.tor_exp == self.torsion

    def order(self) -> int | None:
        """Multiplicative order, or None when the scalar has infinite order."""
        if self.free_exp != 0:
            return None
        return self.torsion // math.gcd(self.torsion, self.tor_exp)


@dataclass(frozen=True, slots=True)
class TorsionConfig:
    """The torsion subgroup mu_N in which all roots of unity live."""

    order: int

    def __post_init__(self) -> None:
        if self.order < 2 or self.order % 2:
            raise ConfigurationError(
                "Torsion order must be an even integer >= 2", torsion=self.order
            )

    @classmethod
    def from_settings(cls) -> TorsionConfig:
        from ..core.config import get_settings

        return cls(get_settings().TORSION_ORDER)

    def one(self) -> Scalar:
        return Scalar(0, 0, self.order)

    def minus_one(self) -> Scalar:
        return Scalar(0, self.order // 2, self.order)

    def generic(self, exponent: int = 1) -> Scalar:
        """The generic parameter ``q`` raised to ``exponent``."""
        return Scalar(exponent, 0, self.order)

    def root(self, k: int, exponent: int = 1) -> Scalar:
        """Return ``zK^exponent`` for the fixed primitive K-th root ``zK``.

        Raises:
            ConfigurationError: If K does not divide the torsion order
        """
        if k < 1 or self.order % k:
            raise ConfigurationError(
                f"Root of unity order {k} does not divide torsion order {self.order}",
                order=k,
                torsion=self.order,
            )
        return Scalar(0, exponent * (self.order // k), self.order)

    def admits(self, k: int) -> bool:
        return k >= 1 and self.order % k == 0


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_pow(a: Scalar, k: int) -> Scalar:
    return a**k


def scalar_inv(a: Scalar) -> Scalar:
    return a.inverse()


def scalar_order(a: Scalar) -> int | None:
    return a.order()


def is_primitive_root(a: Scalar, n: int) -> bool:
    """Check whether ``a`` lies in R_n, the primitive n-th roots of unity."""
    if n < 1:
        raise ValueError("n must be positive")
    return a.order() == n


def is_root_of_unity_in(a: Scalar, orders: Iterable[int]) -> bool:
    """Check membership in a union of sets R_n, e.g. ``R_3 | R_4 | R_6``."""
    order = a.order()
    return order is not None and order in set(orders)


def evaluate_at(a: Scalar, param: Scalar) -> Scalar:
    """Substitute ``q := param`` into a scalar written in the generic parameter."""
    a._check(param)
    return Scalar(
        a.free_exp * param.free_exp,
        a.free_exp * param.tor_exp + a.tor_exp,
        a.torsion,
    )


def parse_scalar(text: str, config: TorsionConfig) -> Scalar:
    """Parse a scalar literal such as ``-q^-2``, ``z3`` or ``q*z4^3``.

    Args:
        text: Literal following the grammar ``['-'] term ('*' term)*``
        config: Torsion configuration the roots of unity must fit in

    Returns:
        The exact scalar

    Raises:
        ScalarParseError: If the literal or one of its terms is malformed

    Example:
        >>> parse_scalar("-1", TorsionConfig(6))
        Scalar(free_exp=0, tor_exp=3, torsion=6)
    """
    body = "".join(text.split())
    negative = body.startswith("-")
    if negative:
        body = body[1:]
    if not body:
        raise ScalarParseError(f"Empty scalar literal {text!r}", token=text)

    result = config.minus_one() if negative else config.one()
    for term in body.split("*"):
        match = _TERM_RE.match(term)
        if match is None:
            raise ScalarParseError(f"Malformed scalar term {term!r}", token=term)
        one, q_exp, root_order, root_exp = match.groups()
        if one:
            continue
        if root_order is None:
            result = result * config.generic(int(q_exp) if q_exp else 1)
            continue
        k = int(root_order)
        if not config.admits(k):
            raise ScalarParseError(
                f"Root of unity order {k} does not divide torsion order {config.order}",
                token=term,
            )
        result = result * config.root(k, int(root_exp) if root_exp else 1)
    return result


def format_scalar(a: Scalar) -> str:
    """Print a scalar in canonical form.

    Args:
        a: Scalar to print

    Returns:
        Canonical literal, ``parse_scalar`` inverts it

    Example:
        >>> format_scalar(Scalar(2, 3, 6))
        '-q^2'
    """
    n = a.torsion
    t = a.tor_exp
    negative = False
    if t:
        k = n // math.gcd(n, t)
        if k % 4 == 2:
            negative = True
            t = (t - n // 2) % n

    terms: list[str] = []
    if a.free_exp == 1:
        terms.append("q")
    elif a.free_exp:
        terms.append(f"q^{a.free_exp}")
    if t:
        k = n // math.gcd(n, t)
        e = t // (n // k)
        terms.append(f"z{k}" if e == 1 else f"z{k}^{e}")

    body = "*".join(terms) or "1"
    return f"-{body}" if negative else body
