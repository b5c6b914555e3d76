"""Exact Cartan integers for diagonal bicharacters.

For ``p = chi(f_i, f_i)`` and ``r = chi(f_i, f_j) chi(f_j, f_i)`` the Cartan
integer is ``-m`` for the smallest ``m >= 0`` with
``(1 + p + ... + p^m)(p^m r - 1) = 0``. Both factors reduce to integer
equations on the exponent pairs of ``p`` and ``r``.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from ..models.scalar import Scalar


def _solve_congruence(a: int, b: int, n: int) -> int | None:
    """Smallest ``m >= 0`` with ``a*m + b = 0 (mod n)``, or None."""
    g = math.gcd(a, n)
    if (-b) % g:
        return None
    n2 = n // g
    if n2 == 1:
        return 0
    return ((-b) // g * pow(a // g, -1, n2)) % n2


def cartan_exponent(pf: int, pt: int, rf: int, rt: int, n: int) -> int | None:
    """Return the smallest admissible ``m`` for ``p = (pf, pt)`` and ``r = (rf, rt)``.

    Args:
        pf: Free exponent of p
        pt: Torsion exponent of p modulo n
        rf: Free exponent of r
        rt: Torsion exponent of r modulo n
        n: Torsion order

    Returns:
        The exponent m, or None when no m exists (reflection undefined)
    """
    candidates: list[int] = []

    if pf != 0:
        # p has infinite order: only p^m r = 1 can vanish
        if rf % pf == 0 and -rf // pf >= 0:
            m = -rf // pf
            if (m * pt + rt) % n == 0:
                candidates.append(m)
        return min(candidates, default=None)

    k = n // math.gcd(n, pt % n)
    if k > 1:
        candidates.append(k - 1)
    if rf == 0:
        m = _solve_congruence(pt % n, rt % n, n)
        if m is not None:
            candidates.append(m)
    return min(candidates, default=None)


def cartan_integer_of(p: Scalar, r: Scalar) -> int | None:
    """Cartan integer ``a_ij <= 0`` for scalars p and r, or None when undefined."""
    m = cartan_exponent(p.free_exp, p.tor_exp, r.free_exp, r.tor_exp, p.torsion)
    return None if m is None else -m
