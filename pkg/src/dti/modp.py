"""Base-p digits, multinomial coefficients mod p, carry-free compositions."""

from __future__ import annotations

from math import factorial, prod
from typing import Optional, Sequence

from dti import kernels
from dti.core import DTIError


class PartsSumMismatch(DTIError, ValueError):
    pass


def base_p_digits(m: int, p: int) -> list[int]:
    """Base-``p`` digits of ``m``, least significant first; ``[]`` for 0."""
    if m < 0:
        raise ValueError("m must be non-negative")
    digits = []
    while m:
        m, r = divmod(m, p)
        digits.append(r)
    return digits


def _pad(digits: list[int], length: int) -> list[int]:
    return digits + [0] * (length - len(digits))


def multinomial_mod_p(total: int, parts: Sequence[int], p: int) -> int:
    """``total! / prod(parts_i!)`` mod p via Lucas' theorem.

    Nonzero exactly when the base-p digits of the parts add up to those of
    ``total`` without carries.
    """
    if any(k < 0 for k in parts) or sum(parts) != total:
        raise PartsSumMismatch(f"parts {list(parts)} do not sum to {total}")
    t = base_p_digits(total, p)
    part_digits = [_pad(base_p_digits(k, p), len(t)) for k in parts]
    result = 1
    for j, tj in enumerate(t):
        col = [pd[j] for pd in part_digits]
        if sum(col) != tj:
            return 0
        # tj < p, so these factorials are units mod p
        denom = prod(factorial(c) for c in col) % p
        result = result * factorial(tj) * pow(denom, -1, p) % p
    return result % p


def exists_bounded_carryfree_composition(
    total: int, bounds: Sequence[int], p: int
) -> Optional[tuple[int, ...]]:
    """Find ``k`` with ``sum(k) == total``, ``0 <= k_i <= bounds_i`` and
    ``multinomial(total; k) != 0 mod p``, or return None.

    A negative bound rules out every composition.
    """
    if not bounds:
        raise ValueError("bounds must be nonempty")
    if total < 0 or any(b < 0 for b in bounds):
        return None
    if total == 0:
        return (0,) * len(bounds)
    t = base_p_digits(total, p)
    # a coordinate can never exceed total, so clamping keeps digit lengths equal
    bd = [_pad(base_p_digits(min(b, total), p), len(t)) for b in bounds]
    digits = kernels.carryfree_digits(t, bd, p)
    if digits is None:
        return None
    return tuple(sum(dj * p**j for j, dj in enumerate(row)) for row in digits)
