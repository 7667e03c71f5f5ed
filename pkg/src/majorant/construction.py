"""The digit-product family that separates L^3 norms.

Seed pair on support {0, 1, 3}:

* ``majorant_base()``: ``1 + e(theta) + e(3 theta)`` (all-ones coefficients)
* ``flipped_base()``:  ``1 + e(theta) - e(3 theta)`` (sign flipped at 3)

The cube integral of the flipped seed is strictly larger, and taking k-fold
products of dilates at base D turns that one-factor advantage into a growth
exponent.  The k-digit set is

    Lambda(D, k) = { sum_i eps_i D^i : eps_i in {0, 1, 3} },

with the sign of n equal to (-1)^(number of base-D digits of n equal to 3).
Two identities make the family computable: the all-ones exponential sum over
Lambda equals ``prod_i majorant_base(D^i theta)`` term for term, and the
signed sum equals ``prod_i flipped_base(D^i theta)``.  Norm computations
therefore evaluate k small factors per quadrature point instead of touching
3^k expanded terms.

D >= 4 is required so that 3 is a valid base-D digit and max(Lambda) < D^k.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from itertools import product as iter_product
from typing import Mapping, NamedTuple, Tuple

from .errors import ConstructionError, FrequencyOverflowError
from .norms import DEFAULT_REL_TOL, NormEstimate, norm_even, norm_quad
from .trigpoly import MAX_FREQUENCY, DilatedProduct, TrigPoly, make, product_of_dilates

DIGITS = (0, 1, 3)


def majorant_base() -> TrigPoly:
    """The all-ones seed ``1 + e(theta) + e(3 theta)``."""
    return make([(0, 1), (1, 1), (3, 1)])


def flipped_base() -> TrigPoly:
    """The sign-flipped seed ``1 + e(theta) - e(3 theta)``."""
    return make([(0, 1), (1, 1), (3, -1)])


def digit_weight(n: int, D: int) -> int:
    """Number of base-D digits of n equal to 3."""
    n = operator.index(n)
    D = operator.index(D)
    if n < 0:
        raise ValueError("digit_weight needs n >= 0")
    if D < 4:
        raise ValueError("digit base must be >= 4")
    w = 0
    while n:
        n, r = divmod(n, D)
        if r == 3:
            w += 1
    return w


def digit_sign(n: int, D: int) -> int:
    """(-1) to the number of 3-digits of n in base D."""
    return -1 if digit_weight(n, D) % 2 else 1


@dataclass(frozen=True)
class DigitConstruction:
    """A built instance: parameters, the set, the signs, and both sums.

    ``all_ones`` is the exponential sum with coefficient 1 on every element
    of ``lam``; ``signed`` carries the digit signs.  ``N = max(lam)`` is the
    ambient interval length witness.  Immutable after construction.
    """

    D: int
    k: int
    lam: Tuple[int, ...]
    signs: Mapping[int, int]
    all_ones: TrigPoly
    signed: TrigPoly
    N: int

    def all_ones_product(self) -> DilatedProduct:
        """Product form of the all-ones sum, for O(k)-per-point evaluation."""
        return DilatedProduct(majorant_base(), self.D, self.k)

    def signed_product(self) -> DilatedProduct:
        """Product form of the signed sum."""
        return DilatedProduct(flipped_base(), self.D, self.k)

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "k": self.k,
            "lambda": list(self.lam),
            "signs": {str(n): s for n, s in self.signs.items()},
            "N": self.N,
        }


def build(D: int, k: int) -> DigitConstruction:
    """Construct Lambda(D, k) with its signs and both exponential sums.

    The set is enumerated digit by digit and cross-checked, term for term,
    against the expanded products of dilates; the two routes must agree
    exactly or a :class:`ConstructionError` is raised.
    """
    D = operator.index(D)
    k = operator.index(k)
    if D < 4:
        raise ValueError("digit base D must be >= 4 (3 must be a valid digit)")
    if k < 1:
        raise ValueError("digit count k must be >= 1")
    span = 3 * (D**k - 1) // (D - 1)
    if span > MAX_FREQUENCY:
        raise FrequencyOverflowError(
            f"max(Lambda) = {span} exceeds the 64-bit frequency range"
        )

    lam = []
    signs = {}
    for eps in iter_product(DIGITS, repeat=k):
        n = sum(e * D**i for i, e in enumerate(eps))
        lam.append(n)
        signs[n] = -1 if sum(1 for e in eps if e == 3) % 2 else 1
    lam.sort()

    all_ones = product_of_dilates(majorant_base(), D, k)
    signed = product_of_dilates(flipped_base(), D, k)

    # The digit enumeration and the dilation products are independent routes
    # to the same coefficients; require exact agreement.
    if dict(all_ones.terms) != {n: (1 + 0j) for n in lam}:
        raise ConstructionError("all-ones product disagrees with digit enumeration")
    if dict(signed.terms) != {n: complex(signs[n]) for n in lam}:
        raise ConstructionError("signed product disagrees with digit enumeration")

    return DigitConstruction(
        D=D,
        k=k,
        lam=tuple(lam),
        signs=signs,
        all_ones=all_ones,
        signed=signed,
        N=lam[-1],
    )


def fit_k(D: int, N: int) -> int:
    """Largest k with D^k <= N, i.e. floor(log N / log D), computed exactly."""
    D = operator.index(D)
    N = operator.index(N)
    if D < 4:
        raise ValueError("digit base D must be >= 4")
    if N < D:
        raise ValueError(f"target N={N} admits no k >= 1 at base D={D}")
    k = 0
    power = 1
    while power * D <= N:
        power *= D
        k += 1
    return k


class RatioResult(NamedTuple):
    ratio: float
    norm_all_ones: NormEstimate
    norm_signed: NormEstimate


def ratio_at(
    c: DigitConstruction, p: float, rel_tol: float = DEFAULT_REL_TOL
) -> RatioResult:
    """||signed||_p / ||all-ones||_p through the product forms.

    Even integer p routes through the exact coefficient method (note the
    expanded product has 3^k terms, affordable for small k); other p use
    quadrature on the O(k)-per-point product evaluation.
    """
    if float(p).is_integer() and int(p) % 2 == 0 and p >= 2:
        n_all = norm_even(c.all_ones, int(p))
        n_sgn = norm_even(c.signed, int(p))
    else:
        n_all = norm_quad(c.all_ones_product(), p, rel_tol)
        n_sgn = norm_quad(c.signed_product(), p, rel_tol)
    return RatioResult(n_sgn.value / n_all.value, n_all, n_sgn)


def ratio3(c: DigitConstruction, rel_tol: float = DEFAULT_REL_TOL) -> RatioResult:
    """The cube-norm ratio, the quantity the whole construction is about."""
    return ratio_at(c, 3.0, rel_tol)


def eta_empirical(
    c: DigitConstruction,
    rel_tol: float = DEFAULT_REL_TOL,
    *,
    ratio: float | None = None,
) -> float:
    """Growth exponent ``log(ratio) / (k log D)``.

    With N < D^k, a cube-norm ratio of r over Lambda(D, k) witnesses a
    majorant constant at least N^eta with eta = log(r)/(k log D).  Positive
    exactly when the ratio exceeds 1.  Pass ``ratio`` to reuse a value from
    :func:`ratio3`; otherwise it is computed at ``rel_tol``.
    """
    if ratio is None:
        ratio = ratio3(c, rel_tol).ratio
    return math.log(ratio) / (c.k * math.log(c.D))
