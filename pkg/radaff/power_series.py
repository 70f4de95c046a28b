"""The radical ring t GF(p)[[t]] at finite precision.

A :class:`TruncSeries` stores c_1..c_prec, the coefficients of t^1..t^prec;
the series is known modulo t^(prec+1). All-zero coefficients mean "zero to
known precision". Operations whose answer would depend on coefficients past
the precision raise :class:`PrecisionExhausted` instead of guessing, so the
nilpotency of the truncated ring never shows up as fake torsion.
"""
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Tuple, Union

import numpy as np

from .errors import Incompatible, InvalidParameters, PrecisionExhausted, VerificationFailed
from .ff_linalg import check_prime

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 64

Valuation = Union[int, float]


@dataclass(frozen=True)
class TruncSeries:
    """c_1 t + c_2 t^2 + ... + c_prec t^prec + O(t^(prec+1)) over GF(p)."""

    p: int
    prec: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        if self.prec < 1:
            raise InvalidParameters(f"precision must be positive, got {self.prec}")
        coeffs = [int(c) % self.p for c in self.coeffs]
        if any(coeffs[self.prec:]):
            raise InvalidParameters(f"{len(coeffs)} coefficients given for precision {self.prec}")
        coeffs = (coeffs + [0] * self.prec)[:self.prec]
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @classmethod
    def from_array(cls, p: int, prec: int, array: np.ndarray) -> 'TruncSeries':
        return cls(p, prec, tuple(int(c) for c in array[:prec]))

    @classmethod
    def zero(cls, p: int, prec: int = DEFAULT_PRECISION) -> 'TruncSeries':
        return cls(p, prec, ())

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __getitem__(self, i: int) -> int:
        """Coefficient of t^i, for 1 <= i <= prec."""
        if not 1 <= i <= self.prec:
            raise IndexError(f"coefficient t^{i} outside 1..{self.prec}")
        return self.coeffs[i - 1]


def monomial(p: int, k: int, prec: int = DEFAULT_PRECISION, coeff: int = 1) -> TruncSeries:
    """coeff * t^k."""
    if not 1 <= k <= prec:
        raise InvalidParameters(f"t^{k} is not representable at precision {prec}")
    coeffs = [0] * prec
    coeffs[k - 1] = coeff
    return TruncSeries(p, prec, tuple(coeffs))


def valuation(x: TruncSeries) -> Valuation:
    """Least i with c_i != 0, or math.inf when x is zero to known precision."""
    for i, c in enumerate(x.coeffs, start=1):
        if c:
            return i
    return math.inf


def is_zero(x: TruncSeries) -> bool:
    return not any(x.coeffs)


def _common(x: TruncSeries, y: TruncSeries) -> Tuple[int, int]:
    if x.p != y.p:
        raise Incompatible(f"series over GF({x.p}) and GF({y.p})")
    return x.p, min(x.prec, y.prec)


def ts_add(x: TruncSeries, y: TruncSeries) -> TruncSeries:
    p, prec = _common(x, y)
    return TruncSeries.from_array(p, prec, (x.array()[:prec] + y.array()[:prec]) % p)


def ts_scale(x: TruncSeries, c: int) -> TruncSeries:
    return TruncSeries.from_array(x.p, x.prec, (x.array() * (c % x.p)) % x.p)


def _truncated_product(x: TruncSeries, y: TruncSeries) -> TruncSeries:
    p, prec = _common(x, y)
    # index n of the convolution is the coefficient of t^(n+2)
    full = np.convolve(x.array()[:prec], y.array()[:prec]) % p
    coeffs = np.zeros(prec, dtype=np.int64)
    kept = full[:max(prec - 1, 0)]
    coeffs[1:1 + kept.shape[0]] = kept
    return TruncSeries.from_array(p, prec, coeffs)


def ts_multiply(x: TruncSeries, y: TruncSeries) -> TruncSeries:
    """Cauchy product at precision min(prec_x, prec_y).

    Raises:
        PrecisionExhausted: both factors are nonzero but the leading term of
            the product, of degree v(x) + v(y), lies past the precision.
    """
    product = _truncated_product(x, y)
    if not is_zero(x) and not is_zero(y):
        expected = valuation(x) + valuation(y)
        if expected > product.prec:
            raise PrecisionExhausted(f"product has valuation {expected} beyond precision {product.prec}")
        if valuation(product) != expected:
            raise VerificationFailed(f"valuation of a product is {valuation(product)}, expected {expected}")
    return product


def ts_circle(x: TruncSeries, y: TruncSeries) -> TruncSeries:
    """x o y = x + y + x y.

    Raises:
        PrecisionExhausted: from the x y term, when its leading term lies
            past the precision.
    """
    return ts_add(ts_add(x, y), ts_multiply(x, y))


def ts_power(x: TruncSeries, n: int) -> TruncSeries:
    """The ordinary power x^n, n >= 1, by square and multiply."""
    if n < 1:
        raise InvalidParameters("series powers need n >= 1")
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else _truncated_product(result, base)
        n >>= 1
        if n:
            base = _truncated_product(base, base)
    return result


def circle_multiple(x: TruncSeries, n: int) -> TruncSeries:
    """n o x = x o x o ... o x (n times), by repeated circling."""
    result = TruncSeries.zero(x.p, x.prec)
    for _ in range(n):
        result = ts_circle(result, x)
    return result


def ts_circle_inverse(x: TruncSeries) -> TruncSeries:
    """-x + x^2 - x^3 + ..., which stops once the powers pass the precision."""
    total = TruncSeries.zero(x.p, x.prec)
    power = x
    sign = -1
    while not is_zero(power):
        total = ts_add(total, ts_scale(power, sign))
        power = _truncated_product(power, x)
        sign = -sign
    return total


class TorsionCheck(NamedTuple):
    valuation: Valuation
    is_zero: bool


def torsion_check(x: TruncSeries, j: int) -> TorsionCheck:
    """Compute p^j o x by repeated circling and as x^(p^j), and compare.

    Returns:
        The valuation of p^j o x, which is p^j * v(x), and whether it is zero.

    Raises:
        PrecisionExhausted: p^j * v(x) is past the precision.
    """
    if j < 1:
        raise InvalidParameters(f"torsion check needs j >= 1, got {j}")
    if is_zero(x):
        return TorsionCheck(math.inf, True)
    n = x.p ** j
    expected = n * valuation(x)
    if expected > x.prec:
        raise PrecisionExhausted(f"{n} o x has valuation {expected} beyond precision {x.prec}")

    repeated = circle_multiple(x, n)
    direct = ts_power(x, n)
    if repeated != direct:
        raise VerificationFailed(f"{n} o x differs from x^{n} at precision {x.prec}")
    if valuation(repeated) != expected:
        raise VerificationFailed(f"{n} o x has valuation {valuation(repeated)}, expected {expected}")
    logger.debug(f"{n} o x has valuation {expected} at precision {x.prec}")
    return TorsionCheck(expected, False)


def annihilator_witness(x: TruncSeries) -> TruncSeries:
    """Return t, which has x t != 0 for every nonzero x; so x is not in the annihilator."""
    if is_zero(x):
        raise InvalidParameters("zero annihilates everything; a witness needs x != 0")
    t = monomial(x.p, 1, x.prec)
    product = ts_multiply(x, t)
    if is_zero(product):
        raise VerificationFailed("x t vanished for a nonzero x")
    return t
