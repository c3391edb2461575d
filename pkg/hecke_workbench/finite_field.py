import itertools
import logging
from functools import lru_cache

from . import settings
from .constants import CHARACTERISTIC
from .exceptions import FieldBoundError


logger = logging.getLogger(settings.HECKE_LOGGER_NAME)


def int_to_digits(n, p, k):
    digits = []
    for _ in range(k):
        n, digit = divmod(n, p)
        digits.append(digit)
    return tuple(digits)


def digits_to_int(digits, p):
    return sum(d * p ** i for i, d in enumerate(digits))


class GaloisField:
    """
    GF(p^k) with elements encoded as integers 0 .. p^k - 1: the base-p digits of an element
    are its coefficients in the basis 1, x, ..., x^{k-1} modulo a primitive polynomial.

    The prime field is therefore {0, ..., p - 1} in every extension.

    """

    def __init__(self, degree, characteristic=CHARACTERISTIC):
        if degree < 1:
            raise FieldBoundError(f"Extension degree must be positive, got {degree}")
        self.p = characteristic
        self.degree = degree
        self.order = characteristic ** degree
        self.modulus, self.exp_table = self._primitive_modulus()
        self.log_table = {a: i for i, a in enumerate(self.exp_table)}
        self._add = [
            [
                digits_to_int(
                    [(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))],
                    self.p,
                )
                for b in range(self.order)
            ]
            for a in range(self.order)
        ]
        self._neg = [
            digits_to_int([(-x) % self.p for x in self._digits(a)], self.p)
            for a in range(self.order)
        ]
        logger.debug(
            f"*** Built GF({self.order}) with modulus coefficients {self.modulus}"
        )

    def _digits(self, a):
        return int_to_digits(a, self.p, self.degree)

    def _times_x(self, digits, modulus):
        # x^k = -(c_0 + c_1 x + ... + c_{k-1} x^{k-1})
        top = digits[-1]
        shifted = (0,) + digits[:-1]
        return tuple((d - top * c) % self.p for d, c in zip(shifted, modulus))

    def _primitive_modulus(self):
        one = (1,) + (0,) * (self.degree - 1)
        for modulus in itertools.product(range(self.p), repeat=self.degree):
            if modulus[0] == 0:
                continue
            powers, current = [], one
            for _ in range(self.order - 1):
                powers.append(digits_to_int(current, self.p))
                current = self._times_x(current, modulus)
            if current == one and len(set(powers)) == self.order - 1:
                return modulus, tuple(powers)
        raise FieldBoundError(f"No primitive polynomial of degree {self.degree}")

    def __eq__(self, other):
        return isinstance(other, GaloisField) and (self.p, self.degree) == (other.p, other.degree)

    def __hash__(self):
        return hash((self.p, self.degree))

    def __repr__(self):
        return f"GaloisField({self.order})"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def generator(self):
        return self.exp_table[1 % (self.order - 1)]

    def elements(self):
        return range(self.order)

    def nonzero(self):
        return range(1, self.order)

    def additive_basis(self):
        return [self.p ** i for i in range(self.degree)]

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return self._add[a][b]

    def neg(self, a):
        return self._neg[a]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.order - 1)]

    def inverse(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp_table[-self.log_table[a] % (self.order - 1)]

    def power(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if n == 0 else 0
        return self.exp_table[(self.log_table[a] * n) % (self.order - 1)]

    def frobenius(self, a):
        return self.power(a, self.p)

    def format(self, a):
        if a < self.p:
            return str(a)
        return f"g^{self.log_table[a]}"

    def rank(self, rows):
        """Rank of a matrix over the field by Gaussian elimination."""

        rows = [list(row) for row in rows if any(row)]
        rank = 0
        ncols = len(rows[0]) if rows else 0
        for col in range(ncols):
            pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            inverse = self.inverse(rows[rank][col])
            rows[rank] = [self.mul(inverse, a) for a in rows[rank]]
            for r in range(len(rows)):
                factor = rows[r][col]
                if r != rank and factor:
                    rows[r] = [
                        self.sub(a, self.mul(factor, b)) for a, b in zip(rows[r], rows[rank])
                    ]
            rank += 1
        return rank


@lru_cache(maxsize=None)
def galois_field(degree, characteristic=CHARACTERISTIC):
    if degree > settings.HECKE_MAX_FIELD_DEGREE:
        raise FieldBoundError(
            f"GF({characteristic}^{degree}) exceeds the enumeration bound "
            f"{settings.HECKE_MAX_FIELD_DEGREE}"
        )
    return GaloisField(degree, characteristic)


def field_from_order(order, characteristic=CHARACTERISTIC):
    degree, power = 0, 1
    while power < order:
        power *= characteristic
        degree += 1
    if power != order or degree == 0:
        raise FieldBoundError(f"{order} is not a power of {characteristic}")
    return galois_field(degree, characteristic)
