import logging
from fractions import Fraction

from . import laurent, settings
from .exceptions import ContextMismatchError
from .laurent import GroupAlgebraElement


logger = logging.getLogger(settings.HECKE_LOGGER_NAME)


class HeckeRewriter:
    """
    Right multiplication of sum_u T_u c_u by a generator T_s, over any commutative ring of
    coefficients c_u that carries the action of the simple reflections and the Bernstein
    difference operators.

    The coefficient ring is described by three callables: ``q(i)`` returns q(a_i),
    ``reflect(i, c)`` returns s_i(c) and ``difference(i, c)`` returns (c - s_i c)/(1 - e^{-a_i}).

    """

    def __init__(self, datum, q, reflect, difference):
        self.datum = datum
        self.q = q
        self.reflect = reflect
        self.difference = difference

    def times_simple(self, coords, i):
        datum = self.datum
        q = self.q(i)
        result = {}

        def accumulate(w, c):
            if not c:
                return
            result[w] = result[w] + c if w in result else c

        for u, c in coords.items():
            us = datum.times_simple(u, i)
            image = self.reflect(i, c)
            if datum.is_right_ascent(u, i):
                accumulate(us, image)
            else:
                accumulate(u, (q - 1) * image)
                accumulate(us, q * image)
            accumulate(u, (q - 1) * self.difference(i, c))
        return {w: c for w, c in result.items() if c}

    def times_word(self, coords, word):
        for i in word:
            coords = self.times_simple(coords, i)
        return coords


class HeckeContext:
    """The affine Hecke algebra of a root datum with a fixed parameter function."""

    def __init__(self, datum, parameters):
        if parameters.datum is not datum:
            raise ContextMismatchError("Parameter function belongs to another root datum")
        self.datum = datum
        self.parameters = parameters
        self.nparams = parameters.coefficient_nparams
        self.rewriter = HeckeRewriter(
            datum,
            q=lambda i: parameters.q(datum.simple_root_vectors[i]),
            reflect=lambda i, c: laurent.reflect(datum, i, c),
            difference=lambda i, c: laurent.bernstein_difference(datum, i, c),
        )
        self._specializations = {}

    def _key(self):
        return (
            id(self.datum),
            tuple(sorted(self.parameters.assignment.items())),
            self.parameters.values,
        )

    def __eq__(self, other):
        return isinstance(other, HeckeContext) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def coefficient(self, value):
        if isinstance(value, GroupAlgebraElement):
            if (value.rank, value.nparams) != (self.datum.rank, self.nparams):
                raise ContextMismatchError("Coefficient does not belong to this Hecke algebra")
            return value
        return GroupAlgebraElement.constant(self.datum.rank, self.nparams, Fraction(value))

    def monomial(self, weight, qexp=None, coeff=1):
        return GroupAlgebraElement.monomial(self.datum.rank, self.nparams, weight, qexp, coeff)

    def element(self, coords):
        return HeckeElement(self, {w: self.coefficient(c) for w, c in coords.items()})

    def zero(self):
        return HeckeElement(self, {})

    def one(self):
        return self.T(self.datum.identity)

    def T(self, w=None):
        if w is None:
            w = self.datum.identity
        elif not hasattr(w, "matrix"):
            w = self.datum.element(w)
        return HeckeElement(self, {w: self.coefficient(1)})

    def simple(self, i):
        return self.T((i,))

    def theta(self, weight):
        return HeckeElement(self, {self.datum.identity: self.monomial(weight)})

    def scalar(self, f):
        return HeckeElement(self, {self.datum.identity: self.coefficient(f)})

    def check(self, *elements):
        for h in elements:
            if h.context != self:
                raise ContextMismatchError("Hecke elements belong to different contexts")

    def mul(self, h1, h2):
        self.check(h1, h2)
        result = {}
        for v, g in h2.coords.items():
            for w, c in self.rewriter.times_word(h1.coords, v.word).items():
                c = c * g
                result[w] = result[w] + c if w in result else c
        return HeckeElement(self, result)

    def center_orbit_sum(self, weight):
        total = self.coefficient(0)
        for mu in self.datum.weyl_orbit(weight):
            total = total + self.monomial(mu)
        return self.scalar(total)

    def specialized(self, values):
        parameters = self.parameters.specialized(values)
        key = parameters.values
        if key not in self._specializations:
            logger.debug(f"*** Specializing {self.datum.name} parameters at {key}")
            self._specializations[key] = HeckeContext(self.datum, parameters)
        return self._specializations[key]

    def specialize_params(self, h, values):
        self.check(h)
        target = self.specialized(values)
        return HeckeElement(
            target,
            {w: c.specialize(target.parameters.values) for w, c in h.coords.items()},
        )

    def to_left_coefficients(self, h):
        """Coefficients f_w with h = sum_w f_w T_w."""

        self.check(h)
        remaining = dict(h.coords)
        left = {}
        while remaining:
            w = max(remaining, key=lambda u: (u.length, u.word))
            f = laurent.w_act(w, remaining[w])
            left[w] = f
            correction = self.rewriter.times_word({self.datum.identity: f}, w.word)
            for u, c in correction.items():
                difference = remaining.get(u, self.coefficient(0)) - c
                if difference:
                    remaining[u] = difference
                else:
                    remaining.pop(u, None)
        return left

    def from_left_coefficients(self, left):
        total = self.zero()
        for w, f in left.items():
            total = total + self.scalar(f) * self.T(w)
        return total


class HeckeElement:
    """sum_w T_w f_w with right coefficients f_w in A[X*]."""

    __slots__ = ("context", "coords")

    def __init__(self, context, coords):
        self.context = context
        self.coords = {w: c for w, c in coords.items() if c}

    def _lift(self, other):
        if isinstance(other, HeckeElement):
            self.context.check(other)
            return other
        if isinstance(other, (int, Fraction, GroupAlgebraElement)):
            return self.context.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        coords = dict(self.coords)
        for w, c in other.coords.items():
            coords[w] = coords[w] + c if w in coords else c
        return HeckeElement(self.context, coords)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElement(self.context, {w: -c for w, c in self.coords.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.context.mul(self, other)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.context.mul(other, self)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return False
        return self.coords == other.coords

    def __hash__(self):
        return hash(frozenset(self.coords.items()))

    def __bool__(self):
        return bool(self.coords)

    def coefficient(self, w):
        if not hasattr(w, "matrix"):
            w = self.context.datum.element(w)
        return self.coords.get(w, self.context.coefficient(0))

    def sorted_items(self):
        return sorted(self.coords.items(), key=lambda item: (item[0].length, item[0].word))

    def __str__(self):
        if not self.coords:
            return "0"
        return " + ".join(f"T[{w}] * ({c})" for w, c in self.sorted_items())

    def __repr__(self):
        return f"HeckeElement({self})"

    def to_json(self):
        return [{"word": list(w.word), "coefficient": c.to_json()} for w, c in self.sorted_items()]


def mul(h1, h2):
    return h1.context.mul(h1, h2)


def specialize_params(h, values):
    return h.context.specialize_params(h, values)
