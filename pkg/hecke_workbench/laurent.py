from fractions import Fraction

from .constants import LENGTH_SHORT, PARAMETER_PREFIX
from .exceptions import ContextMismatchError, ParameterError
from .root_data import add, neg, scale, sub


def parse_rational(value):
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"{value!r} is not a rational number")


def format_rational(value):
    return str(Fraction(value))


class GroupAlgebraElement:
    """
    A finitely supported sum of c * e^weight * q^qexp with rational c, i.e. an element of
    Q[q_i^{+-1}][X*].

    """

    __slots__ = ("rank", "nparams", "terms")

    def __init__(self, rank, nparams, terms=None):
        self.rank = rank
        self.nparams = nparams
        self.terms = {}
        for key, coeff in (terms or {}).items():
            if coeff:
                self.terms[key] = Fraction(coeff)

    @classmethod
    def monomial(cls, rank, nparams, weight=None, qexp=None, coeff=1):
        weight = tuple(weight) if weight is not None else (0,) * rank
        qexp = tuple(qexp) if qexp is not None else (0,) * nparams
        if len(weight) != rank or len(qexp) != nparams:
            raise ContextMismatchError("Monomial does not match the lattice or parameter rank")
        return cls(rank, nparams, {(weight, qexp): coeff})

    @classmethod
    def constant(cls, rank, nparams, coeff):
        return cls.monomial(rank, nparams, coeff=coeff)

    def _zero_key(self):
        return ((0,) * self.rank, (0,) * self.nparams)

    def _coerce(self, other):
        if isinstance(other, GroupAlgebraElement):
            if (other.rank, other.nparams) != (self.rank, self.nparams):
                raise ContextMismatchError(
                    "Cannot combine elements over different lattices or parameter sets"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return GroupAlgebraElement(self.rank, self.nparams, {self._zero_key(): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms.get(key, 0) + coeff
        return GroupAlgebraElement(self.rank, self.nparams, terms)

    __radd__ = __add__

    def __neg__(self):
        return GroupAlgebraElement(
            self.rank, self.nparams, {key: -c for key, c in self.terms.items()}
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupAlgebraElement(
                self.rank, self.nparams, {key: c * other for key, c in self.terms.items()}
            )
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for (w1, e1), c1 in self.terms.items():
            for (w2, e2), c2 in other.terms.items():
                key = (add(w1, w2), add(e1, e2))
                terms[key] = terms.get(key, 0) + c1 * c2
        return GroupAlgebraElement(self.rank, self.nparams, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def map_weights(self, function):
        terms = {}
        for (weight, qexp), coeff in self.terms.items():
            key = (tuple(function(weight)), qexp)
            terms[key] = terms.get(key, 0) + coeff
        return GroupAlgebraElement(self.rank, self.nparams, terms)

    def weights(self):
        return {weight for weight, _ in self.terms}

    def is_integral(self):
        return all(c.denominator == 1 for c in self.terms.values())

    def specialize(self, values):
        """Substitutes q_i -> values[i]; the result has no parameters left."""

        terms = {}
        for (weight, qexp), coeff in self.terms.items():
            for value, exponent in zip(values, qexp):
                coeff *= Fraction(value) ** exponent
            terms[weight] = terms.get(weight, 0) + coeff
        return GroupAlgebraElement(self.rank, 0, {(w, ()): c for w, c in terms.items()})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (item[0][1], item[0][0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (weight, qexp), coeff in self.sorted_terms():
            factors = ["e[" + ",".join(str(a) for a in weight) + "]"]
            factors += [
                f"{PARAMETER_PREFIX}{i + 1}^{e}" for i, e in enumerate(qexp) if e
            ]
            text = "*".join(factors)
            if coeff == -1:
                text = "-" + text
            elif coeff != 1:
                text = f"{coeff}*{text}"
            parts.append(text)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"GroupAlgebraElement({self})"

    def to_json(self):
        return [
            {"weight": list(weight), "qexp": list(qexp), "coeff": format_rational(coeff)}
            for (weight, qexp), coeff in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data, rank, nparams):
        terms = {}
        for term in data:
            key = (tuple(term["weight"]), tuple(term.get("qexp", (0,) * nparams)))
            terms[key] = terms.get(key, 0) + parse_rational(term["coeff"])
        element = cls(rank, nparams, terms)
        for weight, qexp in element.terms:
            if len(weight) != rank or len(qexp) != nparams:
                raise ContextMismatchError("Serialized term does not match the given ranks")
        return element


def e(weight, nparams=0):
    weight = tuple(weight)
    return GroupAlgebraElement.monomial(len(weight), nparams, weight)


def w_act(w, f):
    return f.map_weights(w.act)


def reflect(datum, i, f):
    return f.map_weights(lambda weight: datum.simple_reflect(i, weight))


def _divided_series(weight, alpha, j):
    # e^weight * (1 - e^{-j alpha}) / (1 - e^{-alpha}) as a list of weights with signs
    if j > 0:
        return [(sub(weight, scale(k, alpha)), 1) for k in range(j)]
    return [(add(weight, scale(k, alpha)), -1) for k in range(1, -j + 1)]


def _divide(datum, i, f, shift):
    alpha = datum.simple_root_vectors[i]
    alpha_vee = datum.simple_coroot_vectors[i]
    terms = {}
    for (weight, qexp), coeff in f.terms.items():
        j = sum(a * b for a, b in zip(weight, alpha_vee)) + shift
        for image, sign in _divided_series(weight, alpha, j):
            key = (image, qexp)
            terms[key] = terms.get(key, 0) + sign * coeff
    return GroupAlgebraElement(f.rank, f.nparams, terms)


def demazure(datum, i, f):
    """
    D(e^l) = (e^l - e^{s(l) - a}) / (1 - e^{-a}) for the i-th simple root a, extended linearly.

    """

    return _divide(datum, i, f, 1)


def bernstein_difference(datum, i, f):
    """(f - s_i f) / (1 - e^{-a}) for the i-th simple root a."""

    return _divide(datum, i, f, 0)


def lambda_vee(weights, rank, nparams):
    """
    Product of (1 - q^{-qexp} e^{-weight}) over a multiset of (weight, qexp) pairs.

    """

    result = GroupAlgebraElement.constant(rank, nparams, 1)
    for weight, qexp in weights:
        qexp = tuple(qexp) if qexp is not None else (0,) * nparams
        factor = 1 - GroupAlgebraElement.monomial(rank, nparams, neg(weight), neg(qexp))
        result = result * factor
    return result


def is_invariant(datum, i, f):
    return reflect(datum, i, f) == f


class ParameterFunction:
    """
    Assignment of a parameter index to every root, constant on W-orbits.

    ``values`` is set on specialized copies, where q(root) becomes a rational constant.

    """

    def __init__(self, datum, assignment, nparams=None, values=None, names=None):
        self.datum = datum
        self.assignment = {tuple(root): index for root, index in assignment.items()}
        self.nparams = nparams if nparams is not None else max(self.assignment.values()) + 1
        self.values = tuple(values) if values is not None else None
        self.parameter_names = tuple(names) if names else tuple(
            f"{PARAMETER_PREFIX}{k + 1}" for k in range(self.nparams)
        )
        self._check()

    def _check(self):
        missing = [root for root in self.datum.roots if root not in self.assignment]
        if missing:
            raise ParameterError(f"Parameter function misses the roots {missing}")
        for root, index in self.assignment.items():
            if not 0 <= index < self.nparams:
                raise ParameterError(f"Parameter index {index} out of range")
            for i in self.datum.simple_roots:
                if self.assignment[self.datum.simple_reflect(i, root)] != index:
                    raise ParameterError(
                        f"Parameter function is not constant on the W-orbit of {root}"
                    )
        if self.values is not None:
            if len(self.values) != self.nparams:
                raise ParameterError("Wrong number of parameter values")
            if any(value == 0 for value in self.values):
                raise ParameterError("Parameters cannot be specialized to zero")

    @classmethod
    def default(cls, datum):
        """One parameter per W-orbit of roots: short roots first, then long roots."""

        orbits = []
        for root in datum.roots:
            if not any(root in orbit for orbit in orbits):
                orbits.append(datum.weyl_orbit(root))
        orbits.sort(
            key=lambda orbit: (datum.lengths[next(iter(orbit))] != LENGTH_SHORT, min(orbit))
        )
        assignment = {root: k for k, orbit in enumerate(orbits) for root in orbit}
        return cls(datum, assignment, len(orbits))

    @classmethod
    def from_labels(cls, datum, labels):
        """
        ``labels`` maps "short"/"long" (or root vectors written "a,b") to parameter names
        such as "q1".

        """

        names = sorted(set(labels.values()))
        index = {name: k for k, name in enumerate(names)}
        assignment = {}
        for root in datum.roots:
            key = ",".join(str(a) for a in root)
            label = labels.get(key, labels.get(datum.lengths[root]))
            if label is None:
                raise ParameterError(f"No parameter assigned to the root {root}")
            assignment[root] = index[label]
        return cls(datum, assignment, len(names), names=names)

    @property
    def is_specialized(self):
        return self.values is not None

    @property
    def coefficient_nparams(self):
        return 0 if self.is_specialized else self.nparams

    def index(self, root):
        return self.assignment[tuple(root)]

    def q(self, root):
        rank = self.datum.rank
        k = self.index(root)
        if self.is_specialized:
            return GroupAlgebraElement.constant(rank, 0, self.values[k])
        qexp = tuple(int(j == k) for j in range(self.nparams))
        return GroupAlgebraElement.monomial(rank, self.nparams, qexp=qexp)

    def q_value(self, root):
        if not self.is_specialized:
            raise ParameterError("Parameter function is not specialized")
        return self.values[self.index(root)]

    def specialized(self, values):
        if isinstance(values, dict):
            names = self.parameter_names
            try:
                values = [values[name] for name in names]
            except KeyError as e:
                raise ParameterError(f"No value given for the parameter {e}")
        values = [parse_rational(v) for v in values]
        return ParameterFunction(
            self.datum, self.assignment, self.nparams, values, self.parameter_names
        )

    def to_json(self):
        result = {
            "assignment": {
                ",".join(str(a) for a in root): self.parameter_names[index]
                for root, index in sorted(self.assignment.items())
            }
        }
        if self.values is not None:
            result["values"] = {
                name: format_rational(value)
                for name, value in zip(self.parameter_names, self.values)
            }
        return result
