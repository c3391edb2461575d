import itertools
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.groebnertools import groebner
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import grevlex
from sympy.polys.rings import ring

from . import laurent, settings
from .char_arith import (
    RootedRepresentation,
    evaluate_rational,
    finiteness_evidence,
    rational_specialization,
)
from .constants import ROOT_DATUM_G2, VERDICT_FINITE
from .exceptions import CharacterError, ClassificationError, QuotientDimensionError
from .hecke_core import HeckeRewriter
from .laurent import GroupAlgebraElement, format_rational
from .root_data import add


logger = logging.getLogger(settings.HECKE_LOGGER_NAME)


def to_domain_matrix(rows, ncols=None):
    ncols = len(rows[0]) if rows else ncols or 0
    return DomainMatrix(
        [[QQ(c.numerator, c.denominator) for c in row] for row in rows],
        (len(rows), ncols),
        QQ,
    )


def rank(rows, ncols=None):
    if not rows:
        return 0
    return to_domain_matrix(rows, ncols).rank()


def _vector_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vector_scale(c, u):
    return tuple(c * a for a in u)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v) if a and b)


def _matvec(matrix, v):
    return tuple(_dot(row, v) for row in matrix)


def _from_columns(columns):
    return [tuple(column[r] for column in columns) for r in range(len(columns))]


class QuotientRing:
    """
    Q[X*] modulo the ideal generated by O - O(s) for Weyl orbit sums O, with a Gröbner
    normal form and a basis of standard monomials.

    Laurent monomials are cleared into Q[z, x_1, ..., x_r] with z * x_1 ... x_r = 1 and
    degrevlex order, z being the largest variable.

    """

    def __init__(self, datum, s_values):
        self.datum = datum
        self.s_values = tuple(Fraction(v) for v in s_values)
        if len(self.s_values) != datum.rank or any(v == 0 for v in self.s_values):
            raise CharacterError("s must take non-zero rational values on the X* basis")
        self.order = len(datum.weyl_group)
        names = ",".join(["z"] + [f"x{i + 1}" for i in range(datum.rank)])
        self.ring, self.z, *self.xs = ring(names, QQ, grevlex)
        self._normal_forms = {}
        self._build()

    def polynomial(self, weight):
        shift = max(0, -min(weight))
        result = self.z ** shift
        for x, exponent in zip(self.xs, weight):
            result *= x ** (exponent + shift)
        return result

    def _orbit_equation(self, weight):
        orbit = self.datum.weyl_orbit(weight)
        value = sum(evaluate_rational(self.s_values, mu) for mu in orbit)
        return sum((self.polynomial(mu) for mu in orbit), self.ring.zero) - QQ(
            value.numerator, value.denominator
        )

    def _candidate_weights(self):
        datum = self.datum
        seen = []
        for i in range(datum.rank):
            basis = tuple(int(i == j) for j in range(datum.rank))
            for weight in (basis, tuple(-a for a in basis)):
                dominant = datum.dominant_representative(weight)
                if dominant not in seen:
                    seen.append(dominant)
                    yield dominant
        radius = 1
        while True:
            box = itertools.product(range(-radius, radius + 1), repeat=datum.rank)
            layer = sorted(
                (w for w in box if datum.is_dominant(w) and any(w)),
                key=lambda w: (sum(abs(a) for a in w), w),
            )
            for weight in layer:
                if weight not in seen:
                    seen.append(weight)
                    yield weight
            radius += 1

    def _standard_monomials(self, leading, limit):
        nvars = self.datum.rank + 1
        start = (0,) * nvars
        seen, queue, result = {start}, deque([start]), []
        while queue:
            monomial = queue.popleft()
            if any(all(a >= b for a, b in zip(monomial, lead)) for lead in leading):
                continue
            result.append(monomial)
            if len(result) > limit:
                return None
            for k in range(nvars):
                successor = tuple(a + int(j == k) for j, a in enumerate(monomial))
                if successor not in seen:
                    seen.add(successor)
                    queue.append(successor)
        return sorted(result, key=lambda m: (sum(m), m))

    def _build(self):
        datum = self.datum
        unit_relation = self.z
        for x in self.xs:
            unit_relation *= x
        equations = [unit_relation - 1]
        self.invariant_weights = []
        candidates = self._candidate_weights()
        basis = []
        for _ in range(settings.HECKE_MAX_INVARIANT_GENERATORS):
            weight = next(candidates)
            self.invariant_weights.append(weight)
            equations.append(self._orbit_equation(weight))
            if len(self.invariant_weights) < datum.rank:
                continue
            self.groebner_basis = groebner(equations, self.ring)
            leading = [g.LM for g in self.groebner_basis]
            basis = self._standard_monomials(leading, 4 * self.order)
            logger.debug(
                f"*** Quotient with orbit sums of {self.invariant_weights}: "
                f"dimension {len(basis) if basis is not None else 'too large'}"
            )
            if basis is not None and len(basis) == self.order:
                break
        else:
            raise QuotientDimensionError(
                f"Orbit sums did not cut the quotient down to dimension {self.order}"
            )
        if basis is None or len(basis) != self.order:
            raise QuotientDimensionError(f"Quotient has dimension {len(basis or ())}")
        self.monomials = basis
        self.monomial_index = {m: k for k, m in enumerate(basis)}
        self.basis_weights = tuple(
            tuple(a - m[0] for a in m[1:]) for m in basis
        )
        self.dimension = len(basis)
        self.product_table = [
            [self.normal_form(add(wj, wk)) for wk in self.basis_weights]
            for wj in self.basis_weights
        ]
        self.unit = self.normal_form((0,) * datum.rank)
        self.reflection_matrices = [
            _from_columns([self.normal_form(datum.simple_reflect(i, w)) for w in self.basis_weights])
            for i in datum.simple_roots
        ]
        self.difference_matrices = [
            _from_columns(
                [
                    self.reduce(
                        laurent.bernstein_difference(datum, i, laurent.e(w))
                    )
                    for w in self.basis_weights
                ]
            )
            for i in datum.simple_roots
        ]
        logger.info(
            f"*** Quotient of {datum.name} at s={[str(v) for v in self.s_values]} "
            f"has basis {self.basis_weights}"
        )

    def normal_form(self, weight):
        weight = tuple(weight)
        if weight not in self._normal_forms:
            remainder = self.polynomial(weight).rem(self.groebner_basis)
            vector = [Fraction(0)] * self.order
            for monomial, coeff in remainder.terms():
                vector[self.monomial_index[monomial]] = Fraction(
                    int(coeff.numerator), int(coeff.denominator)
                )
            self._normal_forms[weight] = tuple(vector)
        return self._normal_forms[weight]

    def reduce(self, f):
        if f.nparams and any(any(qexp) for _, qexp in f.terms):
            raise CharacterError("Only parameter-free elements can be reduced")
        vector = (Fraction(0),) * self.dimension
        for (weight, _), coeff in f.terms.items():
            vector = _vector_add(vector, _vector_scale(coeff, self.normal_form(weight)))
        return vector

    def lift(self, vector):
        return GroupAlgebraElement(
            self.datum.rank,
            0,
            {(w, ()): c for w, c in zip(self.basis_weights, vector)},
        )

    def multiply(self, u, v):
        result = (Fraction(0),) * self.dimension
        for j, a in enumerate(u):
            if not a:
                continue
            for k, b in enumerate(v):
                if b:
                    result = _vector_add(result, _vector_scale(a * b, self.product_table[j][k]))
        return result

    def basis_vector(self, j):
        return tuple(Fraction(int(k == j)) for k in range(self.dimension))

    def element(self, vector):
        return QuotientElement(self, tuple(vector))

    def to_json(self):
        return {
            "dimension": self.dimension,
            "s": [format_rational(v) for v in self.s_values],
            "invariant_weights": [list(w) for w in self.invariant_weights],
            "groebner_basis": [str(g) for g in self.groebner_basis],
            "basis": [list(w) for w in self.basis_weights],
        }


class QuotientElement:
    __slots__ = ("quotient", "vector")

    def __init__(self, quotient, vector):
        self.quotient = quotient
        self.vector = vector

    def __add__(self, other):
        return QuotientElement(self.quotient, _vector_add(self.vector, other.vector))

    def __neg__(self):
        return QuotientElement(self.quotient, _vector_scale(-1, self.vector))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QuotientElement):
            return QuotientElement(self.quotient, self.quotient.multiply(self.vector, other.vector))
        return QuotientElement(self.quotient, _vector_scale(Fraction(other), self.vector))

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.vector)

    def __eq__(self, other):
        return isinstance(other, QuotientElement) and self.vector == other.vector

    def __hash__(self):
        return hash(self.vector)

    def reflect(self, i):
        return QuotientElement(
            self.quotient, _matvec(self.quotient.reflection_matrices[i], self.vector)
        )

    def difference(self, i):
        return QuotientElement(
            self.quotient, _matvec(self.quotient.difference_matrices[i], self.vector)
        )


def quotient_basis(datum, s_values):
    return QuotientRing(datum, s_values)


class FiniteDimAlgebra:
    """
    An associative unital algebra over Q given by the products of its basis elements.

    Subclasses with cheaper trace data override ``trace_form`` and ``commutator_columns``.

    """

    def __init__(self, labels, product, unit):
        self.labels = list(labels)
        self.dimension = len(self.labels)
        self._product = product
        self.unit = tuple(Fraction(c) for c in unit)
        self._products = {}

    @classmethod
    def from_table(cls, labels, table, unit):
        table = [[tuple(Fraction(c) for c in entry) for entry in row] for row in table]
        return cls(labels, lambda i, j: table[i][j], unit)

    def zero(self):
        return (Fraction(0),) * self.dimension

    def basis_vector(self, i):
        return tuple(Fraction(int(k == i)) for k in range(self.dimension))

    def multiply_basis(self, i, j):
        if (i, j) not in self._products:
            self._products[(i, j)] = tuple(Fraction(c) for c in self._product(i, j))
        return self._products[(i, j)]

    def multiply(self, u, v):
        result = self.zero()
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    result = _vector_add(result, _vector_scale(a * b, self.multiply_basis(i, j)))
        return result

    def generators(self):
        return [self.basis_vector(i) for i in range(self.dimension)]

    def trace_vector(self):
        return [
            sum(self.multiply_basis(k, m)[m] for m in range(self.dimension))
            for k in range(self.dimension)
        ]

    def trace_form(self):
        tau = self.trace_vector()
        return [
            [_dot(self.multiply_basis(i, j), tau) for j in range(self.dimension)]
            for i in range(self.dimension)
        ]

    def commutator_columns(self, g):
        columns = []
        for i in range(self.dimension):
            e = self.basis_vector(i)
            columns.append(
                tuple(a - b for a, b in zip(self.multiply(e, g), self.multiply(g, e)))
            )
        return columns

    def permuted(self, permutation):
        """The same algebra with basis element i relabelled as permutation[i]."""

        inverse = {p: i for i, p in enumerate(permutation)}

        def move(vector):
            result = [Fraction(0)] * self.dimension
            for i, c in enumerate(vector):
                result[permutation[i]] = c
            return tuple(result)

        return FiniteDimAlgebra(
            [self.labels[inverse[k]] for k in range(self.dimension)],
            lambda i, j: move(self.multiply_basis(inverse[i], inverse[j])),
            move(self.unit),
        )

    def check_unit(self):
        return all(
            self.multiply(self.unit, e) == e and self.multiply(e, self.unit) == e
            for e in (self.basis_vector(i) for i in range(self.dimension))
        )

    def check_associativity(self, rng, samples=20):
        for _ in range(samples):
            i, j, k = (rng.randrange(self.dimension) for _ in range(3))
            left = self.multiply(self.multiply_basis(i, j), self.basis_vector(k))
            right = self.multiply(self.basis_vector(i), self.multiply_basis(j, k))
            if left != right:
                return False
        return True


def truncated_polynomial_algebra(n):
    """Q[x]/(x^n) on the basis 1, x, ..., x^{n-1}."""

    def product(i, j):
        vector = [0] * n
        if i + j < n:
            vector[i + j] = 1
        return vector

    return FiniteDimAlgebra([f"x^{i}" for i in range(n)], product, [1] + [0] * (n - 1))


def matrix_algebra(n):
    labels = [(r, c) for r in range(n) for c in range(n)]

    def product(i, j):
        (a, b), (c, d) = labels[i], labels[j]
        vector = [0] * (n * n)
        if b == c:
            vector[labels.index((a, d))] = 1
        return vector

    unit = [int(r == c) for r, c in labels]
    return FiniteDimAlgebra(labels, product, unit)


class SpecializedHeckeAlgebra(FiniteDimAlgebra):
    """
    The affine Hecke algebra tensored over its center with Q at a rational central
    character, on the basis T_w b_j for w in W and b_j the standard monomials of the
    quotient ring.

    b_j T_v is expanded once as sum_u T_u c_u(j, v); the finite Hecke algebra products
    T_w T_u give everything else, including the trace form.

    """

    def __init__(self, quotient, parameters):
        self.quotient = quotient
        self.parameters = parameters
        datum = self.datum = quotient.datum
        self.weyl = datum.weyl_group
        self.n = quotient.dimension
        labels = [(w, j) for w in self.weyl for j in range(self.n)]
        unit = [Fraction(0)] * len(labels)
        unit[0] = Fraction(1)
        super().__init__(labels, self._basis_product, unit)

        def q(i):
            return parameters.q_value(datum.simple_root_vectors[i])

        self.rewriter = HeckeRewriter(
            datum, q, lambda i, c: c.reflect(i), lambda i, c: c.difference(i)
        )
        scalar_rewriter = HeckeRewriter(datum, q, lambda i, c: c, lambda i, c: 0)
        logger.info(f"*** Building the specialized {datum.name} algebra of dimension {self.dimension}")
        self.finite_products = [
            [scalar_rewriter.times_word({w: Fraction(1)}, u.word) for u in self.weyl]
            for w in self.weyl
        ]
        self.expansions = self._expand_all()

    def index(self, w, j):
        return self.datum.weyl_index[w] * self.n + j

    def _expand_all(self):
        datum, quotient = self.datum, self.quotient
        expansions = {}
        for j in range(self.n):
            expansions[(j, datum.identity)] = {
                datum.identity: quotient.element(quotient.basis_vector(j))
            }
            for v in self.weyl[1:]:
                parent = datum.element(v.word[:-1])
                expansions[(j, v)] = self.rewriter.times_simple(
                    expansions[(j, parent)], v.word[-1]
                )
        return expansions

    def expansion(self, vector, v):
        """sum_u T_u c_u with b T_v = sum_u T_u c_u for b given by its coordinates."""

        result = {}
        for j, a in enumerate(vector):
            if not a:
                continue
            for u, c in self.expansions[(j, v)].items():
                term = a * c
                result[u] = result[u] + term if u in result else term
        return result

    def _accumulate(self, result, w, coefficient_vector):
        offset = self.datum.weyl_index[w] * self.n
        for m, c in enumerate(coefficient_vector):
            if c:
                result[offset + m] += c

    def _hecke_times(self, w, terms):
        """T_w * sum_u T_u c_u as a coordinate vector."""

        result = [Fraction(0)] * self.dimension
        for u, c in terms.items():
            for x, h in self.finite_products[self.datum.weyl_index[w]][self.datum.weyl_index[u]].items():
                self._accumulate(result, x, _vector_scale(h, c.vector))
        return tuple(result)

    def _basis_product(self, a, b):
        w, j = self.labels[a]
        v, k = self.labels[b]
        bk = self.quotient.element(self.quotient.basis_vector(k))
        terms = {u: c * bk for u, c in self.expansions[(j, v)].items()}
        return self._hecke_times(w, terms)

    def from_hecke(self, h):
        """Coordinates of a Hecke element over the specialized parameters."""

        result = [Fraction(0)] * self.dimension
        for w, f in h.coords.items():
            self._accumulate(result, w, self.quotient.reduce(f))
        return tuple(result)

    def trace_vector(self):
        quotient, weyl = self.quotient, self.weyl
        theta = [
            sum(quotient.product_table[m][k][k] for k in range(self.n)) for m in range(self.n)
        ]
        tau = [Fraction(0)] * self.dimension
        for x in weyl:
            xi = self.datum.weyl_index[x]
            for l in range(self.n):
                total = Fraction(0)
                for v in weyl:
                    for u, c in self.expansions[(l, v)].items():
                        h = self.finite_products[xi][self.datum.weyl_index[u]].get(v)
                        if h:
                            total += h * _dot(theta, c.vector)
                tau[xi * self.n + l] = total
        return tau

    def trace_form(self):
        quotient, weyl, n = self.quotient, self.weyl, self.n
        tau = self.trace_vector()
        index = self.datum.weyl_index
        # rho[w][u][m] = sum_x h^x_{w,u} tau(x, m)
        rho = {}
        for w in weyl:
            for u in weyl:
                vector = [Fraction(0)] * n
                for x, h in self.finite_products[index[w]][index[u]].items():
                    offset = index[x] * n
                    for m in range(n):
                        vector[m] += h * tau[offset + m]
                rho[(w, u)] = vector
        # sigma[w][u][k][m'] = <rho[w][u], b_{m'} b_k>
        sigma = {
            (w, u, k): [_dot(rho[(w, u)], quotient.product_table[mp][k]) for mp in range(n)]
            for w in weyl
            for u in weyl
            for k in range(n)
        }
        rows = []
        for w in weyl:
            for j in range(n):
                row = []
                for v in weyl:
                    terms = self.expansions[(j, v)]
                    for k in range(n):
                        row.append(
                            sum(
                                (_dot(sigma[(w, u, k)], c.vector) for u, c in terms.items()),
                                Fraction(0),
                            )
                        )
                rows.append(row)
        return rows

    def generators(self):
        datum = self.datum
        result = [("T", i) for i in datum.simple_roots]
        result += [("x", i) for i in range(datum.rank)]
        return result

    def commutator_columns(self, g):
        kind, i = g
        datum, quotient = self.datum, self.quotient
        columns = []
        if kind == "T":
            s = datum.element((i,))
            for w, j in self.labels:
                right = self._hecke_times(w, self.expansions[(j, s)])
                left = self._hecke_times(s, {w: quotient.element(quotient.basis_vector(j))})
                columns.append(tuple(a - b for a, b in zip(right, left)))
            return columns
        weight = tuple(int(k == i) for k in range(datum.rank))
        x = quotient.element(quotient.normal_form(weight))
        for w, j in self.labels:
            bj = quotient.element(quotient.basis_vector(j))
            right = self._hecke_times(datum.identity, {w: bj * x})
            terms = {u: c * bj for u, c in self.expansion(x.vector, w).items()}
            left = self._hecke_times(datum.identity, terms)
            columns.append(tuple(a - b for a, b in zip(right, left)))
        return columns


def build_specialized(datum, parameters, a, values=None):
    s, t = rational_specialization(a, values)
    if len(t) != parameters.nparams:
        raise CharacterError(
            f"Character has {len(t)} parameter values, the datum needs {parameters.nparams}"
        )
    quotient = quotient_basis(datum, s)
    return SpecializedHeckeAlgebra(quotient, parameters.specialized(t))


@dataclass
class SimpleCount:
    dimension: int
    radical_dim: int
    simple_count: int

    def to_json(self):
        return {
            "dim": self.dimension,
            "radical_dim": self.radical_dim,
            "simple_count": self.simple_count,
        }


def count_simples(algebra):
    """
    Number of simple modules over the algebraic closure: the dimension of the center of
    A / rad(A), where rad(A) is the kernel of the trace form (x, y) -> tr(L_{xy}).

    x + rad(A) is central iff [x, g] lies in rad(A) for every algebra generator g, i.e.
    B [x, g] = 0 for the trace form B.

    """

    logger.info(f"*** Counting simple modules of an algebra of dimension {algebra.dimension}")
    size = algebra.dimension
    form = to_domain_matrix(algebra.trace_form(), size)
    radical_dim = size - form.rank()
    blocks = []
    for g in algebra.generators():
        commutator = to_domain_matrix(_from_columns(algebra.commutator_columns(g)), size)
        blocks.append(form.matmul(commutator))
    stacked = blocks[0].vstack(*blocks[1:]) if len(blocks) > 1 else blocks[0]
    central_dim = size - stacked.rank()
    result = SimpleCount(size, radical_dim, central_dim - radical_dim)
    logger.info(f"*** Radical dimension {radical_dim}, {result.simple_count} simple modules")
    return result


def evaluation_count(datum, s_values):
    """
    For regular s: the number of distinct points w(s), provided evaluation at them
    identifies the quotient ring with Q^{|W s|}; otherwise None.

    """

    quotient = quotient_basis(datum, s_values)
    basis = [tuple(int(i == j) for j in range(datum.rank)) for i in range(datum.rank)]
    points = sorted(
        {
            tuple(evaluate_rational(s_values, w.act(e)) for e in basis)
            for w in datum.weyl_group
        }
    )
    rows = [[evaluate_rational(point, weight) for weight in quotient.basis_weights] for point in points]
    if len(points) != quotient.dimension or rank(rows) != quotient.dimension:
        return None
    return len(points)


@dataclass
class CrosscheckReport:
    verdict: dict
    simple_count: SimpleCount
    orbit_classes: list
    quotient: dict

    @property
    def match(self):
        if self.simple_count is None or self.orbit_classes is None:
            return None
        return self.simple_count.simple_count == len(self.orbit_classes)

    def to_json(self):
        return {
            "finiteness": self.verdict,
            "simples": self.simple_count.to_json() if self.simple_count else None,
            "orbit_classes": len(self.orbit_classes) if self.orbit_classes is not None else None,
            "quotient": self.quotient,
            "match": self.match,
        }


def classify_and_crosscheck(datum, parameters, a, degree=None, values=None):
    from . import g2_char3

    representation = RootedRepresentation.from_parameters(parameters)
    evidence = finiteness_evidence(datum, representation, a)
    simples, quotient, classes = None, None, None
    if evidence.verdict == VERDICT_FINITE:
        try:
            algebra = build_specialized(datum, parameters, a, values)
        except CharacterError as e:
            logger.warning(f"*** No rational specialization: {e}")
        else:
            quotient = algebra.quotient.to_json()
            simples = count_simples(algebra)
        if datum.name == ROOT_DATUM_G2:
            try:
                classes = g2_char3.fixed_space_classify(a, degree, datum)
            except ClassificationError as e:
                logger.warning(f"*** Orbit classification failed: {e}")
    return CrosscheckReport(evidence.to_json(), simples, classes, quotient)
