import itertools
import logging
import re
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from . import settings
from .char_arith import RootedRepresentation, centralizer_roots, finiteness_evidence, fixed_support
from .chevalley import MAX_EXPONENT, g2_roots, is_short, lie_action_table
from .constants import (
    CHEVALLEY_FORMULAS,
    COMPONENT_LIFT,
    EXOTIC_ORBITS,
    NEGATIVE_ROOTS,
    PUBLISHED_STABILIZER_FACTORS,
    PUBLISHED_STABILIZER_REPRESENTATIVE,
    ROOT_DATUM_G2,
    VERDICT_INFINITE,
    ZERO_LINE_LONG,
    ZERO_LINE_SHORT,
)
from .exceptions import ClassificationError, FieldBoundError, InfiniteOrbitsError
from .finite_field import galois_field
from .laurent import ParameterFunction
from .root_data import preset


logger = logging.getLogger(settings.HECKE_LOGGER_NAME)

GROUP_DIMENSION = 14
BOREL_DIMENSION = 8

ROOT_LABELS = {(1, 0): "a", (0, 1): "b", (1, 1): "ab", (2, 1): "2ab", (3, 1): "3ab", (3, 2): "3a2b"}
LINES = g2_roots() + (ZERO_LINE_SHORT, ZERO_LINE_LONG)
LINE_INDEX = {line: k for k, line in enumerate(LINES)}
SHORT_LINES = frozenset(
    k
    for k, line in enumerate(LINES)
    if line == ZERO_LINE_SHORT or (line != ZERO_LINE_LONG and is_short(line))
)

TERM = re.compile(r"^(\d*)v(-?[0-9a-z_]+)$")


def root_label(line):
    if line in (ZERO_LINE_SHORT, ZERO_LINE_LONG):
        return line
    if line in ROOT_LABELS:
        return ROOT_LABELS[line]
    return "-" + ROOT_LABELS[tuple(-a for a in line)]


LABEL_LINES = {root_label(line): line for line in LINES}


def parse_line(label):
    try:
        return LABEL_LINES[label]
    except KeyError:
        raise ValueError(f"Unknown line label {label!r}")


def height(root):
    return sum(root)


@dataclass(frozen=True)
class G2Vector:
    field: object
    coeffs: tuple

    @classmethod
    def zero(cls, field):
        return cls(field, (0,) * len(LINES))

    @classmethod
    def from_labels(cls, field, labels):
        """``labels`` is an iterable of line labels or a mapping label -> coefficient."""

        if not isinstance(labels, dict):
            labels = {label: 1 for label in labels}
        coeffs = [0] * len(LINES)
        for label, c in labels.items():
            coeffs[LINE_INDEX[parse_line(label)]] = c
        return cls(field, tuple(coeffs))

    @classmethod
    def parse(cls, text, field):
        """Reads sums such as "v2ab+vb" or "2va+vb"; coefficients are prime field integers."""

        labels = {}
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls.zero(field)
        for term in text.split("+"):
            match = TERM.match(term)
            if match is None:
                raise ValueError(f"Cannot read the term {term!r}")
            coeff, label = match.groups()
            labels[label] = field.from_int(int(coeff or 1))
        return cls.from_labels(field, labels)

    @property
    def support(self):
        return tuple(LINES[k] for k, c in enumerate(self.coeffs) if c)

    @property
    def root_support(self):
        return tuple(line for line in self.support if isinstance(line, tuple))

    @property
    def is_zero(self):
        return not any(self.coeffs)

    @property
    def is_negative(self):
        """Whether the vector lies in V^-, the span of the lines of the roots of B."""

        return all(line in NEGATIVE_ROOTS for line in self.support)

    def summand_pattern(self):
        return (
            any(c for k, c in enumerate(self.coeffs) if k in SHORT_LINES),
            any(c for k, c in enumerate(self.coeffs) if k not in SHORT_LINES),
        )

    def lift(self, target):
        if target == self.field:
            return self
        if any(c >= self.field.p for c in self.coeffs) or target.p != self.field.p:
            raise FieldBoundError(f"Only prime field vectors can be moved to GF({target.order})")
        return G2Vector(target, self.coeffs)

    def sort_key(self):
        heights = tuple(-height(line) for line in self.root_support)
        return (sum(1 for c in self.coeffs if c), heights, self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                prefix = "" if c == 1 else self.field.format(c)
                terms.append(f"{prefix}v{root_label(LINES[k])}")
        return "+".join(terms)

    def to_json(self):
        return {root_label(LINES[k]): self.field.format(c) for k, c in enumerate(self.coeffs) if c}


def _formula_action(gamma, t, v):
    f = v.field
    coeffs = list(v.coeffs)
    for root, source, exponent, coeff, target in CHEVALLEY_FORMULAS:
        c = v.coeffs[LINE_INDEX[source]]
        if root != gamma or not c:
            continue
        term = f.mul(f.mul(c, f.power(t, exponent)), f.from_int(coeff))
        coeffs[LINE_INDEX[target]] = f.add(coeffs[LINE_INDEX[target]], term)
    return G2Vector(f, tuple(coeffs))


def act_root_group(gamma, t, v):
    """
    x_gamma(t) v. Root groups of B on V^- follow the printed formula table; everything else
    uses the exponentials of the sign-aligned Chevalley basis.

    """

    gamma = tuple(gamma)
    if gamma in NEGATIVE_ROOTS and v.is_negative:
        return _formula_action(gamma, t, v)
    return G2Vector(v.field, lie_action_table().apply(gamma, t, v.coeffs, v.field))


def act_torus(a, b, v):
    """The torus element with alpha(t) = a and beta(t) = b."""

    f = v.field
    coeffs = list(v.coeffs)
    for k, c in enumerate(v.coeffs):
        line = LINES[k]
        if c and isinstance(line, tuple):
            coeffs[k] = f.mul(c, f.mul(f.power(a, line[0]), f.power(b, line[1])))
    return G2Vector(f, tuple(coeffs))


@dataclass
class OrbitRecord:
    representative: G2Vector
    stabilizer_dim: int
    component_group_order: int

    def to_json(self):
        return {
            "representative": str(self.representative),
            "coefficients": self.representative.to_json(),
            "stabilizer_dim": self.stabilizer_dim,
            "component_group_order": self.component_group_order,
        }


def orbit_table(field=None):
    field = field or galois_field(1)
    return [
        OrbitRecord(G2Vector.from_labels(field, labels), dim, order)
        for labels, dim, order in EXOTIC_ORBITS
    ]


def tangent_stabilizer_dim(x):
    """14 minus the rank of {X x : X in the Chevalley basis} over the field of x."""

    f = x.field
    columns = []
    for matrix in lie_action_table().tangent_matrices():
        columns.append(
            [
                sum_field(f, (f.mul(f.from_int(a), c) for a, c in zip(row, x.coeffs) if a and c))
                for row in matrix
            ]
        )
    return GROUP_DIMENSION - f.rank(columns)


def sum_field(f, values):
    total = 0
    for value in values:
        total = f.add(total, value)
    return total


@lru_cache(maxsize=None)
def _datum():
    return preset(ROOT_DATUM_G2)


def positive_system(roots):
    """A Weyl translate of the roots of B containing ``roots``, with the element used."""

    datum = _datum()
    for w in datum.weyl_group:
        system = frozenset(w.act(root) for root in NEGATIVE_ROOTS)
        if all(tuple(root) in system for root in roots):
            return w, system
    raise ClassificationError(f"No Borel subalgebra contains the lines {list(roots)}")


def _cell_factors(w0, w, system):
    datum = _datum()
    inverse = datum.inverse(w)
    factors = [gamma for gamma in system if inverse.act(gamma) not in system]
    base = datum.inverse(w0)
    return sorted(factors, key=lambda gamma: (height(base.act(gamma)), gamma))


def _count_cell(x, factors, allowed, system, table):
    f = x.field
    q = f.order
    forbidden = [LINE_INDEX[line] for line in system if line not in allowed]
    # lines that the factors from position i on can still change
    reachable = []
    for i in range(len(factors) + 1):
        lines = set()
        for gamma in factors[i:]:
            for n in range(1, MAX_EXPONENT + 1):
                lines.update(
                    LINE_INDEX[delta]
                    for delta in system
                    if tuple(a - n * b for a, b in zip(delta, gamma)) in system
                )
        reachable.append(lines)
    must_vanish = [[k for k in forbidden if k not in reachable[i]] for i in range(len(factors) + 1)]
    sparse = [table.sparse(gamma) for gamma in factors]

    def inert(coeffs, i):
        return not any(coeffs[source] for entries in sparse[i:] for source, _, _, _ in entries)

    def count(i, coeffs):
        if any(coeffs[k] for k in must_vanish[i]):
            return 0
        if i == len(factors):
            return 1
        if inert(coeffs, i):
            return 0 if any(coeffs[k] for k in forbidden) else q ** (len(factors) - i)
        return sum(
            count(i + 1, table.apply(factors[i], t, coeffs, f)) for t in f.elements()
        )

    return count(0, x.coeffs)


def fiber_point_count(x, degree=None):
    """
    Number of F_q-points of the exotic Springer fiber of x, summed over the Bruhat cells
    U_w w B/B: u in U_w contributes when u x is supported on the lines of w(B).

    """

    if degree is not None and degree != x.field.degree:
        x = x.lift(galois_field(degree))
    if x.field.degree > settings.HECKE_MAX_FIELD_DEGREE:
        raise FieldBoundError(f"GF({x.field.order}) exceeds the enumeration bound")
    if any(isinstance(line, str) for line in x.support):
        raise ClassificationError(f"{x} has a component on a zero weight line")
    w0, system = positive_system(x.root_support)
    table = lie_action_table()
    total = 0
    for w in _datum().weyl_group:
        allowed = frozenset(w.act(gamma) for gamma in system)
        total += _count_cell(x, _cell_factors(w0, w, system), allowed, system, table)
    logger.debug(f"*** Fiber of {x} has {total} points over GF({x.field.order})")
    return total


def decode_point_count(count, q):
    """
    Base q digits of a fiber point count, constant term first. A fiber is closed in G/B, so
    its count is bounded by that of G/B; counts past the bound are rejected, not decoded.

    """

    poincare = _datum().poincare_polynomial()
    if count < 0 or count > sum(c * q ** i for i, c in enumerate(poincare)):
        raise ClassificationError(f"{count} points do not fit in G/B over GF({q})")
    coefficients = []
    while count:
        count, digit = divmod(count, q)
        coefficients.append(digit)
    if len(coefficients) > len(poincare):
        raise ClassificationError(f"Point count over GF({q}) has degree above dim G/B")
    return tuple(coefficients)


def fiber_polynomial(x):
    """
    Coefficients (constant term first) of the point count as a polynomial in q, read off
    from the count over GF(9) or larger and checked against GF(3) for prime field vectors.

    """

    if x.field.order < 9:
        x = x.lift(galois_field(2))
    coefficients = decode_point_count(fiber_point_count(x), x.field.order)
    if all(c < x.field.p for c in x.coeffs):
        small = fiber_point_count(x.lift(galois_field(1)))
        if small != sum(c * 3 ** i for i, c in enumerate(coefficients)):
            raise ClassificationError(f"Fiber point counts of {x} are not polynomial in q")
    return tuple(coefficients)


def stabilizer_dim(x):
    """
    dim G_x = dim G - dim(G x^B V^-) + 2 dim B_x, the exotic Springer map being semismall with
    every orbit relevant; dim B_x is the degree of the point count polynomial.

    """

    # dim G x^B V^- = dim G - dim B + dim V^- = 12
    resolution_dim = GROUP_DIMENSION - BOREL_DIMENSION + len(NEGATIVE_ROOTS)
    fiber_dim = len(fiber_polynomial(x)) - 1
    return GROUP_DIMENSION - resolution_dim + 2 * fiber_dim


@dataclass
class BStabilizer:
    representative: str
    unipotent_dim: int
    free: list
    forced: list
    is_product: bool
    torus_rank: int
    component_order: int
    component_points: list
    published_factors: list = field(default_factory=list)

    @property
    def component_lift_found(self):
        return list(COMPONENT_LIFT) in self.component_points

    @property
    def discrepancy(self):
        if not self.published_factors:
            return {}
        return {
            "missing_from_published": sorted(set(self.free) - set(self.published_factors)),
            "not_computed": sorted(set(self.published_factors) - set(self.free)),
        }

    def to_json(self):
        return {
            "representative": self.representative,
            "unipotent_dim": self.unipotent_dim,
            "free": self.free,
            "forced": self.forced,
            "is_product": self.is_product,
            "torus_rank": self.torus_rank,
            "component_order": self.component_order,
            "component_points": self.component_points,
            "component_lift_found": self.component_lift_found,
            "published_factors": self.published_factors,
            "discrepancy": self.discrepancy,
        }


def _signed(f, c):
    return -1 if c == f.neg(1) else c


def b_stabilizer_solve(x):
    """
    Solves u x = x over GF(3) for u a product of the six root group elements of B, and
    T_x = {t : gamma(t) = 1 for gamma in supp(x)} over GF(9).

    """

    if not x.is_negative:
        raise ClassificationError(f"{x} is not supported on the lines of B")
    prime = galois_field(1)
    x = x.lift(prime) if x.field != prime else x
    order = sorted(NEGATIVE_ROOTS, key=lambda gamma: (height(gamma), gamma))
    solutions = []
    for values in itertools.product(prime.elements(), repeat=len(order)):
        v = x
        for gamma, t in zip(order, values):
            v = act_root_group(gamma, t, v)
        if v == x:
            solutions.append(values)
    projections = [{s[k] for s in solutions} for k in range(len(order))]
    free = [ROOT_LABELS[g] for g, p in zip(order, projections) if len(p) == prime.order]
    forced = [ROOT_LABELS[g] for g, p in zip(order, projections) if p == {0}]
    size = 1
    for p in projections:
        size *= len(p)
    unipotent_dim = 0
    while prime.order ** (unipotent_dim + 1) <= len(solutions):
        unipotent_dim += 1

    rows = [list(gamma) for gamma in x.root_support]
    factors = (
        [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ) if d != 0] if rows else []
    )
    component_order = 1
    for d in factors:
        component_order *= d
    ext = galois_field(2)
    points = []
    if len(factors) == 2:
        for a, b in itertools.product(ext.nonzero(), repeat=2):
            if all(ext.mul(ext.power(a, g[0]), ext.power(b, g[1])) == 1 for g in x.root_support):
                points.append([_signed(ext, a), _signed(ext, b)])
    published = []
    if set(x.support) == {parse_line(label) for label in PUBLISHED_STABILIZER_REPRESENTATIVE}:
        published = list(PUBLISHED_STABILIZER_FACTORS)
    result = BStabilizer(
        str(x),
        unipotent_dim,
        free,
        forced,
        size == len(solutions),
        2 - len(factors),
        component_order,
        sorted(points),
        published,
    )
    logger.debug(f"*** B-stabilizer of {x}: {result.to_json()}")
    return result


@dataclass
class SignatureClass:
    signature: tuple
    representative: G2Vector
    orbit_count: int = 1
    point_count: int = 1

    @property
    def stabilizer_dim(self):
        return self.signature[1]

    def to_json(self):
        short, long = self.signature[0]
        return {
            "representative": str(self.representative),
            "coefficients": self.representative.to_json(),
            "summands": {"short": short, "long": long},
            "stabilizer_dim": self.signature[1],
            "fiber_polynomial": list(self.signature[2]),
            "orbit_count": self.orbit_count,
            "point_count": self.point_count,
        }


def signature(x):
    # stabilizer_dim is a function of the fiber polynomial; it is kept for ordering and reports
    return (x.summand_pattern(), stabilizer_dim(x), fiber_polynomial(x))


def _group_by_signature(orbits):
    classes = {}
    for representative, size in orbits:
        key = signature(representative)
        if key in classes:
            record = classes[key]
            record.orbit_count += 1
            record.point_count += size
            if representative.sort_key() < record.representative.sort_key():
                record.representative = representative
        else:
            classes[key] = SignatureClass(key, representative, 1, size)
    return sorted(classes.values(), key=lambda c: (-c.stabilizer_dim, c.representative.sort_key()))


def _centralizer_orbits(field, lines, roots):
    table = lie_action_table()
    g = field.generator
    positions = [LINE_INDEX[line] for line in lines]
    seen = set()
    orbits = []
    for values in itertools.product(field.elements(), repeat=len(positions)):
        coeffs = [0] * len(LINES)
        for k, c in zip(positions, values):
            coeffs[k] = c
        start = tuple(coeffs)
        if start in seen:
            continue
        seen.add(start)
        orbit, queue = [start], deque([start])
        while queue:
            current = G2Vector(field, queue.popleft())
            images = [act_torus(g, 1, current).coeffs, act_torus(1, g, current).coeffs]
            images += [
                table.apply(gamma, t, current.coeffs, field)
                for gamma in roots
                for t in field.additive_basis()
            ]
            for image in images:
                if image not in seen:
                    seen.add(image)
                    orbit.append(image)
                    queue.append(image)
        representative = min((G2Vector(field, c) for c in orbit), key=G2Vector.sort_key)
        orbits.append((representative, len(orbit)))
    return orbits


def _is_trivial(a):
    return all(value.is_one for value in a.s_values + a.t_values)


def fixed_space_classify(a, degree=None, datum=None):
    """
    Signature classes of the F_q-points of the nilpotent fixed space V^a under the centralizer
    of a. The trivial character uses the orbit table representatives.

    """

    datum = datum or _datum()
    degree = degree or settings.HECKE_FIELD_DEGREE
    field = galois_field(degree)
    representation = RootedRepresentation.from_parameters(ParameterFunction.default(datum))
    evidence = finiteness_evidence(datum, representation, a)
    if evidence.verdict == VERDICT_INFINITE:
        raise InfiniteOrbitsError(f"{a.name or 'Character'} has infinitely many orbits")
    logger.info(f"*** Classifying fixed points of {a.name or 'character'} over GF({field.order})")
    if _is_trivial(a):
        orbits = [(record.representative.lift(field), 1) for record in orbit_table()]
        return _group_by_signature(orbits)
    support = fixed_support(a, representation, datum)
    lines = sorted(weight for weight, _ in support)
    if any(not any(line) for line in lines):
        raise ClassificationError("Fixed space meets the zero weight lines")
    if len(lines) > settings.HECKE_MAX_FIXED_SPACE_DIM:
        raise ClassificationError(
            f"Fixed space of dimension {len(lines)} exceeds the enumeration bound"
        )
    positive_system(lines)
    orbits = _centralizer_orbits(field, lines, centralizer_roots(datum, a))
    logger.debug(f"*** {len(orbits)} orbits over GF({field.order})")
    return _group_by_signature(orbits)


def classification_is_stable(a, degree=None):
    degree = degree or settings.HECKE_FIELD_DEGREE
    signatures = [
        {c.signature for c in fixed_space_classify(a, k)} for k in (degree, degree + 1)
    ]
    return signatures[0] == signatures[1]
