"""
Integral Chevalley basis of G2 and its action on V = g_s + g/g_s in characteristic 3.

G2 is realized as the fixed points of triality on D4. The D4 basis follows the
bimultiplicative sign cocycle construction, so all structure constants are integers and the
orbit sums Y_gamma of D4 root vectors form a Chevalley basis of G2 up to sign.

"""

import itertools
import logging
from functools import lru_cache
from math import factorial

from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from . import settings
from .constants import (
    CHARACTERISTIC,
    CHEVALLEY_FORMULAS,
    NEGATIVE_ROOTS,
    ZERO_LINE_LONG,
    ZERO_LINE_SHORT,
)
from .exceptions import ChevalleyBasisError


logger = logging.getLogger(settings.HECKE_LOGGER_NAME)

D4_CARTAN = (
    (2, -1, -1, -1),
    (-1, 2, 0, 0),
    (-1, 0, 2, 0),
    (-1, 0, 0, 2),
)

# Cartan elements of the G2 basis in D4 simple coroot coordinates
H_SHORT = (0, 1, 1, 1)
H_LONG = (1, 0, 0, 0)

MAX_EXPONENT = 3


def _form(c, d):
    return sum(c[i] * D4_CARTAN[i][j] * d[j] for i in range(4) for j in range(4))


def _cocycle(c, d):
    exponent = sum(a * b for a, b in zip(c, d))
    exponent += sum(
        c[i] * d[j] for i in range(4) for j in range(i + 1, 4) if D4_CARTAN[i][j] == -1
    )
    return -1 if exponent % 2 else 1


@lru_cache(maxsize=None)
def d4_roots():
    simple = [tuple(int(i == j) for j in range(4)) for i in range(4)]
    positive, frontier = set(simple), list(simple)
    while frontier:
        successors = []
        for root in frontier:
            for s in simple:
                if _form(root, s) == -1:
                    candidate = tuple(a + b for a, b in zip(root, s))
                    if candidate not in positive:
                        positive.add(candidate)
                        successors.append(candidate)
        frontier = successors
    positive = sorted(positive, key=lambda r: (sum(r), r))
    return tuple(positive) + tuple(tuple(-a for a in r) for r in positive)


def fold(root):
    """The G2 root, in (alpha, beta) coordinates, that a D4 root restricts to."""

    return (root[1] + root[2] + root[3], root[0])


def g2_roots():
    return tuple(NEGATIVE_ROOTS) + tuple(tuple(-a for a in r) for r in NEGATIVE_ROOTS)


def is_short(root):
    return len([r for r in d4_roots() if fold(r) == tuple(root)]) == 3


class D4Algebra:
    """Elements are dicts keyed by ("X", root) and ("H", i)."""

    def __init__(self):
        self.roots = set(d4_roots())

    def bracket_basis(self, a, b):
        (kind_a, x), (kind_b, y) = a, b
        if kind_a == "H" and kind_b == "H":
            return {}
        if kind_a == "H":
            h = tuple(int(i == x) for i in range(4))
            value = _form(h, y)
            return {b: value} if value else {}
        if kind_b == "H":
            return {key: -c for key, c in self.bracket_basis(b, a).items()}
        total = tuple(p + q for p, q in zip(x, y))
        if not any(total):
            return {("H", i): -c for i, c in enumerate(x) if c}
        if total in self.roots:
            return {("X", total): _cocycle(x, y)}
        return {}

    def bracket(self, u, v):
        result = {}
        for a, ca in u.items():
            for b, cb in v.items():
                for key, c in self.bracket_basis(a, b).items():
                    result[key] = result.get(key, 0) + ca * cb * c
        return {key: c for key, c in result.items() if c}


class G2ChevalleyBasis:
    """
    Basis of g: the twelve root vectors in the order of ``g2_roots`` followed by H_short and
    H_long.

    """

    def __init__(self):
        self.d4 = D4Algebra()
        self.roots = g2_roots()
        self.labels = list(self.roots) + [ZERO_LINE_SHORT, ZERO_LINE_LONG]
        self.index = {label: k for k, label in enumerate(self.labels)}
        self.preimages = {
            root: [r for r in d4_roots() if fold(r) == root] for root in self.roots
        }
        self.vectors = [
            {("X", r): 1 for r in self.preimages[root]} for root in self.roots
        ] + [
            {("H", i): c for i, c in enumerate(H_SHORT) if c},
            {("H", i): c for i, c in enumerate(H_LONG) if c},
        ]
        self.short_indices = [
            k for k, root in enumerate(self.roots) if len(self.preimages[root]) == 3
        ] + [self.index[ZERO_LINE_SHORT]]
        self.long_indices = [
            k for k in range(len(self.labels)) if k not in self.short_indices
        ]

    @property
    def dimension(self):
        return len(self.labels)

    def coordinates(self, element):
        coords = [0] * self.dimension
        for k, root in enumerate(self.roots):
            values = {element.get(("X", r), 0) for r in self.preimages[root]}
            if len(values) != 1:
                raise ChevalleyBasisError(f"Bracket is not triality invariant at {root}")
            coords[k] = values.pop()
        h = [element.get(("H", i), 0) for i in range(4)]
        if not h[1] == h[2] == h[3]:
            raise ChevalleyBasisError("Cartan part is not triality invariant")
        coords[self.index[ZERO_LINE_SHORT]] = h[1]
        coords[self.index[ZERO_LINE_LONG]] = h[0]
        return coords

    def ad(self, k):
        """Integer matrix of ad(basis[k]) as a list of rows."""

        columns = [
            self.coordinates(self.d4.bracket(self.vectors[k], self.vectors[j]))
            for j in range(self.dimension)
        ]
        return [[columns[c][r] for c in range(self.dimension)] for r in range(self.dimension)]


def _matmul(a, b):
    n = len(a)
    return [[sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)] for r in range(n)]


def divided_powers(matrix, top=MAX_EXPONENT):
    """ad^n / n! for n = 1 .. top, which are integral on the Chevalley lattice."""

    result, power = [], matrix
    for n in range(1, top + 1):
        divided = []
        for row in power:
            if any(a % factorial(n) for a in row):
                raise ChevalleyBasisError(f"ad^{n} is not divisible by {n}!")
            divided.append([a // factorial(n) for a in row])
        result.append(divided)
        power = _matmul(power, matrix)
    if any(any(row) for row in power):
        raise ChevalleyBasisError(f"ad is not nilpotent of order {top + 1}")
    return result


def short_ideal(basis, p=CHARACTERISTIC):
    """Indices spanning the smallest ad-stable subspace mod p containing the short root vectors."""

    field = GF(p)
    generators = [basis.ad(k) for k in range(basis.dimension)]
    span = [
        [int(j == k) for j in range(basis.dimension)]
        for k, root in enumerate(basis.roots)
        if len(basis.preimages[root]) == 3
    ]

    def rank(rows):
        matrix = DomainMatrix(
            [[field(a % p) for a in row] for row in rows], (len(rows), basis.dimension), field
        )
        return matrix.rank()

    current = rank(span)
    queue = list(span)
    while queue:
        vector = queue.pop()
        for ad in generators:
            image = [sum(row[c] * vector[c] for c in range(basis.dimension)) for row in ad]
            if not any(a % p for a in image):
                continue
            extended = rank(span + [image])
            if extended > current:
                span.append(image)
                queue.append(image)
                current = extended
    expected = [[int(j == k) for j in range(basis.dimension)] for k in basis.short_indices]
    if current != len(basis.short_indices) or rank(span + expected) != current:
        raise ChevalleyBasisError(
            f"Short root ideal has dimension {current}, expected {len(basis.short_indices)}"
        )
    return list(basis.short_indices)


class LieActionTable:
    """
    Divided powers of the root vectors and the Cartan matrices acting on V, over Z, with
    entries only meaningful modulo 3. ``signs`` rescales the root vector of +-gamma by
    signs[gamma].

    """

    def __init__(self, basis, powers, cartan, signs=None):
        self.basis = basis
        self.labels = basis.labels
        self.index = basis.index
        self.powers = powers
        self.cartan = cartan
        self.signs = dict(signs or {root: 1 for root in NEGATIVE_ROOTS})

    def sign_of_line(self, label):
        if label in (ZERO_LINE_SHORT, ZERO_LINE_LONG):
            return 1
        root = label if label in self.signs else tuple(-a for a in label)
        return self.signs[root]

    def sign_of_root(self, root):
        return self.sign_of_line(tuple(root))

    def entry(self, root, n, target, source):
        """Coefficient of v_target in E_n(root) v_source, reduced mod 3 to {-1, 0, 1}."""

        matrix = self.powers[tuple(root)][n - 1]
        value = matrix[self.index[target]][self.index[source]]
        value *= self.sign_of_root(root) ** n
        value *= self.sign_of_line(target) * self.sign_of_line(source)
        value %= CHARACTERISTIC
        return value - CHARACTERISTIC if value > CHARACTERISTIC // 2 else value

    @lru_cache(maxsize=None)
    def sparse(self, root):
        """(source, target, n, coefficient) with non-zero coefficient mod 3."""

        root = tuple(root)
        entries = []
        for n in range(1, MAX_EXPONENT + 1):
            for source in self.labels:
                for target in self.labels:
                    value = self.entry(root, n, target, source)
                    if value and source != target:
                        entries.append(
                            (self.index[source], self.index[target], n, value % CHARACTERISTIC)
                        )
        return tuple(entries)

    def tangent_matrices(self):
        """ad of the fourteen basis elements of g on V, reduced mod 3, as lists of rows."""

        matrices = []
        for root in self.basis.roots:
            sign = self.sign_of_root(root)
            matrix = self.powers[root][0]
            matrices.append(
                [
                    [
                        (
                            sign
                            * self.sign_of_line(self.labels[r])
                            * self.sign_of_line(self.labels[c])
                            * matrix[r][c]
                        )
                        % CHARACTERISTIC
                        for c in range(len(self.labels))
                    ]
                    for r in range(len(self.labels))
                ]
            )
        for matrix in self.cartan:
            matrices.append([[a % CHARACTERISTIC for a in row] for row in matrix])
        return matrices

    def apply(self, root, t, coeffs, field):
        """x_root(t) applied to a coefficient tuple over ``field``."""

        if t == 0:
            return tuple(coeffs)
        result = list(coeffs)
        powers = {n: field.power(t, n) for n in range(1, MAX_EXPONENT + 1)}
        for source, target, n, value in self.sparse(tuple(root)):
            c = coeffs[source]
            if c:
                term = field.mul(field.mul(c, powers[n]), field.from_int(value))
                result[target] = field.add(result[target], term)
        return tuple(result)

    def formula_matches(self):
        """Whether the root groups of B act on the V^- lines exactly as the printed table says."""

        expected = {(g, s): (e, c, t) for g, s, e, c, t in CHEVALLEY_FORMULAS}
        for gamma in NEGATIVE_ROOTS:
            for source in NEGATIVE_ROOTS:
                formula = expected.get((gamma, source))
                for n in range(1, MAX_EXPONENT + 1):
                    for target in NEGATIVE_ROOTS:
                        value = self.entry(gamma, n, target, source)
                        wanted = 0
                        if formula and formula[0] == n and formula[2] == target:
                            wanted = formula[1]
                        if value != wanted:
                            return False
        return True

    def with_signs(self, signs):
        return LieActionTable(self.basis, self.powers, self.cartan, signs)


def _restrict_to_v(basis, matrix):
    blocks = (set(basis.short_indices), set(basis.long_indices))
    return [
        [
            matrix[r][c] if any(r in block and c in block for block in blocks) else 0
            for c in range(basis.dimension)
        ]
        for r in range(basis.dimension)
    ]


def align_signs(table):
    """
    Searches the sign changes X_gamma -> -X_gamma of the root vectors of B under which the
    divided powers reproduce the printed formula table. Falls back to the unchanged basis.

    """

    for choice in itertools.product((1, -1), repeat=len(NEGATIVE_ROOTS)):
        candidate = table.with_signs(dict(zip(NEGATIVE_ROOTS, choice)))
        if candidate.formula_matches():
            logger.debug(f"*** Chevalley signs aligned with {candidate.signs}")
            return candidate
    logger.warning("*** No sign change of the Chevalley basis matches the formula table")
    return table


@lru_cache(maxsize=None)
def lie_action_table(aligned=True):
    logger.info("*** Building the G2 Chevalley basis action on g_s + g/g_s")
    basis = G2ChevalleyBasis()
    short_ideal(basis)
    powers = {}
    for k, root in enumerate(basis.roots):
        ad = basis.ad(k)
        # divided powers are taken on g and then cut down to the two blocks of V
        powers[root] = [_restrict_to_v(basis, m) for m in divided_powers(ad)]
    cartan = [
        _restrict_to_v(basis, basis.ad(basis.index[label]))
        for label in (ZERO_LINE_SHORT, ZERO_LINE_LONG)
    ]
    table = LieActionTable(basis, powers, cartan)
    return align_signs(table) if aligned else table
