import json
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from sympy import Matrix

from . import settings
from .constants import (
    LENGTH_LONG,
    LENGTH_SHORT,
    ROOT_DATUM_A1,
    ROOT_DATUM_A2,
    ROOT_DATUM_G2,
)
from .exceptions import RootDatumError


logger = logging.getLogger(settings.HECKE_LOGGER_NAME)

# m(i, j) of the braid relation, indexed by a_ij * a_ji
BRAID_ORDERS = {0: 2, 1: 3, 2: 4, 3: 6}

MAX_ROOTS = 480
MAX_WEYL_ORDER = 100000

PRESETS = {
    ROOT_DATUM_G2: {
        "weights": ("alpha", "beta"),
        "simple_roots": ((1, 0), (0, 1)),
        "cartan": ((2, -1), (-3, 2)),
        "lengths": {0: LENGTH_SHORT, 1: LENGTH_LONG},
    },
    ROOT_DATUM_A1: {
        "weights": ("omega",),
        "simple_roots": ((2,),),
        "cartan": ((2,),),
    },
    ROOT_DATUM_A2: {
        "weights": ("omega1", "omega2"),
        "simple_roots": ((2, -1), (-1, 2)),
        "cartan": ((2, -1), (-1, 2)),
    },
}


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u):
    return tuple(c * a for a in u)


def neg(u):
    return tuple(-a for a in u)


def matmul(m1, m2):
    columns = list(zip(*m2))
    return tuple(tuple(dot(row, col) for col in columns) for row in m1)


def identity_matrix(rank):
    return tuple(tuple(int(r == c) for c in range(rank)) for r in range(rank))


def reflection_matrix(root, coroot):
    rank = len(root)
    return tuple(
        tuple(int(r == c) - root[r] * coroot[c] for c in range(rank))
        for r in range(rank)
    )


@dataclass(frozen=True)
class WeylElement:
    word: tuple = field(compare=False)
    matrix: tuple

    @property
    def length(self):
        return len(self.word)

    def act(self, weight):
        return tuple(dot(row, weight) for row in self.matrix)

    def __str__(self):
        return ",".join(str(i + 1) for i in self.word)


@dataclass(eq=False)
class RootDatum:
    """
    A reduced crystallographic root datum with X* = Z^r.

    Simple roots are given in X* coordinates and ``cartan[i][j]`` is the pairing of the
    i-th simple root with the j-th simple coroot. Roots, coroots, lengths and the Weyl
    group are generated from that data.

    """

    name: str
    weight_names: tuple
    simple_root_vectors: tuple
    cartan: tuple
    simple_lengths: dict = None

    def __post_init__(self):
        self.simple_root_vectors = tuple(tuple(v) for v in self.simple_root_vectors)
        self.cartan = tuple(tuple(row) for row in self.cartan)
        self.weight_names = tuple(self.weight_names)
        self._check_cartan()
        self.simple_coroot_vectors = self._solve_simple_coroots()
        self._build_roots()

    @property
    def rank(self):
        return len(self.weight_names)

    @property
    def semisimple_rank(self):
        return len(self.simple_root_vectors)

    def _check_cartan(self):
        n = len(self.simple_root_vectors)
        if n == 0:
            raise RootDatumError("A root datum needs at least one simple root")
        if len(self.cartan) != n or any(len(row) != n for row in self.cartan):
            raise RootDatumError(f"Cartan matrix of {self.name} must be {n}x{n}")
        if any(len(v) != self.rank for v in self.simple_root_vectors):
            raise RootDatumError(f"Simple roots of {self.name} must lie in Z^{self.rank}")
        for i in range(n):
            for j in range(n):
                a_ij, a_ji = self.cartan[i][j], self.cartan[j][i]
                if not isinstance(a_ij, int):
                    raise RootDatumError("Cartan entries must be integers")
                if i == j:
                    if a_ij != 2:
                        raise RootDatumError("Cartan diagonal entries must be 2")
                    continue
                if a_ij > 0 or (a_ij == 0) != (a_ji == 0):
                    raise RootDatumError(
                        f"Cartan matrix of {self.name} is not a generalized Cartan matrix"
                    )
                if a_ij * a_ji not in BRAID_ORDERS:
                    raise RootDatumError(
                        f"Entries ({i}, {j}) of the Cartan matrix are not crystallographic"
                    )

    def _solve_simple_coroots(self):
        if self.semisimple_rank != self.rank:
            raise RootDatumError("Only semisimple root data are supported")
        simple = Matrix(self.simple_root_vectors)
        if simple.det() == 0:
            raise RootDatumError(f"Simple roots of {self.name} are linearly dependent")
        coroots = []
        for j in range(self.semisimple_rank):
            column = Matrix([self.cartan[i][j] for i in range(self.semisimple_rank)])
            solution = simple.LUsolve(column)
            if not all(entry.is_integer for entry in solution):
                raise RootDatumError(
                    f"Simple coroot {j} of {self.name} does not lie in the cocharacter lattice"
                )
            coroots.append(tuple(int(entry) for entry in solution))
        return tuple(coroots)

    def _simple_length_classes(self):
        n = self.semisimple_rank
        squared = [None] * n
        for start in range(n):
            if squared[start] is not None:
                continue
            squared[start] = Fraction(1)
            component, queue = [start], deque([start])
            while queue:
                i = queue.popleft()
                for j in range(n):
                    if j != i and self.cartan[i][j] and squared[j] is None:
                        squared[j] = squared[i] * Fraction(self.cartan[j][i], self.cartan[i][j])
                        component.append(j)
                        queue.append(j)
            smallest = min(squared[i] for i in component)
            for i in component:
                squared[i] = squared[i] / smallest
        two_lengths = len(set(squared)) > 1
        classes = {}
        for i in range(n):
            short = two_lengths and squared[i] == 1
            classes[i] = LENGTH_SHORT if short else LENGTH_LONG
        if self.simple_lengths:
            given = {int(k): v for k, v in self.simple_lengths.items()}
            if given != classes:
                raise RootDatumError(
                    f"Declared root lengths {given} do not match the Cartan matrix"
                )
        return classes

    def _build_roots(self):
        simple_lengths = self._simple_length_classes()
        n = self.semisimple_rank
        roots = list(self.simple_root_vectors)
        coroots = list(self.simple_coroot_vectors)
        coordinates = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        lengths = [simple_lengths[i] for i in range(n)]
        index = {root: k for k, root in enumerate(roots)}
        queue = deque(range(n))
        while queue:
            k = queue.popleft()
            root, coroot = roots[k], coroots[k]
            for i in range(n):
                alpha, alpha_vee = self.simple_root_vectors[i], self.simple_coroot_vectors[i]
                pairing = dot(root, alpha_vee)
                image = sub(root, scale(pairing, alpha))
                if image in index:
                    continue
                if len(roots) >= MAX_ROOTS:
                    raise RootDatumError(f"Root system of {self.name} is not finite")
                index[image] = len(roots)
                roots.append(image)
                coroots.append(sub(coroot, scale(dot(alpha, coroot), alpha_vee)))
                coords = list(coordinates[k])
                coords[i] -= pairing
                coordinates.append(tuple(coords))
                lengths.append(lengths[k])
                queue.append(index[image])

        self.roots = tuple(roots)
        self.coroots = tuple(coroots)
        self.root_coordinates = tuple(coordinates)
        self.simple_roots = tuple(range(n))
        self.positive_roots = tuple(
            k for k, coords in enumerate(coordinates) if all(c >= 0 for c in coords)
        )
        self.lengths = {root: length for root, length in zip(roots, lengths)}
        self._root_index = index
        self._positive_set = frozenset(roots[k] for k in self.positive_roots)

        for root, coroot in zip(self.roots, self.coroots):
            if dot(root, coroot) != 2:
                raise RootDatumError(f"Pairing of {root} with its coroot is not 2")
            if neg(root) not in index:
                raise RootDatumError(f"Root {root} has no negative in {self.name}")
        logger.debug(f"*** Root datum {self.name}: {len(roots)} roots")

    def root_index(self, root):
        if isinstance(root, int):
            if not 0 <= root < len(self.roots):
                raise RootDatumError(f"Unknown root index {root}")
            return root
        try:
            return self._root_index[tuple(root)]
        except KeyError:
            raise RootDatumError(f"{tuple(root)} is not a root of {self.name}")

    def root(self, root):
        return self.roots[self.root_index(root)]

    def coroot(self, root):
        return self.coroots[self.root_index(root)]

    def is_root(self, vector):
        return tuple(vector) in self._root_index

    def is_positive(self, root):
        return tuple(root) in self._positive_set

    def height(self, root):
        return sum(self.root_coordinates[self.root_index(root)])

    def pairing(self, weight, root):
        return dot(weight, self.coroot(root))

    def reflect(self, root, weight):
        k = self.root_index(root)
        return sub(tuple(weight), scale(dot(weight, self.coroots[k]), self.roots[k]))

    def simple_reflect(self, i, weight):
        return self.reflect(self.simple_roots[i], weight)

    @cached_property
    def simple_reflection_matrices(self):
        return tuple(
            reflection_matrix(self.simple_root_vectors[i], self.simple_coroot_vectors[i])
            for i in range(self.semisimple_rank)
        )

    def braid_order(self, i, j):
        return BRAID_ORDERS[self.cartan[i][j] * self.cartan[j][i]]

    @cached_property
    def weyl_group(self):
        identity = WeylElement((), identity_matrix(self.rank))
        elements = [identity]
        seen = {identity.matrix}
        frontier = [identity]
        while frontier:
            successors = []
            for w in frontier:
                for i, reflection in enumerate(self.simple_reflection_matrices):
                    matrix = matmul(w.matrix, reflection)
                    if matrix in seen:
                        continue
                    seen.add(matrix)
                    successors.append(WeylElement(w.word + (i,), matrix))
            elements.extend(successors)
            if len(elements) > MAX_WEYL_ORDER:
                raise RootDatumError(f"Weyl group of {self.name} is too large")
            frontier = successors
        logger.debug(f"*** Weyl group of {self.name} has {len(elements)} elements")
        return tuple(elements)

    @cached_property
    def _weyl_by_matrix(self):
        return {w.matrix: w for w in self.weyl_group}

    @cached_property
    def weyl_index(self):
        return {w: k for k, w in enumerate(self.weyl_group)}

    @property
    def identity(self):
        return self.weyl_group[0]

    @property
    def longest_element(self):
        return self.weyl_group[-1]

    def lookup(self, matrix):
        return self._weyl_by_matrix[matrix]

    def element(self, word):
        matrix = identity_matrix(self.rank)
        for i in word:
            matrix = matmul(matrix, self.simple_reflection_matrices[i])
        return self.lookup(matrix)

    def multiply(self, w, v):
        return self.lookup(matmul(w.matrix, v.matrix))

    def times_simple(self, w, i):
        return self.lookup(matmul(w.matrix, self.simple_reflection_matrices[i]))

    def inverse(self, w):
        return self.element(reversed(w.word))

    def is_right_ascent(self, w, i):
        """l(w s_i) > l(w), equivalently w sends the i-th simple root to a positive root."""

        return self.is_positive(w.act(self.simple_root_vectors[i]))

    def inversion_count(self, w):
        return sum(1 for k in self.positive_roots if not self.is_positive(w.act(self.roots[k])))

    def weyl_orbit(self, weight):
        weight = tuple(weight)
        orbit, queue = {weight}, deque([weight])
        while queue:
            current = queue.popleft()
            for i in range(self.semisimple_rank):
                image = self.simple_reflect(i, current)
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        return frozenset(orbit)

    def is_dominant(self, weight):
        return all(dot(weight, coroot) >= 0 for coroot in self.simple_coroot_vectors)

    def dominant_representative(self, weight):
        for image in sorted(self.weyl_orbit(weight)):
            if self.is_dominant(image):
                return image
        raise RootDatumError(f"No dominant weight in the orbit of {weight}")

    def poincare_polynomial(self):
        coefficients = [0] * (self.longest_element.length + 1)
        for w in self.weyl_group:
            coefficients[w.length] += 1
        return tuple(coefficients)

    def subsystem_type(self, roots):
        return subsystem_type(self, roots)

    def to_json(self):
        return {
            "name": self.name,
            "rank": self.rank,
            "weights": list(self.weight_names),
            "simple_roots": [list(v) for v in self.simple_root_vectors],
            "cartan": [list(row) for row in self.cartan],
            "lengths": {
                str(i): self.lengths[self.simple_root_vectors[i]]
                for i in self.simple_roots
            },
        }


def _component_type(datum, simple, cartan, component):
    k = len(component)
    products = {
        (i, j): cartan[i][j] * cartan[j][i] for i in component for j in component if i < j
    }
    edges = {pair: value for pair, value in products.items() if value}
    degree = {i: sum(1 for pair in edges if i in pair) for i in component}
    is_path = len(edges) == k - 1 and max(degree.values(), default=0) <= 2
    if k == 1:
        return "A1"
    if all(value == 1 for value in edges.values()):
        if is_path:
            return f"A{k}"
        branch = next(i for i in component if degree[i] == 3)
        arms = []
        for start in (j for pair in edges for j in pair if branch in pair and j != branch):
            length, previous, current = 1, branch, start
            while True:
                onward = [
                    j for pair in edges for j in pair
                    if current in pair and j not in (current, previous)
                ]
                if not onward:
                    break
                previous, current = current, onward[0]
                length += 1
            arms.append(length)
        return f"D{k}" if sorted(arms)[:2] == [1, 1] else f"E{k}"
    if k == 2:
        return "G2" if 3 in edges.values() else "B2"
    double = next(pair for pair, value in edges.items() if value == 2)
    if all(degree[i] == 2 for i in double):
        return f"F{k}"
    end = next(i for i in double if degree[i] == 1)
    return f"B{k}" if datum.lengths[simple[end]] == LENGTH_SHORT else f"C{k}"


def subsystem_type(datum, roots):
    """
    Cartan type of a closed root subsystem, e.g. "A1xA1", "G2", or "" for the empty one.

    """

    roots = {tuple(r) for r in roots}
    positive = sorted(r for r in roots if datum.is_positive(r))
    sums = {add(a, b) for a in positive for b in positive}
    simple = [r for r in positive if r not in sums]
    n = len(simple)
    cartan = [[datum.pairing(simple[i], simple[j]) for j in range(n)] for i in range(n)]
    seen, names = set(), []
    for start in range(n):
        if start in seen:
            continue
        component, queue = [], deque([start])
        seen.add(start)
        while queue:
            i = queue.popleft()
            component.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j]:
                    seen.add(j)
                    queue.append(j)
        names.append(_component_type(datum, simple, cartan, sorted(component)))
    return "x".join(sorted(names))


def is_type_a(type_name):
    return all(part.startswith("A") for part in type_name.split("x") if part)


def enumerate_weyl(datum):
    return list(datum.weyl_group)


def weyl_orbit(datum, weight):
    return datum.weyl_orbit(weight)


def reflect(datum, root, weight):
    return datum.reflect(root, weight)


@lru_cache(maxsize=None)
def preset(name):
    try:
        data = PRESETS[name]
    except KeyError:
        raise RootDatumError(f"Unknown root datum preset {name!r}")
    logger.info(f"*** Loading root datum preset {name}")
    return RootDatum(
        name, data["weights"], data["simple_roots"], data["cartan"], data.get("lengths")
    )


def from_json(data):
    try:
        simple_roots = data["simple_roots"]
        cartan = data["cartan"]
    except KeyError as e:
        raise RootDatumError(f"Root datum description is missing {e}")
    rank = data.get("rank", len(simple_roots[0]) if simple_roots else 0)
    names = data.get("weights") or [f"e{i + 1}" for i in range(rank)]
    if len(names) != rank:
        raise RootDatumError("Number of weight names does not match the rank")
    return RootDatum(data.get("name", "custom"), names, simple_roots, cartan, data.get("lengths"))


def load_root_datum(source):
    """Accepts a preset name, a path to a JSON description, or an already parsed dict."""

    if isinstance(source, RootDatum):
        return source
    if isinstance(source, dict):
        return from_json(source)
    if source in PRESETS:
        return preset(source)
    try:
        with open(source) as f:
            return from_json(json.load(f))
    except OSError:
        raise RootDatumError(f"{source!r} is neither a preset nor a readable file")
    except json.JSONDecodeError as e:
        raise RootDatumError(f"Invalid root datum JSON in {source}: {e}")
