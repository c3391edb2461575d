import json
import logging
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm, prod

from sympy import Matrix, primefactors
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from . import settings
from .constants import (
    CHARACTER_PRESETS,
    VERDICT_FINITE,
    VERDICT_INFINITE,
    VERDICT_UNKNOWN,
)
from .exceptions import CharacterError
from .laurent import format_rational, parse_rational
from .root_data import is_type_a, reflection_matrix


logger = logging.getLogger(settings.HECKE_LOGGER_NAME)

CHARACTERS_DIR = os.path.join(os.path.dirname(__file__), "characters")


@dataclass(frozen=True)
class CharacterValue:
    """
    A point of C^x written as exp(2 pi i * torsion) * prod(g ** free[g]) over the declared
    positive real generators g.

    """

    torsion: Fraction = Fraction(0)
    free: tuple = ()

    def __post_init__(self):
        torsion = Fraction(self.torsion)
        object.__setattr__(self, "torsion", torsion - (torsion.numerator // torsion.denominator))
        object.__setattr__(self, "free", tuple(int(f) for f in self.free))

    @classmethod
    def one(cls, size):
        return cls(Fraction(0), (0,) * size)

    def _check(self, other):
        if len(self.free) != len(other.free):
            raise CharacterError("Character values over different generator lists")

    def __mul__(self, other):
        self._check(other)
        return CharacterValue(
            self.torsion + other.torsion, tuple(a + b for a, b in zip(self.free, other.free))
        )

    def __pow__(self, n):
        return CharacterValue(self.torsion * n, tuple(n * a for a in self.free))

    def inverse(self):
        return self ** -1

    def __truediv__(self, other):
        return self * other.inverse()

    @property
    def is_one(self):
        return self.torsion == 0 and not any(self.free)

    @property
    def is_positive_real(self):
        return self.torsion == 0

    def to_json(self, generators):
        return {
            "tors": format_rational(self.torsion),
            "free": {g: f for g, f in zip(generators, self.free) if f},
        }

    @classmethod
    def from_json(cls, data, generators):
        free = data.get("free", {})
        unknown = set(free) - set(generators)
        if unknown:
            raise CharacterError(f"Undeclared generators {sorted(unknown)}")
        return cls(
            parse_rational(data.get("tors", "0")), tuple(int(free.get(g, 0)) for g in generators)
        )

    def specialize(self, values):
        if self.torsion not in (0, Fraction(1, 2)):
            raise CharacterError(
                f"Torsion part {self.torsion} has no rational specialization"
            )
        result = Fraction(-1 if self.torsion else 1)
        for value, exponent in zip(values, self.free):
            result *= Fraction(value) ** exponent
        return result


@dataclass
class CentralCharacter:
    """a = (s, (t_i)): values of s on the X* basis and the parameter values t_i."""

    generators: tuple
    s_values: tuple
    t_values: tuple
    specialization: dict = None
    name: str = ""

    def __post_init__(self):
        self.generators = tuple(self.generators)
        self.s_values = tuple(self.s_values)
        self.t_values = tuple(self.t_values)
        for value in self.s_values + self.t_values:
            if len(value.free) != len(self.generators):
                raise CharacterError("Character value does not match the generator list")

    def one(self):
        return CharacterValue.one(len(self.generators))

    def evaluate(self, weight, qexp=None):
        result = self.one()
        for value, exponent in zip(self.s_values, weight):
            result = result * value ** exponent
        for value, exponent in zip(self.t_values, qexp or ()):
            result = result * value ** exponent
        return result

    def to_json(self, datum):
        result = {
            "generators": list(self.generators),
            "s": {
                name: value.to_json(self.generators)
                for name, value in zip(datum.weight_names, self.s_values)
            },
            "t": [value.to_json(self.generators) for value in self.t_values],
        }
        if self.specialization:
            result["values"] = {g: format_rational(v) for g, v in self.specialization.items()}
        return result

    @classmethod
    def from_json(cls, data, datum, name=""):
        generators = tuple(data.get("generators", ()))
        try:
            s_data = data["s"]
            t_data = data["t"]
        except KeyError as e:
            raise CharacterError(f"Character description is missing {e}")
        missing = set(datum.weight_names) - set(s_data)
        if missing:
            raise CharacterError(f"No value of s on {sorted(missing)}")
        s_values = [CharacterValue.from_json(s_data[n], generators) for n in datum.weight_names]
        t_values = [CharacterValue.from_json(v, generators) for v in t_data]
        values = data.get("values")
        specialization = (
            {g: parse_rational(v) for g, v in values.items()} if values else None
        )
        return cls(generators, s_values, t_values, specialization, name)


def load_character(source, datum):
    """Loads a character from a bundled preset name or a JSON file path."""

    if source in CHARACTER_PRESETS:
        path, name = os.path.join(CHARACTERS_DIR, f"{source}.json"), source
    else:
        path, name = source, os.path.splitext(os.path.basename(source))[0]
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError:
        raise CharacterError(f"{source!r} is neither a preset nor a readable file")
    except json.JSONDecodeError as e:
        raise CharacterError(f"Invalid character JSON in {source}: {e}")
    return CentralCharacter.from_json(data, datum, name)


@dataclass(eq=False)
class RootedRepresentation:
    """
    A representation whose non-zero weights are the roots, each root line sitting in the
    summand V_i on which the parameter t_i acts.

    """

    name: str
    summand_of_root: dict
    zero_lines: tuple

    @classmethod
    def from_parameters(cls, parameters, zero_lines=None, name="V"):
        if zero_lines is None:
            zero_lines = tuple(range(parameters.nparams))
        return cls(name, dict(parameters.assignment), tuple(zero_lines))

    def weights(self, datum):
        zero = (0,) * datum.rank
        return [(root, self.summand_of_root[root]) for root in datum.roots] + [
            (zero, i) for i in self.zero_lines
        ]


def evaluate(a, weight, qexp=None):
    return a.evaluate(weight, qexp)


def fixed_support(a, representation, datum):
    support = set()
    for weight, summand in representation.weights(datum):
        if a.evaluate(weight) == a.t_values[summand]:
            support.add((weight, summand))
    return frozenset(support)


def centralizer_roots(datum, a):
    return tuple(sorted(root for root in datum.roots if a.evaluate(root).is_one))


def _rank_and_divisor(rows):
    rows = [row for row in rows if any(row)]
    if not rows:
        return 0, 1
    columns = [k for k in range(len(rows[0])) if any(row[k] for row in rows)]
    matrix = Matrix([[row[k] for k in columns] for row in rows])
    factors = [abs(int(f)) for f in invariant_factors(matrix, domain=ZZ) if f != 0]
    return len(factors), prod(factors)


def solvable_over_integers(rows, rhs):
    """Whether A x = b has an integer solution: equal ranks and equal determinantal divisors."""

    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    return _rank_and_divisor([list(row) for row in rows]) == _rank_and_divisor(augmented)


def in_subgroup(value, generators):
    """Whether ``value`` lies in the subgroup of C^x generated by ``generators``."""

    denominator = lcm(value.torsion.denominator, *(g.torsion.denominator for g in generators))
    rows = [
        [g.free[j] for g in generators] + [0] for j in range(len(value.free))
    ]
    rhs = list(value.free)
    rows.append([int(g.torsion * denominator) for g in generators] + [denominator])
    rhs.append(int(value.torsion * denominator))
    return solvable_over_integers(rows, rhs)


def generates_torsion_free(values):
    values = list(values)
    if not values:
        return True
    denominator = lcm(*(v.torsion.denominator for v in values))
    size = len(values[0].free)
    for p in primefactors(denominator):
        if in_subgroup(CharacterValue(Fraction(1, p), (0,) * size), values):
            return False
    return True


@dataclass
class ReductionPair:
    roots: tuple
    weights: tuple
    type_name: str
    torsion_free: bool

    def to_json(self):
        return {
            "roots": [list(r) for r in self.roots],
            "weights": [{"weight": list(w), "summand": i} for w, i in self.weights],
            "type": self.type_name or "T",
            "torsion_free": self.torsion_free,
        }


def reduction_pair(datum, representation, a):
    """
    Roots of (G^{S_a})° and the weights of V^{S_a}: those with l(s) in the subgroup generated
    by the t_i.

    """

    def in_q_a(weight):
        return in_subgroup(a.evaluate(weight), a.t_values)

    roots = tuple(root for root in datum.roots if in_q_a(root))
    weights = tuple(
        (weight, summand)
        for weight, summand in representation.weights(datum)
        if in_q_a(weight)
    )
    return ReductionPair(
        roots, weights, datum.subsystem_type(roots), generates_torsion_free(a.t_values)
    )


@dataclass
class FinitenessEvidence:
    verdict: str
    centralizer_dim: int
    fixed_dim: int
    torsion_free: bool
    reduction_type: str
    notes: list = field(default_factory=list)

    def to_json(self):
        return {
            "verdict": self.verdict,
            "centralizer_dim": self.centralizer_dim,
            "fixed_dim": self.fixed_dim,
            "torsion_free": self.torsion_free,
            "reduction_type": self.reduction_type or "T",
            "notes": self.notes,
        }


def finiteness_evidence(datum, representation, a):
    centralizer_dim = datum.rank + len(centralizer_roots(datum, a))
    fixed_dim = len(fixed_support(a, representation, datum))
    pair = reduction_pair(datum, representation, a)
    evidence = FinitenessEvidence(
        VERDICT_UNKNOWN, centralizer_dim, fixed_dim, pair.torsion_free, pair.type_name
    )
    if centralizer_dim < fixed_dim:
        evidence.verdict = VERDICT_INFINITE
        evidence.notes.append("fixed space is larger than the centralizer")
        return evidence
    if not pair.torsion_free:
        evidence.notes.append("the parameters generate a group with torsion")
        return evidence
    if pair.type_name == "G2" or is_type_a(pair.type_name):
        evidence.verdict = VERDICT_FINITE
    else:
        evidence.notes.append(f"no orbit finiteness result for type {pair.type_name}")
    return evidence


def finiteness_verdict(datum, representation, a):
    evidence = finiteness_evidence(datum, representation, a)
    logger.debug(
        f"*** Finiteness verdict for {a.name or 'character'}: {evidence.verdict} "
        f"(centralizer {evidence.centralizer_dim}, fixed space {evidence.fixed_dim})"
    )
    return evidence.verdict


def is_positive_real(a):
    return all(value.is_positive_real for value in a.s_values + a.t_values)


def polar_decomposition(a):
    """Splits a into its unit-circle part and its positive real part."""

    size = len(a.generators)

    def unit(value):
        return CharacterValue(value.torsion, (0,) * size)

    def positive(value):
        return CharacterValue(Fraction(0), value.free)

    return (
        CentralCharacter(
            a.generators, [unit(v) for v in a.s_values], [unit(v) for v in a.t_values]
        ),
        CentralCharacter(
            a.generators,
            [positive(v) for v in a.s_values],
            [positive(v) for v in a.t_values],
            a.specialization,
        ),
    )


def weyl_stabilizer(datum, a):
    basis = [tuple(int(i == j) for j in range(datum.rank)) for i in range(datum.rank)]
    return frozenset(
        w.matrix
        for w in datum.weyl_group
        if all(a.evaluate(w.act(e)) == a.evaluate(e) for e in basis)
    )


def reflection_subgroup(datum, roots):
    generators = [
        reflection_matrix(root, datum.coroot(root)) for root in roots
    ]
    group = {datum.identity.matrix}
    frontier = list(group)
    while frontier:
        successors = []
        for matrix in frontier:
            for generator in generators:
                product = datum.multiply(datum.lookup(matrix), datum.lookup(generator)).matrix
                if product not in group:
                    group.add(product)
                    successors.append(product)
        frontier = successors
    return frozenset(group)


def is_connected_centralizer(datum, a):
    """
    G^{T_a} is connected iff the stabilizer of s in W is generated by the reflections in the
    roots vanishing on a.

    """

    stabilizer = weyl_stabilizer(datum, a)
    generated = reflection_subgroup(datum, centralizer_roots(datum, a))
    return stabilizer == generated


def rational_specialization(a, values=None):
    """Values of s on the X* basis and of the t_i as rationals."""

    values = values if values is not None else a.specialization or {}
    try:
        ordered = [parse_rational(values[g]) for g in a.generators]
    except KeyError as e:
        raise CharacterError(f"No rational value given for the generator {e}")
    if any(v == 0 for v in ordered):
        raise CharacterError("Generators cannot be specialized to zero")
    s = tuple(value.specialize(ordered) for value in a.s_values)
    t = tuple(value.specialize(ordered) for value in a.t_values)
    return s, t


def evaluate_rational(s, weight):
    result = Fraction(1)
    for value, exponent in zip(s, weight):
        result *= value ** exponent
    return result