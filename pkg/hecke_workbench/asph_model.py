import itertools
import logging
import random
from dataclasses import dataclass, field

from . import laurent, settings
from .hecke_core import HeckeContext
from .laurent import GroupAlgebraElement


logger = logging.getLogger(settings.HECKE_LOGGER_NAME)

THETA = "theta"
T = "T"
K = "K"


@dataclass(frozen=True)
class AsphOperator:
    kind: str
    argument: object
    module: "AntisphericalModule" = field(compare=False, repr=False)

    def __call__(self, m):
        if self.kind == THETA:
            return self.module.act_theta(self.argument, m)
        if self.kind == T:
            return self.module.act_T(self.argument, m)
        return self.module.act_K(self.argument, m)


class AntisphericalModule:
    """
    The antispherical module realized on A[X*]: e^l is the image of e^l (x) 1, and T_s acts
    through the shifted Demazure operator.

    """

    def __init__(self, context):
        self.context = context
        self.datum = context.datum
        self.parameters = context.parameters

    def theta(self, weight):
        return AsphOperator(THETA, tuple(weight), self)

    def T(self, i):
        return AsphOperator(T, i, self)

    def K(self, i):
        return AsphOperator(K, i, self)

    def q(self, i):
        return self.parameters.q(self.datum.simple_root_vectors[i])

    def q_e_alpha(self, i):
        return self.q(i) * self.context.monomial(self.datum.simple_root_vectors[i])

    def d_prime(self, i, m):
        return laurent.demazure(self.datum, i, m)

    def act_theta(self, weight, m):
        return self.context.monomial(weight) * m

    def act_T(self, i, m):
        qe = self.q_e_alpha(i)
        return -(qe * m) - (1 - qe) * self.d_prime(i, m)

    def act_K(self, i, m):
        return (1 - self.q_e_alpha(i)) * self.d_prime(i, m)

    def act_hecke(self, h, m):
        self.context.check(h)
        total = self.context.coefficient(0)
        for w, f in h.coords.items():
            image = f * m
            for i in reversed(w.word):
                image = self.act_T(i, image)
            total = total + image
        return total

    def acts_identically(self, h1, h2, radius):
        for weight in box_weights(self.datum.rank, radius):
            m = self.context.monomial(weight)
            if self.act_hecke(h1, m) != self.act_hecke(h2, m):
                return False
        return True


def box_weights(rank, radius):
    return [tuple(w) for w in itertools.product(range(-radius, radius + 1), repeat=rank)]


def random_weight(rng, rank, radius):
    return tuple(rng.randint(-radius, radius) for _ in range(rank))


def random_element(rng, rank, nparams, radius, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        key = (
            random_weight(rng, rank, radius),
            tuple(rng.randint(-1, 1) for _ in range(nparams)),
        )
        terms[key] = terms.get(key, 0) + rng.choice((-3, -2, -1, 1, 2, 3))
    element = GroupAlgebraElement(rank, nparams, terms)
    return element or GroupAlgebraElement.constant(rank, nparams, 1)


def random_hecke_element(context, rng, radius, max_terms=2):
    weyl = context.datum.weyl_group
    coords = {}
    for _ in range(rng.randint(1, max_terms)):
        w = rng.choice(weyl)
        f = random_element(rng, context.datum.rank, context.nparams, radius, max_terms=2)
        coords[w] = coords[w] + f if w in coords else f
    return context.element(coords)


@dataclass
class RelationResult:
    relation: str
    trials: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0

    @property
    def passed(self):
        return self.failure_count == 0

    def record(self, witness, lhs, rhs):
        self.trials += 1
        if lhs == rhs:
            return
        self.failure_count += 1
        if len(self.failures) < settings.HECKE_MAX_REPORTED_FAILURES:
            self.failures.append({"input": witness, "lhs": str(lhs), "rhs": str(rhs)})

    def to_json(self):
        return {
            "relation": self.relation,
            "trials": self.trials,
            "passed": self.passed,
            "failure_count": self.failure_count,
            "failures": self.failures,
        }


@dataclass
class RelationReport:
    datum: str
    parameters: dict
    seed: int
    trials: int
    radius: int
    exhaustive: bool
    results: list

    @property
    def passed(self):
        return all(result.passed for result in self.results)

    def result(self, relation):
        return next(r for r in self.results if r.relation == relation)

    def to_json(self):
        return {
            "datum": self.datum,
            "parameters": self.parameters,
            "seed": self.seed,
            "trials": self.trials,
            "box_radius": self.radius,
            "exhaustive": self.exhaustive,
            "passed": self.passed,
            "relations": [result.to_json() for result in self.results],
        }


class RealizationChecker:
    """Operator identities of the Hecke relations on A[X*], checked on sampled inputs."""

    def __init__(self, module, rng, radius):
        self.module = module
        self.context = module.context
        self.datum = module.datum
        self.rng = rng
        self.radius = radius

    def _random(self):
        return random_element(self.rng, self.datum.rank, self.context.nparams, self.radius)

    def _weight(self):
        return random_weight(self.rng, self.datum.rank, self.radius)

    def quadratic(self, result, i, m):
        module, q = self.module, self.module.q(i)
        lhs = module.act_T(i, module.act_T(i, m))
        rhs = (q - 1) * module.act_T(i, m) + q * m
        result.record(str(m), lhs, rhs)

    def bernstein(self, result, i, m):
        module, q = self.module, self.module.q(i)
        weight = self._weight()
        reflected = self.datum.simple_reflect(i, weight)
        lhs = module.act_theta(weight, module.act_T(i, m)) - module.act_T(
            i, module.act_theta(reflected, m)
        )
        difference = laurent.bernstein_difference(self.datum, i, self.context.monomial(weight))
        rhs = (q - 1) * difference * m
        result.record(f"weight={list(weight)}, m={m}", lhs, rhs)

    def translation(self, result, i, m):
        module = self.module
        lhs = module.act_K(i, m)
        rhs = -(module.act_T(i, m) + module.q_e_alpha(i) * m)
        result.record(str(m), lhs, rhs)

    def invariant_linearity(self, result, i, m):
        module = self.module
        weight = self._weight()
        g = self.context.monomial(weight) + self.context.monomial(
            self.datum.simple_reflect(i, weight)
        )
        result.record(f"g={g}, m={m}", module.act_T(i, g * m), g * module.act_T(i, m))

    def braid(self, result, i, j, m):
        module = self.module
        order = self.datum.braid_order(i, j)
        left, right = m, m
        for k in range(order):
            left = module.act_T((i, j)[k % 2], left)
            right = module.act_T((j, i)[k % 2], right)
        result.record(str(m), left, right)

    def theta_additivity(self, result, m):
        module = self.module
        weight, other = self._weight(), self._weight()
        lhs = module.act_theta(weight, module.act_theta(other, m))
        rhs = module.act_theta(tuple(a + b for a, b in zip(weight, other)), m)
        result.record(f"weights={list(weight)},{list(other)}, m={m}", lhs, rhs)

    def hecke_action(self, result, m):
        module, context = self.module, self.context
        h1 = random_hecke_element(context, self.rng, 2)
        h2 = random_hecke_element(context, self.rng, 2)
        lhs = module.act_hecke(context.mul(h1, h2), m)
        rhs = module.act_hecke(h1, module.act_hecke(h2, m))
        result.record(f"h1={h1}, h2={h2}, m={m}", lhs, rhs)

    def run(self, inputs):
        datum = self.datum
        simple = datum.simple_roots
        results = []
        per_root = (
            ("quadratic", self.quadratic),
            ("bernstein", self.bernstein),
            ("translation", self.translation),
            ("invariant_linearity", self.invariant_linearity),
        )
        for name, check in per_root:
            for i in simple:
                result = RelationResult(f"{name}[{i + 1}]")
                for m in inputs():
                    check(result, i, m)
                results.append(result)
        for i, j in itertools.combinations(simple, 2):
            result = RelationResult(f"braid[{i + 1},{j + 1}]")
            for m in inputs():
                self.braid(result, i, j, m)
            results.append(result)
        for name, check in (
            ("theta_additivity", self.theta_additivity),
            ("hecke_action", self.hecke_action),
        ):
            result = RelationResult(name)
            for m in inputs():
                check(result, m)
            results.append(result)
        return results


def verify_realization(
    datum, parameters, trials=None, radius=None, seed=None, exhaustive=False
):
    """
    Checks the quadratic, Bernstein and braid relations, the K(a) = -(T(a) + q(a) e^a)
    identity and compatibility with Hecke multiplication as operator identities.

    With ``exhaustive`` every monomial of the box is used as input instead of random
    elements; auxiliary weights are still sampled.

    """

    trials = settings.HECKE_RELATION_TRIALS if trials is None else trials
    radius = settings.HECKE_WEIGHT_BOX_RADIUS if radius is None else radius
    seed = settings.HECKE_RANDOM_SEED if seed is None else seed
    logger.info(
        f"*** Verifying Hecke relations for {datum.name}: {trials} trials, seed {seed}"
    )
    rng = random.Random(seed)
    context = HeckeContext(datum, parameters)
    checker = RealizationChecker(AntisphericalModule(context), rng, radius)

    if exhaustive:
        weights = box_weights(datum.rank, radius)

        def inputs():
            return [context.monomial(weight) for weight in weights]

    else:

        def inputs():
            return [checker._random() for _ in range(trials)]

    results = checker.run(inputs)
    report = RelationReport(
        datum.name,
        parameters.to_json(),
        seed,
        trials,
        radius,
        exhaustive,
        results,
    )
    for result in results:
        if not result.passed:
            logger.warning(
                f"*** Relation {result.relation} failed {result.failure_count} times"
            )
    return report
