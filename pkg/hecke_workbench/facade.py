import logging

from . import settings
from .asph_model import verify_realization
from .char_arith import (
    RootedRepresentation,
    centralizer_roots,
    finiteness_evidence,
    fixed_support,
    is_connected_centralizer,
    is_positive_real,
    load_character,
    reduction_pair,
)
from .constants import (
    PUBLISHED_STABILIZER_REPRESENTATIVE,
    ROOT_DATUM_G2,
    VERDICT_FINITE,
)
from .exceptions import ClassificationError, RootDatumError
from .finite_field import galois_field
from .g2_char3 import (
    G2Vector,
    b_stabilizer_solve,
    fiber_point_count,
    fiber_polynomial,
    orbit_table,
    stabilizer_dim,
    tangent_stabilizer_dim,
)
from .laurent import ParameterFunction, format_rational
from .root_data import load_root_datum
from .spec_algebra import build_specialized, classify_and_crosscheck, count_simples


DEFAULT_REPRESENTATIVE = "v" + "+v".join(PUBLISHED_STABILIZER_REPRESENTATIVE)


class Facade:
    """
    Runs the workbench commands on a validated RunConfigForm ``cleaned_data`` and returns
    JSON-ready reports. Every report carries ``ok``; a false value is a mismatch.

    """

    def __init__(self):
        self.logger = logging.getLogger(settings.HECKE_LOGGER_NAME)

    def _get_root_datum(self, config):
        return load_root_datum(config.get("root_datum") or settings.HECKE_DEFAULT_ROOT_DATUM)

    def _get_g2(self, config):
        datum = self._get_root_datum(config)
        if datum.name != ROOT_DATUM_G2:
            raise RootDatumError("The characteristic 3 geometry is only available for G2")
        return datum

    def _get_parameters(self, datum, config):
        labels = config.get("params")
        if labels:
            return ParameterFunction.from_labels(datum, labels)
        return ParameterFunction.default(datum)

    def _get_character(self, datum, config):
        return load_character(config["character"], datum)

    def _get_specialization(self, character, config):
        values = dict(character.specialization or {})
        values.update(config.get("assignments") or {})
        return values

    def _get_field_degree(self, config):
        return config.get("field_degree") or settings.HECKE_FIELD_DEGREE

    def _get_seed(self, config):
        seed = config.get("seed")
        return settings.HECKE_RANDOM_SEED if seed is None else seed

    def _get_representative(self, config, field):
        return G2Vector.parse(config.get("representative") or DEFAULT_REPRESENTATIVE, field)

    def _resolved_config(self, config, **extra):
        resolved = {
            "command": config.get("command"),
            "root_datum": config.get("root_datum") or settings.HECKE_DEFAULT_ROOT_DATUM,
        }
        for key in ("character", "params", "representative"):
            if config.get(key):
                resolved[key] = config[key]
        if config.get("assignments"):
            resolved["set"] = {k: format_rational(v) for k, v in config["assignments"].items()}
        resolved.update(extra)
        return resolved

    def relations(self, config):
        datum = self._get_root_datum(config)
        parameters = self._get_parameters(datum, config)
        if config.get("assignments"):
            parameters = parameters.specialized(config["assignments"])
        trials = config.get("trials") or settings.HECKE_RELATION_TRIALS
        seed = self._get_seed(config)
        self.logger.info(f"*** Running relation checks for {datum.name}")
        report = verify_realization(
            datum, parameters, trials=trials, seed=seed, exhaustive=config.get("exhaustive")
        )
        return {
            "config": self._resolved_config(config, trials=trials, seed=seed),
            "report": report.to_json(),
            "ok": report.passed,
        }

    def classify(self, config):
        datum = self._get_root_datum(config)
        parameters = self._get_parameters(datum, config)
        character = self._get_character(datum, config)
        degree = self._get_field_degree(config)
        values = self._get_specialization(character, config)
        representation = RootedRepresentation.from_parameters(parameters)
        self.logger.info(f"*** Classifying {character.name or 'character'} on {datum.name}")

        support = fixed_support(character, representation, datum)
        evidence = finiteness_evidence(datum, representation, character)
        report = {
            "config": self._resolved_config(config, field=3 ** degree),
            "character": character.to_json(datum),
            "positive_real": is_positive_real(character),
            "fixed_support": [
                {"weight": list(weight), "summand": summand}
                for weight, summand in sorted(support)
            ],
            "centralizer_roots": [list(r) for r in centralizer_roots(datum, character)],
            "connected_centralizer": is_connected_centralizer(datum, character),
            "reduction_pair": reduction_pair(datum, representation, character).to_json(),
            "finiteness": evidence.to_json(),
        }
        if evidence.verdict != VERDICT_FINITE:
            report["ok"] = True
            return report
        crosscheck = classify_and_crosscheck(datum, parameters, character, degree, values)
        checked = crosscheck.to_json()
        del checked["finiteness"]
        report.update(checked)
        if crosscheck.orbit_classes is not None:
            report["classes"] = [c.to_json() for c in crosscheck.orbit_classes]
        report["ok"] = crosscheck.match is not False
        return report

    def count_simples(self, config):
        datum = self._get_root_datum(config)
        parameters = self._get_parameters(datum, config)
        character = self._get_character(datum, config)
        values = self._get_specialization(character, config)
        algebra = build_specialized(datum, parameters, character, values)
        result = count_simples(algebra)
        report = {
            "config": self._resolved_config(
                config, values={k: format_rational(v) for k, v in values.items()}
            ),
            "quotient": algebra.quotient.to_json(),
            "ok": True,
        }
        report.update(result.to_json())
        return report

    def orbits(self, config):
        self._get_g2(config)
        field = galois_field(self._get_field_degree(config))
        rows = []
        for record in orbit_table():
            x = record.representative.lift(field)
            row = record.to_json()
            row["recomputed_stabilizer_dim"] = stabilizer_dim(x)
            row["tangent_stabilizer_dim"] = tangent_stabilizer_dim(x)
            rows.append(row)
        stabilizer = b_stabilizer_solve(self._get_representative(config, galois_field(1)))
        return {
            "config": self._resolved_config(config, field=field.order),
            "orbits": rows,
            "b_stabilizer": stabilizer.to_json(),
            "ok": all(r["stabilizer_dim"] == r["recomputed_stabilizer_dim"] for r in rows),
        }

    def fibers(self, config):
        self._get_g2(config)
        degree = self._get_field_degree(config)
        x = self._get_representative(config, galois_field(1))
        if not x.is_negative:
            raise ClassificationError(f"{x} is not supported on the lines of B")
        count = fiber_point_count(x, degree)
        polynomial = fiber_polynomial(x)
        return {
            "config": self._resolved_config(config, field=3 ** degree),
            "representative": str(x),
            "coefficients": x.to_json(),
            "point_count": count,
            "polynomial": list(polynomial),
            "stabilizer_dim": stabilizer_dim(x),
            "ok": count == sum(c * 3 ** (degree * i) for i, c in enumerate(polynomial)),
        }

    def tables(self, config):
        self._get_g2(config)
        degree = self._get_field_degree(config)
        rows = []
        for record in orbit_table():
            x = record.representative
            row = record.to_json()
            row["recomputed_stabilizer_dim"] = stabilizer_dim(x)
            row["point_count"] = fiber_point_count(x, degree)
            row["fiber_polynomial"] = list(fiber_polynomial(x))
            rows.append(row)
        return {
            "config": self._resolved_config(config, field=3 ** degree),
            "orbits": rows,
            "ok": all(r["stabilizer_dim"] == r["recomputed_stabilizer_dim"] for r in rows),
        }
