import json
import logging

from django.core.management.base import BaseCommand, CommandError
from django.utils.module_loading import import_string

from hecke_workbench import settings
from hecke_workbench.constants import (
    COMMAND_CLASSIFY,
    COMMAND_COUNT_SIMPLES,
    COMMAND_FIBERS,
    COMMAND_ORBITS,
    COMMAND_RELATIONS,
    COMMAND_TABLES,
    EXIT_MISMATCH,
    EXIT_USAGE_ERROR,
)
from hecke_workbench.forms import RunConfigForm


logger = logging.getLogger(settings.HECKE_LOGGER_NAME)

FACADE_METHODS = {
    COMMAND_RELATIONS: "relations",
    COMMAND_CLASSIFY: "classify",
    COMMAND_COUNT_SIMPLES: "count_simples",
    COMMAND_ORBITS: "orbits",
    COMMAND_FIBERS: "fibers",
    COMMAND_TABLES: "tables",
}


class Command(BaseCommand):
    help = "Checks Hecke algebra realizations and classifies exotic G2 orbits in characteristic 3."

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="subcommand", required=True)

        def add(name, help_text):
            subparser = subparsers.add_parser(name, help=help_text)
            subparser.add_argument("--type", dest="root_datum", help="G2, A1, A2 or a JSON file")
            subparser.add_argument("--pretty", action="store_true")
            return subparser

        relations = add(COMMAND_RELATIONS, "Verify the relations of the realization")
        relations.add_argument(
            "--params",
            help='JSON map of root lengths or roots to parameter names, e.g. {"short": "q1"}',
        )
        relations.add_argument("--set", dest="assignments", default="", help="q1=2,q2=3")
        relations.add_argument("--trials", type=int)
        relations.add_argument("--seed", type=int)
        relations.add_argument("--exhaustive", action="store_true")

        for name, help_text in (
            (COMMAND_CLASSIFY, "Finiteness verdict, orbit classes and simple module count"),
            (COMMAND_COUNT_SIMPLES, "Count simple modules of the specialized algebra"),
        ):
            subparser = add(name, help_text)
            subparser.add_argument("--char", dest="character", help="Preset name or JSON file")
            subparser.add_argument("--params")
            subparser.add_argument("--set", dest="assignments", default="")
            subparser.add_argument("--field", dest="field_order", type=int)

        orbits = add(COMMAND_ORBITS, "Exotic orbit table and a B-stabilizer")
        orbits.add_argument("--field", dest="field_order", type=int)
        orbits.add_argument("--rep", dest="representative", help="e.g. v2ab+vb")

        fibers = add(COMMAND_FIBERS, "Fiber point count of the Springer type map")
        fibers.add_argument("--field", dest="field_order", type=int)
        fibers.add_argument("--rep", dest="representative")

        tables = add(COMMAND_TABLES, "Orbit table with fiber polynomials")
        tables.add_argument("--field", dest="field_order", type=int)

    def get_facade(self):
        return import_string(settings.HECKE_FACADE_CLASS_PATH)()

    def handle(self, *args, **options):
        command = options["subcommand"]
        data = {
            key: options[key]
            for key in RunConfigForm.base_fields
            if options.get(key) not in (None, "", False)
        }
        data["command"] = command
        form = RunConfigForm(data)
        if not form.is_valid():
            errors = "; ".join(
                f"{field}: {' '.join(messages)}" for field, messages in form.errors.items()
            )
            raise CommandError(f"Invalid options: {errors}", returncode=EXIT_USAGE_ERROR)

        facade = self.get_facade()
        try:
            report = getattr(facade, FACADE_METHODS[command])(form.cleaned_data)
        except (ValueError, RuntimeError) as e:
            logger.error(f"*** {command} failed: {e}")
            raise CommandError(str(e), returncode=EXIT_USAGE_ERROR)

        report = {"command": command, **report}
        self.stdout.write(json.dumps(report, indent=2 if options["pretty"] else None))
        if report["ok"] is False:
            raise CommandError(f"{command} found a mismatch", returncode=EXIT_MISMATCH)
