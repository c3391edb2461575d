#!/usr/bin/env python
import sys
from optparse import OptionParser

from coverage import coverage
from django.conf import settings


def configure(extended=False):
    if not settings.configured:
        settings.configure(
            DATABASES={
                "default": {
                    "ENGINE": "django.db.backends.sqlite3",
                    "NAME": ":memory:",
                }
            },
            INSTALLED_APPS=[
                "hecke_workbench",
            ],
            DEBUG=False,
            USE_TZ=True,
            HECKE_EXTENDED_CHECKS=extended,
        )

    import django

    django.setup()


def run_tests(*test_args, verbosity=1):
    # Needs to be here to avoid missing SETTINGS env var
    from django.test.runner import DiscoverRunner

    if not test_args:
        test_args = ["hecke_workbench"]

    test_runner = DiscoverRunner(verbosity=verbosity)

    c = coverage(source=["hecke_workbench"], omit=["*migrations*", "*tests*"])
    c.start()
    num_failures = test_runner.run_tests(test_args)
    c.stop()

    if num_failures > 0:
        sys.exit(num_failures)
    print("Generating HTML coverage report")
    c.html_report()


if __name__ == "__main__":
    parser = OptionParser()
    parser.add_option("-v", "--verbosity", type="int", default=1)
    parser.add_option(
        "--extended",
        action="store_true",
        default=False,
        help="Also run the GF(27) classification checks",
    )
    (options, args) = parser.parse_args()
    configure(extended=options.extended)
    run_tests(*args, verbosity=options.verbosity)
