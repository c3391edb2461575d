from django.conf import settings

from .constants import PACKAGE_NAME, ROOT_DATUM_G2


HECKE_LOGGER_NAME = getattr(settings, "HECKE_LOGGER_NAME", PACKAGE_NAME)

HECKE_FACADE_CLASS_PATH = getattr(
    settings, "HECKE_FACADE_CLASS_PATH", f"{PACKAGE_NAME}.facade.Facade"
)

HECKE_DEFAULT_ROOT_DATUM = getattr(settings, "HECKE_DEFAULT_ROOT_DATUM", ROOT_DATUM_G2)

HECKE_RANDOM_SEED = getattr(settings, "HECKE_RANDOM_SEED", 20240611)
HECKE_RELATION_TRIALS = getattr(settings, "HECKE_RELATION_TRIALS", 200)
HECKE_WEIGHT_BOX_RADIUS = getattr(settings, "HECKE_WEIGHT_BOX_RADIUS", 4)
HECKE_MAX_REPORTED_FAILURES = getattr(settings, "HECKE_MAX_REPORTED_FAILURES", 5)

HECKE_FIELD_DEGREE = getattr(settings, "HECKE_FIELD_DEGREE", 2)
HECKE_MAX_FIELD_DEGREE = getattr(settings, "HECKE_MAX_FIELD_DEGREE", 4)
HECKE_MAX_FIXED_SPACE_DIM = getattr(settings, "HECKE_MAX_FIXED_SPACE_DIM", 6)

HECKE_MAX_INVARIANT_GENERATORS = getattr(
    settings, "HECKE_MAX_INVARIANT_GENERATORS", 8
)

# Enables the GF(27) classification runs in the test suite
HECKE_EXTENDED_CHECKS = getattr(settings, "HECKE_EXTENDED_CHECKS", False)
