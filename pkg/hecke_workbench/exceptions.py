class RootDatumError(ValueError):
    pass


class ParameterError(ValueError):
    pass


class ContextMismatchError(ValueError):
    pass


class CharacterError(ValueError):
    pass


class FieldBoundError(ValueError):
    pass


class QuotientDimensionError(RuntimeError):
    pass


class InfiniteOrbitsError(RuntimeError):
    pass


class ClassificationError(RuntimeError):
    pass


class ChevalleyBasisError(RuntimeError):
    pass
