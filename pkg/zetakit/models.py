import enum


class Regime(str, enum.Enum):
    DIRICHLET = "dirichlet"
    ETA = "eta"
    FUNCTIONAL = "functional"


class BetaClass(str, enum.Enum):
    SQUARE = "square"
    TWICE_SQUARE = "twice-square"
    OTHER = "other"


class SeriesKind(str, enum.Enum):
    SINE = "sine"
    COSINE = "cosine"


class OutputFormat(str, enum.Enum):
    JSON = "json"
    CSV = "csv"
    PLAIN = "plain"


class Suite(str, enum.Enum):
    ARITH = "arith"
    ZETA = "zeta"
    IDENTITIES = "identities"
    ALL = "all"
