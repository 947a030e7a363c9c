import enum


class Model(enum.Enum):
    """
    Ballot model a profile is interpreted in.
    """
    CLASSIC = "classic"
    SMART = "smart"

    @property
    def is_classic(self):
        return self.value == Model.CLASSIC.value

    @property
    def is_smart(self):
        return self.value == Model.SMART.value


class Rule(enum.Enum):
    """
    Optimisation criterion applied to the selected ranks.
    """
    MINSUM = "minsum"
    MINMAX = "minmax"
    LEXIMIN = "leximin"

    @property
    def is_minsum(self):
        return self.value == Rule.MINSUM.value

    @property
    def is_minmax(self):
        return self.value == Rule.MINMAX.value

    @property
    def is_leximin(self):
        return self.value == Rule.LEXIMIN.value


class Bias(enum.Enum):
    NONE = "none"
    ZERO = "0"
    ONE = "1"

    @property
    def is_none(self):
        return self.value == Bias.NONE.value

    @property
    def alternative(self):
        return None if self.is_none else self.value


class Target(enum.Enum):
    AND = "and"
    OR = "or"


class FunctionClass(enum.Enum):
    """
    Function classes ordered so that the first class containing every entry
    of a profile is the smallest one.
    """
    LIQUID = "Liquid"
    OR2 = "Or2"
    AND2 = "And2"
    ORAND2 = "OrAnd2"
    OR = "Or"
    AND = "And"
    MON = "Mon"
    BOOL = "Bool"

    def contains(self, other):
        return other in _CONTAINED[self]

    @property
    def within_or(self):
        return FunctionClass.OR.contains(self)

    @property
    def within_and(self):
        return FunctionClass.AND.contains(self)


_CONTAINED = {
    FunctionClass.LIQUID: {FunctionClass.LIQUID},
    FunctionClass.OR2: {FunctionClass.LIQUID, FunctionClass.OR2},
    FunctionClass.AND2: {FunctionClass.LIQUID, FunctionClass.AND2},
    FunctionClass.ORAND2: {FunctionClass.LIQUID, FunctionClass.OR2, FunctionClass.AND2, FunctionClass.ORAND2},
    FunctionClass.OR: {FunctionClass.LIQUID, FunctionClass.OR2, FunctionClass.OR},
    FunctionClass.AND: {FunctionClass.LIQUID, FunctionClass.AND2, FunctionClass.AND},
}
_CONTAINED[FunctionClass.MON] = set(FunctionClass) - {FunctionClass.BOOL}
_CONTAINED[FunctionClass.BOOL] = set(FunctionClass)


class CastCondition(enum.Enum):
    """
    Ways cast monotonicity can fail.  The first two are about winners under
    an aggregation function, the last two about optimal vote vectors.
    """
    KEEPS_D = "keeps-d"
    NO_NEW_OTHER = "no-new-other"
    LIFTS_OLD = "lifts-old"
    COVERS_NEW = "covers-new"


class OutputFormat(enum.Enum):
    TEXT = "text"
    JSON = "json"
    HTML = "html"

    @property
    def is_json(self):
        return self.value == OutputFormat.JSON.value

    @property
    def is_html(self):
        return self.value == OutputFormat.HTML.value
