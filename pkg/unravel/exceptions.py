class UnravelError(Exception):
    """Base class of every error raised by the package."""

    exit_code = 1


class ParseError(UnravelError):

    def __init__(self, location, message, *args):
        self.location = location
        self.message = message
        super().__init__(*args)

    def __str__(self) -> str:
        return f'{self.location}: {self.message}'


class ProfileError(UnravelError):

    def __init__(self, violations, *args):
        self.violations = list(violations)
        super().__init__(*args)

    def __str__(self) -> str:
        lines = '; '.join(str(v) for v in self.violations[:5])
        more = f' (+{len(self.violations) - 5} more)' if len(self.violations) > 5 else ''
        return f'Invalid profile: {lines}{more}'


class DomainError(UnravelError):

    def __init__(self, alternatives, *args):
        self.alternatives = tuple(alternatives)
        super().__init__(*args)

    def __str__(self) -> str:
        return f'Binary alternatives required, got {list(self.alternatives)}.'


class ClassMismatch(UnravelError):

    def __init__(self, required, found, *args):
        self.required = required
        self.found = found
        super().__init__(*args)

    def __str__(self) -> str:
        return f'Solver requires class {self.required.value}, profile is {self.found.value}.'


class PreconditionError(UnravelError):
    pass


class InconsistentCertificate(UnravelError):

    def __init__(self, agents, *args):
        self.agents = tuple(agents)
        super().__init__(*args)

    def __str__(self) -> str:
        return f'Certificate is inconsistent, unresolved agents: {", ".join(self.agents)}.'


class ComputationRefused(UnravelError):
    """Raised when a computation is refused rather than failed."""

    exit_code = 2


class SupportTooLarge(ComputationRefused):

    def __init__(self, size, cap, *args):
        self.size = size
        self.cap = cap
        super().__init__(*args)

    def __str__(self) -> str:
        return f'Support of {self.size} variables exceeds the cap of {self.cap}.'


class BudgetExceeded(ComputationRefused):

    def __init__(self, examined, budget, suggestion='', *args):
        self.examined = examined
        self.budget = budget
        self.suggestion = suggestion
        super().__init__(*args)

    def __str__(self) -> str:
        message = f'Search budget of {self.budget} certificates exceeded.'
        return f'{message} {self.suggestion}'.strip()


class RootUnreachable(ComputationRefused):

    def __init__(self, stranded, *args):
        self.stranded = tuple(stranded)
        super().__init__(*args)

    def __str__(self) -> str:
        return f'Root unreachable from: {", ".join(map(str, self.stranded))}.'
