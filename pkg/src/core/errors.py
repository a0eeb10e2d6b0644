"""
Domain exceptions shared by the GA engine, the operators and both problems.

Config-file problems are reported by the exceptions in
``src.core.config._get_value``; everything raised while building instances,
running operators or aggregating results lives here.
"""


class GaConfigurationError(Exception):
    """Engine or operator parameter outside its legal range."""
    def __init__(self, key: str, message: str):
        self.key = key
        self.message = f"{key}: {message}"
        super().__init__(self.message)


class EmptyPopulationError(Exception):
    def __init__(self, where: str = "rank_select"):
        self.where = where
        self.message = f"empty population ({where})"
        super().__init__(self.message)


class InsufficientChildrenError(Exception):
    def __init__(self, needed: int, available: int):
        self.needed = needed
        self.available = available
        self.shortfall = needed - available
        self.message = f"insufficient children: need {needed}, got {available} (shortfall {self.shortfall})"
        super().__init__(self.message)


class OperatorError(Exception):
    """Invalid operator input: bad cut points, mismatched lengths, bad segments."""
    def __init__(self, operator: str, message: str):
        self.operator = operator
        self.message = f"{operator}: {message}"
        super().__init__(self.message)


class PatternError(Exception):
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class RosterError(Exception):
    """An assignment that points outside a nurse's feasible pattern set."""
    def __init__(self, nurse: int, pattern: int):
        self.nurse = nurse
        self.pattern = pattern
        self.message = f"nurse {nurse}: pattern {pattern} is not in its feasible set"
        super().__init__(self.message)


class InstanceValidationError(Exception):
    def __init__(self, source: str, problems: list[str]):
        self.source = source
        self.problems = list(problems)
        joined = "; ".join(self.problems)
        self.message = f"invalid instance {source}: {joined}"
        super().__init__(self.message)


class InfeasibleSpecError(Exception):
    """A generator spec whose rules cannot be met within the retry budget."""
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class AggregationError(Exception):
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)
