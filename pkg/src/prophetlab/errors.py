"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class ProphetLabError(Exception):
    """Base class for all errors raised by prophetlab."""


class ConfigError(ProphetLabError, ValueError):
    """Malformed user input: distribution spec strings, experiment configs."""


class DomainError(ProphetLabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InfiniteMeanError(DomainError):
    """The distribution has an infinite mean, so tail integrals diverge.

    For maximisation this is the trivial regime gamma >= 1 where accepting
    the first draw is already optimal up to constants.
    """


class DegenerateQuantileError(DomainError):
    """A quantile used as a scale is zero, so a ratio of quantiles is undefined."""


class HorizonTooSmallError(DomainError):
    """The horizon n is too small for an asymptotic threshold rule to be defined."""
