# coding: utf-8
"""
    pareto_rules.errors
    ~~~~~~~~~~~~~~~~~~~

    Exceptions raised by every part of Pareto-Rules.
"""

__all__ = [
    'ParetoRulesError',
    'MarketDataError', 'FileNotFound', 'MalformedHeader', 'MalformedRow',
    'EmptySeries', 'NonMonotoneDates',
    'IndicatorError', 'SeriesTooShort',
    'GenomeError', 'InvalidGenome',
    'BacktestError', 'DegeneratePrice',
    'EvolutionError', 'InvalidParams',
    'RollingError', 'InvalidSpan', 'WindowFailed',
]


class ParetoRulesError(RuntimeError):
    """Base error. ``module`` names the part of the pipeline that failed,
    ``type`` is a short machine readable tag and ``data`` holds whatever
    context the raiser had at hand.
    """

    module = 'pareto_rules'

    def __init__(self, message, type=None, data=None):
        RuntimeError.__init__(self, message)
        self.message = message
        self.type = type
        self.data = data or {}

    def __str__(self):
        return self.message


class MarketDataError(ParetoRulesError):
    module = 'market_data'


class FileNotFound(MarketDataError):
    def __init__(self, path):
        MarketDataError.__init__(
            self, 'no such file: %s' % path, 'file_not_found', {'path': path})


class MalformedHeader(MarketDataError):
    pass


class MalformedRow(MarketDataError):
    pass


class EmptySeries(MarketDataError):
    pass


class NonMonotoneDates(MarketDataError):
    pass


class IndicatorError(ParetoRulesError):
    module = 'indicators'


class SeriesTooShort(IndicatorError):
    pass


class GenomeError(ParetoRulesError):
    module = 'genome'


class InvalidGenome(GenomeError):
    pass


class BacktestError(ParetoRulesError):
    module = 'backtest'


class DegeneratePrice(BacktestError):
    pass


class EvolutionError(ParetoRulesError):
    module = 'nsga2'


class InvalidParams(EvolutionError):
    pass


class RollingError(ParetoRulesError):
    module = 'rolling'


class InvalidSpan(RollingError):
    pass


class WindowFailed(RollingError):
    """Wraps whatever went wrong inside one walk-forward window."""

    def __init__(self, spec, error):
        message = 'window %s failed: %s: %s' % (
            spec.label, getattr(error, 'module', type(error).__name__), error)
        RollingError.__init__(
            self, message, 'window_failed', {'window': spec.label})
        self.spec = spec
        self.error = error
