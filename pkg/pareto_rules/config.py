# coding: utf-8
"""
    pareto_rules.config
    ~~~~~~~~~~~~~~~~~~~

    Run configuration. Every setting is a :class:`ConfigProperty`: a value
    passed to :class:`RunConfig` wins, then the ``PARETO_<NAME>`` key of the
    bound :class:`flask.Config`, then the default::

        config = RunConfig.from_mapping({'PARETO_POPULATION': 50},
                                        data_path='sensex.csv')
        config.population   # 50
        config.cost_rate    # 0.02
"""

from flask import Config

from .backtest import BacktestOptions, VOL_SOURCES
from .errors import ParetoRulesError, InvalidParams
from .nsga2 import EvolutionParams

__all__ = ('ConfigProperty', 'RunConfig')


class ConfigProperty(object):
    """A setting read from the instance, then the bound config."""

    _missing = object()

    def __init__(self, name, default=_missing):
        self.name = name
        self.default = default

    @property
    def config_name(self):
        return 'PARETO_%s' % self.name.upper()

    def __get__(self, instance, owner):
        if instance is None:
            return self

        instance_namespace = vars(instance)
        if self.name in instance_namespace:
            return instance_namespace[self.name]

        config = instance.config
        if self.config_name in config:
            return config[self.config_name]
        if self.default is not self._missing:
            return self.default
        raise ParetoRulesError(
            '%r missing %s\n\nPass it as `RunConfig(..., %s=...)` or set '
            '`%s` in the config' % (
                instance, self.name, self.name, self.config_name),
            'missing_setting', {'name': self.name})

    def __set__(self, instance, value):
        vars(instance)[self.name] = value


class RunConfig(object):
    """Everything one run needs.

    :param config: a :class:`flask.Config` (or any mapping) holding
                   ``PARETO_*`` keys.
    :param kwargs: settings that override the config.
    """

    data_path = ConfigProperty('data_path')
    output_path = ConfigProperty('output_path', default=None)
    first_train_year = ConfigProperty('first_train_year', default=None)
    last_test_year = ConfigProperty('last_test_year', default=None)

    cost_rate = ConfigProperty('cost_rate', default=0.02)
    population = ConfigProperty('population', default=30)
    generations = ConfigProperty('generations', default=5)
    cx_rate = ConfigProperty('cx_rate', default=0.9)
    mut_rate = ConfigProperty('mut_rate', default=0.1)
    seed = ConfigProperty('seed', default=42)
    train_years = ConfigProperty('train_years', default=2)
    test_years = ConfigProperty('test_years', default=1)
    threads = ConfigProperty('threads', default=1)

    lead_in_days = ConfigProperty('lead_in_days', default=60)
    hold_on_neutral = ConfigProperty('hold_on_neutral', default=False)
    vol_source = ConfigProperty('vol_source', default='net')

    def __init__(self, config=None, **kwargs):
        if config is None:
            config = Config('.')
        self.config = config
        for k, v in kwargs.items():
            if not isinstance(getattr(self.__class__, k, None),
                              ConfigProperty):
                raise TypeError('descriptor %r not found' % k)
            setattr(self, k, v)

    @classmethod
    def from_mapping(cls, mapping=None, **kwargs):
        config = Config('.')
        config.from_mapping(mapping or {})
        return cls(config, **kwargs)

    @classmethod
    def settings(cls):
        return sorted(
            name for name in dir(cls)
            if isinstance(getattr(cls, name), ConfigProperty)
        )

    def __repr__(self):
        return '<RunConfig at %s>' % hex(id(self))

    def to_dict(self):
        rv = {}
        for name in self.settings():
            try:
                rv[name] = getattr(self, name)
            except ParetoRulesError:
                rv[name] = None
        return rv

    def validate(self):
        """Checks every numeric setting.

        :raises InvalidParams: listing everything that is wrong.
        """
        problems = []
        if not self.cost_rate >= 0:
            problems.append('cost rate must be non-negative')
        if self.population < 2:
            problems.append('population must be at least 2')
        if self.generations < 1:
            problems.append('generations must be at least 1')
        if not 0.0 <= self.cx_rate <= 1.0:
            problems.append('crossover rate must be in [0, 1]')
        if not 0.0 <= self.mut_rate <= 1.0:
            problems.append('mutation rate must be in [0, 1]')
        if self.threads < 1:
            problems.append('threads must be at least 1')
        if self.train_years < 1 or self.test_years < 1:
            problems.append('train and test years must be at least 1')
        if self.lead_in_days < 0:
            problems.append('lead-in days must be non-negative')
        if self.vol_source not in VOL_SOURCES:
            problems.append('vol source must be one of %s' %
                            ', '.join(VOL_SOURCES))
        if problems:
            raise InvalidParams('; '.join(problems), 'invalid_params')
        return self

    def evolution_params(self, threads=None):
        return EvolutionParams(
            population=self.population,
            generations=self.generations,
            cx_rate=self.cx_rate,
            mut_rate=self.mut_rate,
            seed=self.seed,
            threads=self.threads if threads is None else threads,
        )

    def backtest_options(self):
        return BacktestOptions(
            cost_rate=self.cost_rate,
            hold_on_neutral=self.hold_on_neutral,
            vol_source=self.vol_source,
        )
