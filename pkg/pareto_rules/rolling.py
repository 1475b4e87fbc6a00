# coding: utf-8
"""
    pareto_rules.rolling
    ~~~~~~~~~~~~~~~~~~~~

    Walk-forward evaluation. Every window evolves a Pareto front of
    strategies on its training years, then scores each front member on the
    following test year(s) without letting a single test bar reach the
    training step.

    Indicators need history before the first scored day, so both periods
    are computed with up to ``lead_in_days`` calendar days of earlier bars
    prepended. Those bars only warm up the indicators; positions and
    returns are scored inside the period alone.
"""

import io
import logging
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import pandas as pd
from flask import json

from .backtest import BacktestOptions, FitnessReport, evaluate_strategy
from .errors import InvalidSpan, WindowFailed
from .events import window_finished
from .genome import render_rules
from .indicators import DEFAULT_PARAMS, build_signal_matrix
from .market import concat_series, slice_by_years
from .nsga2 import EvolutionParams, evolve

__all__ = (
    'WindowSpec', 'StrategyRecord', 'WindowReport', 'make_windows',
    'period_signals', 'run_window', 'run_all', 'dumps_reports',
    'dump_reports', 'load_reports',
    'reports_to_frame', 'dump_reports_csv', 'summarize', 'format_pair',
)

log = logging.getLogger('pareto_rules')

DEFAULT_LEAD_IN_DAYS = 60


class WindowSpec(namedtuple('WindowSpec', (
        'train_start_year train_end_year test_year test_end_year'))):
    """Training years followed by the test years, both inclusive."""

    __slots__ = ()

    def __new__(cls, train_start_year, train_end_year, test_year,
                test_end_year=None):
        if test_end_year is None:
            test_end_year = test_year
        return super(WindowSpec, cls).__new__(
            cls, train_start_year, train_end_year, test_year, test_end_year)

    @property
    def train_years(self):
        return self.train_end_year - self.train_start_year + 1

    @property
    def test_years(self):
        return self.test_end_year - self.test_year + 1

    @property
    def label(self):
        """``2003-2004/2005``"""
        test = str(self.test_year)
        if self.test_end_year != self.test_year:
            test = '%d-%d' % (self.test_year, self.test_end_year)
        return '%d-%d/%s' % (self.train_start_year, self.train_end_year, test)

    def to_dict(self):
        if self.test_end_year == self.test_year:
            test = self.test_year
        else:
            test = [self.test_year, self.test_end_year]
        return {'train': [self.train_start_year, self.train_end_year],
                'test': test}


class StrategyRecord(namedtuple('StrategyRecord', (
        'genome buy_rule sell_rule in_sample out_sample'))):
    """One front member with its rules and both period reports. ``genome``
    is the 52-character bit string.
    """

    __slots__ = ()

    @classmethod
    def build(cls, genome, in_sample, out_sample):
        buy_rule, sell_rule = render_rules(genome)
        return cls(genome.to_string(), buy_rule, sell_rule,
                   in_sample, out_sample)

    def to_dict(self):
        return {
            'genome': self.genome,
            'buy_rule': self.buy_rule,
            'sell_rule': self.sell_rule,
            'in_sample': self.in_sample.to_dict(),
            'out_sample': self.out_sample.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(data['genome'], data['buy_rule'], data['sell_rule'],
                   FitnessReport.from_dict(data['in_sample']),
                   FitnessReport.from_dict(data['out_sample']))


class WindowReport(namedtuple('WindowReport', 'spec strategies')):
    __slots__ = ()

    label = property(lambda self: self.spec.label)

    def to_dict(self):
        rv = self.spec.to_dict()
        rv['strategies'] = [record.to_dict() for record in self.strategies]
        return rv

    @classmethod
    def from_dict(cls, data):
        train_start, train_end = data['train']
        test = data['test']
        if isinstance(test, list):
            spec = WindowSpec(train_start, train_end, test[0], test[1])
        else:
            spec = WindowSpec(train_start, train_end, test)
        return cls(spec, [StrategyRecord.from_dict(record)
                          for record in data['strategies']])


def make_windows(first_train_year, last_test_year, train_years=2,
                 test_years=1):
    """Rolling windows advancing by ``test_years`` until the last test year.

    :raises InvalidSpan: when not even one window fits.
    """
    if train_years < 1 or test_years < 1:
        raise InvalidSpan(
            'train and test lengths must be at least one year, got %d and %d'
            % (train_years, test_years), 'invalid_span')
    windows = []
    start = first_train_year
    while start + train_years + test_years - 1 <= last_test_year:
        train_end = start + train_years - 1
        windows.append(WindowSpec(start, train_end, train_end + 1,
                                  train_end + test_years))
        start += test_years
    if not windows:
        raise InvalidSpan(
            '%d-%d cannot hold %d training and %d test year(s)' % (
                first_train_year, last_test_year, train_years, test_years),
            'invalid_span', {'first_train_year': first_train_year,
                             'last_test_year': last_test_year})
    return windows


def period_signals(series, period, lead_in_days=DEFAULT_LEAD_IN_DAYS,
                   params=DEFAULT_PARAMS):
    """Signals for ``period`` computed with lead-in bars taken from
    ``series`` strictly before the period starts.
    """
    lead_in = series.lead_in(period.first_date, lead_in_days)
    matrix = build_signal_matrix(concat_series([lead_in, period]), params)
    return matrix.align(period.dates)


def run_window(series, spec, params=None, options=None,
               lead_in_days=DEFAULT_LEAD_IN_DAYS,
               indicator_params=DEFAULT_PARAMS):
    """Evolves on the training years of ``spec`` and scores the resulting
    front on its test years.

    :param series: the full price history.
    :param params: :class:`~pareto_rules.nsga2.EvolutionParams`.
    :param options: :class:`~pareto_rules.backtest.BacktestOptions` or a
                    bare cost rate.
    """
    params = params or EvolutionParams()
    options = BacktestOptions.coerce(options)

    train = slice_by_years(series, spec.train_start_year,
                           spec.train_end_year)
    train_signals = period_signals(series, train, lead_in_days,
                                   indicator_params)

    def fitness(genome):
        return evaluate_strategy(genome, train, train_signals, options)

    front = evolve(fitness, params, label=spec.label)

    test = slice_by_years(series, spec.test_year, spec.test_end_year)
    test_signals = period_signals(series, test, lead_in_days,
                                  indicator_params)

    strategies = []
    for member in front:
        strategies.append(StrategyRecord.build(
            member.genome,
            fitness(member.genome),
            evaluate_strategy(member.genome, test, test_signals, options),
        ))

    log.info('window %s: %d strategies on the front', spec.label,
             len(strategies))
    return WindowReport(spec, strategies)


def run_all(series, windows, params=None, options=None,
            lead_in_days=DEFAULT_LEAD_IN_DAYS, threads=1,
            indicator_params=DEFAULT_PARAMS):
    """Runs every window, seeding window ``i`` with ``params.seed + i``.

    Windows are independent, so with ``threads > 1`` they run on a thread
    pool; reports come back in window order either way.

    :raises WindowFailed: wrapping the first error, naming its window.
    """
    params = params or EvolutionParams()

    def run(item):
        index, spec = item
        try:
            return run_window(series, spec,
                              params.with_seed(params.seed + index),
                              options, lead_in_days, indicator_params)
        except Exception as e:
            log.error('window %s failed: %s', spec.label, e)
            raise WindowFailed(spec, e) from e

    items = list(enumerate(windows))
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = executor.map(run, items)
            reports = []
            for report in results:
                reports.append(report)
                window_finished.send(report.spec, report=report)
        return reports

    reports = []
    for item in items:
        report = run(item)
        reports.append(report)
        window_finished.send(report.spec, report=report)
    return reports


def dumps_reports(reports):
    return json.dumps([report.to_dict() for report in reports],
                      indent=2, ensure_ascii=False) + '\n'


def dump_reports(reports, path):
    """Writes the reports as a JSON array, one object per window."""
    with io.open(path, 'w', encoding='utf-8') as f:
        f.write(dumps_reports(reports))


def load_reports(path):
    with io.open(path, 'r', encoding='utf-8') as f:
        return [WindowReport.from_dict(data) for data in json.load(f)]


def format_pair(report):
    """``[sharpe, mdd]`` with three decimals."""
    return '[%.3f, %.3f]' % (report.sharpe, report.max_drawdown)


def reports_to_frame(reports):
    """One row per strategy, laid out like a results table."""
    rows = []
    for report in reports:
        spec = report.spec
        for number, record in enumerate(report.strategies, 1):
            rows.append({
                'window': spec.label,
                'train': '%d-%d' % (spec.train_start_year,
                                    spec.train_end_year),
                'test': spec.label.split('/', 1)[1],
                'strategy': number,
                'in_sample': format_pair(record.in_sample),
                'out_sample': format_pair(record.out_sample),
                'buy_rule': record.buy_rule,
                'sell_rule': record.sell_rule,
            })
    columns = ['window', 'train', 'test', 'strategy', 'in_sample',
               'out_sample', 'buy_rule', 'sell_rule']
    return pd.DataFrame(rows, columns=columns)


def dump_reports_csv(reports, path):
    reports_to_frame(reports).to_csv(path, index=False, encoding='utf-8')


def summarize(report):
    """The lines printed for one window."""
    spec = report.spec
    lines = ['In-Sample Period: %d-%d Out-Sample Period: %s' % (
        spec.train_start_year, spec.train_end_year,
        spec.label.split('/', 1)[1])]
    for number, record in enumerate(report.strategies, 1):
        lines.append('  %2d. %s -> %s' % (
            number, format_pair(record.in_sample),
            format_pair(record.out_sample)))
    return lines
