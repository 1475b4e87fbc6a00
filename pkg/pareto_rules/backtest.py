# coding: utf-8
"""
    pareto_rules.backtest
    ~~~~~~~~~~~~~~~~~~~~~

    Turns a daily final-signal series into unit long/short positions, net
    returns after proportional transaction costs and the two objectives
    every strategy is judged by: the Sharpe ratio and the (signed) maximum
    drawdown.

    Positions trade on the previous day's signal, so a signal computed from
    the close of day ``t - 1`` earns the return of day ``t``.
"""

import logging
import operator
from collections import namedtuple

import numpy as np
import pandas as pd

from .errors import BacktestError, DegeneratePrice
from .genome import signal_series
from .nsga2 import ObjectiveVector

__all__ = (
    'BacktestOptions', 'ReturnLedger', 'FitnessReport',
    'positions_from_signals', 'turnover', 'net_returns',
    'annualized_return', 'annualized_vol', 'sharpe', 'max_drawdown',
    'equity_curve', 'report_from_ledger', 'evaluate_strategy',
    'evaluate_signals',
)

log = logging.getLogger('pareto_rules')

TRADING_DAYS = 252
#: stands in for sqrt(252)
VOL_SCALE = 16.0

VOL_SOURCES = ('net', 'asset')


class BacktestOptions(namedtuple('BacktestOptions',
                                 'cost_rate hold_on_neutral vol_source')):
    """How a strategy is traded and scored.

    :param cost_rate: transaction cost per unit of turnover, 0.02 is 2%.
    :param hold_on_neutral: keep the previous position on a neutral signal
                            instead of going flat.
    :param vol_source: ``'net'`` to measure volatility on the strategy's net
                       returns, ``'asset'`` to use the instrument's returns.
    """

    __slots__ = ()

    def __new__(cls, cost_rate=0.02, hold_on_neutral=False, vol_source='net'):
        if not cost_rate >= 0:
            raise BacktestError(
                'cost rate must be non-negative, got %r' % (cost_rate,),
                'invalid_cost')
        if vol_source not in VOL_SOURCES:
            raise BacktestError(
                'vol source must be one of %s, got %r' % (
                    ', '.join(VOL_SOURCES), vol_source),
                'invalid_vol_source')
        return super(BacktestOptions, cls).__new__(
            cls, float(cost_rate), bool(hold_on_neutral), vol_source)

    @classmethod
    def coerce(cls, value):
        """Accepts options or a bare cost rate."""
        if isinstance(value, cls):
            return value
        if value is None:
            return cls()
        return cls(cost_rate=value)


class ReturnLedger(namedtuple('ReturnLedger',
                              'positions r gross tau net cost_rate')):
    """Daily ledger of one backtest. Every field except ``cost_rate`` is a
    float array with one entry per trading day.
    """

    __slots__ = ()

    def __len__(self):
        return len(self.net)


class FitnessReport(dict):
    """Scores of one strategy over one period, serialized as::

        {"sharpe": 1.19, "mdd": -0.106, "ann_return": 0.21,
         "ann_vol": 0.176, "turnover": 12.0}
    """

    def __init__(self, sharpe, mdd, ann_return, ann_vol, turnover):
        super(FitnessReport, self).__init__(
            sharpe=float(sharpe), mdd=float(mdd),
            ann_return=float(ann_return), ann_vol=float(ann_vol),
            turnover=float(turnover),
        )

    sharpe = property(operator.itemgetter('sharpe'))
    max_drawdown = property(operator.itemgetter('mdd'))
    annualized_return = property(operator.itemgetter('ann_return'))
    annualized_vol = property(operator.itemgetter('ann_vol'))
    total_turnover = property(operator.itemgetter('turnover'))

    @property
    def objectives(self):
        return ObjectiveVector(self.sharpe, self.max_drawdown)

    def to_dict(self):
        return dict(
            (key, self[key])
            for key in ('sharpe', 'mdd', 'ann_return', 'ann_vol', 'turnover')
        )

    @classmethod
    def from_dict(cls, data):
        return cls(data['sharpe'], data['mdd'], data['ann_return'],
                   data['ann_vol'], data['turnover'])

    def __repr__(self):
        return '<FitnessReport [%.3f, %.3f]>' % (
            self.sharpe, self.max_drawdown)


def positions_from_signals(final, hold_on_neutral=False):
    """Positions lagged one day behind the signals.

    :param final: +1/-1/0 signal per day.
    :param hold_on_neutral: carry the last non-neutral signal over neutral
                            days instead of going flat.
    """
    final = np.asarray(final, dtype=float)
    if final.ndim != 1 or not len(final):
        raise BacktestError('need a non-empty signal series',
                            'empty_signals')
    if hold_on_neutral:
        final = (pd.Series(final).replace(0.0, np.nan)
                 .ffill().fillna(0.0).to_numpy())
    positions = np.zeros(len(final))
    positions[1:] = final[:-1]
    return positions


def turnover(positions, r, gross):
    """Drift-adjusted day-over-day position change, always non-negative.

    The position carried over from ``t - 1`` drifts by
    ``(1 + r[t-1]) / (1 + gross[t-1])``; a zero denominator counts as no
    drift.
    """
    positions = np.asarray(positions, dtype=float)
    r = np.asarray(r, dtype=float)
    gross = np.asarray(gross, dtype=float)
    tau = np.empty(len(positions))
    if not len(tau):
        return tau
    tau[0] = abs(positions[0])
    denominator = 1.0 + gross[:-1]
    safe = denominator != 0
    drift = np.ones(len(denominator))
    drift[safe] = (1.0 + r[:-1][safe]) / denominator[safe]
    tau[1:] = np.abs(positions[1:] - positions[:-1] * drift)
    return tau


def _asset_returns(closes):
    closes = np.asarray(closes, dtype=float)
    if (closes[:-1] == 0).any():
        raise DegeneratePrice('close of 0 ends a return period',
                              'degenerate_price')
    r = np.zeros(len(closes))
    r[1:] = (closes[1:] - closes[:-1]) / closes[:-1]
    return r


def net_returns(series, positions, cost_rate):
    """Builds the full :class:`ReturnLedger`.

    :param series: an :class:`~pareto_rules.market.OhlcSeries` or a plain
                   array of closes.
    :param positions: one position per day, as from
                      :func:`positions_from_signals`.
    :param cost_rate: cost per unit of turnover.
    """
    closes = getattr(series, 'closes', series)
    positions = np.asarray(positions, dtype=float)
    if len(closes) != len(positions):
        raise BacktestError(
            '%d closes but %d positions' % (len(closes), len(positions)),
            'length_mismatch')
    if len(closes) < 2:
        raise BacktestError('need at least two days to backtest',
                            'too_short')
    if cost_rate < 0:
        raise BacktestError('cost rate must be non-negative',
                            'invalid_cost')
    r = _asset_returns(closes)
    gross = positions * r
    tau = turnover(positions, r, gross)
    net = gross - tau * cost_rate
    return ReturnLedger(positions, r, gross, tau, net, float(cost_rate))


def _ruined(returns):
    return bool((1.0 + returns <= 0).any())


def annualized_return(returns):
    """Geometric annualization over 252 trading days. A day that wipes
    out the capital floors the result at -1.
    """
    returns = np.asarray(returns, dtype=float)
    if not len(returns):
        return 0.0
    if _ruined(returns):
        return -1.0
    growth = np.log1p(returns).sum() * TRADING_DAYS / len(returns)
    return float(np.expm1(growth))


def annualized_vol(returns):
    """Population standard deviation of daily returns times 16."""
    returns = np.asarray(returns, dtype=float)
    if not len(returns) or np.ptp(returns) == 0:
        # the mean of a constant run need not round back to the constant
        return 0.0
    return float(VOL_SCALE * np.std(returns))


def sharpe(returns, vol_returns=None):
    """Annualized return over annualized volatility, 0 when there is no
    volatility.

    :param vol_returns: returns to take the volatility of, ``returns``
                        when omitted.
    """
    vol = annualized_vol(returns if vol_returns is None else vol_returns)
    if vol == 0:
        return 0.0
    return annualized_return(returns) / vol


def max_drawdown(returns):
    """Deepest fall of the wealth index below its running peak, as a
    signed fraction in ``[-1, 0]``. The index starts at 1.
    """
    returns = np.asarray(returns, dtype=float)
    if not len(returns):
        return 0.0
    if _ruined(returns):
        return -1.0
    wealth = np.cumprod(1.0 + returns)
    peaks = np.maximum.accumulate(np.concatenate(([1.0], wealth)))[1:]
    drawdown = (wealth - peaks) / peaks
    return float(min(drawdown.min(), 0.0))


def equity_curve(returns, dates=None):
    """The wealth index as a :class:`pandas.Series`."""
    returns = np.asarray(returns, dtype=float)
    return pd.Series(np.cumprod(1.0 + returns), index=dates,
                     name='wealth')


def report_from_ledger(ledger, vol_source='net'):
    vol_returns = ledger.net if vol_source == 'net' else ledger.r
    ann_return = annualized_return(ledger.net)
    ann_vol = annualized_vol(vol_returns)
    return FitnessReport(
        sharpe=ann_return / ann_vol if ann_vol else 0.0,
        mdd=max_drawdown(ledger.net),
        ann_return=ann_return,
        ann_vol=ann_vol,
        turnover=ledger.tau.sum(),
    )


def evaluate_signals(final, series, options=None):
    """Backtests a precomputed final-signal series.

    :returns: ``(report, ledger)``.
    """
    options = BacktestOptions.coerce(options)
    positions = positions_from_signals(final, options.hold_on_neutral)
    ledger = net_returns(series, positions, options.cost_rate)
    return report_from_ledger(ledger, options.vol_source), ledger


def evaluate_strategy(genome, series, signals, options=None):
    """Scores ``genome`` on ``series``.

    :param signals: a :class:`~pareto_rules.indicators.SignalMatrix`
                    covering at least the dates of ``series``; extra
                    leading rows (warm-up lead-in) are ignored.
    :param options: :class:`BacktestOptions` or a bare cost rate.
    """
    signals = signals.align(series.dates)
    report, _ = evaluate_signals(signal_series(genome, signals), series,
                                 options)
    return report
