# coding: utf-8
"""
    pareto_rules.indicators
    ~~~~~~~~~~~~~~~~~~~~~~~

    The nine technical indicators and their daily buy/sell signals.

    Every rule is a strict crossing: a value resting exactly on a threshold
    (or on the other line) never fires. A signal on day ``t`` needs every
    quantity it compares to be defined on ``t`` and ``t - 1``; cells that
    are not are *masked* and read as no signal. All formulas look only at
    the current and earlier bars, so signals computed on a prefix of a
    series equal the first rows of the signals of the whole series.
"""

import enum
import logging
from collections import namedtuple

import numpy as np
import pandas as pd
from numpy.lib.stride_tricks import sliding_window_view

from .errors import SeriesTooShort

__all__ = (
    'IndicatorKind', 'IndicatorParams', 'IndicatorSignals', 'SignalMatrix',
    'sma', 'ema', 'sma_cross_signals', 'macd_signals', 'momentum_signals',
    'price_osc_signals', 'stochastic_signals', 'rsi_signals', 'cci_signals',
    'williams_signals', 'bollinger_signals', 'build_signal_matrix',
    'signal_counts', 'MIN_BARS',
)

log = logging.getLogger('pareto_rules')


class IndicatorKind(enum.IntEnum):
    """The indicators in canonical order, which is also the bit order of
    every 9-bit block of a genome.
    """

    SMA_CROSS = 0
    MACD = 1
    MOMENTUM = 2
    PRICE_OSC = 3
    STOCHASTIC = 4
    RSI = 5
    CCI = 6
    WILLIAMS = 7
    BOLLINGER = 8

    @property
    def rule_name(self):
        """The short name used in rendered rules and CSV headers."""
        return _RULE_NAMES[self]

    @property
    def is_momentum(self):
        return self <= IndicatorKind.PRICE_OSC

    @property
    def group(self):
        return 'momentum' if self.is_momentum else 'reversal'


_RULE_NAMES = {
    IndicatorKind.SMA_CROSS: 'SMA',
    IndicatorKind.MACD: 'MACD',
    IndicatorKind.MOMENTUM: 'MO',
    IndicatorKind.PRICE_OSC: 'PO',
    IndicatorKind.STOCHASTIC: 'sto',
    IndicatorKind.RSI: 'RSI',
    IndicatorKind.CCI: 'CCI',
    IndicatorKind.WILLIAMS: 'LW',
    IndicatorKind.BOLLINGER: 'BB',
}

MOMENTUM_KINDS = tuple(kind for kind in IndicatorKind if kind.is_momentum)
REVERSAL_KINDS = tuple(kind for kind in IndicatorKind if not kind.is_momentum)


_IndicatorParams = namedtuple('IndicatorParams', [
    'sma_fast', 'sma_slow',
    'macd_fast', 'macd_slow', 'macd_signal',
    'momentum_lag',
    'po_fast', 'po_slow',
    'stoch_window', 'stoch_smooth', 'stoch_low', 'stoch_high',
    'rsi_window', 'rsi_low', 'rsi_high',
    'cci_window', 'cci_constant', 'cci_level',
    'williams_window', 'williams_low', 'williams_high',
    'bb_window', 'bb_width',
])


class IndicatorParams(_IndicatorParams):
    """Window lengths and thresholds. The defaults are the textbook values
    the strategies were designed around; change them only to experiment.
    """

    __slots__ = ()

    def __new__(cls, sma_fast=9, sma_slow=40,
                macd_fast=12, macd_slow=26, macd_signal=9,
                momentum_lag=10,
                po_fast=10, po_slow=20,
                stoch_window=14, stoch_smooth=3, stoch_low=20.0,
                stoch_high=80.0,
                rsi_window=14, rsi_low=30.0, rsi_high=70.0,
                cci_window=20, cci_constant=0.015, cci_level=100.0,
                williams_window=14, williams_low=-80.0, williams_high=-20.0,
                bb_window=20, bb_width=3.0):
        return _IndicatorParams.__new__(
            cls, sma_fast, sma_slow, macd_fast, macd_slow, macd_signal,
            momentum_lag, po_fast, po_slow, stoch_window, stoch_smooth,
            stoch_low, stoch_high, rsi_window, rsi_low, rsi_high,
            cci_window, cci_constant, cci_level, williams_window,
            williams_low, williams_high, bb_window, bb_width)


DEFAULT_PARAMS = IndicatorParams()

#: the fewest bars :func:`build_signal_matrix` accepts with default params
MIN_BARS = DEFAULT_PARAMS.sma_slow + 2

#: CCI mean deviation at or below this fraction of the average counts as 0
CCI_FLAT_TOLERANCE = 1e-12


#: ``buy``, ``sell`` and ``defined`` boolean arrays, one cell per day
IndicatorSignals = namedtuple('IndicatorSignals', 'buy sell defined')


def _values(values):
    return np.asarray(values, dtype='float64')


def _windows(values, n):
    """Trailing windows of length ``n``; row ``i`` covers day ``i + n - 1``."""
    return sliding_window_view(values, n)


def sma(closes, n):
    """Simple moving average. Days before ``n - 1`` are ``nan``."""
    if n < 1:
        raise ValueError('sma window must be >= 1, got %r' % n)
    values = _values(closes)
    out = np.full(len(values), np.nan)
    if len(values) >= n:
        out[n - 1:] = _windows(values, n).mean(axis=1)
    return out


def _rolling_max(values, n):
    out = np.full(len(values), np.nan)
    if len(values) >= n:
        out[n - 1:] = _windows(values, n).max(axis=1)
    return out


def _rolling_min(values, n):
    out = np.full(len(values), np.nan)
    if len(values) >= n:
        out[n - 1:] = _windows(values, n).min(axis=1)
    return out


def _rolling_pstd(values, n):
    out = np.full(len(values), np.nan)
    if len(values) >= n:
        out[n - 1:] = _windows(values, n).std(axis=1)
    return out


def ema(closes, n):
    """Exponential moving average with smoothing ``2 / (n + 1)``, seeded at
    the first value and defined from day 0. ``nan`` inputs before the first
    real value are carried through; the seed is the first real value.
    """
    if n < 1:
        raise ValueError('ema span must be >= 1, got %r' % n)
    values = _values(closes)
    real = ~np.isnan(values)
    if not real.any():
        return values.copy()
    # smoothed around the seed so a flat line stays exactly flat
    seed = values[real.argmax()]
    smoothed = pd.Series(values - seed).ewm(span=n, adjust=False).mean()
    return seed + smoothed.to_numpy()


def _cross_up(a, b, valid):
    """``a`` crosses strictly above ``b`` between ``t - 1`` and ``t``."""
    out = np.zeros(len(a), dtype=bool)
    if len(a) > 1:
        with np.errstate(invalid='ignore'):
            out[1:] = (a[:-1] < b[:-1]) & (a[1:] > b[1:])
    return out & valid


def _cross_down(a, b, valid):
    out = np.zeros(len(a), dtype=bool)
    if len(a) > 1:
        with np.errstate(invalid='ignore'):
            out[1:] = (a[:-1] > b[:-1]) & (a[1:] < b[1:])
    return out & valid


def _pairwise_defined(*lines):
    """True on days where every line is defined today and yesterday."""
    today = np.ones(len(lines[0]), dtype=bool)
    for line in lines:
        today &= ~np.isnan(line)
    out = np.zeros(len(today), dtype=bool)
    out[1:] = today[1:] & today[:-1]
    return out


def _signals(buy, sell, defined):
    buy = buy & defined
    sell = sell & defined
    assert not (buy & sell).any(), 'buy and sell fired on the same day'
    return IndicatorSignals(buy, sell, defined)


def _crossing_signals(line, other, *masks):
    defined = _pairwise_defined(line, other)
    for mask in masks:
        defined &= mask
    return _signals(
        _cross_up(line, other, defined),
        _cross_down(line, other, defined),
        defined,
    )


def _threshold_signals(line, low, high, valid=None):
    """Buy when ``line`` rises through ``low``, sell when it falls through
    ``high``.
    """
    defined = _pairwise_defined(line)
    if valid is not None:
        defined &= valid
    lows = np.full(len(line), low)
    highs = np.full(len(line), high)
    return _signals(
        _cross_up(line, lows, defined),
        _cross_down(line, highs, defined),
        defined,
    )


def sma_cross_signals(series, params=DEFAULT_PARAMS):
    """Fast SMA crossing the slow SMA (9 over 40 by default)."""
    closes = series.closes
    fast = sma(closes, params.sma_fast)
    slow = sma(closes, params.sma_slow)
    return _crossing_signals(fast, slow)


def macd_lines(closes, params=DEFAULT_PARAMS):
    """The MACD line and its signal line, both seeded on day 0."""
    macd = ema(closes, params.macd_fast) - ema(closes, params.macd_slow)
    return macd, ema(macd, params.macd_signal)


def macd_signals(series, params=DEFAULT_PARAMS):
    """MACD line crossing its signal line."""
    macd, signal = macd_lines(series.closes, params)
    return _crossing_signals(macd, signal)


def momentum(closes, lag=10):
    """``C(t) - C(t - lag)``; the first ``lag`` days are ``nan``."""
    values = _values(closes)
    out = np.full(len(values), np.nan)
    if len(values) > lag:
        out[lag:] = values[lag:] - values[:-lag]
    return out


def momentum_signals(series, params=DEFAULT_PARAMS):
    """Momentum crossing zero."""
    line = momentum(series.closes, params.momentum_lag)
    return _threshold_signals(line, 0.0, 0.0)


def price_oscillator(closes, params=DEFAULT_PARAMS):
    slow = ema(closes, params.po_slow)
    return (ema(closes, params.po_fast) - slow) / slow


def price_osc_signals(series, params=DEFAULT_PARAMS):
    """Price oscillator crossing zero."""
    line = price_oscillator(series.closes, params)
    return _threshold_signals(line, 0.0, 0.0)


def _range_position(series, window):
    """Returns ``(closes, highest high, lowest low, degenerate)`` over the
    trailing window. ``degenerate`` marks days where the range is empty.
    """
    high = _rolling_max(series.highs, window)
    low = _rolling_min(series.lows, window)
    with np.errstate(invalid='ignore'):
        degenerate = high == low
    return series.closes, high, low, degenerate


def stochastic_lines(series, params=DEFAULT_PARAMS):
    """Returns ``(K, D, D_slow, degenerate)``. ``K`` is 50 on days where the
    highest high equals the lowest low.
    """
    closes, high, low, degenerate = _range_position(
        series, params.stoch_window)
    with np.errstate(invalid='ignore', divide='ignore'):
        k = 100.0 * (closes - low) / (high - low)
    k[degenerate] = 50.0
    d = sma(k, params.stoch_smooth)
    d_slow = sma(d, params.stoch_smooth)
    return k, d, d_slow, degenerate


def stochastic_signals(series, params=DEFAULT_PARAMS):
    """%D crossing %D-slow while both sit below 20 (buy) or above 80
    (sell).
    """
    k, d, d_slow, degenerate = stochastic_lines(series, params)
    defined = _pairwise_defined(d, d_slow) & ~degenerate
    with np.errstate(invalid='ignore'):
        oversold = (d < params.stoch_low) & (d_slow < params.stoch_low)
        overbought = (d > params.stoch_high) & (d_slow > params.stoch_high)
    return _signals(
        _cross_up(d, d_slow, defined) & oversold,
        _cross_down(d, d_slow, defined) & overbought,
        defined,
    )


def rsi(closes, window=14):
    """Relative strength index over simple averages of gains and losses.

    100 when there were no losses in the window, 0 when there were no
    gains.
    """
    values = _values(closes)
    change = np.full(len(values), np.nan)
    change[1:] = np.diff(values)
    gains = np.where(change > 0, change, 0.0)
    losses = np.where(change < 0, -change, 0.0)
    gains[0] = losses[0] = np.nan

    avg_gain = sma(gains, window)
    avg_loss = sma(losses, window)
    with np.errstate(invalid='ignore', divide='ignore'):
        out = 100.0 - 100.0 / (1.0 + avg_gain / avg_loss)
    out[avg_gain == 0] = 0.0
    out[avg_loss == 0] = 100.0
    return out


def rsi_signals(series, params=DEFAULT_PARAMS):
    """RSI rising through 30 (buy) or falling through 70 (sell)."""
    line = rsi(series.closes, params.rsi_window)
    return _threshold_signals(line, params.rsi_low, params.rsi_high)


def cci(series, params=DEFAULT_PARAMS):
    """Commodity channel index. ``nan`` where the mean deviation is 0 up to
    rounding of the average.
    """
    typical = (series.closes + series.highs + series.lows) / 3.0
    average = sma(typical, params.cci_window)
    deviation = sma(np.abs(average - typical), params.cci_window)
    with np.errstate(invalid='ignore', divide='ignore'):
        out = (typical - average) / (params.cci_constant * deviation)
        flat = deviation <= CCI_FLAT_TOLERANCE * np.abs(average)
    out[flat] = np.nan
    return out


def cci_signals(series, params=DEFAULT_PARAMS):
    """CCI rising through +100 (buy) or falling through -100 (sell)."""
    line = cci(series, params)
    return _threshold_signals(line, params.cci_level, -params.cci_level)


def williams(series, params=DEFAULT_PARAMS):
    """Returns ``(LW, degenerate)``. ``LW`` is -50 where the highest high
    equals the lowest low.
    """
    closes, high, low, degenerate = _range_position(
        series, params.williams_window)
    with np.errstate(invalid='ignore', divide='ignore'):
        line = 100.0 * (closes - high) / (high - low)
    line[degenerate] = -50.0
    return line, degenerate


def williams_signals(series, params=DEFAULT_PARAMS):
    """Williams %R rising through -80 (buy) or falling through -20 (sell)."""
    line, degenerate = williams(series, params)
    return _threshold_signals(
        line, params.williams_low, params.williams_high, ~degenerate)


def bollinger_bands(closes, params=DEFAULT_PARAMS):
    """Returns ``(lower, middle, upper)`` with population deviation."""
    values = _values(closes)
    middle = sma(values, params.bb_window)
    spread = params.bb_width * _rolling_pstd(values, params.bb_window)
    return middle - spread, middle, middle + spread


def bollinger_signals(series, params=DEFAULT_PARAMS):
    """Close climbing back above the lower band (buy) or dropping back
    below the upper band (sell).
    """
    closes = series.closes
    lower, middle, upper = bollinger_bands(closes, params)
    defined = _pairwise_defined(middle)
    return _signals(
        _cross_up(closes, lower, defined),
        _cross_down(closes, upper, defined),
        defined,
    )


_SIGNAL_FUNCTIONS = (
    (IndicatorKind.SMA_CROSS, sma_cross_signals),
    (IndicatorKind.MACD, macd_signals),
    (IndicatorKind.MOMENTUM, momentum_signals),
    (IndicatorKind.PRICE_OSC, price_osc_signals),
    (IndicatorKind.STOCHASTIC, stochastic_signals),
    (IndicatorKind.RSI, rsi_signals),
    (IndicatorKind.CCI, cci_signals),
    (IndicatorKind.WILLIAMS, williams_signals),
    (IndicatorKind.BOLLINGER, bollinger_signals),
)


def indicator_signals(series, kind, params=DEFAULT_PARAMS):
    """Signals of a single indicator."""
    return dict(_SIGNAL_FUNCTIONS)[IndicatorKind(kind)](series, params)


class SignalMatrix(object):
    """Per-day buy/sell signals of all nine indicators.

    ``buy``, ``sell`` and ``defined`` are read-only boolean arrays of shape
    ``(days, 9)`` whose columns follow :class:`IndicatorKind`.
    """

    def __init__(self, dates, buy, sell, defined):
        self.dates = pd.DatetimeIndex(dates)
        self.buy = _frozen(buy)
        self.sell = _frozen(sell)
        self.defined = _frozen(defined)
        shape = (len(self.dates), len(IndicatorKind))
        for name in ('buy', 'sell', 'defined'):
            if getattr(self, name).shape != shape:
                raise ValueError('%s has shape %r, expected %r' % (
                    name, getattr(self, name).shape, shape))

    def __len__(self):
        return len(self.dates)

    def __repr__(self):
        return '<SignalMatrix %d days>' % len(self)

    def as_array(self):
        """A ``(days, 9, 2)`` array holding buy then sell."""
        return np.stack([self.buy, self.sell], axis=-1)

    def column(self, kind):
        kind = IndicatorKind(kind)
        return IndicatorSignals(
            self.buy[:, kind], self.sell[:, kind], self.defined[:, kind])

    def slice(self, start, stop=None):
        """Rows ``start:stop`` as a new matrix."""
        return SignalMatrix(self.dates[start:stop], self.buy[start:stop],
                            self.sell[start:stop], self.defined[start:stop])

    def tail(self, n):
        """The last ``n`` rows."""
        return self.slice(len(self) - n)

    def align(self, dates):
        """The rows matching ``dates``, which must be the trailing dates of
        this matrix. Used to drop warm-up lead-in rows.
        """
        dates = pd.DatetimeIndex(dates)
        if len(dates) > len(self):
            raise ValueError('cannot align %d dates to a %d day matrix' % (
                len(dates), len(self)))
        matrix = self.tail(len(dates))
        if not matrix.dates.equals(dates):
            raise ValueError('signal dates do not match the series dates')
        return matrix

    def to_frame(self):
        """One row per day, a ``date`` column plus ``<NAME>_buy`` and
        ``<NAME>_sell`` for each indicator.
        """
        columns = {'date': self.dates.strftime('%Y-%m-%d')}
        for kind in IndicatorKind:
            columns['%s_buy' % kind.rule_name] = self.buy[:, kind]
            columns['%s_sell' % kind.rule_name] = self.sell[:, kind]
        return pd.DataFrame(columns)


def _frozen(values):
    values = np.array(values, dtype=bool)
    values.flags.writeable = False
    return values


def build_signal_matrix(series, params=DEFAULT_PARAMS):
    """Computes every indicator's signals for a series.

    :param series: an :class:`~pareto_rules.market.OhlcSeries`.
    :param params: optional :class:`IndicatorParams`.
    :returns: a :class:`SignalMatrix` aligned with ``series``.
    """
    need = params.sma_slow + 2
    if len(series) < need:
        raise SeriesTooShort(
            'series has %d bars, indicators need at least %d' % (
                len(series), need),
            'series_too_short', {'bars': len(series), 'need': need})

    days = len(series)
    buy = np.zeros((days, len(IndicatorKind)), dtype=bool)
    sell = np.zeros_like(buy)
    defined = np.zeros_like(buy)
    for kind, compute in _SIGNAL_FUNCTIONS:
        signals = compute(series, params)
        buy[:, kind] = signals.buy
        sell[:, kind] = signals.sell
        defined[:, kind] = signals.defined

    log.debug('built signal matrix for %d days', days)
    return SignalMatrix(series.dates, buy, sell, defined)


def signal_counts(matrix):
    """``{kind: (buys, sells)}`` over the whole matrix."""
    return dict(
        (kind, (int(matrix.buy[:, kind].sum()),
                int(matrix.sell[:, kind].sum())))
        for kind in IndicatorKind
    )
