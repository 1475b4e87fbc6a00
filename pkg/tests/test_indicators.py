# coding: utf-8

import unittest

import numpy as np
import pandas as pd
import pytest

from pareto_rules.errors import SeriesTooShort
from pareto_rules.indicators import (
    IndicatorKind, IndicatorParams, MIN_BARS, MOMENTUM_KINDS, REVERSAL_KINDS,
    build_signal_matrix, indicator_signals, signal_counts, sma, ema, rsi,
    momentum, stochastic_lines, cci, williams, bollinger_bands,
)
from pareto_rules.market import OhlcSeries
from ._base import (
    make_series, monotone_closes, shape_series, random_series,
    oracle_sma_cross, oracle_macd, oracle_momentum, oracle_price_osc,
    oracle_stochastic, oracle_rsi, oracle_cci, oracle_williams,
    oracle_bollinger, o_ema,
)


ORACLES = [
    (IndicatorKind.SMA_CROSS, oracle_sma_cross),
    (IndicatorKind.MACD, oracle_macd),
    (IndicatorKind.MOMENTUM, oracle_momentum),
    (IndicatorKind.PRICE_OSC, oracle_price_osc),
    (IndicatorKind.STOCHASTIC, oracle_stochastic),
    (IndicatorKind.RSI, oracle_rsi),
    (IndicatorKind.CCI, oracle_cci),
    (IndicatorKind.WILLIAMS, oracle_williams),
    (IndicatorKind.BOLLINGER, oracle_bollinger),
]


@pytest.mark.parametrize('kind, oracle', ORACLES,
                         ids=[kind.name for kind, _ in ORACLES])
@pytest.mark.parametrize('name, series', shape_series(),
                         ids=[name for name, _ in shape_series()])
def test_signals_match_reference(kind, oracle, name, series):
    signals = indicator_signals(series, kind)
    buy, sell, ties = (np.array(values) for values in oracle(series))
    # days where the compared lines touch depend on summation order
    settled = ~ties
    assert (signals.buy[settled] == buy[settled]).all()
    assert (signals.sell[settled] == sell[settled]).all()


@pytest.mark.parametrize('kind', list(IndicatorKind))
def test_buy_and_sell_never_both(kind):
    for seed in range(5):
        signals = indicator_signals(random_series(seed, 300), kind)
        assert not (signals.buy & signals.sell).any()
        assert not (signals.buy & ~signals.defined).any()
        assert not (signals.sell & ~signals.defined).any()


@pytest.mark.parametrize('kind', list(IndicatorKind))
def test_constant_series_never_signals(kind):
    series = make_series([250] * 120, spread=0.0)
    signals = indicator_signals(series, kind)
    assert not signals.buy.any()
    assert not signals.sell.any()


@pytest.mark.parametrize('level', [100.1, 0.3, 17.7])
@pytest.mark.parametrize('spread', [0.0, 0.1])
def test_flat_cci_is_undefined(level, spread):
    series = make_series([level] * 120, spread=spread)
    assert np.isnan(cci(series)).all()
    signals = indicator_signals(series, IndicatorKind.CCI)
    assert not signals.defined.any()
    assert not signals.buy.any() and not signals.sell.any()


@pytest.mark.parametrize('kind', list(IndicatorKind))
def test_prefix_does_not_change_earlier_days(kind):
    for seed in (5, 6, 7):
        series = random_series(seed, 300)
        full = build_signal_matrix(series).column(kind)
        for days in (MIN_BARS, 61, 150, 299):
            head = series.between(series.first_date, series.dates[days - 1])
            part = build_signal_matrix(head).column(kind)
            assert (part.buy == full.buy[:days]).all()
            assert (part.sell == full.sell[:days]).all()
            assert (part.defined == full.defined[:days]).all()


def flat_range_series(closes, high, low):
    dates = pd.bdate_range('2001-01-01', periods=len(closes))
    return OhlcSeries.from_arrays(dates, closes, [high] * len(closes),
                                  [low] * len(closes), closes)


class TestStrictCrossings(unittest.TestCase):
    def momentum_signals(self, closes):
        return indicator_signals(make_series(closes), IndicatorKind.MOMENTUM)

    def test_momentum_leaving_zero_upwards_does_not_buy(self):
        closes = [100] * 10 + [90] * 20 + [95] * 20
        line = momentum(closes, 10)
        assert (line[20:30] == 0).all() and line[30] > 0
        signals = self.momentum_signals(closes)
        assert not signals.buy.any()
        assert not signals.sell.any()

    def test_momentum_through_zero_buys(self):
        closes = [100] * 10 + [90] * 10 + [95] * 30
        signals = self.momentum_signals(closes)
        assert list(np.flatnonzero(signals.buy)) == [20]

    def test_momentum_leaving_zero_downwards_does_not_sell(self):
        closes = [90] * 10 + [100] * 20 + [95] * 20
        signals = self.momentum_signals(closes)
        assert not signals.buy.any()
        assert not signals.sell.any()

    def test_williams_pinned_at_zero_never_sells(self):
        closes = [100.0 + i for i in range(60)]
        dates = pd.bdate_range('2001-01-01', periods=len(closes))
        series = OhlcSeries.from_arrays(
            dates, closes, closes, [c - 5 for c in closes], closes)
        line, degenerate = williams(series)
        assert (line[13:] == 0).all()
        signals = indicator_signals(series, IndicatorKind.WILLIAMS)
        assert not signals.sell.any()
        assert not signals.buy.any()

    def test_williams_resting_on_level_does_not_sell(self):
        series = flat_range_series([108.0] * 30 + [105.0] * 10, 110.0, 100.0)
        line, degenerate = williams(series)
        assert (line[13:30] == -20).all()
        assert line[30] == -50
        signals = indicator_signals(series, IndicatorKind.WILLIAMS)
        assert not signals.sell.any()

    def test_williams_falling_through_level_sells(self):
        series = flat_range_series([109.0] * 30 + [105.0] * 10, 110.0, 100.0)
        signals = indicator_signals(series, IndicatorKind.WILLIAMS)
        assert list(np.flatnonzero(signals.sell)) == [30]


class TestKinds(unittest.TestCase):
    def test_canonical_order(self):
        assert [kind.rule_name for kind in IndicatorKind] == [
            'SMA', 'MACD', 'MO', 'PO', 'sto', 'RSI', 'CCI', 'LW', 'BB']
        assert [int(kind) for kind in IndicatorKind] == list(range(9))

    def test_groups(self):
        assert len(MOMENTUM_KINDS) == 4
        assert len(REVERSAL_KINDS) == 5
        assert IndicatorKind.PRICE_OSC.is_momentum
        assert not IndicatorKind.STOCHASTIC.is_momentum

    def test_default_params(self):
        params = IndicatorParams()
        assert (params.sma_fast, params.sma_slow) == (9, 40)
        assert (params.po_fast, params.po_slow) == (10, 20)
        assert params.bb_width == 3.0
        assert params.cci_constant == 0.015
        assert IndicatorParams(rsi_window=7).rsi_window == 7


class TestLines(unittest.TestCase):
    def test_sma(self):
        out = sma([1, 2, 3, 4, 5], 3)
        assert np.isnan(out[:2]).all()
        assert list(out[2:]) == [2.0, 3.0, 4.0]

    def test_ema_is_seeded_on_first_value(self):
        values = [10.0, 11.0, 9.0, 12.0, 12.0, 8.0]
        assert np.allclose(ema(values, 3), o_ema(values, 3),
                           rtol=0, atol=1e-12)
        assert ema(values, 3)[0] == 10.0

    def test_ema_of_constant_is_constant(self):
        assert (ema([7.5] * 50, 26) == 7.5).all()
        assert (ema([100.1] * 50, 12) == 100.1).all()

    def test_ema_carries_leading_nan(self):
        out = ema([np.nan, np.nan, 4.0, 6.0], 3)
        assert np.isnan(out[:2]).all()
        assert list(out[2:]) == [4.0, 5.0]
        assert np.isnan(ema([np.nan] * 3, 3)).all()

    def test_momentum(self):
        line = momentum(monotone_closes(30), 10)
        assert np.isnan(line[:10]).all()
        assert (line[10:] == 10).all()

    def test_rsi_without_losses_is_100(self):
        line = rsi(monotone_closes(40), 14)
        assert np.isnan(line[:14]).all()
        assert (line[14:] == 100).all()

    def test_rsi_without_gains_is_0(self):
        line = rsi(list(reversed(monotone_closes(40))), 14)
        assert (line[14:] == 0).all()

    def test_stochastic_degenerate_range(self):
        series = make_series([100] * 30, spread=0.0)
        k, d, d_slow, degenerate = stochastic_lines(series)
        assert (k[13:] == 50).all()
        assert degenerate[13:].all()

    def test_williams_range(self):
        line, degenerate = williams(random_series(1))
        defined = line[~np.isnan(line)]
        assert (defined <= 0).all() and (defined >= -100).all()
        assert not degenerate.any()

    def test_bollinger_bands_bracket_the_mean(self):
        lower, middle, upper = bollinger_bands(random_series(2).closes)
        ok = ~np.isnan(middle)
        assert (lower[ok] <= middle[ok]).all()
        assert (middle[ok] <= upper[ok]).all()
        assert ok.sum() == 200 - 19


class TestSignalMatrix(unittest.TestCase):
    def setUp(self):
        self.series = random_series(4, 250)
        self.matrix = build_signal_matrix(self.series)

    def test_shape(self):
        assert self.matrix.buy.shape == (250, 9)
        assert self.matrix.as_array().shape == (250, 9, 2)
        assert len(self.matrix) == 250

    def test_read_only(self):
        with pytest.raises(ValueError):
            self.matrix.buy[0, 0] = True

    def test_columns_match_single_indicators(self):
        for kind in IndicatorKind:
            single = indicator_signals(self.series, kind)
            column = self.matrix.column(kind)
            assert (column.buy == single.buy).all()
            assert (column.sell == single.sell).all()

    def test_to_frame(self):
        frame = self.matrix.to_frame()
        assert frame.shape == (250, 19)
        assert list(frame.columns[:3]) == ['date', 'SMA_buy', 'SMA_sell']
        assert frame.columns[-1] == 'BB_sell'
        assert frame['date'].iloc[0] == '2001-01-01'

    def test_align_drops_leading_rows(self):
        tail = self.matrix.align(self.series.dates[50:])
        assert len(tail) == 200
        assert (tail.buy == self.matrix.buy[50:]).all()

    def test_align_refuses_other_dates(self):
        with pytest.raises(ValueError):
            self.matrix.align(self.series.dates[10:60])

    def test_signal_counts(self):
        counts = signal_counts(self.matrix)
        assert set(counts) == set(IndicatorKind)
        buys, sells = counts[IndicatorKind.RSI]
        assert buys == self.matrix.buy[:, IndicatorKind.RSI].sum()
        assert sells == self.matrix.sell[:, IndicatorKind.RSI].sum()


def test_series_too_short():
    series = make_series(monotone_closes(MIN_BARS - 1))
    with pytest.raises(SeriesTooShort):
        build_signal_matrix(series)
    assert len(build_signal_matrix(make_series(monotone_closes(MIN_BARS)))) \
        == MIN_BARS
