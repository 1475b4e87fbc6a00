# coding: utf-8
"""
    pareto_rules.synthetic
    ~~~~~~~~~~~~~~~~~~~~~~

    A reproducible synthetic daily index for fixtures and smoke runs.

    Closes follow a geometric random walk whose drift switches sign between
    regimes, so trend and reversal indicators both get something to react
    to. Prices are rounded to cents and always satisfy
    ``low <= open, close <= high``.
"""

import logging

import numpy as np
import pandas as pd

from .errors import MarketDataError
from .market import OhlcSeries

__all__ = ('generate_ohlc', 'write_csv')

log = logging.getLogger('pareto_rules')


def generate_ohlc(start_year, end_year, seed=7, start_price=1000.0,
                  drift=0.0006, volatility=0.012, regime_length=90):
    """Business-day bars from January 1 of ``start_year`` to December 31 of
    ``end_year``.

    :param seed: same seed, same series.
    :param drift: absolute daily log drift inside a regime.
    :param volatility: daily log volatility of the close.
    :param regime_length: trading days between possible drift flips.
    """
    if start_year > end_year:
        raise MarketDataError('start year %d is after end year %d' % (
            start_year, end_year), 'invalid_year_range')
    dates = pd.bdate_range('%d-01-01' % start_year, '%d-12-31' % end_year)
    size = len(dates)
    rng = np.random.default_rng(seed)

    blocks = size // regime_length + 1
    signs = np.repeat(rng.choice([-1.0, 1.0], size=blocks),
                      regime_length)[:size]
    steps = drift * signs + volatility * rng.standard_normal(size)
    closes = start_price * np.exp(np.cumsum(steps))

    opens = np.empty(size)
    opens[0] = start_price
    opens[1:] = closes[:-1] * np.exp(
        0.25 * volatility * rng.standard_normal(size - 1))

    spread = 0.5 * volatility * np.abs(rng.standard_normal((2, size)))
    highs = np.maximum(opens, closes) * (1.0 + spread[0])
    lows = np.minimum(opens, closes) * (1.0 - spread[1])

    series = OhlcSeries.from_arrays(
        dates, np.round(opens, 2), np.round(highs, 2), np.round(lows, 2),
        np.round(closes, 2))
    log.debug('generated %d synthetic bars for %d-%d (seed %d)',
              len(series), start_year, end_year, seed)
    return series


def write_csv(series, path):
    """Writes ``series`` in the format :func:`~pareto_rules.market.\
load_ohlc` reads."""
    frame = series.frame
    frame.columns = ['Open', 'High', 'Low', 'Close']
    frame.index = frame.index.rename('Date')
    frame.to_csv(path, date_format='%Y-%m-%d', encoding='utf-8')
