# coding: utf-8
"""
    pareto_rules.market
    ~~~~~~~~~~~~~~~~~~~

    Loading, validating and slicing daily OHLC price series.

    A CSV file needs a header with at least ``Date, Open, High, Low, Close``
    (matched case-insensitively, extra columns such as ``Adj Close`` and
    ``Volume`` are ignored) and ISO dates::

        Date,Open,High,Low,Close,Adj Close,Volume
        2005-01-03,6626.49,6679.25,6600.89,6679.20,6679.20,0
"""

import os
import logging
from collections import namedtuple

import numpy as np
import pandas as pd
from werkzeug.utils import cached_property

from .errors import MarketDataError, FileNotFound, MalformedHeader
from .errors import MalformedRow, EmptySeries, NonMonotoneDates
from .events import series_loaded

__all__ = ('OhlcBar', 'OhlcSeries', 'load_ohlc', 'slice_by_years',
           'concat_series')

log = logging.getLogger('pareto_rules')

PRICE_COLUMNS = ('open', 'high', 'low', 'close')
REQUIRED_COLUMNS = ('date',) + PRICE_COLUMNS
DATE_FORMAT = '%Y-%m-%d'


OhlcBar = namedtuple('OhlcBar', 'date open high low close')


class OhlcSeries(object):
    """An immutable run of daily bars with strictly increasing dates.

    The bars are held in a :class:`pandas.DataFrame` indexed by date. The
    price columns are handed out as read-only :mod:`numpy` arrays, so one
    series can be shared by any number of concurrent evaluators.

    :param frame: a data frame with a :class:`~pandas.DatetimeIndex` and
                  ``open``, ``high``, ``low`` and ``close`` columns.
    """

    def __init__(self, frame):
        if not isinstance(frame.index, pd.DatetimeIndex):
            raise TypeError('OhlcSeries needs a DatetimeIndex')
        frame = frame.loc[:, list(PRICE_COLUMNS)].astype('float64')
        frame = frame.rename_axis('date')
        _validate(frame)
        self._frame = frame

    @classmethod
    def _wrap(cls, frame):
        # sub-frames of a validated series are valid as long as non-empty
        series = cls.__new__(cls)
        series._frame = frame
        return series

    @classmethod
    def from_bars(cls, bars):
        bars = list(bars)
        index = pd.DatetimeIndex([pd.Timestamp(bar.date) for bar in bars])
        frame = pd.DataFrame(
            [tuple(bar[1:]) for bar in bars], index=index,
            columns=list(PRICE_COLUMNS), dtype='float64')
        return cls(frame)

    @classmethod
    def from_arrays(cls, dates, opens, highs, lows, closes):
        frame = pd.DataFrame({
            'open': opens, 'high': highs, 'low': lows, 'close': closes,
        }, index=pd.DatetimeIndex(dates))
        return cls(frame)

    def __len__(self):
        return len(self._frame)

    def __iter__(self):
        for row in self._frame.itertuples():
            yield OhlcBar(row.Index.date(), row.open, row.high,
                          row.low, row.close)

    def __eq__(self, other):
        if not isinstance(other, OhlcSeries):
            return NotImplemented
        return self._frame.equals(other._frame)

    def __ne__(self, other):
        rv = self.__eq__(other)
        if rv is NotImplemented:
            return rv
        return not rv

    __hash__ = None

    def __repr__(self):
        return '<OhlcSeries %s..%s (%d bars)>' % (
            self.first_date.date(), self.last_date.date(), len(self))

    @property
    def frame(self):
        """A copy of the underlying data frame."""
        return self._frame.copy()

    @property
    def bars(self):
        return list(self)

    @property
    def dates(self):
        return self._frame.index

    @property
    def first_date(self):
        return self._frame.index[0]

    @property
    def last_date(self):
        return self._frame.index[-1]

    @cached_property
    def opens(self):
        return self._column('open')

    @cached_property
    def highs(self):
        return self._column('high')

    @cached_property
    def lows(self):
        return self._column('low')

    @cached_property
    def closes(self):
        return self._column('close')

    @cached_property
    def years(self):
        """Sorted distinct calendar years covered by the series."""
        return sorted(set(int(year) for year in self._frame.index.year))

    def _column(self, name):
        values = self._frame[name].to_numpy(dtype='float64', copy=True)
        values.flags.writeable = False
        return values

    def between(self, start, end):
        """Bars dated in ``[start, end]``, both ends inclusive."""
        index = self._frame.index
        mask = (index >= pd.Timestamp(start)) & (index <= pd.Timestamp(end))
        if not mask.any():
            raise EmptySeries(
                'no bars between %s and %s' % (start, end), 'empty_series')
        return OhlcSeries._wrap(self._frame[mask])

    def lead_in(self, before, days):
        """The bars dated within ``days`` calendar days strictly before
        ``before``, or ``None`` when there are none.
        """
        before = pd.Timestamp(before)
        index = self._frame.index
        mask = (index < before) & (index >= before - pd.Timedelta(days=days))
        if not mask.any():
            return None
        return OhlcSeries._wrap(self._frame[mask])


def _validate(frame):
    if frame.empty:
        raise EmptySeries('series has no bars', 'empty_series')

    index = frame.index
    if not (index.is_monotonic_increasing and index.is_unique):
        diffs = np.diff(index.asi8)
        bad = int(np.flatnonzero(diffs <= 0)[0]) + 1
        raise NonMonotoneDates(
            'dates are not strictly increasing at %s (after %s)' % (
                index[bad].date(), index[bad - 1].date()),
            'non_monotone_dates', {'date': str(index[bad].date())})

    values = frame.to_numpy()
    opens, highs, lows, closes = values.T
    finite = np.isfinite(values).all(axis=1)
    positive = (values > 0).all(axis=1)
    ordered = (
        (lows <= opens) & (opens <= highs) &
        (lows <= closes) & (closes <= highs)
    )
    ok = finite & positive & ordered
    if not ok.all():
        bad = int(np.flatnonzero(~ok)[0])
        raise MalformedRow(
            'bar %s violates low <= open, close <= high with positive '
            'prices: %r' % (index[bad].date(), tuple(values[bad])),
            'malformed_row', {'date': str(index[bad].date())})


def load_ohlc(path):
    """Loads a daily OHLC series from a CSV file.

    Rows with a missing or non-numeric price, or an unparsable date, are
    dropped and counted in a warning. Everything else that is wrong with
    the file raises.

    :param path: the CSV file path.
    :returns: a validated :class:`OhlcSeries`.
    """
    if not os.path.isfile(path):
        raise FileNotFound(path)

    try:
        raw = pd.read_csv(path, dtype=str, keep_default_na=False,
                          encoding='utf-8-sig')
    except pd.errors.EmptyDataError:
        raise MalformedHeader(
            '%s: empty file, expected a header row' % path,
            'malformed_header', {'path': path})

    columns = {}
    for column in raw.columns:
        columns.setdefault(str(column).strip().lower(), column)
    missing = [name for name in REQUIRED_COLUMNS if name not in columns]
    if missing:
        raise MalformedHeader(
            '%s: missing column(s) %s' % (path, ', '.join(missing)),
            'malformed_header', {'path': path, 'missing': missing})

    raw = raw[[columns[name] for name in REQUIRED_COLUMNS]]
    raw.columns = list(REQUIRED_COLUMNS)

    dates = pd.to_datetime(
        raw['date'].str.strip(), format=DATE_FORMAT, errors='coerce')
    prices = pd.DataFrame({
        name: pd.to_numeric(raw[name].str.strip(), errors='coerce')
        for name in PRICE_COLUMNS
    })
    valid = (dates.notna() & prices.notna().all(axis=1)).to_numpy()
    dropped = int((~valid).sum())
    if dropped:
        log.warning('%s: dropped %d row(s) with a missing or non-numeric '
                    'field', path, dropped)
    if not valid.any():
        raise EmptySeries('%s: no valid rows' % path, 'empty_series',
                          {'path': path})

    frame = prices[valid].copy()
    frame.index = pd.DatetimeIndex(dates[valid])
    series = OhlcSeries(frame)

    log.info('loaded %d bars from %s (%s..%s)', len(series), path,
             series.first_date.date(), series.last_date.date())
    series_loaded.send(path, bars=len(series), dropped=dropped)
    return series


def slice_by_years(series, start_year, end_year):
    """Bars whose calendar year lies in ``[start_year, end_year]``."""
    if start_year > end_year:
        raise MarketDataError(
            'start year %d is after end year %d' % (start_year, end_year),
            'invalid_year_range')
    years = series.dates.year
    mask = (years >= start_year) & (years <= end_year)
    if not mask.any():
        raise EmptySeries(
            'no bars in %d-%d' % (start_year, end_year), 'empty_series',
            {'start_year': start_year, 'end_year': end_year})
    return OhlcSeries._wrap(series._frame[mask])


def concat_series(parts):
    """Joins consecutive series back into one. Overlapping or out of order
    parts raise :class:`~pareto_rules.errors.NonMonotoneDates`.
    """
    parts = [part for part in parts if part is not None]
    if not parts:
        raise EmptySeries('nothing to concatenate', 'empty_series')
    return OhlcSeries(pd.concat([part._frame for part in parts]))
