# coding: utf-8
"""
    pareto_rules.events
    ~~~~~~~~~~~~~~~~~~~

    Progress notifications. Connect a receiver to follow a long roll::

        from pareto_rules.events import window_finished

        @window_finished.connect
        def on_window(spec, report):
            print(spec.label, len(report.strategies))
"""

from blinker import Namespace

__all__ = ['series_loaded', 'generation_evolved', 'window_finished']

_signals = Namespace()

#: sent by :func:`~pareto_rules.market.load_ohlc` with ``bars`` and ``dropped``
series_loaded = _signals.signal('series-loaded')

#: sent after every replacement step with ``generation``, ``front_size``,
#: ``best_sharpe`` and ``best_mdd``
generation_evolved = _signals.signal('generation-evolved')

#: sent by :func:`~pareto_rules.rolling.run_all` with ``report``
window_finished = _signals.signal('window-finished')
