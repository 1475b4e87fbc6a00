import logging
import sys

from pareto_rules.events import generation_evolved, window_finished
from pareto_rules.market import load_ohlc
from pareto_rules.nsga2 import EvolutionParams
from pareto_rules.rolling import make_windows, run_all, dump_reports, summarize
from pareto_rules.synthetic import generate_ohlc


logging.basicConfig(level=logging.INFO)


@generation_evolved.connect
def on_generation(label, **kwargs):
    print('%s gen %d: front of %d, best sharpe %.3f, best mdd %.3f' % (
        label, kwargs['generation'], kwargs['front_size'],
        kwargs['best_sharpe'], kwargs['best_mdd']))


@window_finished.connect
def on_window(spec, report):
    print('\n'.join(summarize(report)))


if __name__ == '__main__':
    if len(sys.argv) > 1:
        series = load_ohlc(sys.argv[1])
    else:
        series = generate_ohlc(2003, 2015)
    windows = make_windows(series.years[0], series.years[-1])
    reports = run_all(series, windows,
                      EvolutionParams(population=30, generations=5),
                      options=0.02, threads=4)
    dump_reports(reports, 'report.json')
