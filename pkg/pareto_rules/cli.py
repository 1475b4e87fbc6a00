# coding: utf-8
"""
    pareto_rules.cli
    ~~~~~~~~~~~~~~~~

    The ``pareto-rules`` command::

        pareto-rules synth --out sensex.csv
        pareto-rules roll --data sensex.csv --out report.json
        pareto-rules backtest --data sensex.csv 0101...
        pareto-rules render 0101...
        pareto-rules signals --data sensex.csv --out signals.csv

    Errors from the pipeline print ``<module>: <message>`` and exit with
    status 2.
"""

import functools
import logging
import sys

import click
from flask import json

from .backtest import evaluate_strategy
from .config import RunConfig
from .errors import ParetoRulesError
from .events import window_finished
from .genome import Genome, render_rules, BUY, SELL
from .indicators import build_signal_matrix, signal_counts
from .market import load_ohlc, slice_by_years
from .rolling import (
    make_windows, period_signals, run_all, dump_reports, dump_reports_csv,
    summarize,
)
from .synthetic import generate_ohlc, write_csv

__all__ = ('main', 'cmd_signals', 'cmd_backtest', 'cmd_roll', 'cmd_render',
           'cmd_synth')

log = logging.getLogger('pareto_rules')


def cmd_signals(config):
    """Builds the signal matrix of ``config.data_path`` and writes it as CSV
    to ``config.output_path`` (or returns the text when there is none).
    """
    series = load_ohlc(config.data_path)
    matrix = build_signal_matrix(series)
    for kind, (buys, sells) in signal_counts(matrix).items():
        log.info('%s: %d buy / %d sell signals', kind.rule_name, buys, sells)
    frame = matrix.to_frame()
    if config.output_path:
        frame.to_csv(config.output_path, index=False, encoding='utf-8')
        return None
    return frame.to_csv(index=False)


def cmd_backtest(config, genome_string):
    """Scores one genome over the data, or over the years between
    ``config.first_train_year`` and ``config.last_test_year``.

    :returns: ``(report, buy_rule, sell_rule)``.
    """
    genome = Genome.from_string(genome_string)
    config.validate()
    series = load_ohlc(config.data_path)
    start, end = config.first_train_year, config.last_test_year
    if start is None and end is None:
        period = series
        signals = build_signal_matrix(series)
    else:
        period = slice_by_years(
            series,
            series.years[0] if start is None else start,
            series.years[-1] if end is None else end)
        signals = period_signals(series, period, config.lead_in_days)
    report = evaluate_strategy(genome, period, signals,
                               config.backtest_options())
    buy_rule, sell_rule = render_rules(genome)
    return report, buy_rule, sell_rule


def cmd_roll(config, echo=None):
    """Runs the walk-forward experiment and writes the JSON report.

    :param echo: called with each summary line as windows finish.
    :returns: the window reports.
    """
    config.validate()
    series = load_ohlc(config.data_path)
    first = config.first_train_year
    last = config.last_test_year
    windows = make_windows(
        series.years[0] if first is None else first,
        series.years[-1] if last is None else last,
        config.train_years, config.test_years)
    log.info('running %d windows from %s to %s', len(windows),
             windows[0].label, windows[-1].label)

    def on_window_finished(spec, report):
        if echo is not None:
            for line in summarize(report):
                echo(line)

    # windows run concurrently; evaluation inside a window stays serial
    params = config.evolution_params(threads=1)
    with window_finished.connected_to(on_window_finished):
        reports = run_all(series, windows, params,
                          config.backtest_options(),
                          lead_in_days=config.lead_in_days,
                          threads=config.threads)
    if config.output_path:
        dump_reports(reports, config.output_path)
    return reports


def cmd_render(genome_string):
    """Returns the rule text lines for a genome string."""
    genome = Genome.from_string(genome_string)
    buy_rule, sell_rule = render_rules(genome)
    return [
        'BUY  (%d active): %s' % (genome.active_count(BUY), buy_rule),
        'SELL (%d active): %s' % (genome.active_count(SELL), sell_rule),
    ]


def cmd_synth(path, start_year=2003, end_year=2015, seed=7):
    series = generate_ohlc(start_year, end_year, seed=seed)
    write_csv(series, path)
    return series


def handle_errors(f):
    @functools.wraps(f)
    def decorated(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except ParetoRulesError as e:
            click.echo('%s: %s' % (e.module, e), err=True)
            sys.exit(2)
    return decorated


data_option = click.option(
    '--data', 'data_path', required=True,
    help='OHLC CSV file with Date, Open, High, Low, Close columns.')
cost_option = click.option(
    '--cost', 'cost_rate', type=float, default=0.02, show_default=True,
    help='Transaction cost per unit of turnover.')
start_option = click.option(
    '--start-year', 'first_train_year', type=int, default=None,
    help='First year to use; the first year of the data by default.')
end_option = click.option(
    '--end-year', 'last_test_year', type=int, default=None,
    help='Last year to use; the last year of the data by default.')
hold_option = click.option(
    '--hold-on-neutral', is_flag=True, default=False,
    help='Keep the previous position on a neutral signal.')
vol_option = click.option(
    '--vol-source', type=click.Choice(['net', 'asset']), default='net',
    show_default=True, help='Returns the volatility is measured on.')


@click.group()
@click.option('-v', '--verbose', count=True,
              help='Log more; repeat for debug output.')
@click.version_option(package_name='Pareto-Rules')
def main(verbose):
    """Evolves Pareto-optimal technical trading rules."""
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')


@main.command()
@data_option
@click.option('--out', 'output_path', default=None,
              help='Write the CSV here instead of standard output.')
@handle_errors
def signals(**kwargs):
    """Writes the daily buy/sell signals of every indicator."""
    text = cmd_signals(RunConfig(**kwargs))
    if text is not None:
        click.echo(text, nl=False)


@main.command()
@data_option
@cost_option
@start_option
@end_option
@hold_option
@vol_option
@click.argument('genome')
@handle_errors
def backtest(genome, **kwargs):
    """Scores GENOME, a string of 52 zeros and ones."""
    report, buy_rule, sell_rule = cmd_backtest(RunConfig(**kwargs), genome)
    click.echo(json.dumps(report.to_dict(), indent=2))
    click.echo(buy_rule)
    click.echo(sell_rule)


@main.command()
@data_option
@cost_option
@click.option('--pop', 'population', type=int, default=30,
              show_default=True, help='Population size.')
@click.option('--gens', 'generations', type=int, default=5,
              show_default=True, help='Generations per window.')
@click.option('--cx', 'cx_rate', type=float, default=0.9,
              show_default=True, help='Crossover rate.')
@click.option('--mut', 'mut_rate', type=float, default=0.1,
              show_default=True, help='Mutation rate.')
@click.option('--seed', type=int, default=42, show_default=True,
              help='Master seed; window i uses seed + i.')
@click.option('--train-years', type=int, default=2, show_default=True)
@click.option('--test-years', type=int, default=1, show_default=True)
@start_option
@end_option
@click.option('--out', 'output_path', default='report.json',
              show_default=True, help='JSON report file.')
@click.option('--csv', 'csv_path', default=None,
              help='Also write one CSV row per strategy here.')
@click.option('--threads', type=int, default=1, show_default=True,
              help='Windows evaluated at once.')
@hold_option
@vol_option
@handle_errors
def roll(csv_path, **kwargs):
    """Runs the rolling train/test experiment."""
    reports = cmd_roll(RunConfig(**kwargs), echo=click.echo)
    if csv_path:
        dump_reports_csv(reports, csv_path)
    click.echo('wrote %d window report(s) to %s' % (
        len(reports), kwargs['output_path']))


@main.command()
@click.argument('genome')
@handle_errors
def render(genome):
    """Prints the buy and sell rules of GENOME."""
    for line in cmd_render(genome):
        click.echo(line)


@main.command()
@click.option('--out', 'path', required=True, help='CSV file to write.')
@click.option('--start-year', type=int, default=2003, show_default=True)
@click.option('--end-year', type=int, default=2015, show_default=True)
@click.option('--seed', type=int, default=7, show_default=True)
@handle_errors
def synth(path, start_year, end_year, seed):
    """Writes a synthetic daily index."""
    series = cmd_synth(path, start_year, end_year, seed)
    click.echo('wrote %d bars to %s' % (len(series), path))
