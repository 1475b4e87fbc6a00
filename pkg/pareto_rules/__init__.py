# -*- coding: utf-8 -*-
"""
    pareto_rules
    ~~~~~~~~~~~~

    Pareto-Rules evolves technical indicator trading strategies as 52-bit
    genomes with NSGA-II, trading off Sharpe ratio against maximum drawdown
    under transaction costs, and walks the search forward over rolling
    train/test windows.

    :license: BSD, see LICENSE for more details.
"""

__version__ = "0.1.0"
__author__ = "Pareto-Rules developers"
__license__ = 'BSD'
