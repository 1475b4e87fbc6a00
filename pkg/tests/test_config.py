# coding: utf-8

import unittest

import pytest
from flask import Config

from pareto_rules.backtest import BacktestOptions
from pareto_rules.config import ConfigProperty, RunConfig
from pareto_rules.errors import ParetoRulesError, InvalidParams
from pareto_rules.nsga2 import EvolutionParams


class TestConfigProperty(unittest.TestCase):
    def test_descriptor_on_the_class(self):
        prop = RunConfig.population
        assert isinstance(prop, ConfigProperty)
        assert prop.config_name == 'PARETO_POPULATION'

    def test_defaults(self):
        config = RunConfig(data_path='index.csv')
        assert config.cost_rate == 0.02
        assert config.population == 30
        assert config.generations == 5
        assert (config.cx_rate, config.mut_rate) == (0.9, 0.1)
        assert config.seed == 42
        assert (config.train_years, config.test_years) == (2, 1)
        assert config.output_path is None

    def test_config_then_kwargs(self):
        config = RunConfig.from_mapping(
            {'PARETO_POPULATION': 50, 'PARETO_SEED': 1}, seed=9,
            data_path='index.csv')
        assert config.population == 50
        assert config.seed == 9

    def test_flask_config(self):
        flask_config = Config('.')
        flask_config['PARETO_DATA_PATH'] = 'sensex.csv'
        assert RunConfig(flask_config).data_path == 'sensex.csv'

    def test_missing_required(self):
        with pytest.raises(ParetoRulesError) as info:
            RunConfig().data_path
        assert info.value.type == 'missing_setting'
        assert 'PARETO_DATA_PATH' in str(info.value)

    def test_unknown_setting(self):
        with pytest.raises(TypeError):
            RunConfig(populaton=10)

    def test_settings_and_dict(self):
        assert 'data_path' in RunConfig.settings()
        assert 'config' not in RunConfig.settings()
        rv = RunConfig(population=8).to_dict()
        assert rv['population'] == 8
        assert rv['data_path'] is None


class TestValidate(unittest.TestCase):
    def test_valid(self):
        config = RunConfig(data_path='index.csv')
        assert config.validate() is config

    def test_collects_problems(self):
        config = RunConfig(data_path='index.csv', population=1, cx_rate=2.0,
                           cost_rate=-0.01)
        with pytest.raises(InvalidParams) as info:
            config.validate()
        message = str(info.value)
        assert 'population' in message
        assert 'crossover' in message
        assert 'cost' in message

    def test_vol_source(self):
        with pytest.raises(InvalidParams):
            RunConfig(vol_source='gross').validate()


class TestDerived(unittest.TestCase):
    def test_evolution_params(self):
        config = RunConfig(population=12, generations=3, seed=5, threads=4)
        params = config.evolution_params()
        assert params == EvolutionParams(population=12, generations=3,
                                         seed=5, threads=4)
        assert config.evolution_params(threads=1).threads == 1

    def test_backtest_options(self):
        config = RunConfig(cost_rate=0.01, hold_on_neutral=True,
                           vol_source='asset')
        assert config.backtest_options() == BacktestOptions(
            0.01, True, 'asset')
