# coding: utf-8

import math
import unittest

import mock
import numpy as np
import pytest

from pareto_rules.errors import EvolutionError, InvalidParams
from pareto_rules.events import generation_evolved
from pareto_rules.genome import genome_key, random_genome
from pareto_rules.nsga2 import (
    ObjectiveVector, Individual, Population, EvolutionParams, FitnessCache,
    dominates, fast_nondominated_sort, crowding_distance, crowded_compare,
    rank_population, tournament, make_offspring, next_generation, evolve,
)
from ._base import oracle_fronts

INF = float('inf')


def population(points):
    return Population([Individual(None, tuple(p)) for p in points])


def toy_fitness(genome):
    """Two conflicting objectives over the bits of a genome."""
    bits = genome.canonical().bits
    return ObjectiveVector(float(sum(bits[:26])), -float(sum(bits[26:])))


class TestDominance(unittest.TestCase):
    def test_examples(self):
        assert dominates((2, -0.1), (1, -0.2))
        assert not dominates((1, -0.1), (1, -0.1))
        assert not dominates((2, -0.3), (1, -0.1))
        assert not dominates((1, -0.1), (2, -0.3))

    def test_irreflexive_and_transitive(self):
        rng = np.random.default_rng(0)
        points = [tuple(p) for p in rng.integers(0, 5, size=(40, 2))]
        for a in points:
            assert not dominates(a, a)
            for b in points:
                for c in points:
                    if dominates(a, b) and dominates(b, c):
                        assert dominates(a, c)


class TestSorting(unittest.TestCase):
    def test_example(self):
        pop = population([(2, 2), (1, 1), (0, 3)])
        assert fast_nondominated_sort(pop) == [[0, 2], [1]]
        assert [member.rank for member in pop] == [0, 1, 0]

    def test_identical_points(self):
        pop = population([(1, 1)] * 5)
        assert fast_nondominated_sort(pop) == [[0, 1, 2, 3, 4]]

    def test_matches_peeling(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            size = int(rng.integers(1, 61))
            points = [tuple(p) for p in rng.integers(0, 8, size=(size, 2))]
            assert fast_nondominated_sort(population(points)) == \
                oracle_fronts(points)

    def test_front_partition(self):
        rng = np.random.default_rng(2)
        points = [tuple(p) for p in rng.normal(size=(50, 2))]
        fronts = fast_nondominated_sort(population(points))
        assert sorted(i for front in fronts for i in front) == list(range(50))
        for k, front in enumerate(fronts):
            for i in front:
                assert not any(dominates(points[j], points[i]) for j in front)
                if k:
                    assert any(dominates(points[j], points[i])
                               for earlier in fronts[:k] for j in earlier)


class TestCrowding(unittest.TestCase):
    def test_two_members(self):
        pop = population([(0, 1), (1, 0)])
        assert crowding_distance([0, 1], pop) == [INF, INF]

    def test_worked_example(self):
        pop = population([(0, 2), (1, 1), (2, 0)])
        assert crowding_distance([0, 1, 2], pop) == [INF, 2.0, INF]
        assert pop[1].crowding == 2.0

    def test_duplicates(self):
        pop = population([(1, 1)] * 4)
        distances = crowding_distance([0, 1, 2, 3], pop)
        assert distances[0] == INF and distances[3] == INF
        assert distances[1:3] == [0.0, 0.0]

    def test_empty_front(self):
        with pytest.raises(EvolutionError):
            crowding_distance([], population([(1, 1)]))


class TestCompare(unittest.TestCase):
    def member(self, rank, crowding, index):
        member = Individual(None, (0, 0), index)
        member.rank, member.crowding = rank, crowding
        return member

    def test_rank_first(self):
        assert crowded_compare(self.member(0, 0.1, 1),
                               self.member(1, INF, 0)) == -1

    def test_crowding_second(self):
        assert crowded_compare(self.member(0, INF, 1),
                               self.member(0, 1.5, 0)) == -1

    def test_index_breaks_ties(self):
        assert crowded_compare(self.member(0, 1.0, 3),
                               self.member(0, 1.0, 4)) == -1
        assert crowded_compare(self.member(0, 1.0, 4),
                               self.member(0, 1.0, 3)) == 1

    def test_tournament_picks_the_better(self):
        pop = population([(2, 2), (1, 1)])
        rank_population(pop)
        rng = np.random.default_rng(0)
        assert all(tournament(pop, rng) is pop[0] for _ in range(20))


class TestGeneration(unittest.TestCase):
    def ranked(self, seed, size=10):
        rng = np.random.default_rng(seed)
        pop = Population.from_genomes(
            [random_genome(rng) for _ in range(size)])
        for member in pop:
            member.objectives = toy_fitness(member.genome)
        rank_population(pop)
        return pop

    def test_offspring_without_variation_copy_parents(self):
        pop = self.ranked(0)
        offspring = make_offspring(pop, np.random.default_rng(1), 0.0, 0.0)
        parents = set(pop.genomes)
        assert len(offspring) == 10
        assert all(genome in parents for genome in offspring.genomes)

    def test_offspring_are_deterministic(self):
        pop = self.ranked(0)
        first = make_offspring(pop, np.random.default_rng(5), 0.9, 0.1)
        second = make_offspring(pop, np.random.default_rng(5), 0.9, 0.1)
        assert first.genomes == second.genomes

    def test_odd_population(self):
        pop = self.ranked(0, size=7)
        offspring = make_offspring(pop, np.random.default_rng(2), 0.9, 0.1)
        assert len(offspring) == 7

    def test_elitism(self):
        parents = population([(10, 10), (9, 11), (11, 9)])
        offspring = population([(1, 1), (0, 2), (2, 0)])
        rank_population(parents)
        survivors = next_generation(parents, offspring)
        assert sorted(m.objectives for m in survivors) == \
            sorted(m.objectives for m in parents)
        survivors = next_generation(offspring, parents)
        assert sorted(m.objectives for m in survivors) == \
            sorted(m.objectives for m in parents)

    def test_truncation_matches_rule(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            points = [tuple(p) for p in rng.integers(0, 10, size=(16, 2))]
            parents = population(points[:8])
            offspring = population(points[8:])
            survivors = next_generation(parents, offspring)
            assert len(survivors) == 8

            pool = population(points)
            expected = []
            for front in rank_population(pool):
                members = sorted((pool[i] for i in front),
                                 key=lambda m: (-m.crowding, m.index))
                expected.extend(m.objectives for m in members)
            assert sorted(m.objectives for m in survivors) == \
                sorted(expected[:8])


class TestParams(unittest.TestCase):
    def test_defaults(self):
        params = EvolutionParams()
        assert (params.population, params.generations) == (30, 5)
        assert (params.cx_rate, params.mut_rate) == (0.9, 0.1)

    def test_invalid(self):
        for kwargs in ({'population': 1}, {'generations': 0},
                       {'cx_rate': 1.1}, {'mut_rate': -0.1},
                       {'threads': 0}):
            with pytest.raises(InvalidParams):
                EvolutionParams(**kwargs).validate()


class TestCache(unittest.TestCase):
    def test_memoizes_by_canonical_genome(self):
        fitness = mock.Mock(side_effect=toy_fitness)
        cache = FitnessCache(fitness)
        genome = random_genome(np.random.default_rng(0))
        cache.evaluate([genome, genome, genome.canonical()])
        assert fitness.call_count == 1
        assert (cache.hits, cache.misses) == (2, 1)
        assert genome in cache

    def test_rejects_non_finite(self):
        cache = FitnessCache(lambda genome: (math.nan, 0.0))
        with pytest.raises(EvolutionError):
            cache.get(random_genome(np.random.default_rng(0)))


class TestEvolve(unittest.TestCase):
    def test_front_is_non_dominated_and_unique(self):
        front = evolve(toy_fitness, EvolutionParams(population=12,
                                                    generations=4))
        keys = [genome_key(member.genome) for member in front]
        assert len(keys) == len(set(keys))
        for a in front:
            assert a.rank == 0
            assert not any(dominates(b.objectives, a.objectives)
                           for b in front)
        assert [tuple(m.objectives) for m in front] == \
            sorted(tuple(m.objectives) for m in front)

    def test_single_generation(self):
        front = evolve(toy_fitness, EvolutionParams(population=4,
                                                    generations=1))
        assert 1 <= len(front) <= 4

    def test_deterministic_across_threads(self):
        params = EvolutionParams(population=10, generations=3, seed=7)
        serial = evolve(toy_fitness, params)
        threaded = evolve(toy_fitness, params._replace(threads=4))
        assert [m.genome for m in serial] == [m.genome for m in threaded]
        assert [m.objectives for m in serial] == \
            [m.objectives for m in threaded]

    def test_best_objectives_never_degrade(self):
        best = []

        def receiver(sender, **kwargs):
            best.append((kwargs['best_sharpe'], kwargs['best_mdd']))

        with generation_evolved.connected_to(receiver):
            evolve(toy_fitness, EvolutionParams(population=10,
                                                generations=6),
                   label='toy')
        assert len(best) == 6
        for before, after in zip(best, best[1:]):
            assert after[0] >= before[0]
            assert after[1] >= before[1]

    def test_invalid_params(self):
        with pytest.raises(InvalidParams):
            evolve(toy_fitness, EvolutionParams(population=1))
