# coding: utf-8
"""
    pareto_rules.nsga2
    ~~~~~~~~~~~~~~~~~~

    A bi-objective NSGA-II engine: Pareto dominance, fast non-dominated
    sorting, crowding distance, binary crowded tournaments and elitist
    replacement. Both objectives are maximized.

    The engine knows nothing about trading. :func:`evolve` takes a fitness
    callable and a set of genome :class:`Operators`; the strategy genome
    operators are used when none are given.
"""

import logging
import math
from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import EvolutionError, InvalidParams
from .events import generation_evolved
from .genome import random_genome, crossover, mutate, genome_key

__all__ = (
    'ObjectiveVector', 'Individual', 'Population', 'EvolutionParams',
    'Operators', 'FitnessCache', 'dominates', 'fast_nondominated_sort',
    'crowding_distance', 'crowded_compare', 'crowded_key', 'tournament',
    'rank_population', 'make_offspring', 'next_generation', 'evolve',
)

log = logging.getLogger('pareto_rules')

INF = float('inf')


ObjectiveVector = namedtuple('ObjectiveVector', 'sharpe mdd')


def dominates(a, b):
    """True when ``a`` is no worse than ``b`` in every objective and better
    in at least one.
    """
    strict = False
    for x, y in zip(a, b):
        if x < y:
            return False
        if x > y:
            strict = True
    return strict


class Individual(object):
    """A genome with its objectives. ``rank`` and ``crowding`` are set by
    :func:`rank_population` and only mean something inside the population
    that was ranked. ``index`` is the position in that population and
    breaks every tie.
    """

    __slots__ = ('genome', 'objectives', 'rank', 'crowding', 'index')

    def __init__(self, genome, objectives=None, index=0):
        self.genome = genome
        self.objectives = objectives
        self.rank = None
        self.crowding = 0.0
        self.index = index

    def __repr__(self):
        return '<Individual #%d rank=%r crowding=%r %r>' % (
            self.index, self.rank, self.crowding, self.objectives)


class Population(object):
    """An ordered set of individuals with a fixed capacity."""

    def __init__(self, members, capacity=None):
        self.members = []
        for index, member in enumerate(members):
            member.index = index
            self.members.append(member)
        self.capacity = len(self.members) if capacity is None else capacity

    @classmethod
    def from_genomes(cls, genomes, capacity=None):
        return cls([Individual(genome) for genome in genomes], capacity)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, index):
        return self.members[index]

    @property
    def genomes(self):
        return [member.genome for member in self.members]

    def front(self, rank=0):
        return [member for member in self.members if member.rank == rank]


def _members(pop):
    return pop.members if isinstance(pop, Population) else list(pop)


def fast_nondominated_sort(pop):
    """Partitions the population into fronts and sets every member's rank.

    :returns: a list of fronts, each a sorted list of member indices into
              ``pop``; front 0 is the non-dominated set.
    """
    members = _members(pop)
    size = len(members)
    dominated = [[] for _ in range(size)]
    counts = [0] * size
    for p in range(size):
        for q in range(p + 1, size):
            a, b = members[p].objectives, members[q].objectives
            if dominates(a, b):
                dominated[p].append(q)
                counts[q] += 1
            elif dominates(b, a):
                dominated[q].append(p)
                counts[p] += 1

    fronts = []
    current = [p for p in range(size) if counts[p] == 0]
    while current:
        for p in current:
            members[p].rank = len(fronts)
        fronts.append(current)
        following = []
        for p in current:
            for q in dominated[p]:
                counts[q] -= 1
                if counts[q] == 0:
                    following.append(q)
        current = sorted(following)
    return fronts


def crowding_distance(front, pop):
    """Crowding distance of each member of ``front``, returned in the same
    order and stored on the members.

    Boundary members of each objective are infinitely far; an objective
    whose range over the front is zero adds nothing.
    """
    members = _members(pop)
    if not front:
        raise EvolutionError('crowding distance of an empty front',
                             'empty_front')
    distance = dict((i, 0.0) for i in front)
    n_objectives = len(members[front[0]].objectives)
    for m in range(n_objectives):
        ordered = sorted(front, key=lambda i: (members[i].objectives[m], i))
        low = members[ordered[0]].objectives[m]
        high = members[ordered[-1]].objectives[m]
        distance[ordered[0]] = INF
        distance[ordered[-1]] = INF
        if high == low:
            continue
        for k in range(1, len(ordered) - 1):
            gap = (members[ordered[k + 1]].objectives[m] -
                   members[ordered[k - 1]].objectives[m])
            distance[ordered[k]] += gap / (high - low)
    for i in front:
        members[i].crowding = distance[i]
    return [distance[i] for i in front]


def crowded_key(individual):
    """Sort key putting the preferred individual first."""
    return (individual.rank, -individual.crowding, individual.index)


def crowded_compare(a, b):
    """-1 when ``a`` is preferred, 1 when ``b`` is, 0 for the same member."""
    key_a, key_b = crowded_key(a), crowded_key(b)
    if key_a < key_b:
        return -1
    if key_a > key_b:
        return 1
    return 0


def rank_population(pop):
    """Sorts ``pop`` into fronts and assigns crowding distances."""
    fronts = fast_nondominated_sort(pop)
    for front in fronts:
        crowding_distance(front, pop)
    return fronts


def tournament(pop, rng):
    """Binary tournament between two distinct random members."""
    first, second = rng.choice(len(pop), size=2, replace=False)
    a, b = pop[int(first)], pop[int(second)]
    return a if crowded_compare(a, b) <= 0 else b


class Operators(namedtuple('Operators', 'init crossover mutate key')):
    """Genome operators the engine drives.

    ``init(rng)`` makes a random genome, ``crossover(a, b, rng)`` returns
    two children, ``mutate(genome, rng, rate)`` returns a genome and
    ``key(genome)`` gives the identity used for memoization and
    deduplication.
    """

    __slots__ = ()

    @classmethod
    def strategy(cls):
        return cls(random_genome, crossover, mutate, genome_key)


def make_offspring(pop, rng, cx_rate, mut_rate, operators=None):
    """Breeds ``len(pop)`` children from a ranked population. The children
    have no objectives yet.
    """
    operators = operators or Operators.strategy()
    size = pop.capacity
    children = []
    while len(children) < size:
        mother = tournament(pop, rng)
        father = tournament(pop, rng)
        if rng.random() < cx_rate:
            pair = operators.crossover(mother.genome, father.genome, rng)
        else:
            pair = (mother.genome, father.genome)
        for child in pair:
            children.append(operators.mutate(child, rng, mut_rate))
    return Population.from_genomes(children[:size], size)


def next_generation(parents, offspring):
    """Elitist replacement: ranks parents and offspring together and keeps
    the best ``parents.capacity``, splitting the last front that does not
    fit by descending crowding distance.
    """
    pool = Population(
        [Individual(member.genome, member.objectives)
         for member in list(parents) + list(offspring)])
    capacity = parents.capacity
    selected = []
    for front in rank_population(pool):
        members = [pool[i] for i in front]
        if len(selected) + len(members) <= capacity:
            selected.extend(members)
        else:
            members.sort(key=crowded_key)
            selected.extend(members[:capacity - len(selected)])
        if len(selected) == capacity:
            break

    survivors = Population(
        [Individual(member.genome, member.objectives)
         for member in selected], capacity)
    rank_population(survivors)
    return survivors


class EvolutionParams(namedtuple('EvolutionParams', (
        'population generations cx_rate mut_rate seed threads'))):
    """Run parameters, defaulting to a population of 30 evolved for five
    generations with crossover 0.9 and mutation 0.1.
    """

    __slots__ = ()

    def __new__(cls, population=30, generations=5, cx_rate=0.9,
                mut_rate=0.1, seed=42, threads=1):
        return super(EvolutionParams, cls).__new__(
            cls, population, generations, cx_rate, mut_rate, seed, threads)

    def validate(self):
        problems = []
        if self.population < 2:
            problems.append('population must be at least 2')
        if self.generations < 1:
            problems.append('generations must be at least 1')
        if not 0.0 <= self.cx_rate <= 1.0:
            problems.append('crossover rate must be in [0, 1]')
        if not 0.0 <= self.mut_rate <= 1.0:
            problems.append('mutation rate must be in [0, 1]')
        if self.threads < 1:
            problems.append('threads must be at least 1')
        if problems:
            raise InvalidParams('; '.join(problems), 'invalid_params',
                                dict(self._asdict()))
        return self

    def with_seed(self, seed):
        return self._replace(seed=seed)


def _objectives(value):
    value = getattr(value, 'objectives', value)
    vector = ObjectiveVector(*[float(v) for v in value])
    if not all(math.isfinite(v) for v in vector):
        raise EvolutionError('fitness returned non-finite objectives %r' % (
            vector,), 'non_finite', {'objectives': vector})
    return vector


class FitnessCache(object):
    """Memoizes a fitness function by genome key.

    :param fitness: callable taking a genome and returning an
                    :class:`ObjectiveVector`, a pair, or anything with an
                    ``objectives`` attribute.
    :param key: genome identity, the canonical bit string by default.
    """

    def __init__(self, fitness, key=genome_key):
        self.fitness = fitness
        self.key = key
        self.hits = 0
        self.misses = 0
        self._values = {}

    def __len__(self):
        return len(self._values)

    def __contains__(self, genome):
        return self.key(genome) in self._values

    def get(self, genome):
        return self.evaluate([genome])[0]

    def evaluate(self, genomes, executor=None):
        """Objectives for each genome, in order. Unseen genomes are
        evaluated on ``executor`` when given.
        """
        keys = [self.key(genome) for genome in genomes]
        pending = {}
        for key, genome in zip(keys, genomes):
            if key in self._values or key in pending:
                self.hits += 1
            else:
                self.misses += 1
                pending[key] = genome
        todo = list(pending.values())
        if executor is None:
            results = [self.fitness(genome) for genome in todo]
        else:
            results = list(executor.map(self.fitness, todo))
        for key, value in zip(pending, results):
            self._values[key] = _objectives(value)
        return [self._values[key] for key in keys]


def _evaluate(pop, cache, executor):
    for member, objectives in zip(pop, cache.evaluate(pop.genomes, executor)):
        member.objectives = objectives
    return pop


def _final_front(pop, key):
    seen = set()
    front = []
    for member in pop.front(0):
        identity = key(member.genome)
        if identity in seen:
            continue
        seen.add(identity)
        front.append((identity, member))
    front.sort(key=lambda item: (tuple(item[1].objectives), item[0]))
    return [member for _, member in front]


def evolve(fitness, params=None, operators=None, label='evolve',
           cache=None):
    """Runs NSGA-II for exactly ``params.generations`` generations.

    :param fitness: genome to objectives, see :class:`FitnessCache`.
    :param params: :class:`EvolutionParams`.
    :param operators: :class:`Operators`, the strategy genome operators by
                      default.
    :param label: names the run in logs and ``generation_evolved``.
    :returns: the final non-dominated individuals, one per distinct genome,
              ordered by Sharpe then drawdown.
    """
    params = (params or EvolutionParams()).validate()
    operators = operators or Operators.strategy()
    if cache is None:
        cache = FitnessCache(fitness, operators.key)
    rng = np.random.default_rng(params.seed)

    executor = None
    if params.threads > 1:
        executor = ThreadPoolExecutor(max_workers=params.threads)
    try:
        pop = Population.from_genomes(
            [operators.init(rng) for _ in range(params.population)])
        _evaluate(pop, cache, executor)
        rank_population(pop)

        for generation in range(1, params.generations + 1):
            offspring = make_offspring(pop, rng, params.cx_rate,
                                       params.mut_rate, operators)
            _evaluate(offspring, cache, executor)
            pop = next_generation(pop, offspring)

            front = pop.front(0)
            best_sharpe = max(member.objectives[0] for member in front)
            best_mdd = max(member.objectives[1] for member in front)
            log.debug('%s: generation %d, front of %d, best sharpe %.4f, '
                      'best mdd %.4f, cache %d hits / %d misses', label,
                      generation, len(front), best_sharpe, best_mdd,
                      cache.hits, cache.misses)
            generation_evolved.send(
                label, generation=generation, front_size=len(front),
                best_sharpe=best_sharpe, best_mdd=best_mdd)
    finally:
        if executor is not None:
            executor.shutdown()

    return _final_front(pop, operators.key)
