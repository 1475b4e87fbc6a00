# coding: utf-8
"""
    pareto_rules.genome
    ~~~~~~~~~~~~~~~~~~~

    52-bit strategy genomes: layout, decoding into buy/sell rules, rule
    text, daily evaluation against a :class:`~pareto_rules.indicators.\
SignalMatrix` and the variation operators.

    Each half (buy first, then sell) is 26 bits::

        [required: 9][connectors: 8][active: 9]

    ``active`` says which indicators take part in the rule, ``required``
    which value (TRUE/FALSE) an active indicator's signal must have. The
    connectors are fixed: AND inside the momentum group and inside the
    reversal group, OR between the two groups. They are kept in the layout
    but always hold :data:`CONNECTOR_PATTERN`.
"""

from collections import namedtuple

import numpy as np

from .errors import InvalidGenome
from .indicators import IndicatorKind, MOMENTUM_KINDS, REVERSAL_KINDS

__all__ = (
    'Genome', 'Literal', 'RuleSide', 'BUY', 'SELL',
    'random_genome', 'decode', 'encode', 'eval_day', 'signal_series',
    'render_rules', 'render_side', 'crossover', 'mutate', 'repair',
    'single_point', 'genome_key',
)

GENOME_LENGTH = 52
HALF_LENGTH = 26
N_INDICATORS = len(IndicatorKind)
N_CONNECTORS = N_INDICATORS - 1

#: connector ``i`` joins indicator ``i`` and ``i + 1``; 1 is AND, 0 is OR
CONNECTOR_PATTERN = tuple(
    0 if kind == MOMENTUM_KINDS[-1] else 1
    for kind in IndicatorKind if kind < N_CONNECTORS
)

BUY = 'buy'
SELL = 'sell'
SIDES = (BUY, SELL)

_OFFSETS = {BUY: 0, SELL: HALF_LENGTH}


def _required_slice(side):
    start = _OFFSETS[side]
    return slice(start, start + N_INDICATORS)


def _connector_slice(side):
    start = _OFFSETS[side] + N_INDICATORS
    return slice(start, start + N_CONNECTORS)


def _active_slice(side):
    start = _OFFSETS[side] + N_INDICATORS + N_CONNECTORS
    return slice(start, start + N_INDICATORS)


#: the 36 positions variation operators may touch, in layout order
DECISION_LOCI = tuple(
    i for side in SIDES
    for part in (_required_slice(side), _active_slice(side))
    for i in range(part.start, part.stop)
)


class Genome(object):
    """An immutable 52-bit strategy genome.

    Connector bits are overwritten with :data:`CONNECTOR_PATTERN`, so two
    genomes that agree on every decision bit compare equal.

    :param bits: 52 values, anything truthy is a 1.
    :raises InvalidGenome: on a wrong length or an empty active half.
    """

    __slots__ = ('_bits',)

    def __init__(self, bits):
        bits = [1 if bit else 0 for bit in bits]
        if len(bits) != GENOME_LENGTH:
            raise InvalidGenome(
                'genome must have %d bits, got %d' % (
                    GENOME_LENGTH, len(bits)),
                'invalid_length', {'length': len(bits)})
        for side in SIDES:
            bits[_connector_slice(side)] = CONNECTOR_PATTERN
            if not any(bits[_active_slice(side)]):
                raise InvalidGenome(
                    'genome has no active %s indicator' % side,
                    'empty_active', {'side': side})
        self._bits = tuple(bits)

    @classmethod
    def from_string(cls, text):
        """Parses the 52-character ``0``/``1`` form used in reports."""
        text = text.strip()
        if len(text) != GENOME_LENGTH or set(text) - set('01'):
            raise InvalidGenome(
                'expected %d characters of 0/1, got %r' % (
                    GENOME_LENGTH, text),
                'invalid_string', {'text': text})
        return cls(int(char) for char in text)

    def to_string(self):
        return ''.join(str(bit) for bit in self._bits)

    __str__ = to_string

    def __repr__(self):
        return '<Genome %s>' % self.to_string()

    def __eq__(self, other):
        if not isinstance(other, Genome):
            return NotImplemented
        return self._bits == other._bits

    def __ne__(self, other):
        rv = self.__eq__(other)
        if rv is NotImplemented:
            return rv
        return not rv

    def __hash__(self):
        return hash(self._bits)

    @property
    def bits(self):
        return self._bits

    def required(self, side):
        return self._bits[_required_slice(side)]

    def active(self, side):
        return self._bits[_active_slice(side)]

    def active_count(self, side):
        return sum(self.active(side))

    def decision_bits(self):
        return tuple(self._bits[i] for i in DECISION_LOCI)

    def canonical(self):
        """The same strategy with the required bits of inactive indicators
        cleared. Genomes with equal canonical forms trade identically.
        """
        bits = list(self._bits)
        for side in SIDES:
            required = _required_slice(side).start
            active = _active_slice(side).start
            for k in range(N_INDICATORS):
                if not bits[active + k]:
                    bits[required + k] = 0
        return Genome(bits)


def genome_key(genome):
    """Key under which strategies are memoized and deduplicated."""
    return genome.canonical().to_string()


def _assemble(decision):
    """52 bits from the 36 decision bits, connectors filled in."""
    bits = [0] * GENOME_LENGTH
    for locus, bit in zip(DECISION_LOCI, decision):
        bits[locus] = 1 if bit else 0
    for side in SIDES:
        bits[_connector_slice(side)] = CONNECTOR_PATTERN
    return bits


def repair(bits, rng):
    """Activates one random indicator in every half with none active.

    :param bits: 52 bits, modified in place and returned.
    :param rng: a :class:`numpy.random.Generator`.
    """
    for side in SIDES:
        active = _active_slice(side)
        if not any(bits[active]):
            bits[active.start + int(rng.integers(N_INDICATORS))] = 1
    return bits


def random_genome(rng):
    """Uniformly random decision bits, resampled until both halves have an
    active indicator.
    """
    while True:
        decision = rng.integers(0, 2, size=len(DECISION_LOCI))
        bits = _assemble(decision)
        if all(any(bits[_active_slice(side)]) for side in SIDES):
            return Genome(bits)


class Literal(namedtuple('Literal', 'kind required')):
    """``kind``'s signal must equal ``required``."""

    __slots__ = ()

    def holds(self, value):
        return bool(value) == bool(self.required)


class RuleSide(namedtuple('RuleSide', 'side clauses')):
    """One side of a strategy: the momentum clause OR the reversal clause,
    each an AND of literals. An empty clause is false.
    """

    __slots__ = ()

    @property
    def momentum(self):
        return self.clauses[0]

    @property
    def reversal(self):
        return self.clauses[1]

    @property
    def literals(self):
        return self.clauses[0] + self.clauses[1]

    def evaluate(self, row):
        """Evaluates the side on one day's signals (9 booleans)."""
        return any(
            clause and all(literal.holds(row[literal.kind])
                           for literal in clause)
            for clause in self.clauses
        )


def _decode_side(genome, side):
    required = genome.required(side)
    active = genome.active(side)
    clauses = []
    for group in (MOMENTUM_KINDS, REVERSAL_KINDS):
        clauses.append(tuple(
            Literal(kind, bool(required[kind]))
            for kind in group if active[kind]
        ))
    return RuleSide(side, tuple(clauses))


def decode(genome):
    """Returns the ``(buy, sell)`` :class:`RuleSide` pair of a genome."""
    return _decode_side(genome, BUY), _decode_side(genome, SELL)


def encode(buy, sell):
    """Builds the canonical genome of a rule pair; the inverse of
    :func:`decode`.
    """
    bits = [0] * GENOME_LENGTH
    for side, rule in ((BUY, buy), (SELL, sell)):
        required = _required_slice(side).start
        active = _active_slice(side).start
        for group, clause in zip((MOMENTUM_KINDS, REVERSAL_KINDS),
                                 rule.clauses):
            for literal in clause:
                kind = IndicatorKind(literal.kind)
                if kind not in group:
                    raise InvalidGenome(
                        '%s placed in the wrong clause' % kind.name,
                        'wrong_group', {'kind': kind.name})
                bits[active + kind] = 1
                bits[required + kind] = 1 if literal.required else 0
    return Genome(bits)


def _final(buy_signal, sell_signal):
    if buy_signal and not sell_signal:
        return 1
    if sell_signal and not buy_signal:
        return -1
    return 0


def eval_day(buy, sell, signals, t):
    """The final signal (+1, -1 or 0) of a rule pair on day ``t``.

    Masked cells carry no signal, so they read as false.
    """
    return _final(buy.evaluate(signals.buy[t]),
                  sell.evaluate(signals.sell[t]))


def _side_series(rule, table):
    out = np.zeros(len(table), dtype=bool)
    for clause in rule.clauses:
        if not clause:
            continue
        kinds = [int(literal.kind) for literal in clause]
        wanted = np.array([bool(literal.required) for literal in clause])
        out |= (table[:, kinds] == wanted).all(axis=1)
    return out


def signal_series(genome, signals):
    """Final signals of ``genome`` for every day of ``signals`` as an int
    array of +1/-1/0.
    """
    buy, sell = decode(genome)
    buy_signal = _side_series(buy, signals.buy)
    sell_signal = _side_series(sell, signals.sell)
    return buy_signal.astype(np.int8) - sell_signal.astype(np.int8)


def _format_literal(literal, side):
    return '%s_%s = %s' % (
        IndicatorKind(literal.kind).rule_name, side,
        '1.0' if literal.required else '0.0')


def render_side(rule):
    clauses = [
        ' AND '.join(_format_literal(literal, rule.side)
                     for literal in clause)
        for clause in rule.clauses if clause
    ]
    return 'IF ' + ' OR '.join(clauses)


def render_rules(genome):
    """Returns ``(buy_text, sell_text)``, for instance::

        IF SMA_buy = 0.0 AND MO_buy = 1.0 OR sto_buy = 0.0 AND CCI_buy = 0.0
    """
    buy, sell = decode(genome)
    return render_side(buy), render_side(sell)


def single_point(a, b, cut):
    """Exchanges the heads of two decision vectors up to position ``cut``.
    A cut of 0 hands back copies of ``a`` and ``b``.
    """
    a, b = list(a), list(b)
    return b[:cut] + a[cut:], a[:cut] + b[cut:]


def crossover(a, b, rng, cut=None):
    """Single-point crossover over the 36 decision bits.

    :param cut: optional cut position in ``[0, 36]``; drawn from
                ``[1, 35]`` when omitted.
    """
    if cut is None:
        cut = int(rng.integers(1, len(DECISION_LOCI)))
    first, second = single_point(a.decision_bits(), b.decision_bits(), cut)
    return (Genome(repair(_assemble(first), rng)),
            Genome(repair(_assemble(second), rng)))


def mutate(genome, rng, rate):
    """With probability ``rate`` flips one uniformly chosen decision bit."""
    if not 0.0 <= rate <= 1.0:
        raise ValueError('mutation rate must be in [0, 1], got %r' % rate)
    if rng.random() >= rate:
        return genome
    bits = list(genome.bits)
    locus = DECISION_LOCI[int(rng.integers(len(DECISION_LOCI)))]
    bits[locus] ^= 1
    return Genome(repair(bits, rng))
