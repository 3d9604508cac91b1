# ------------------------------
# Module: fixtures.py
# Description: Fixture posets and seeded random generators for valuations, chains,
#              partial maps and chain measures
# ------------------------------

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from services.cantor import Interval, PartialTreeMap
from services.constants import RANDOM_SEED, SWEEP_DENOMINATOR
from services.dyadic import ONE, Dyadic
from services.poset import FinitePoset, build_poset
from services.quantile import ChainMeasure
from services.valuation import SimpleValuation

logger = logging.getLogger(__name__)

BOTTOM = "⊥"
TOP = "⊤"


def get_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(RANDOM_SEED if seed is None else seed)


def _exponent(denominator: int) -> int:
    if denominator <= 0 or denominator & (denominator - 1):
        raise ValueError(f"denominator {denominator} is not a power of two")
    return denominator.bit_length() - 1


# :::::: Posets :::::: #

def chain_poset(n: int) -> FinitePoset:
    names = [f"c{i}" for i in range(n)]
    return build_poset(names, list(zip(names, names[1:])), bottom=names[0])


def antichain_poset(n: int) -> FinitePoset:
    return build_poset([chr(ord("a") + i) for i in range(n)])


def v_poset() -> FinitePoset:
    return build_poset([BOTTOM, "a", "b"], [(BOTTOM, "a"), (BOTTOM, "b")], bottom=BOTTOM)


def lambda_poset() -> FinitePoset:
    return build_poset(["a", "b", TOP], [("a", TOP), ("b", TOP)])


def diamond_poset() -> FinitePoset:
    return build_poset(
        [BOTTOM, "a", "b", TOP],
        [(BOTTOM, "a"), (BOTTOM, "b"), ("a", TOP), ("b", TOP)],
        bottom=BOTTOM,
    )


def n_poset(with_bottom: bool = False) -> FinitePoset:
    elements = ["a", "b", "c", "d"]
    covers = [("a", "c"), ("b", "c"), ("b", "d")]
    if with_bottom:
        return build_poset([BOTTOM] + elements, covers + [(BOTTOM, "a"), (BOTTOM, "b")], bottom=BOTTOM)
    return build_poset(elements, covers)


def flat_poset(values=("0", "1")) -> FinitePoset:
    '''
      Flat poset: a bottom below pairwise incomparable values. The bottom is
      enumerated last, so realizations allocate it the rightmost words.
    '''
    values = list(values)
    return build_poset(values + [BOTTOM], [(BOTTOM, v) for v in values], bottom=BOTTOM)


def fixture_posets() -> Dict[str, FinitePoset]:
    """Every fixture shape up to five elements, with bottom-adjoined variants."""
    posets = {f"chain{n}": chain_poset(n) for n in range(1, 6)}
    posets.update({f"antichain{n}": antichain_poset(n) for n in range(2, 6)})
    posets["V"] = v_poset()
    posets["Lambda"] = lambda_poset()
    posets["diamond"] = diamond_poset()
    posets["N"] = n_poset()
    posets["N_bottom"] = n_poset(with_bottom=True)
    posets["flat2"] = flat_poset()
    posets["flat3"] = flat_poset(("a", "b", "c"))
    posets["flat4"] = flat_poset(("a", "b", "c", "d"))
    return posets


def bounded_complete_posets() -> Dict[str, FinitePoset]:
    names = ["chain1", "chain3", "chain5", "V", "diamond", "flat2", "flat3", "N_bottom"]
    posets = fixture_posets()
    return {name: posets[name] for name in names}


# :::::: Random valuations :::::: #

def random_valuation(poset: FinitePoset, rng: np.random.Generator,
                     denominator: int = SWEEP_DENOMINATOR, max_units: Optional[int] = None) -> SimpleValuation:
    '''
      Random sub-probability valuation with weights in multiples of 1/denominator.
    '''
    e = _exponent(denominator)
    max_units = denominator if max_units is None else max_units
    units = int(rng.integers(0, max_units + 1))
    n = len(poset)
    split = rng.multinomial(units, np.full(n, 1.0 / n))
    return SimpleValuation(poset, {x: Dyadic(int(k), e) for x, k in zip(poset.elements, split) if k})


def random_upward(mu: SimpleValuation, rng: np.random.Generator,
                  denominator: int = SWEEP_DENOMINATOR, add_mass: bool = True) -> SimpleValuation:
    '''
      A valuation above mu: every unit of mass moves to a random element above
      its position, then spare mass is optionally added anywhere.
    '''
    e = _exponent(denominator)
    poset = mu.poset
    counts = {x: 0 for x in poset.elements}
    for x, w in mu.items():
        units = w.numerator << (e - w.exponent)
        above = poset.ordered(poset.up(x))
        split = rng.multinomial(units, np.full(len(above), 1.0 / len(above)))
        for y, k in zip(above, split):
            counts[y] += int(k)
    if add_mass:
        spare = denominator - sum(counts.values())
        extra = int(rng.integers(0, spare + 1)) if spare > 0 else 0
        split = rng.multinomial(extra, np.full(len(poset), 1.0 / len(poset)))
        for y, k in zip(poset.elements, split):
            counts[y] += int(k)
    return SimpleValuation(poset, {x: Dyadic(k, e) for x, k in counts.items() if k})


def random_pair(poset: FinitePoset, rng: np.random.Generator, denominator: int = SWEEP_DENOMINATOR):
    """Half independent pairs, half ordered ones, so both outcomes are exercised."""
    mu = random_valuation(poset, rng, denominator)
    if rng.random() < 0.5:
        return mu, random_valuation(poset, rng, denominator)
    return mu, random_upward(mu, rng, denominator)


def random_chain(poset: FinitePoset, rng: np.random.Generator, length: int,
                 denominator: int = SWEEP_DENOMINATOR) -> List[SimpleValuation]:
    chain = [random_valuation(poset, rng, denominator, max_units=denominator // 2)]
    while len(chain) < length:
        chain.append(random_upward(chain[-1], rng, denominator))
    return chain


def random_partial_map(poset: FinitePoset, rng: np.random.Generator, level: int,
                       undefined_share: float = 0.25) -> PartialTreeMap:
    pieces = []
    for i in range(1 << level):
        if rng.random() < undefined_share:
            continue
        image = poset.elements[int(rng.integers(0, len(poset)))]
        pieces.append(Interval(i, i + 1, image))
    return PartialTreeMap(poset, level, pieces)


def random_chain_measure(rng: np.random.Generator, denominator: int = 32,
                         probability: bool = True, max_points: int = 4) -> ChainMeasure:
    '''
      Random simple measure on grid points k/denominator of [0, 1]; total mass 1
      when probability is set, otherwise strictly below 1.
    '''
    e = _exponent(denominator)
    count = int(rng.integers(1, max_points + 1))
    points = sorted({int(p) for p in rng.integers(0, denominator + 1, size=count)})
    units = denominator if probability else int(rng.integers(0, denominator))
    split = rng.multinomial(units, np.full(len(points), 1.0 / len(points)))
    return ChainMeasure({Dyadic(p, e): Dyadic(int(k), e) for p, k in zip(points, split) if k})


# :::::: The flat-poset example :::::: #

@dataclass
class ExampleSequence:
    poset: FinitePoset
    sequence: List[SimpleValuation]
    limit: SimpleValuation
    limit_chain: List[SimpleValuation]


def example_flat_sequence(length: int = 10) -> ExampleSequence:
    '''
      mu_n = (2^n - 1)/2^n δ_0 + 2^-n δ_1 on the flat poset {⊥, 0, 1}, converging
      to δ_0, which is realized through σ_m = (2^m - 1)/2^m δ_0 + 2^-m δ_⊥.
    '''
    poset = flat_poset()
    sequence = [
        SimpleValuation(poset, {"0": ONE - Dyadic.half_power(n), "1": Dyadic.half_power(n)})
        for n in range(1, length + 1)
    ]
    limit_chain = [
        SimpleValuation(poset, {"0": ONE - Dyadic.half_power(m), BOTTOM: Dyadic.half_power(m)})
        for m in range(1, length + 1)
    ]
    limit = SimpleValuation(poset, {"0": ONE})
    return ExampleSequence(poset=poset, sequence=sequence, limit=limit, limit_chain=limit_chain)
