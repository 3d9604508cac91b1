# ------------------------------
# Module: convergence.py
# Description: Empirical almost-sure convergence certificate at a finite depth
# ------------------------------

import logging
from dataclasses import dataclass, field
from typing import List

from services.cantor import Word, level_words
from services.dyadic import Dyadic, format_dyadic
from services.errors import DepthTooSmall, DifferentPosets, OutOfRange
from services.poset import same_poset
from services.realization.chain import RealizationResult, evaluate_limit

logger = logging.getLogger(__name__)


@dataclass
class ASConvergenceCertificate:
    depth: int
    tail: int
    exception_words: List[Word] = field(default_factory=list)
    domain_words: int = 0

    @property
    def exception_mass(self) -> Dyadic:
        return Dyadic(len(self.exception_words), self.depth)

    @property
    def domain_mass(self) -> Dyadic:
        return Dyadic(self.domain_words, self.depth)

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "tail": self.tail,
            "domain_mass": format_dyadic(self.domain_mass),
            "exception_count": len(self.exception_words),
            "exception_mass": format_dyadic(self.exception_mass),
            "exception_words": [w.bits for w in self.exception_words],
        }


def empirical_convergence(results: List[RealizationResult], limit: RealizationResult,
                          depth: int, tail: int = 1) -> ASConvergenceCertificate:
    '''
      Depth-d words of dom f_mu where f_{mu_n} fails to equal f_mu for some n >= tail.

      On a finite target convergence is eventual equality, so a word counts as
      an exception as soon as any member of the tail disagrees with the limit.

      Args:
          results: realizations of mu_1..mu_N
          limit: realization of mu
          depth: truncation depth d, at least every top level
          tail: first index (1-based) of the tail

      Returns:
          ASConvergenceCertificate with exceptions in lexicographic order
    '''
    if not results:
        raise OutOfRange("empirical_convergence needs a non-empty sequence")
    if not 1 <= tail <= len(results):
        raise OutOfRange(f"tail {tail} is outside 1..{len(results)}")
    for result in results:
        if not same_poset(result.poset, limit.poset):
            raise DifferentPosets("Realizations target different posets")
    deepest = max(r.top_level for r in results + [limit])
    if depth < deepest:
        raise DepthTooSmall(f"depth {depth} is below the top level {deepest}")

    certificate = ASConvergenceCertificate(depth=depth, tail=tail)
    tail_results = results[tail - 1:]
    for word in level_words(depth):
        target = evaluate_limit(limit, word)
        if target is None:
            continue
        certificate.domain_words += 1
        if any(evaluate_limit(result, word) != target for result in tail_results):
            certificate.exception_words.append(word)

    logger.debug(f"Tail {tail} at depth {depth}: exception mass {format_dyadic(certificate.exception_mass)}")
    return certificate
