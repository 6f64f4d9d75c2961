"""Stratified bisimilarity: the decreasing chain of approximants and its limit.

Stratum 0 relates everything; each following stratum is the largest relation
progressing to the previous one.  On a finite system the chain is strictly
decreasing until it stabilizes, and the stable relation is bisimilarity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lts import Lts, Relation, largest_progressing_to


@dataclass(frozen=True)
class StrataSequence:
    """The chain of strata for one LTS, indices 0..epsilon inclusive.

    epsilon is the least index where the chain stabilizes; compute_strata has
    already verified that one further step reproduces the last stratum.
    """

    lts: Lts
    strata: tuple[Relation, ...]
    epsilon: int

    def __post_init__(self):
        n = self.lts.n_states
        if self.epsilon != len(self.strata) - 1:
            raise ValueError("epsilon must index the last stored stratum")
        if self.strata[0] != Relation.full(n):
            raise ValueError("stratum 0 must be the full relation")
        for k in range(self.epsilon):
            if not self.strata[k + 1] < self.strata[k]:
                raise ValueError(f"stratum {k + 1} must be strictly below stratum {k}")
        if self.epsilon > n * n:
            raise ValueError("chain longer than the n^2 pigeonhole bound")

    def stratum(self, k: int) -> Relation:
        """The k-th stratum; indices past epsilon return the stable relation."""
        if k < 0:
            raise ValueError("stratum index must be non-negative")
        return self.strata[min(k, self.epsilon)]

    def bisimilarity(self) -> Relation:
        """The stable stratum: the largest relation progressing to itself."""
        return self.strata[self.epsilon]


def compute_strata(lts: Lts) -> StrataSequence:
    """Iterate the stratum construction to its fixpoint.

    Each step takes the largest relation progressing to the current stratum;
    the loop stops when a step changes nothing, which the pigeonhole bound on
    a strictly decreasing chain guarantees within n^2 steps.
    """
    current = Relation.full(lts.n_states)
    chain = [current]
    while True:
        nxt = largest_progressing_to(lts, current)
        if nxt == current:
            break
        if not nxt < current:
            raise RuntimeError("stratum chain failed to decrease; progress check is inconsistent")
        chain.append(nxt)
        current = nxt
    return StrataSequence(lts=lts, strata=tuple(chain), epsilon=len(chain) - 1)


def stratum(seq: StrataSequence, k: int) -> Relation:
    return seq.stratum(k)


def bisimilarity(seq: StrataSequence) -> Relation:
    return seq.bisimilarity()
