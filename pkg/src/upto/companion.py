"""The largest respectful function and a catalog of classic up-to functions.

The largest respectful function maps a relation to the smallest stratum
containing it.  This module computes it from a precomputed strata chain,
hosts the named up-to functions used by the proof checker, and provides
sample-based checks for respectfulness and for dominance of the catalog.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional

from .lts import Lts, ProgressDiagnosis, Relation, progresses_to
from .strata import StrataSequence


@dataclass(frozen=True)
class UpToFunction:
    """A named function from relations to relations over one fixed LTS.

    trusted marks functions whose soundness the checker may rely on: the
    catalog members and the largest respectful function itself.
    """

    name: str
    lts: Lts
    fn: Callable[[Relation], Relation]
    trusted: bool = False

    def __call__(self, r: Relation) -> Relation:
        out = self.fn(r)
        if out.n_states != self.lts.n_states:
            raise ValueError(f"up-to function {self.name!r} changed the state set")
        return out


@dataclass(frozen=True)
class RespectfulnessCounterexample:
    r: Relation
    s: Relation
    clause: str  # "inclusion" or "progression"
    diagnosis: Optional[ProgressDiagnosis]


@dataclass(frozen=True)
class RespectfulnessVerdict:
    holds_on_samples: bool
    counterexample: Optional[RespectfulnessCounterexample]
    samples_checked: int
    samples_skipped: int

    def __post_init__(self):
        if self.holds_on_samples != (self.counterexample is None):
            raise ValueError("counterexample must be present iff the verdict fails")


@dataclass(frozen=True)
class DominanceCounterexample:
    r: Relation
    function_name: str
    image: Relation
    bound: Relation


@dataclass(frozen=True)
class DominanceVerdict:
    holds: bool
    counterexample: Optional[DominanceCounterexample]
    samples_checked: int


def lrf(seq: StrataSequence, r: Relation) -> Relation:
    """The smallest stratum containing r.

    Strata shrink as the index grows, so the result is the stratum just
    before the first one that loses a pair of r, or the stable stratum when
    nothing is ever lost.
    """
    if r.n_states != seq.lts.n_states:
        raise ValueError("relation dimensions do not match the strata sequence")
    for k in range(1, seq.epsilon + 1):
        if not r.is_subset(seq.strata[k]):
            return seq.strata[k - 1]
    return seq.strata[seq.epsilon]


def lrf_function(seq: StrataSequence) -> UpToFunction:
    """The largest respectful function, packaged for the checker."""
    return UpToFunction(
        name="lrf", lts=seq.lts, fn=lambda r: lrf(seq, r), trusted=True
    )


def catalog(lts: Lts, seq: StrataSequence) -> list[UpToFunction]:
    """Named up-to functions known sound: four primitives and their pairwise
    compositions and pointwise unions.

    The primitives are the identity, the constant-to-bisimilarity function,
    the classic up-to-bisimilarity function (compose with bisimilarity on
    both sides), and union with bisimilarity.  Respectful functions are
    closed under composition and pointwise union, so every entry is
    respectful.
    """
    if seq.lts is not lts and seq.lts != lts:
        raise ValueError("strata sequence was computed for a different LTS")
    bisim = seq.bisimilarity()

    base = [
        UpToFunction("identity", lts, lambda r: r, trusted=True),
        UpToFunction("const_bisim", lts, lambda r: bisim, trusted=True),
        UpToFunction(
            "upto_bisim", lts, lambda r: bisim.compose(r).compose(bisim), trusted=True
        ),
        UpToFunction("union_bisim", lts, lambda r: r | bisim, trusted=True),
    ]

    def composed(f: UpToFunction, g: UpToFunction) -> UpToFunction:
        return UpToFunction(
            f"compose({f.name},{g.name})", lts, lambda r: f(g(r)), trusted=True
        )

    def joined(f: UpToFunction, g: UpToFunction) -> UpToFunction:
        return UpToFunction(
            f"union({f.name},{g.name})", lts, lambda r: f(r) | g(r), trusted=True
        )

    out = list(base)
    out.extend(composed(f, g) for f, g in itertools.product(base, base))
    out.extend(joined(f, g) for f, g in itertools.combinations(base, 2))
    return out


def is_respectful_on_samples(
    f: UpToFunction, samples: list[tuple[Relation, Relation]]
) -> RespectfulnessVerdict:
    """Test the respectfulness implication on concrete samples.

    Samples failing the hypothesis (r inside s and r progressing to s) are
    skipped and counted; the first sample where the conclusion fails is
    returned as the counterexample.
    """
    lts = f.lts
    checked = skipped = 0
    for r, s in samples:
        if not (r.is_subset(s) and progresses_to(lts, r, s).holds):
            skipped += 1
            continue
        checked += 1
        fr, fs = f(r), f(s)
        if not fr.is_subset(fs):
            return RespectfulnessVerdict(
                False,
                RespectfulnessCounterexample(r, s, "inclusion", None),
                checked,
                skipped,
            )
        diag = progresses_to(lts, fr, fs)
        if not diag.holds:
            return RespectfulnessVerdict(
                False,
                RespectfulnessCounterexample(r, s, "progression", diag),
                checked,
                skipped,
            )
    return RespectfulnessVerdict(True, None, checked, skipped)


def check_lrf_largest(
    seq: StrataSequence, f: UpToFunction, rs: list[Relation]
) -> DominanceVerdict:
    """Assert f(r) lands inside lrf(r) for every sampled r.

    Any violation is a bug: every respectful function is dominated by the
    largest one.
    """
    checked = 0
    for r in rs:
        checked += 1
        image = f(r)
        bound = lrf(seq, r)
        if not image.is_subset(bound):
            return DominanceVerdict(
                False, DominanceCounterexample(r, f.name, image, bound), checked
            )
    return DominanceVerdict(True, None, checked)
