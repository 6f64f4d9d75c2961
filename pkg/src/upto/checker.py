"""Certify a candidate relation as a bisimulation up-to a trusted function.

The workflow: evaluate the chosen function on the candidate, test that the
candidate progresses to the image, and conclude containment in bisimilarity
only when the function is trusted.  An independent containment check against
the computed bisimilarity is always recorded alongside, so every successful
run doubles as a soundness test.
"""

from __future__ import annotations

from dataclasses import dataclass

from .companion import UpToFunction, lrf_function
from .lts import Lts, ProgressDiagnosis, Relation, progresses_to
from .strata import StrataSequence, compute_strata

CONTAINED = "contained_in_bisimilarity"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ProofReport:
    relation_name: str
    function_name: str
    progression_holds: bool
    conclusion: str
    diagnosis: ProgressDiagnosis
    cross_check: bool

    def __post_init__(self):
        if self.conclusion not in (CONTAINED, INCONCLUSIVE):
            raise ValueError(f"unknown conclusion {self.conclusion!r}")


def check_upto(
    lts: Lts,
    r: Relation,
    f: UpToFunction,
    relation_name: str = "R",
    seq: StrataSequence | None = None,
) -> ProofReport:
    """Run the up-to proof obligation for r under f and report.

    The conclusion is positive only when the progression holds and f is
    trusted; an untrusted function still gets its progression reported.  The
    cross check (r inside computed bisimilarity) is evaluated regardless of
    the outcome.
    """
    if r.n_states != lts.n_states:
        raise ValueError("relation dimensions do not match the LTS")
    if seq is None:
        seq = compute_strata(lts)
    image = f(r)
    diagnosis = progresses_to(lts, r, image)
    conclusion = CONTAINED if (diagnosis.holds and f.trusted) else INCONCLUSIVE
    cross_check = r.is_subset(seq.bisimilarity())
    return ProofReport(
        relation_name=relation_name,
        function_name=f.name,
        progression_holds=diagnosis.holds,
        conclusion=conclusion,
        diagnosis=diagnosis,
        cross_check=cross_check,
    )


def check_companion(lts: Lts, r: Relation, relation_name: str = "R") -> ProofReport:
    """check_upto with the largest respectful function, the most permissive choice."""
    seq = compute_strata(lts)
    return check_upto(lts, r, lrf_function(seq), relation_name=relation_name, seq=seq)
