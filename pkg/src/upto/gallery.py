"""The ordinal-membership ladder: systems where consecutive strata differ.

T_n has states 0..n with a single label and a transition i -> j exactly when
i > j.  Two states a < b stay related at stratum g precisely while g <= a,
so every stratum up to n is distinct; the family witnesses that no fixed
index works for all systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .lts import Lts
from .strata import compute_strata

GALLERY_LABEL = "t"


@dataclass(frozen=True)
class OrdinalLts:
    """T_n: states 0..n, one label, i -> j iff i > j."""

    n: int
    lts: Lts


@dataclass(frozen=True)
class GalleryVerdict:
    passed: bool
    checked: int
    discrepancy: Optional[str]

    def __post_init__(self):
        if self.passed != (self.discrepancy is None):
            raise ValueError("discrepancy must be present iff the verdict fails")


def build_T(n: int) -> OrdinalLts:
    if n < 0:
        raise ValueError("n must be non-negative")
    names = [str(i) for i in range(n + 1)]
    triples = [(i, GALLERY_LABEL, j) for i in range(n + 1) for j in range(i)]
    return OrdinalLts(n=n, lts=Lts(names, triples))


def verify_gallery(n: int) -> GalleryVerdict:
    """Check the stratum membership law on T_n and the split pair on T_{n+1}.

    On T_n: (a, b) with a < b lies in stratum g iff g <= a, for every g up to
    one past the convergence index (stability covers the rest).  On T_{n+1}:
    the pair (n, n+1) survives stratum n but not stratum n+1.
    """
    seq = compute_strata(build_T(n).lts)
    checked = 0
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            for g in range(seq.epsilon + 2):
                checked += 1
                expected = g <= a
                actual = (a, b) in seq.stratum(g)
                if actual != expected:
                    return GalleryVerdict(
                        False,
                        checked,
                        f"T_{n}: pair ({a},{b}) at stratum {g}: "
                        f"expected {'in' if expected else 'out'}, got {'in' if actual else 'out'}",
                    )

    above = compute_strata(build_T(n + 1).lts)
    checked += 2
    if (n, n + 1) not in above.stratum(n):
        return GalleryVerdict(
            False, checked, f"T_{n + 1}: pair ({n},{n + 1}) missing from stratum {n}"
        )
    if (n, n + 1) in above.stratum(n + 1):
        return GalleryVerdict(
            False, checked, f"T_{n + 1}: pair ({n},{n + 1}) still present at stratum {n + 1}"
        )
    return GalleryVerdict(True, checked, None)
