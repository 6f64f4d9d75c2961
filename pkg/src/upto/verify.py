"""The seeded property suite: every library invariant, one pass/fail line each.

Runs against pools of randomly generated systems plus fixed small lattices,
with brute-force enumeration oracles wherever the state space allows.  The
report is deterministic for a fixed seed and sample count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .companion import catalog, check_lrf_largest, lrf, lrf_function
from .formats import parse_aut, render_aut
from .gallery import build_T, verify_gallery
from .lattice import (
    FiniteLattice,
    brute_force_largest,
    chain_lattice,
    classify_monotone_functions,
    companion_at,
    diamond_lattice,
    element_relation,
    is_compatible,
    is_monotone,
    is_r_monotone,
    lts_to_lattice,
    m3_lattice,
    pentagon_lattice,
    powerset_lattice,
    relation_element_index,
    s_of,
    z_chain,
)
from .checker import CONTAINED, check_companion, check_upto
from .lts import Lts, Relation, largest_progressing_to, progress_holds, progresses_to
from .sampling import (
    progression_sample,
    random_lattice_progression,
    random_lts,
    random_lts_pool,
    random_relation,
    random_subrelation,
)
from .strata import StrataSequence, compute_strata

GALLERY_MAX = 8


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""


@dataclass
class VerificationReport:
    seed: int
    samples: int
    checks: list[CheckResult] = field(default_factory=list)
    info: list[str] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = [
            "upto verification report",
            f"seed = {self.seed}",
            f"samples = {self.samples}",
            "",
        ]
        for c in self.checks:
            status = "ok" if c.passed else "FAIL"
            line = f"{status} {c.name} cases={c.cases}"
            if c.detail:
                line += f" detail={c.detail}"
            lines.append(line)
        lines.extend(f"info {note}" for note in self.info)
        n_fail = sum(not c.passed for c in self.checks)
        lines.append("")
        lines.append(
            f"result: {len(self.checks)} checks, "
            f"{len(self.checks) - n_fail} passed, {n_fail} failed"
        )
        return "\n".join(lines) + "\n"


def _clamp(value: int, lo: int, hi: int) -> int:
    return max(lo, min(hi, value))


def _all_relations(n: int) -> list[Relation]:
    return [element_relation(n, mask) for mask in range(1 << (n * n))]


def _pick(rng: random.Random, items):
    return items[rng.randrange(len(items))]


class _Suite:
    def __init__(self, seed: int, samples: int):
        self.seed = seed
        self.samples = samples
        self.rng = random.Random(seed)
        self.report = VerificationReport(seed=seed, samples=samples)

        pool_n = _clamp(samples // 40, 6, 30)
        pool = random_lts_pool(self.rng, pool_n)
        # guarantee enumeration-sized systems for the brute-force checks
        while sum(1 for l in pool if l.n_states <= 3) < 4:
            pool.append(random_lts(self.rng, self.rng.randint(2, 3), 1, 0.4))
        self.systems: list[tuple[Lts, StrataSequence]] = [
            (lts, compute_strata(lts)) for lts in pool
        ]
        self.small = [(l, s) for (l, s) in self.systems if l.n_states <= 3]

        self.lattices: list[tuple[str, FiniteLattice]] = [
            ("chain2", chain_lattice(2)),
            ("chain3", chain_lattice(3)),
            ("chain4", chain_lattice(4)),
            ("diamond", diamond_lattice()),
            ("powerset2", powerset_lattice(2)),
            ("chain5", chain_lattice(5)),
            ("pentagon", pentagon_lattice()),
            ("m3", m3_lattice()),
        ]
        prog_budget = _clamp(samples // 60, 3, 16)
        prog_budget_5 = _clamp(samples // 150, 2, 6)
        self.progressions = []
        for name, lat in self.lattices:
            budget = prog_budget if lat.size <= 4 else prog_budget_5
            for _ in range(budget):
                self.progressions.append(
                    (name, lat, random_lattice_progression(self.rng, lat, self.rng.uniform(0.05, 0.4)))
                )

    def add(self, name: str, passed: bool, cases: int, detail: str = ""):
        self.report.checks.append(CheckResult(name, passed, cases, detail))

    # lts_core invariants

    def check_progress_monotone(self):
        rng, cases = self.rng, 0
        for _ in range(self.samples):
            lts, _seq = _pick(rng, self.systems)
            r, s = progression_sample(rng, lts)
            if not progresses_to(lts, r, s).holds:
                self.add("progress-monotone", False, cases, "sampler produced a bad pair")
                return
            sub = random_subrelation(rng, r)
            sup = s | random_relation(rng, lts.n_states, 0.3)
            cases += 1
            if not progresses_to(lts, sub, sup).holds:
                self.add(
                    "progress-monotone", False, cases,
                    f"shrunk source / grown target lost progress on {lts!r}",
                )
                return
        self.add("progress-monotone", True, cases)

    def check_progress_union_closure(self):
        rng, cases = self.rng, 0
        for _ in range(self.samples):
            lts, _seq = _pick(rng, self.systems)
            s = random_relation(rng, lts.n_states)
            bound = largest_progressing_to(lts, s)
            r1 = random_subrelation(rng, bound)
            r2 = random_subrelation(rng, bound)
            if not (progresses_to(lts, r1, s).holds and progresses_to(lts, r2, s).holds):
                continue
            cases += 1
            if not progresses_to(lts, r1 | r2, s).holds:
                self.add("progress-union-closure", False, cases, f"union broke progress on {lts!r}")
                return
        self.add("progress-union-closure", True, cases)

    def check_largest_characterization(self):
        rng, cases = self.rng, 0
        budget = _clamp(self.samples // 150, 1, 8)
        for i in range(budget):
            lts, _seq = self.small[i % len(self.small)]
            everything = _all_relations(lts.n_states)
            for _ in range(2):
                s = random_relation(rng, lts.n_states)
                computed = largest_progressing_to(lts, s)
                union = Relation.empty(lts.n_states)
                for x in everything:
                    if progress_holds(lts, x, s):
                        union = union | x
                cases += 1
                if union != computed:
                    self.add(
                        "largest-characterization", False, cases,
                        f"enumerated union differs from computed largest on {lts!r}",
                    )
                    return
        self.add("largest-characterization", True, cases)

    def check_progress_iff_subset(self):
        rng, cases = self.rng, 0
        for _ in range(self.samples):
            lts, _seq = _pick(rng, self.systems)
            r = random_relation(rng, lts.n_states)
            s = random_relation(rng, lts.n_states)
            cases += 1
            direct = progresses_to(lts, r, s).holds
            via_largest = r.is_subset(largest_progressing_to(lts, s))
            if direct != via_largest:
                self.add("progress-iff-subset", False, cases, f"disagreement on {lts!r}")
                return
        self.add("progress-iff-subset", True, cases)

    # stratification invariants

    def check_strata_decreasing(self):
        cases = 0
        for _lts, seq in self.systems:
            for k in range(seq.epsilon):
                cases += 1
                if not (seq.strata[k + 1] < seq.strata[k]):
                    self.add("strata-decreasing", False, cases, f"stratum {k + 1} not strictly below")
                    return
        self.add("strata-decreasing", True, cases)

    def check_strata_index_monotone(self):
        rng, cases = self.rng, 0
        for _ in range(self.samples // 2):
            _lts, seq = _pick(rng, self.systems)
            j = rng.randint(0, seq.epsilon + 3)
            k = rng.randint(j, seq.epsilon + 6)
            cases += 1
            if not seq.stratum(k).is_subset(seq.stratum(j)):
                self.add("strata-index-monotone", False, cases, f"stratum {k} not inside stratum {j}")
                return
        self.add("strata-index-monotone", True, cases)

    def check_strata_progress_step(self):
        cases = 0
        for lts, seq in self.systems:
            for k in range(seq.epsilon):
                cases += 1
                if not progresses_to(lts, seq.strata[k + 1], seq.strata[k]).holds:
                    self.add("strata-progress-step", False, cases, f"step {k + 1} on {lts!r}")
                    return
        self.add("strata-progress-step", True, cases)

    def check_bisimilarity_self_progress(self):
        cases = 0
        for lts, seq in self.systems:
            cases += 1
            if not progresses_to(lts, seq.bisimilarity(), seq.bisimilarity()).holds:
                self.add("bisimilarity-self-progress", False, cases, f"{lts!r}")
                return
        self.add("bisimilarity-self-progress", True, cases)

    def check_strata_fixpoint(self):
        cases = 0
        for lts, seq in self.systems:
            stable = seq.strata[seq.epsilon]
            once = largest_progressing_to(lts, stable)
            twice = largest_progressing_to(lts, once)
            cases += 1
            if once != stable or twice != stable:
                self.add("strata-fixpoint", False, cases, f"{lts!r}")
                return
        self.add("strata-fixpoint", True, cases)

    def check_strata_equivalence(self):
        cases = 0
        for _lts, seq in self.systems:
            for stratum in seq.strata:
                cases += 1
                if not stratum.is_equivalence():
                    self.add("strata-equivalence", False, cases, "non-equivalence stratum")
                    return
        self.add("strata-equivalence", True, cases)

    def check_bisimilarity_enumerated(self):
        cases = 0
        budget = _clamp(self.samples // 100, 2, 10)
        for i in range(budget):
            lts, seq = self.small[i % len(self.small)]
            union = Relation.empty(lts.n_states)
            for x in _all_relations(lts.n_states):
                if progress_holds(lts, x, x):
                    union = union | x
            cases += 1
            if union != seq.bisimilarity():
                self.add(
                    "bisimilarity-enumerated", False, cases,
                    f"union of self-progressing relations differs on {lts!r}",
                )
                return
        self.add("bisimilarity-enumerated", True, cases)

    # companion invariants

    def check_lrf_monotone(self):
        rng, cases = self.rng, 0
        for _ in range(self.samples):
            _lts, seq = _pick(rng, self.systems)
            s = random_relation(rng, seq.lts.n_states)
            r = random_subrelation(rng, s)
            cases += 1
            if not lrf(seq, r).is_subset(lrf(seq, s)):
                self.add("lrf-monotone", False, cases, f"on {seq.lts!r}")
                return
        self.add("lrf-monotone", True, cases)

    def check_lrf_respectful(self):
        rng, cases = self.rng, 0
        for _ in range(self.samples):
            lts, seq = _pick(rng, self.systems)
            r, s = progression_sample(rng, lts)
            if not (r.is_subset(s) and progresses_to(lts, r, s).holds):
                continue
            cases += 1
            fr, fs = lrf(seq, r), lrf(seq, s)
            if not fr.is_subset(fs) or not progresses_to(lts, fr, fs).holds:
                self.add("lrf-respectful", False, cases, f"on {lts!r}")
                return
        self.add("lrf-respectful", True, cases)

    def check_lrf_sound_fixpoint(self):
        rng, cases = self.rng, 0
        for _ in range(self.samples):
            _lts, seq = _pick(rng, self.systems)
            r = random_subrelation(rng, seq.bisimilarity())
            cases += 1
            if lrf(seq, r) != seq.bisimilarity():
                self.add("lrf-sound-fixpoint", False, cases, f"on {seq.lts!r}")
                return
        self.add("lrf-sound-fixpoint", True, cases)

    def check_lrf_largest(self):
        rng, cases = self.rng, 0
        per_system = _clamp(self.samples // len(self.systems), 5, 100)
        for lts, seq in self.systems:
            rs = [random_relation(rng, lts.n_states) for _ in range(per_system)]
            for f in catalog(lts, seq):
                verdict = check_lrf_largest(seq, f, rs)
                cases += verdict.samples_checked
                if not verdict.holds:
                    ce = verdict.counterexample
                    self.add("lrf-largest", False, cases, f"{ce.function_name} escapes lrf on {lts!r}")
                    return
        self.add("lrf-largest", True, cases)

    def check_lrf_idempotent(self):
        rng, cases = self.rng, 0
        for _ in range(self.samples):
            _lts, seq = _pick(rng, self.systems)
            r = random_relation(rng, seq.lts.n_states)
            image = lrf(seq, r)
            cases += 1
            if lrf(seq, image) != image:
                self.add("lrf-idempotent", False, cases, f"on {seq.lts!r}")
                return
        self.add("lrf-idempotent", True, cases)

    # checker invariants

    def check_checker_soundness(self):
        rng, cases = self.rng, 0
        budget = _clamp(self.samples // 5, 20, 400)
        for _ in range(budget):
            lts, seq = _pick(rng, self.systems)
            functions = catalog(lts, seq) + [lrf_function(seq)]
            f = _pick(rng, functions)
            r = random_relation(rng, lts.n_states)
            report = check_upto(lts, r, f, seq=seq)
            cases += 1
            if report.conclusion == CONTAINED:
                if not report.cross_check or not r.is_subset(seq.bisimilarity()):
                    self.add("checker-soundness", False, cases, f"{f.name} on {lts!r}")
                    return
        self.add("checker-soundness", True, cases)

    def check_checker_maximality(self):
        rng, cases = self.rng, 0
        budget = _clamp(self.samples // 10, 10, 100)
        for _ in range(budget):
            lts, seq = _pick(rng, self.systems)
            r = random_relation(rng, lts.n_states)
            any_success = any(
                check_upto(lts, r, f, seq=seq).conclusion == CONTAINED
                for f in catalog(lts, seq)
            )
            cases += 1
            if any_success and check_companion(lts, r).conclusion != CONTAINED:
                self.add(
                    "checker-maximality", False, cases,
                    f"a catalog function succeeded but lrf failed on {lts!r}",
                )
                return
        self.add("checker-maximality", True, cases)

    # gallery invariants

    def check_gallery_law(self):
        cases = 0
        for n in range(GALLERY_MAX + 1):
            verdict = verify_gallery(n)
            cases += verdict.checked
            if not verdict.passed:
                self.add("gallery-law", False, cases, verdict.discrepancy)
                return
        self.add("gallery-law", True, cases)

    def check_gallery_consecutive_distinct(self):
        cases = 0
        for n in range(GALLERY_MAX + 1):
            seq = compute_strata(build_T(n + 1).lts)
            cases += 1
            if seq.stratum(n) == seq.stratum(n + 1):
                self.add("gallery-consecutive-distinct", False, cases, f"strata {n} and {n + 1} agree on T_{n + 1}")
                return
        self.add("gallery-consecutive-distinct", True, cases)

    # lattice invariants

    def check_chain_decreasing(self):
        cases = 0
        for name, lat, prog in self.progressions:
            chain = z_chain(lat, prog)
            for k in range(chain.stable_index):
                cases += 1
                if not lat.le(chain.zs[k + 1], chain.zs[k]) or chain.zs[k + 1] == chain.zs[k]:
                    self.add("lattice-chain-decreasing", False, cases, f"on {name}")
                    return
        self.add("lattice-chain-decreasing", True, cases)

    def check_chain_step_related(self):
        cases = 0
        for name, lat, prog in self.progressions:
            chain = z_chain(lat, prog)
            steps = list(zip(chain.zs[1:], chain.zs[:-1]))
            steps.append((chain.zs[-1], chain.zs[-1]))
            for nxt, cur in steps:
                cases += 1
                if not prog.rel[nxt, cur]:
                    self.add("lattice-chain-step-related", False, cases, f"on {name}")
                    return
        self.add("lattice-chain-step-related", True, cases)

    def check_companion_monotone(self):
        cases = 0
        for name, lat, prog in self.progressions:
            chain = z_chain(lat, prog)
            comp = [companion_at(lat, prog, chain, x) for x in range(lat.size)]
            for x in range(lat.size):
                for y in range(lat.size):
                    if lat.le(x, y):
                        cases += 1
                        if not lat.le(comp[x], comp[y]):
                            self.add("lattice-companion-monotone", False, cases, f"on {name}")
                            return
        self.add("lattice-companion-monotone", True, cases)

    def check_companion_in_classes(self):
        cases = 0
        for name, lat, prog in self.progressions:
            chain = z_chain(lat, prog)
            comp = tuple(companion_at(lat, prog, chain, x) for x in range(lat.size))
            cases += 1
            if not (
                is_r_monotone(lat, prog, comp)
                and is_monotone(lat, comp)
                and is_compatible(lat, prog, comp)
            ):
                self.add("lattice-companion-in-classes", False, cases, f"on {name}")
                return
        self.add("lattice-companion-in-classes", True, cases)

    def check_largest_coincidence(self):
        cases = 0
        for name, lat, prog in self.progressions:
            chain = z_chain(lat, prog)
            comp = tuple(companion_at(lat, prog, chain, x) for x in range(lat.size))
            cases += 1
            if brute_force_largest(lat, prog, "r_monotone") != comp:
                self.add("lattice-largest-coincidence", False, cases, f"r_monotone mode on {name}")
                return
            if brute_force_largest(lat, prog, "compatible") != comp:
                self.add("lattice-largest-coincidence", False, cases, f"compatible mode on {name}")
                return
        self.add("lattice-largest-coincidence", True, cases)

    def check_bridge_agreement(self):
        cases = 0
        bridge_systems = [build_T(1).lts]
        bridge_systems += [l for (l, _s) in self.systems if l.n_states <= 2][:3]
        for lts in bridge_systems:
            lat, prog = lts_to_lattice(lts, max_states=2)
            chain = z_chain(lat, prog)
            seq = compute_strata(lts)
            for k in range(max(chain.stable_index, seq.epsilon) + 2):
                cases += 1
                z = chain.zs[min(k, chain.stable_index)]
                if z != relation_element_index(seq.stratum(k)):
                    self.add("lattice-bridge-agreement", False, cases, f"chain mismatch at {k} on {lts!r}")
                    return
            for mask in range(lat.size):
                r = element_relation(lts.n_states, mask)
                cases += 2
                if companion_at(lat, prog, chain, mask) != relation_element_index(lrf(seq, r)):
                    self.add("lattice-bridge-agreement", False, cases, f"companion mismatch on {lts!r}")
                    return
                if s_of(lat, prog, mask) != relation_element_index(largest_progressing_to(lts, r)):
                    self.add("lattice-bridge-agreement", False, cases, f"s mismatch on {lts!r}")
                    return
        self.add("lattice-bridge-agreement", True, cases)

    # io invariants

    def check_aut_round_trip(self):
        cases = 0
        for lts, _seq in self.systems:
            cases += 1
            if parse_aut(render_aut(lts)) != lts:
                self.add("aut-round-trip", False, cases, f"{lts!r}")
                return
        self.add("aut-round-trip", True, cases)

    def note_monotone_classes(self):
        # report-only: how r-monotonicity and compatibility overlap for
        # monotone functions; no expectation is asserted either way
        totals = [0, 0]
        for name, lat, prog in self.progressions:
            if lat.size > 4:
                continue
            c = classify_monotone_functions(lat, prog)
            totals[0] += c.n_r_monotone_not_compatible
            totals[1] += c.n_compatible_not_r_monotone
        self.report.info.append(
            "monotone-function-classes "
            f"r_monotone_not_compatible={totals[0]} compatible_not_r_monotone={totals[1]}"
        )

    def run(self) -> VerificationReport:
        self.check_progress_monotone()
        self.check_progress_union_closure()
        self.check_largest_characterization()
        self.check_progress_iff_subset()
        self.check_strata_decreasing()
        self.check_strata_index_monotone()
        self.check_strata_progress_step()
        self.check_bisimilarity_self_progress()
        self.check_strata_fixpoint()
        self.check_strata_equivalence()
        self.check_bisimilarity_enumerated()
        self.check_lrf_monotone()
        self.check_lrf_respectful()
        self.check_lrf_sound_fixpoint()
        self.check_lrf_largest()
        self.check_lrf_idempotent()
        self.check_checker_soundness()
        self.check_checker_maximality()
        self.check_gallery_law()
        self.check_gallery_consecutive_distinct()
        self.check_chain_decreasing()
        self.check_chain_step_related()
        self.check_companion_monotone()
        self.check_companion_in_classes()
        self.check_largest_coincidence()
        self.check_bridge_agreement()
        self.check_aut_round_trip()
        self.note_monotone_classes()
        return self.report


def run_verification(seed: int = 0, samples: int = 200) -> VerificationReport:
    if samples < 1:
        raise ValueError("samples must be positive")
    return _Suite(seed, samples).run()
