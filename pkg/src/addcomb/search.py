"""Verification campaigns over all small abelian groups.

A campaign walks every group up to ``max_order`` and, for each pair (A, B),
runs the selected checkers at every admissible t.  In exhaustive mode both sets
are normalized to contain 0, which loses nothing because every checked
statement is invariant under translating A and B independently.  Records come
out in canonical order (group, A bitset, B bitset, t) whatever the number of
worker processes.
"""

from __future__ import annotations

import enum
import hashlib
import json
import os
import random
import time
from dataclasses import dataclass, field
from itertools import product
from math import prod
from multiprocessing import get_context
from typing import Iterable, Iterator, Sequence

from addcomb.energy import check_energy_lemma, check_energy_upper_bound
from addcomb.group import GroupSpec, GSet, make_group
from addcomb.sums import pollard_sum
from addcomb.theorems import (
    Branch,
    TheoremVerdict,
    check_chowla_pollard,
    check_corollary,
    check_critical_pair,
    check_double_rep_remark,
    check_green_ruzsa,
    check_kneser,
    check_main_theorem,
    check_multiplicity_prop,
    check_pollard_cyclic,
    check_t2_theorem,
    not_applicable,
    recheck_witness,
)

EXHAUSTIVE_MAX_ORDER = 12
CHUNK_PAIRS = 4096

# t-independent checkers run once per pair, in the pair's first record
PAIR_CHECKERS = ("kneser", "t2", "corollary", "mult", "critical", "energy-upper")
T_CHECKERS = ("main", "remark", "energy", "pollard", "chowla", "green-ruzsa")
ALL_CHECKERS = PAIR_CHECKERS + T_CHECKERS
DEFAULT_CHECKERS = (
    "kneser", "main", "t2", "corollary", "mult", "critical", "remark", "energy", "energy-upper",
)


class Mode(str, enum.Enum):
    EXHAUSTIVE = "exhaustive"
    SAMPLED = "sample"


class CounterexampleError(RuntimeError):
    def __init__(self, record: "CampaignRecord", reproducer: str):
        self.record = record
        self.reproducer = reproducer
        bad = [k for k, v in record.verdicts.items() if not v.holds]
        super().__init__(f"counterexample for {', '.join(bad)}; reproduce with: {reproducer}")


def _prime_power_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for first in range(min(n, largest), 0, -1):
        for rest in _prime_power_partitions(n - first, first):
            yield (first,) + rest


def _factorize(n: int) -> dict[int, int]:
    from sympy import factorint

    return {int(p): int(e) for p, e in factorint(n).items()}


def enumerate_abelian_groups(max_order: int) -> list[GroupSpec]:
    """One group per isomorphism class of order <= max_order, in invariant-factor form."""
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    groups = []
    for n in range(1, max_order + 1):
        primes = sorted(_factorize(n).items())
        choices = [list(_prime_power_partitions(e)) for _, e in primes]
        found = []
        for combo in product(*choices):
            width = max((len(c) for c in combo), default=0)
            factors = [
                prod(p ** part[i] for (p, _), part in zip(primes, combo) if i < len(part))
                for i in range(width)
            ]
            found.append(tuple(sorted(factors)) or (1,))
        for orders in sorted(found, key=lambda f: (len(f), f)):
            groups.append(make_group(orders))
    return groups


@dataclass(frozen=True)
class CampaignConfig:
    max_order: int
    t_range: tuple[int, int] = (1, 3)
    mode: Mode = Mode.EXHAUSTIVE
    samples_per_group: int = 1000
    seed: int = 0
    checkers: tuple[str, ...] = DEFAULT_CHECKERS
    threads: int = 1
    min_order: int = 1
    groups: tuple[tuple[int, ...], ...] | None = None
    recheck_witnesses: bool = True
    record_timing: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")
        if self.mode is Mode.EXHAUSTIVE and self.max_order > EXHAUSTIVE_MAX_ORDER:
            raise ValueError(f"exhaustive campaigns are capped at order {EXHAUSTIVE_MAX_ORDER}")
        lo, hi = self.t_range
        if not 1 <= lo <= hi:
            raise ValueError(f"bad t range {self.t_range}")
        unknown = set(self.checkers) - set(ALL_CHECKERS)
        if unknown:
            raise ValueError(f"unknown checkers {sorted(unknown)}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    def group_list(self) -> list[GroupSpec]:
        if self.groups is not None:
            return [make_group(g) for g in self.groups]
        return [G for G in enumerate_abelian_groups(self.max_order) if G.order >= self.min_order]


@dataclass(frozen=True)
class CampaignRecord:
    group: tuple[int, ...]
    A: tuple[int, ...]
    B: tuple[int, ...]
    t: int
    verdicts: dict[str, TheoremVerdict]
    tightness_gap: int
    elapsed_ns: int = 0

    @property
    def holds(self) -> bool:
        return all(v.holds for v in self.verdicts.values())


def _run_checker(name: str, A: GSet, B: GSet, t: int) -> list[tuple[str, TheoremVerdict]]:
    m = min(A.card, B.card)
    if name == "kneser":
        return [(name, check_kneser(A, B))]
    if name == "mult":
        return [(name, check_multiplicity_prop(A, B))]
    if name == "critical":
        return [(name, check_critical_pair(A, B))]
    if name in ("t2", "corollary"):
        if m < 2:
            return [(name, not_applicable(name))]
        fn = check_t2_theorem if name == "t2" else check_corollary
        return [(name, fn(A, B))]
    if name == "energy-upper":
        if A.card < B.card:
            return []
        return [(f"energy-upper[k={k}]", check_energy_upper_bound(A, B, None, k)) for k in range(1, m + 1)]
    if name == "energy":
        if A.card < B.card:
            return []
        return [(f"energy[k={k}]", check_energy_lemma(A, B, k, t)) for k in range(1, m + 1)]
    if name == "main":
        return [(name, check_main_theorem(A, B, t))]
    if name == "remark":
        return [(name, check_double_rep_remark(A, B, t))]
    if name == "pollard":
        return [(name, check_pollard_cyclic(A, B, t))]
    if name == "chowla":
        if not A.group.is_cyclic():
            return [(name, not_applicable(name))]
        return [(name, check_chowla_pollard(A, B, t))]
    if name == "green-ruzsa":
        return [(name, check_green_ruzsa(A, B, t))]
    raise ValueError(f"unknown checker {name!r}")


def weak_bound(A: GSet, B: GSet, t: int) -> int:
    """The weak bound used for tightness: 2|A|+2|B|-4 at t = 2, else t|A|+t|B|-2t^2+1."""
    if t == 2:
        return 2 * A.card + 2 * B.card - 4
    return t * A.card + t * B.card - 2 * t * t + 1


def evaluate_pair(A: GSet, B: GSet, config: CampaignConfig) -> list[CampaignRecord]:
    lo, hi = config.t_range
    top = min(hi, A.card, B.card)
    records = []
    orders = A.group.invariant_factors()
    first = True
    for t in range(lo, top + 1):
        start = time.perf_counter_ns() if config.record_timing else 0
        verdicts: dict[str, TheoremVerdict] = {}
        for name in config.checkers:
            if name in PAIR_CHECKERS and not first:
                continue
            for key, v in _run_checker(name, A, B, t):
                if config.recheck_witnesses and v.branch is Branch.WITNESS and name == "main":
                    if not recheck_witness(A, B, t, v):
                        v = TheoremVerdict(v.theorem, False, Branch.FAILED, v.lhs, v.rhs)
                verdicts[key] = v
        first = False
        gap = pollard_sum(A, B, t) - weak_bound(A, B, t)
        elapsed = time.perf_counter_ns() - start if config.record_timing else 0
        records.append(
            CampaignRecord(orders, A.elements, B.elements, t, verdicts, gap, elapsed)
        )
    return records


def _exhaustive_pairs(G: GroupSpec, lo: int, hi: int) -> Iterator[tuple[GSet, GSet]]:
    # pair index i -> (A, B) with A, B ranging over subsets that contain 0
    half = 1 << (G.order - 1)
    for i in range(lo, hi):
        a, b = divmod(i, half)
        yield GSet(G, (a << 1) | 1), GSet(G, (b << 1) | 1)


def _seed_for(seed: int, G: GroupSpec, chunk: int) -> int:
    key = f"{seed}:{','.join(map(str, G.orders))}:{chunk}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "little")


def _random_set(G: GroupSpec, rng: random.Random) -> GSet:
    while True:
        mask = rng.getrandbits(G.order)
        if mask:
            return GSet(G, mask)


def _sampled_pairs(G: GroupSpec, seed: int, chunk: int, count: int) -> Iterator[tuple[GSet, GSet]]:
    rng = random.Random(_seed_for(seed, G, chunk))
    for _ in range(count):
        A = _random_set(G, rng)
        B = _random_set(G, rng)
        yield A, B


@dataclass(frozen=True)
class _Task:
    orders: tuple[int, ...]
    chunk: int
    lo: int
    hi: int


def _tasks(config: CampaignConfig) -> Iterator[_Task]:
    for G in config.group_list():
        if config.mode is Mode.EXHAUSTIVE:
            total = 1 << (2 * (G.order - 1))
        else:
            total = config.samples_per_group
        for chunk, lo in enumerate(range(0, total, CHUNK_PAIRS)):
            yield _Task(G.orders, chunk, lo, min(total, lo + CHUNK_PAIRS))


def _run_task(args: tuple[_Task, CampaignConfig]) -> list[CampaignRecord]:
    task, config = args
    G = make_group(task.orders)
    if config.mode is Mode.EXHAUSTIVE:
        pairs: Iterable = _exhaustive_pairs(G, task.lo, task.hi)
    else:
        pairs = _sampled_pairs(G, config.seed, task.chunk, task.hi - task.lo)
    out = []
    for A, B in pairs:
        out.extend(evaluate_pair(A, B, config))
    return out


def reproducer(record: CampaignRecord) -> str:
    def lit(xs: Sequence[int]) -> str:
        return "{" + ",".join(map(str, xs)) + "}"

    bad = next((v.theorem for v in record.verdicts.values() if not v.holds), "main")
    return (
        f"python -m addcomb verify --group {','.join(map(str, record.group))} "
        f"--A \"{lit(record.A)}\" --B \"{lit(record.B)}\" --t {record.t} --theorem {bad}"
    )


def run_campaign(config: CampaignConfig, stop_on_counterexample: bool = True) -> Iterator[CampaignRecord]:
    """Stream records in canonical order; raise CounterexampleError on the first failure."""
    tasks = ((task, config) for task in _tasks(config))
    if config.threads == 1:
        batches: Iterable[list[CampaignRecord]] = map(_run_task, tasks)
        pool = None
    else:
        pool = get_context("fork").Pool(config.threads)
        batches = pool.imap(_run_task, tasks)
    try:
        for batch in batches:
            for record in batch:
                if stop_on_counterexample and not record.holds:
                    raise CounterexampleError(record, reproducer(record))
                yield record
    finally:
        if pool is not None:
            pool.terminate()


@dataclass
class CampaignSummary:
    records: int = 0
    pairs: int = 0
    _last: tuple | None = field(default=None, repr=False)
    counterexamples: list[CampaignRecord] = field(default_factory=list)
    branches: dict[str, dict[str, int]] = field(default_factory=dict)
    witness_l: dict[int, int] = field(default_factory=dict)
    tight: list[CampaignRecord] = field(default_factory=list)

    def add(self, record: CampaignRecord, keep_tight: int = 50) -> None:
        self.records += 1
        key = (record.group, record.A, record.B)
        if key != self._last:
            self.pairs += 1
            self._last = key
        if not record.holds:
            self.counterexamples.append(record)
        for key, v in record.verdicts.items():
            name = key.split("[")[0]
            per = self.branches.setdefault(name, {})
            per[v.branch.value] = per.get(v.branch.value, 0) + 1
            if name == "main" and v.witness is not None:
                self.witness_l[v.witness.l] = self.witness_l.get(v.witness.l, 0) + 1
        if record.tightness_gap == 0 and len(self.tight) < keep_tight:
            self.tight.append(record)


def summarize(records: Iterable[CampaignRecord]) -> CampaignSummary:
    summary = CampaignSummary()
    for record in records:
        summary.add(record)
    return summary


def default_threads() -> int:
    return int(os.environ.get("ADDCOMB_THREADS", "1"))


def record_to_json(record: CampaignRecord) -> str:
    from addcomb.serialize import record_dict

    return json.dumps(record_dict(record), separators=(",", ":"))
