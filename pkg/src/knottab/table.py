"""Classification-table builder.

Positions 1..2^N are assigned knots step by step: step n covers the interval
(2^(n-1), 2^n].  The trefoil sits at 1 (position 2 stays reserved for it) and
3_1^n anchors every 2^n.  Within a step, the layout plan writes sequence
knots into slots; repeats are replaced by fresh prime knots at prime slots
and by new times-rooted knots at the designated composite slots, and the
resulting displacement chains push the step's jumping-over numbers out into
the next step.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import plans
from .dyadic import Sieve, factorize, jumpers, related_number, step_of
from .fixtures import REPLACED_RECORDED_FROM, load_fixture_rows
from .knots import (
    Atom,
    CATALOG,
    KnotExpr,
    TREFOIL,
    Times,
    atom,
    contains_times,
    is_times_rooted,
    parse,
    render,
    star,
    star_power,
)


class BuildError(RuntimeError):
    """Step resolution failure; carries the partial build for diagnosis."""

    def __init__(self, message: str, partial: Optional["StepBuild"] = None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SequenceInfo:
    head: Atom
    tail_step: int
    knots: tuple[KnotExpr, ...]


@dataclass
class StepBuild:
    """Record of one induction step."""

    n: int
    sequences: list[SequenceInfo] = field(default_factory=list)
    incoming: list[KnotExpr] = field(default_factory=list)
    outgoing: list[int] = field(default_factory=list)
    chains: list[list[int]] = field(default_factory=list)
    # Prime positions: (new prime knot, repeats recorded there).
    replacements: dict[int, tuple[KnotExpr, tuple[KnotExpr, ...]]] = field(
        default_factory=dict
    )
    # Composite slots that took a new times-rooted knot.
    times_placed: dict[int, tuple[KnotExpr, tuple[KnotExpr, ...]]] = field(
        default_factory=dict
    )
    special_placed: dict[int, tuple[KnotExpr, tuple[KnotExpr, ...]]] = field(
        default_factory=dict
    )
    override_placed: dict[int, KnotExpr] = field(default_factory=dict)
    # Pre-replacement layout: every sequence knot written to each slot.
    column: dict[int, tuple[KnotExpr, ...]] = field(default_factory=dict)
    dropped: list[KnotExpr] = field(default_factory=list)

    def replaced_at(self, position: int) -> tuple[KnotExpr, ...]:
        for record in (self.replacements, self.times_placed, self.special_placed):
            if position in record:
                return record[position][1]
        return ()


class ClassificationTable:
    """Position <-> knot assignment with per-step build records."""

    def __init__(self):
        self.assignment: dict[int, KnotExpr] = {}
        self.inverse: dict[KnotExpr, int] = {}
        self.prime_of: dict[Atom, int] = {}
        self.knot_of_prime: dict[int, Atom] = {}
        self.steps: dict[int, StepBuild] = {}
        self.max_step = 0
        self._sieve = Sieve(4)
        self._prime_knot_cursor = 0  # index into the catalog allocation order
        self._allocation = [a for a in CATALOG.iter_atoms() if a != TREFOIL]

    # -- bookkeeping -------------------------------------------------------

    def sieve_to(self, limit: int) -> Sieve:
        if self._sieve.limit < limit:
            self._sieve = Sieve(limit)
        return self._sieve

    def _assign(self, position: int, knot: KnotExpr) -> None:
        if position in self.assignment:
            raise BuildError(f"position {position} assigned twice")
        if knot in self.inverse:
            raise BuildError(
                f"knot {render(knot)} already at {self.inverse[knot]}, "
                f"cannot also take {position}"
            )
        self.assignment[position] = knot
        self.inverse[knot] = position

    def _next_prime_knot(self) -> Atom:
        if self._prime_knot_cursor >= len(self._allocation):
            raise BuildError("prime-knot catalog exhausted")
        knot = self._allocation[self._prime_knot_cursor]
        self._prime_knot_cursor += 1
        return knot

    def knot_at(self, position: int) -> KnotExpr:
        if position == 2:
            raise KeyError("position 2 is reserved for the trefoil")
        return self.assignment[position]

    def position_of(self, knot: KnotExpr) -> Optional[int]:
        return self.inverse.get(knot)

    def related_knot(self, m: int) -> KnotExpr:
        """The star-product of prime knots matching m's prime factorization."""
        factors = factorize(m).multiset()
        parts = []
        for p in factors:
            if p == 2:
                parts.append(TREFOIL)
            else:
                if p not in self.knot_of_prime:
                    raise BuildError(f"prime {p} has no assigned knot yet")
                parts.append(self.knot_of_prime[p])
        if len(parts) == 1:
            return parts[0]
        return _star_all(parts)

    def related_number_of(self, k: KnotExpr) -> Optional[int]:
        return related_number(k, self.prime_of)

    def head_for_step(self, k: int) -> str:
        """Head knot drawn from step k for generated layouts."""
        if k == 1:
            return "3_1"
        lo = 2 ** (k - 1)
        primes = [p for p in self.knot_of_prime if lo < p <= 2**k]
        if not primes:
            raise BuildError(f"no assigned prime in step {k}")
        return self.knot_of_prime[min(primes)].id.name


def _star_all(parts: list[KnotExpr]) -> KnotExpr:
    out = parts[0]
    for p in parts[1:]:
        out = star(out, p)
    return out


def nominal_number(head: Atom, tail_pos: int, table: ClassificationTable) -> int:
    """Related prime of the head times the tail position (room accounting)."""
    key = Atom(head.id.achiral())
    if key not in table.prime_of:
        raise ValueError(f"head {head.id.name} has no related prime")
    return table.prime_of[key] * tail_pos


def preordering_sequences(
    n: int, table: ClassificationTable
) -> list[SequenceInfo]:
    """The step's preordering sequences, omitting all-repeat ones.

    One sequence per kept head: the head knot starred with every knot of the
    paired earlier step, in table order.  Heads are listed by descending
    assigned prime.  Sequences the layout drops (every knot a repeat of one
    already generated) are omitted.
    """
    if n < 2:
        raise ValueError("preordering sequences start at step 2")
    for k in range(1, n):
        if k not in table.steps:
            raise ValueError(f"step {k} not built yet")
    plan = plans.PLANS.get(n) or plans.generated_plan(n, table.head_for_step)
    kept_heads = {block.head for block in plan.blocks}
    heads: list[tuple[int, Atom]] = [(2, TREFOIL)]
    for p, a in sorted(table.knot_of_prime.items()):
        if p >= 2 ** (n - 1):
            continue
        if p == 2:
            continue
        heads.append((p, a))
    out = []
    for p, head in sorted(heads, key=lambda item: -item[0]):
        if head.id.name not in kept_heads:
            continue
        tail_step = n - step_of(p)
        knots = tuple(
            star(head, tail) for _, tail in _step_entries(table, tail_step)
        )
        out.append(SequenceInfo(head, tail_step, knots))
    return out


def _step_entries(
    table: ClassificationTable, k: int
) -> list[tuple[int, KnotExpr]]:
    """(position, knot) pairs of step k in table order; step 1 is the
    trefoil standing for the reserved position 2."""
    if k == 1:
        return [(2, TREFOIL)]
    lo, hi = 2 ** (k - 1) + 1, 2**k
    return [(pos, table.assignment[pos]) for pos in range(lo, hi + 1)]


@dataclass
class _Instance:
    slot: int
    knot: KnotExpr
    order: int  # global generation order, for stable repeat recording


def _generate_instances(
    plan: plans.StepPlan, table: ClassificationTable
) -> list[_Instance]:
    instances = []
    order = 0
    for block in plan.blocks:
        head = parse(block.head)
        if isinstance(block.source, str) and block.source.startswith(plans.COLUMN):
            src_step = int(block.source[len(plans.COLUMN) :])
            column = table.steps[src_step].column
            tails = []
            for t in range(block.lo, block.hi + 1):
                knots = column[t]
                if len(knots) != 1:
                    raise BuildError(
                        f"column tail {t} of step {src_step} is ambiguous"
                    )
                tails.append(knots[0])
        else:
            k = int(block.source)
            lookup = dict(_step_entries(table, k))
            tails = [lookup[t] for t in range(block.lo, block.hi + 1)]
        for offset, tail in enumerate(tails):
            instances.append(_Instance(block.slot + offset, star(head, tail), order))
            order += 1
    return instances


def build_step(n: int, table: ClassificationTable) -> StepBuild:
    """Complete the assignment on (2^(n-1), 2^n]; see the module docstring."""
    if n != table.max_step + 1:
        raise BuildError(f"steps must be built in order; next is {table.max_step + 1}")
    if n == 1:
        build = StepBuild(n=1)
        table._assign(1, TREFOIL)
        table.prime_of[TREFOIL] = 2
        table.knot_of_prime[2] = TREFOIL
        table.steps[1] = build
        table.max_step = 1
        return build

    lo, hi = 2 ** (n - 1) + 1, 2**n
    sieve = table.sieve_to(hi)
    plan = plans.PLANS.get(n) or plans.generated_plan(n, table.head_for_step)
    build = StepBuild(n=n)

    anchor_knot = star_power(TREFOIL, n)
    j_out = jumpers(n, sieve)
    j_in = table.steps[n - 1].outgoing
    incoming = [table.related_knot(j) for j in j_in]
    jumper_knots = {table.related_knot(j) for j in j_out}
    build.outgoing = list(j_out)

    prime_slots = [s for s in range(lo, hi) if sieve.is_prime(s)]
    times_slots = {slot: parse(text) for slot, text in plan.times}
    special_slots = {slot: parse(text) for slot, text in plan.specials}
    override_slots = {slot: parse(text) for slot, text in plan.overrides}
    allow_unplaced = {parse(text) for text in plan.allow_unplaced}

    instances = _generate_instances(plan, table)
    column: dict[int, list[KnotExpr]] = defaultdict(list)
    for inst in instances:
        if not (lo <= inst.slot < hi):
            raise BuildError(f"slot {inst.slot} outside step {n}", build)
        column[inst.slot].append(inst.knot)
    build.column = {s: tuple(ks) for s, ks in sorted(column.items())}

    # Stale repeats of already-assigned knots and (defensively) knots that
    # jump out of this step never compete for slots.
    usable: list[_Instance] = []
    for inst in instances:
        if inst.knot in jumper_knots or inst.knot in table.inverse:
            if plan.strict:
                raise BuildError(
                    f"sequence knot {render(inst.knot)} at {inst.slot} "
                    f"should not occur in step {n}",
                    build,
                )
            build.dropped.append(inst.knot)
            continue
        usable.append(inst)

    barred = (
        set(prime_slots)
        | set(times_slots)
        | set(special_slots)
        | set(override_slots)
    )

    by_knot: dict[KnotExpr, list[_Instance]] = defaultdict(list)
    for inst in usable:
        by_knot[inst.knot].append(inst)

    kept: dict[KnotExpr, int] = {}
    unplaced: list[KnotExpr] = []
    candidates = {
        k: sorted({i.slot for i in insts if i.slot not in barred})
        for k, insts in by_knot.items()
        if k != anchor_knot  # anchor repeats are always replaced
    }

    if plan.strict:
        for k, slots in candidates.items():
            if len(slots) > 1:
                raise BuildError(
                    f"layout leaves {render(k)} ambiguous between slots {slots}",
                    build,
                )
            if slots:
                kept[k] = slots[0]
            else:
                unplaced.append(k)
    else:
        kept, unplaced = _match_slots(candidates)

    taken = set(kept.values())
    if len(taken) != len(kept):
        raise BuildError(f"two knots kept at one slot in step {n}", build)

    # Repeat records: every instance not kept where it stands, except at
    # override slots (the reference records nothing there).
    replaced_at: dict[int, list[tuple[int, KnotExpr]]] = defaultdict(list)
    for inst in instances:
        if kept.get(inst.knot) == inst.slot:
            continue
        if inst.slot in override_slots:
            continue
        replaced_at[inst.slot].append((inst.order, inst.knot))

    def records(slot: int) -> tuple[KnotExpr, ...]:
        return tuple(k for _, k in sorted(replaced_at.get(slot, [])))

    # Place everything.
    placed: dict[int, KnotExpr] = dict(times_slots)
    placed.update(special_slots)
    placed.update(override_slots)
    for k, slot in kept.items():
        if slot in placed:
            raise BuildError(f"slot {slot} doubly filled in step {n}", build)
        placed[slot] = k

    # Sanity on dropped knots: anything star-pure that should live in this
    # step must have found a slot (generated layouts re-seat them below).
    pending: list[KnotExpr] = []
    for k in unplaced:
        if contains_times(k) or k in allow_unplaced:
            build.dropped.append(k)
            continue
        rel = table.related_number_of(k)
        if rel is not None and lo <= rel <= hi and rel not in j_out:
            if plan.strict:
                raise BuildError(
                    f"{render(k)} (related {rel}) left without a slot", build
                )
            pending.append(k)
        else:
            build.dropped.append(k)

    composite_slots = [s for s in range(lo, hi) if not sieve.is_prime(s)]
    if not plan.strict:
        # Residents and incoming knots that no generated block produced
        # still need seats (the generalized-sequence catch-all).
        seated = set(placed.values()) | set(pending)
        for c in composite_slots:
            if c in j_out:
                continue
            resident = table.related_knot(c)
            if (
                resident != anchor_knot
                and resident not in seated
                and resident not in table.inverse
            ):
                pending.append(resident)
                seated.add(resident)
        for k in incoming:
            if k not in seated and k not in table.inverse:
                pending.append(k)
                seated.add(k)
        free = [s for s in composite_slots if s not in placed]
        # Missing residents first (at their related number when free), then
        # new times-rooted knots into whatever remains.
        for k in sorted(pending, key=render):
            rel = table.related_number_of(k)
            slot = rel if rel in free else (free[0] if free else None)
            if slot is None:
                raise BuildError(f"no slot left for {render(k)} in step {n}", build)
            free.remove(slot)
            placed[slot] = k
            special_slots[slot] = k
        for slot in list(free):
            knot = _next_times_knot(table, placed.values(), n)
            placed[slot] = knot
            times_slots[slot] = knot
            free.remove(slot)

    # Fresh prime knots at the prime slots, in catalog order.
    for slot in prime_slots:
        knot = table._next_prime_knot()
        placed[slot] = knot
        table.prime_of[knot] = slot
        table.knot_of_prime[slot] = knot
        build.replacements[slot] = (knot, records(slot))

    for slot in sorted(times_slots):
        build.times_placed[slot] = (times_slots[slot], records(slot))
    for slot in sorted(special_slots):
        build.special_placed[slot] = (special_slots[slot], records(slot))
    build.override_placed = dict(override_slots)

    placed[hi] = anchor_knot

    missing = [s for s in range(lo, hi + 1) if s not in placed]
    if missing:
        raise BuildError(f"unfilled positions {missing} in step {n}", build)

    for slot in range(lo, hi + 1):
        table._assign(slot, placed[slot])

    # Each natural resident either jumped out or found a position.
    for c in composite_slots + [hi]:
        if c in j_out:
            continue
        resident = table.related_knot(c)
        if resident == anchor_knot:
            continue
        if resident not in table.inverse and resident not in allow_unplaced:
            raise BuildError(
                f"resident {render(resident)} of {c} vanished in step {n}", build
            )

    build.incoming = incoming + [times_slots[s] for s in sorted(times_slots)]
    build.chains = _derive_chains(table, build, n, placed, j_out)
    build.sequences = preordering_sequences(n, table)
    table.steps[n] = build
    table.max_step = n
    return build


def _match_slots(
    candidates: dict[KnotExpr, list[int]]
) -> tuple[dict[KnotExpr, int], list[KnotExpr]]:
    """Deterministic slot matching for generated layouts: forced choices
    first, then largest-slot preference in render order."""
    cands = {k: list(v) for k, v in candidates.items()}
    kept: dict[KnotExpr, int] = {}
    unplaced: list[KnotExpr] = []
    while cands:
        forced = [k for k, v in cands.items() if len(v) <= 1]
        if forced:
            for k in sorted(forced, key=render):
                slots = cands.pop(k)
                if not slots:
                    unplaced.append(k)
                    continue
                kept[k] = slots[0]
                for other in cands.values():
                    if slots[0] in other:
                        other.remove(slots[0])
            continue
        k = min(cands, key=render)
        slot = cands.pop(k)[-1]
        kept[k] = slot
        for other in cands.values():
            if slot in other:
                other.remove(slot)
    return kept, unplaced


def _next_times_knot(
    table: ClassificationTable, already: Iterable[KnotExpr], n: int
) -> KnotExpr:
    """Default times-knot queue for generated layouts: 3_1 x (new prime
    knots with n-1 crossings) first, then times-variants of the star
    residents of successive integers."""
    used = set(already) | set(table.inverse)
    for index in range(1, CATALOG.count(n - 1) + 1):
        candidate = Times((TREFOIL, atom(n - 1, index)))
        if candidate not in used:
            return candidate
    m = 4
    while True:
        fac = factorize(m)
        if sum(e for _, e in fac.primes) >= 2:
            try:
                resident = table.related_knot(m)
            except BuildError:
                resident = None
            if resident is not None and not isinstance(resident, Atom):
                candidate = Times(tuple(resident.parts))
                if candidate not in used:
                    return candidate
        m += 1


def _derive_chains(
    table: ClassificationTable,
    build: StepBuild,
    n: int,
    placed: dict[int, KnotExpr],
    j_out: list[int],
) -> list[list[int]]:
    lo, hi = 2 ** (n - 1) + 1, 2**n
    rel_slot: dict[int, int] = {}
    seeds: list[int] = []
    for slot, knot in placed.items():
        if slot == hi:
            continue
        rel = table.related_number_of(knot)
        if rel is None or not (lo <= rel <= hi):
            seeds.append(slot)
        elif rel != slot:
            rel_slot[rel] = slot
    chains = []
    visited: set[int] = set()
    for seed in sorted(seeds):
        path = [seed]
        cur = seed
        while cur in rel_slot and rel_slot[cur] not in visited:
            cur = rel_slot[cur]
            path.append(cur)
            visited.add(cur)
        chains.append(path)
    return chains


def build_table(max_step: int) -> ClassificationTable:
    """Fold build_step over n = 1..max_step."""
    if max_step < 1:
        raise ValueError("max_step must be >= 1")
    table = ClassificationTable()
    for n in range(1, max_step + 1):
        try:
            build_step(n, table)
        except BuildError as exc:
            raise BuildError(f"step {n}: {exc}", exc.partial) from exc
    return table


# -- fixture verification and serialization ---------------------------------


@dataclass(frozen=True)
class Mismatch:
    position: int
    field: str  # "knot" or "replaced"
    expected: str
    actual: str


def verify_against_fixtures(table: ClassificationTable) -> list[Mismatch]:
    """Per-position comparison against the reference table (canonical-form
    equality), including the recorded repeat knots where the reference
    carries them.  Empty result means the table matches."""
    rows = load_fixture_rows()
    top = min(2**table.max_step, max(rows))
    mismatches = []
    for position in range(1, top + 1):
        if position == 2:
            continue
        row = rows[position]
        actual = table.assignment.get(position)
        if actual != row.knot:
            mismatches.append(
                Mismatch(
                    position,
                    "knot",
                    render(row.knot),
                    render(actual) if actual is not None else "<missing>",
                )
            )
            continue
        if position >= REPLACED_RECORDED_FROM:
            step = table.steps[step_of(position)]
            actual_replaced = step.replaced_at(position)
            if tuple(actual_replaced) != row.replaced:
                mismatches.append(
                    Mismatch(
                        position,
                        "replaced",
                        ",".join(render(k) for k in row.replaced),
                        ",".join(render(k) for k in actual_replaced),
                    )
                )
    return mismatches


def table_rows(table: ClassificationTable) -> list[tuple[int, str, str, int]]:
    """(position, knot, replaced, step) rows in position order; position 2
    has no row."""
    out = []
    for position in range(1, 2**table.max_step + 1):
        if position == 2:
            continue
        knot = table.assignment[position]
        step_n = 1 if position == 1 else step_of(position)
        # The replaced column exists only from the two-column table zone on.
        replaced = (
            table.steps[step_n].replaced_at(position)
            if position >= REPLACED_RECORDED_FROM
            else ()
        )
        out.append(
            (
                position,
                render(knot),
                ",".join(render(k) for k in replaced),
                step_n,
            )
        )
    return out


def to_tsv(table: ClassificationTable) -> str:
    lines = ["position\tknot\treplaced"]
    for position, knot, replaced, _ in table_rows(table):
        lines.append(f"{position}\t{knot}\t{replaced}")
    return "\n".join(lines) + "\n"


def to_json(table: ClassificationTable) -> str:
    entries = [
        {
            "position": position,
            "knot": knot,
            "replaced": replaced or None,
            "step": step_n,
        }
        for position, knot, replaced, step_n in table_rows(table)
    ]
    return json.dumps(entries, indent=0, separators=(",", ":")) + "\n"
