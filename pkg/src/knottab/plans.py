"""Step construction layouts.

Each induction step is filled by laying out subsequences of the preordering
sequences as contiguous blocks of slots: block ``(head, tail_source, lo, hi,
slot)`` writes ``head * T`` for the knots T at positions ``lo..hi`` of the
tail source, starting at ``slot``.  Blocks may overlap a slot (both knots are
then recorded there).  A slot's knot survives only where it is not a repeat;
prime slots always take fresh prime knots, and the composite slots named in
``times`` take the step's new times-rooted knots.

Layouts for steps 2..7 are hand-derived from the worked construction that the
reference table follows (including its slot-level quirks); later steps fall
back to a uniform generated layout and are best-effort only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Tail sources: a positive int means "final table of that step";
# COLUMN_PREFIX + k means "pre-replacement layout of step k".
COLUMN = "column:"


@dataclass(frozen=True)
class Block:
    head: str  # prime-knot atom name
    source: int | str  # tail step, or "column:<step>"
    lo: int  # first tail position, inclusive
    hi: int  # last tail position, inclusive
    slot: int  # slot taken by the lo tail

    def slots(self) -> range:
        return range(self.slot, self.slot + (self.hi - self.lo + 1))


@dataclass(frozen=True)
class StepPlan:
    n: int
    blocks: tuple[Block, ...]
    # (slot, knot text) for the new times-rooted knots, ascending slots.
    times: tuple[tuple[int, str], ...] = ()
    # (slot, knot text) for knots put back without a sequence of their own.
    specials: tuple[tuple[int, str], ...] = ()
    # (slot, knot text) placed verbatim from the reference; no repeat recorded.
    overrides: tuple[tuple[int, str], ...] = ()
    # Knots knowingly left unassigned at this step (layout quirks).
    allow_unplaced: tuple[str, ...] = ()
    # Hand-derived layouts must resolve repeats without free choices.
    strict: bool = True


PLANS: dict[int, StepPlan] = {
    2: StepPlan(
        n=2,
        blocks=(Block("3_1", 1, 2, 2, 3),),
    ),
    3: StepPlan(
        n=3,
        blocks=(
            Block("4_1", 1, 2, 2, 5),
            Block("3_1", 2, 3, 4, 6),
        ),
    ),
    4: StepPlan(
        n=4,
        blocks=(
            Block("5_1", 1, 2, 2, 9),
            Block("3_1", 3, 5, 8, 10),
            Block("4_1", 2, 3, 4, 14),
        ),
        times=((9, "3_1x3_1"),),
    ),
    5: StepPlan(
        n=5,
        blocks=(
            Block("6_1", 1, 2, 2, 17),
            Block("5_2", 2, 3, 4, 18),
            Block("4_1", 3, 5, 8, 20),
            Block("3_1", 4, 9, 16, 24),
        ),
        times=((18, "3_1x4_1"),),
    ),
    6: StepPlan(
        n=6,
        blocks=(
            Block("3_1", 5, 17, 25, 33),
            Block("5_1", 3, 5, 8, 42),
            Block("5_2", 3, 6, 8, 45),
            Block("4_1", 4, 9, 15, 47),
            Block("3_1", 5, 25, 32, 54),
            Block("4_1", 4, 15, 16, 62),
        ),
        times=(
            (36, "3_1x5_1"),
            (38, "3_1x5_2"),
            (45, "4_1x4_1"),
        ),
    ),
    7: StepPlan(
        n=7,
        blocks=(
            Block("3_1", COLUMN + "6", 33, 39, 65),
            Block("4_1", 5, 17, 18, 72),
            Block("5_1", 4, 9, 14, 74),
            Block("5_2", 4, 10, 14, 79),
            Block("4_1", 5, 19, 32, 84),
            Block("3_1", 6, 33, 44, 98),
            Block("3_1", 6, 44, 46, 110),
            Block("3_1", 6, 46, 48, 113),
            Block("3_1", 6, 52, 52, 115),
            Block("3_1", 6, 53, 64, 116),
        ),
        times=(
            (66, "3_1x3_1x3_1"),
            (68, "4_1x5_1"),
            (69, "4_1x(3_1*4_1)"),
            (70, "4_1x5_2"),
            (110, "3_1x6_1"),
            (111, "3_1x(3_1*5_2)"),
            (112, "3_1x6_2"),
            (115, "3_1x6_3"),
            (125, "3_1x3_1x4_1"),
        ),
        specials=((98, "4_1*5_1*5_1"),),
        # The reference prints 3_1*3_1*3_1*7_3 at 121 (its own construction
        # pattern would give 3_1*3_1*7_3); reproduced verbatim, which leaves
        # 3_1*3_1*7_3 without a position in this step.
        overrides=((121, "3_1*3_1*3_1*7_3"),),
        allow_unplaced=("3_1*3_1*7_3",),
    ),
}

MAX_PLANNED_STEP = max(PLANS)


def generated_plan(n: int, head_for_step) -> StepPlan:
    """Uniform fallback layout for steps beyond the hand-derived ones.

    One block per earlier step: the head drawn from step ``n-i`` is paired
    with the tails of step ``i``, blocks laid out in ascending tail-step
    order.  ``head_for_step(k)`` names the head knot taken from step k
    (the trefoil for step 1, the step's smallest assigned prime otherwise).
    Times knots and repeat resolution are then left to the builder's
    default rules.
    """
    blocks = []
    slot = 2 ** (n - 1) + 1
    for tail_step in range(1, n):
        head = head_for_step(n - tail_step)
        lo = 2 ** (tail_step - 1) + 1 if tail_step > 1 else 2
        hi = 2**tail_step
        blocks.append(Block(head, tail_step, lo, hi, slot))
        slot += hi - lo + 1
    return StepPlan(n=n, blocks=tuple(blocks), strict=False)
