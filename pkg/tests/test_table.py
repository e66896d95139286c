"""Table builder: fixtures, invariants, step records, serialization."""

import pytest

from knottab.dyadic import Sieve, jumpers, step_of
from knottab.fixtures import load_fixture_rows
from knottab.knots import Atom, Times, atom, parse, render, star, star_power
from knottab.table import (
    BuildError,
    build_table,
    nominal_number,
    preordering_sequences,
    table_rows,
    to_json,
    to_tsv,
    verify_against_fixtures,
)

A31 = atom(3, 1)


# -- fixture data self-checks -------------------------------------------------


def test_fixture_rows_complete():
    rows = load_fixture_rows()
    assert set(rows) == set(range(1, 129)) - {2}


def test_fixture_prime_positions_hold_atoms(sieve_128):
    rows = load_fixture_rows()
    for position, row in rows.items():
        if position >= 3:
            assert sieve_128.is_prime(position) == isinstance(row.knot, Atom), position


def test_fixture_spot_values():
    rows = load_fixture_rows()
    assert render(rows[18].knot) == "3_1x4_1"
    assert render(rows[36].knot) == "3_1x5_1"
    assert render(rows[47].knot) == "8_1"
    assert rows[66].knot == parse("3_1x(3_1x3_1)")
    assert render(rows[111].knot) == "3_1x(3_1*5_2)"
    assert render(rows[127].knot) == "8_17"


# -- building ------------------------------------------------------------------


def test_build_table_step_1():
    table = build_table(1)
    assert table.assignment == {1: A31}
    assert 2 not in table.assignment
    assert table.prime_of[A31] == 2


def test_build_matches_fixtures(table7):
    assert verify_against_fixtures(table7) == []


def test_build_table_5_matches_block(table7):
    rows = load_fixture_rows()
    table5 = build_table(5)
    for position in range(17, 33):
        assert table5.assignment[position] == rows[position].knot


def test_spot_positions(table7):
    assert render(table7.assignment[36]) == "3_1x5_1"
    assert render(table7.assignment[47]) == "8_1"
    assert table7.assignment[66] == parse("3_1x(3_1x3_1)")
    assert render(table7.assignment[127]) == "8_17"


def test_anchor_positions(table7):
    for n in range(2, 8):
        assert table7.assignment[2**n] == star_power(A31, n)


def test_prime_positions_hold_atoms(table7, sieve_128):
    primes = [p for p in range(3, 129) if sieve_128.is_prime(p)]
    assert len(primes) == 31
    for position in range(3, 129):
        assert sieve_128.is_prime(position) == isinstance(
            table7.assignment[position], Atom
        )


def test_bijection(table7):
    assert len(table7.assignment) == len(table7.inverse) == 127
    for position, knot in table7.assignment.items():
        assert table7.inverse[knot] == position


def test_double_of_prime_rule(table7):
    # 2p holds 3_1 * (knot of p) whenever 2p sits on no displacement chain.
    chain_touched = set()
    for build in table7.steps.values():
        for chain in build.chains:
            chain_touched.update(chain)
    for p, knot in table7.prime_of.items():
        if p == 2 or 2 * p > 128 or 2 * p in chain_touched:
            continue
        assert table7.assignment[2 * p] == star(A31, knot), p


def _chain_positions(table):
    touched = set()
    for build in table.steps.values():
        for chain in build.chains:
            touched.update(chain)
    return touched


def test_star_preordering_theorems(table7):
    # For a fixed head H and prime-knot tails A < B, H*A precedes H*B when
    # neither product was dragged off by a chain.
    touched = _chain_positions(table7)
    prime_atoms = sorted(
        (p, k) for k, p in table7.prime_of.items() if table7.position_of(k)
    )
    heads = [A31] + [k for _, k in prime_atoms if k != A31]
    for head in heads:
        last = None
        for _, tail in prime_atoms:
            product = star(head, tail)
            position = table7.position_of(product)
            if position is None or position in touched:
                continue
            if last is not None:
                assert last < position, (render(head), render(tail))
            last = position


def test_times_preordering_theorems(table7):
    # Same ordering for times-rooted pairs over the built range.
    pairs = {}
    for knot, position in table7.inverse.items():
        if isinstance(knot, Times) and len(knot.parts) == 2:
            head, tail = knot.parts
            tail_pos = table7.position_of(tail)
            if isinstance(head, Atom) and tail_pos is not None:
                pairs.setdefault(head, []).append((tail_pos, position))
    checked = 0
    for head, entries in pairs.items():
        entries.sort()
        for (_, pos1), (_, pos2) in zip(entries, entries[1:]):
            assert pos1 < pos2, render(head)
            checked += 1
    assert checked >= 5


def test_chains_match_worked_steps(table7):
    assert table7.steps[4].chains == [[9, 14, 12, 15]]
    assert table7.steps[5].chains == [
        [18, 21, 22, 26, 28, 27],
        [20, 25],
        [24, 30],
    ]


def test_chain_structure(table7, sieve_128):
    # Chain positions are composite and most chains end by expelling a jumper.
    for n in range(2, 8):
        build = table7.steps[n]
        out = set(build.outgoing)
        dangling = []
        for chain in build.chains:
            for position in chain:
                assert not sieve_128.is_prime(position), (n, chain)
                assert step_of(position) == n
            if chain[-1] not in out:
                dangling.append(chain)
        assert len(out & {c[-1] for c in build.chains}) == len(out)
        # only the step-7 layout quirk leaves one chain unterminated
        assert len(dangling) == (1 if n == 7 else 0)


def test_outgoing_equals_jumpers(table7):
    for n in range(2, 8):
        assert table7.steps[n].outgoing == jumpers(n)


def test_incoming_knots_enter_next_step(table7):
    for n in range(3, 8):
        prev_out = table7.steps[n - 1].outgoing
        incoming = table7.steps[n].incoming[: len(prev_out)]
        for knot in incoming:
            position = table7.position_of(knot)
            assert position is not None and step_of(position) == n


def test_times_counts_per_step(table7):
    # Steps 4..7 introduce 1, 1, 2, 3 knots of the form 3_1 x (prime knot
    # with n-1 crossings), alongside any other times-rooted entries.
    expected = {4: 1, 5: 1, 6: 2, 7: 3}
    for n, count in expected.items():
        simple = []
        for knot, _ in table7.steps[n].times_placed.values():
            parts = knot.parts
            if (
                len(parts) == 2
                and parts[0] == A31
                and isinstance(parts[1], Atom)
            ):
                simple.append(parts[1])
        assert len(simple) == count, n
        assert all(k.id.crossings == n - 1 for k in simple), n


def test_replacement_positions_are_prime(table7, sieve_128):
    for build in table7.steps.values():
        for position in build.replacements:
            assert sieve_128.is_prime(position)


def test_verify_detects_seeded_fault(table7):
    original = table7.assignment[18]
    table7.assignment[18] = parse("3_1*4_1*4_1")
    try:
        mismatches = verify_against_fixtures(table7)
    finally:
        table7.assignment[18] = original
    assert len(mismatches) == 1
    assert mismatches[0].position == 18
    assert mismatches[0].expected == "3_1x4_1"


def test_verify_detects_fault_at_45(table7):
    original = table7.assignment[45]
    assert render(original) == "4_1x4_1"
    table7.assignment[45] = parse("5_1x5_1")
    try:
        mismatches = verify_against_fixtures(table7)
    finally:
        table7.assignment[45] = original
    assert [m.position for m in mismatches] == [45]
    assert mismatches[0].expected == "4_1x4_1"


# -- sequences and nominal numbers ---------------------------------------------


def test_preordering_sequences_step_2(table7):
    seqs = preordering_sequences(2, table7)
    assert len(seqs) == 1
    assert [render(k) for k in seqs[0].knots] == ["3_1*3_1"]


def test_preordering_sequences_step_4(table7):
    seqs = preordering_sequences(4, table7)
    assert [s.head.id.name for s in seqs] == ["5_1", "4_1", "3_1"]
    assert [s.tail_step for s in seqs] == [1, 2, 3]
    lengths = [len(s.knots) for s in seqs]
    assert lengths == [1, 2, 4]
    # the 5_2-headed sequence is omitted as all-repeat
    assert all(s.head != atom(5, 2) for s in seqs)


def test_preordering_sequences_requires_prior_steps():
    table = build_table(3)
    with pytest.raises(ValueError):
        preordering_sequences(5, table)


def test_nominal_number(table7):
    assert nominal_number(A31, 9, table7) == 18
    assert nominal_number(atom(4, 1), 5, table7) == 15
    assert nominal_number(A31, 1, table7) == 2
    with pytest.raises(ValueError):
        nominal_number(atom(8, 21), 3, table7)


# -- serialization ---------------------------------------------------------------


def test_tsv_rows(table7):
    text = to_tsv(table7)
    lines = text.strip().split("\n")
    assert lines[0] == "position\tknot\treplaced"
    assert len(lines) == 128  # header + 127 rows
    assert "18\t3_1x4_1\t" in lines
    assert "36\t3_1x5_1\t3_1*4_1*5_1" in lines


def test_json_entries(table7):
    import json

    entries = json.loads(to_json(table7))
    assert len(entries) == 127
    by_pos = {e["position"]: e for e in entries}
    assert by_pos[127]["knot"] == "8_17"
    assert by_pos[127]["step"] == 7
    assert by_pos[18]["replaced"] is None


def test_rows_skip_reserved_position(table7):
    positions = [r[0] for r in table_rows(table7)]
    assert 2 not in positions
    assert positions[0] == 1


# -- error handling and deeper builds --------------------------------------------


def test_build_steps_must_run_in_order(table7):
    from knottab.table import ClassificationTable, build_step

    table = ClassificationTable()
    with pytest.raises(BuildError):
        build_step(3, table)


def test_build_table_rejects_bad_max_step():
    with pytest.raises(ValueError):
        build_table(0)


def test_deeper_builds_keep_core_invariants():
    table = build_table(9)
    sieve = Sieve(2**9)
    for position in range(3, 2**9 + 1):
        assert sieve.is_prime(position) == isinstance(
            table.assignment[position], Atom
        )
    assert len(table.assignment) == len(table.inverse) == 2**9 - 1
    for n in range(2, 10):
        assert table.assignment[2**n] == star_power(A31, n)


def test_build_is_deterministic():
    assert to_tsv(build_table(6)) == to_tsv(build_table(6))
