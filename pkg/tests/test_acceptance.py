"""Acceptance suite: one test per criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
All tolerances are exact; every expected value is either pinned from an
independent derivation in this file or cross-checked between two
independent computation routes.
"""

import random

from weylrep import affine, chevalley, tits, weyl
from weylrep.affine import (
    adjoint_lattice,
    all_lattices,
    check_flip_sum_even,
    check_second_difference,
    flip_sum_at_r,
    omega_group,
    sigma_rs,
)
from weylrep.fixer import (
    ConnectingCharacter,
    UnitGroup,
    build_system,
    connecting_character,
    random_functional,
    solve,
)


def _verdict(num: int, ok: bool, desc: str) -> None:
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {desc}")
    assert ok, f"criterion {num} failed: {desc}"


def test_criterion_1_cocycle_formula(get_rs):
    """Exhaustive small types plus >= 1e5 seeded large-type samples."""
    checked = 0
    ok = True
    for label, rank in (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3),
                        ("G", 2), ("D", 4)):
        rs = get_rs(label, rank)
        group = weyl.enumerate_group(rs)
        for u in group:
            for v in group:
                ok = ok and tits.check_cocycle_formula(u, v)
                checked += 1
    rng = random.Random(1_000_003)
    sampled = 0
    for label, rank, count in (("D", 4, 40_000), ("B", 4, 40_000),
                               ("E", 6, 30_000)):
        rs = get_rs(label, rank)
        pool = [weyl.random_element(rs, rng) for _ in range(400)]
        for w in pool:
            w.word
        for _ in range(count):
            u = pool[rng.randrange(len(pool))]
            v = pool[rng.randrange(len(pool))]
            ok = ok and tits.check_cocycle_formula(u, v)
            sampled += 1
    _verdict(1, ok and sampled >= 100_000,
             f"cocycle formula: {checked} exhaustive pairs "
             f"(A1-A3, B2-B3, G2, D4) + {sampled} seeded samples (D4/B4/E6)")


def test_criterion_2_first_difference_rank_le_4(get_rs):
    checked = 0
    ok = True
    for label, rank in (("A", 1), ("A", 2), ("A", 3), ("A", 4),
                        ("B", 2), ("B", 3), ("B", 4), ("C", 3), ("C", 4),
                        ("D", 4), ("F", 4), ("G", 2)):
        rs = get_rs(label, rank)
        for w in weyl.enumerate_group(rs):
            inv = weyl.inversion_set(w)
            for a in range(rs.nroots):
                row = rs.pairing[a]
                lhs = sum(row[b] for b in inv)
                ok = ok and lhs == rs.heights[a] - rs.heights[w.perm[a]]
                checked += 1
    _verdict(2, ok, f"inversion-sum height identity: {checked} exhaustive "
                    f"(w, a) pairs over all types of rank <= 4")


def test_criterion_3_d5_reproduction(get_rs):
    rs = get_rs("D", 5)
    ok = rs.coxeter_number == 8
    group = omega_group(rs, adjoint_lattice(rs))
    gen = next((om for om in group
                if om.diagram_perm == (5, 4, 3, 2, 0, 1)), None)
    ok = ok and gen is not None  # cycle (a1 a4 -theta a5)(a2 a3)
    datum = sigma_rs(rs, gen.sigma)
    ok = ok and datum.fiber_sizes == (3, 2, 3)
    w = gen.sigma
    for a in range(rs.nroots):
        fw = sum(rs.pairing[a][b] for b in datum.parts[2])
        wa = w.perm[a]
        w2a = w.perm[wa]
        ok = ok and 8 * fw == 3 * (rs.heights[a] - 2 * rs.heights[wa]
                                   + rs.heights[w2a])
        ok = ok and check_second_difference(datum, a)
    ok = ok and flip_sum_at_r(rs, w) == 6
    _verdict(3, ok, "D5: generator cycle, fibers (3,2,3), h=8, "
                    "8*F = 3*[ht - 2 ht w + ht w^2], F(R)=6")


def test_criterion_4_e6_reproduction(get_rs):
    rs = get_rs("E", 6)
    ok = rs.coxeter_number == 12
    group = omega_group(rs, adjoint_lattice(rs))
    gen = next((om for om in group
                if om.diagram_perm == (6, 0, 5, 2, 4, 3, 1)), None)
    ok = ok and gen is not None  # cycle (a1, -theta, a6)(a3, a2, a5)(a4)
    datum = sigma_rs(rs, gen.sigma)
    ok = ok and datum.fiber_sizes == (4, 4, 4)
    w = gen.sigma
    for a in range(rs.nroots):
        fw = sum(rs.pairing[a][b] for b in datum.parts[2])
        wa = w.perm[a]
        ok = ok and 12 * fw == 4 * (rs.heights[a] - 2 * rs.heights[wa]
                                    + rs.heights[w.perm[wa]])
    _verdict(4, ok, "E6: generator cycle, fibers (4,4,4), h=12, "
                    "12*F = 4*[ht - 2 ht w + ht w^2]")


def test_criterion_5_constant_fibers_rank_le_8(get_rs):
    eligible = [("A", r) for r in range(2, 9)] + [("D", 5), ("D", 7), ("E", 6)]
    count = 0
    ok = True
    for label, rank in eligible:
        rs = get_rs(label, rank)
        found = 0
        for om in omega_group(rs, adjoint_lattice(rs)):
            if om.order() < 3:
                continue
            datum = sigma_rs(rs, om.sigma)  # constancy asserted inside
            a, b, c = datum.fiber_sizes
            ok = ok and a == c and a + b + c == rs.coxeter_number
            found += 1
            count += 1
        ok = ok and found >= 1
    _verdict(5, ok, f"constant fibers, a = c, a+b+c = h: {count} projections "
                    f"of order >= 3 across A2-A8, D5, D7, E6 (exhaustive "
                    f"triple enumeration as oracle)")


def test_criterion_6_flip_sum_parity(get_rs):
    count = 0
    ok = True
    for label, rank in (("A", 2), ("A", 3), ("A", 4), ("A", 5), ("A", 6),
                        ("B", 2), ("B", 3), ("B", 4), ("B", 5), ("B", 6),
                        ("C", 3), ("C", 4), ("C", 5), ("C", 6),
                        ("D", 4), ("D", 5), ("D", 6), ("E", 6), ("A", 1)):
        rs = get_rs(label, rank)
        for om in omega_group(rs, adjoint_lattice(rs)):
            if om.order() >= 2:
                ok = ok and check_flip_sum_even(rs, om.sigma)
                count += 1
    # type-D order-4 family: present exactly in odd rank (even ranks carry
    # Klein four groups, so their order-4 family is empty by construction)
    family = 0
    for rank in (4, 5, 6):
        rs = get_rs("D", rank)
        group = omega_group(rs, adjoint_lattice(rs))
        orders = sorted(om.order() for om in group)
        expect = [1, 2, 4, 4] if rank % 2 else [1, 2, 2, 2]
        ok = ok and orders == expect
        for om in group:
            if om.order() == 4:
                ok = ok and flip_sum_at_r(rs, om.sigma) == 2 * rank - 4
                family += 1
    ok = ok and family == 2  # both order-4 classes of D5
    _verdict(6, ok, f"F(R) even for {count} projections of order >= 2 "
                    f"(rank <= 6); type-D order-4 family gives 2*rank-4 "
                    f"({family} instances, even ranks vacuous)")


def test_criterion_7_trivial_character(get_rs, get_scalars):
    count = 0
    ok = True
    for label, rank in (("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5),
                        ("A", 6), ("B", 2), ("B", 3), ("B", 4), ("B", 5),
                        ("B", 6), ("C", 3), ("C", 4), ("C", 5), ("C", 6),
                        ("D", 4), ("D", 5), ("D", 6), ("E", 6), ("F", 4),
                        ("G", 2)):
        rs = get_rs(label, rank)
        _, scalars = get_scalars(label, rank)
        rel = chevalley.highest_root_relation(rs)
        for om in omega_group(rs, adjoint_lattice(rs)):
            ok = ok and chevalley.evaluate_character(scalars, rel,
                                                     om.sigma) == 1
            count += 1
    # B2 fixture: the classical-table convention gives the nontrivial value
    from test_chevalley import b2_fixture_table

    rs = get_rs("B", 2)
    fixture = chevalley.scalar_table(b2_fixture_table(rs))
    short = rs.simple_index[1]
    rel = chevalley.dependence_relation(
        rs, [(1, short), (1, rs.index[(1, 1)]), (-1, rs.index[(1, 2)])])
    s = weyl.simple_reflection(rs, 1)
    triple = (chevalley.c_generator(fixture, 1, short),
              chevalley.c_generator(fixture, 1, rs.index[(1, 1)]),
              chevalley.c_generator(fixture, 1, rs.index[(1, 2)]))
    ok = ok and triple == (1, -1, 1)
    ok = ok and chevalley.evaluate_character(fixture, rel, s) == -1
    _verdict(7, ok, f"highest-root-relation character trivial on all {count} "
                    f"stabilizer projections (rank <= 6, default convention); "
                    f"B2 fixture reproduces c-values (1,-1,1) and value -1")


def test_criterion_8_fixer_solvability(get_rs, get_scalars):
    rng = random.Random(20240901)
    grid = [("A", r) for r in range(1, 7)] + \
        [("B", 2), ("B", 3), ("B", 4), ("C", 3), ("C", 4),
         ("D", 4), ("D", 5), ("D", 6), ("G", 2), ("F", 4), ("E", 6)]
    solved = 0
    ok = True
    for label, rank in grid:
        rs = get_rs(label, rank)
        _, scalars = get_scalars(label, rank)
        for lat in all_lattices(rs):
            for om in omega_group(rs, lat):
                for q in (5, 7, 13):
                    units = UnitGroup(q - 1)
                    for _ in range(50):
                        lam = random_functional(rng, units, rs.rank)
                        system = build_system(rs, lat, om, lam, scalars, units)
                        witness = solve(system)
                        ok = ok and witness is not None
                        solved += 1
    rs = get_rs("A", 2)
    cc = connecting_character(rs, affine.simply_connected_lattice(rs),
                              adjoint_lattice(rs))
    ok = ok and cc == ConnectingCharacter((1, 2), 3)
    _verdict(8, ok, f"solvability grid: {solved}/{solved} systems "
                    f"solved with verified witnesses; PGL3 connecting "
                    f"character = alpha + 2*beta mod 3")


def test_criterion_9_oracle_independence(get_rs, get_scalars):
    rng = random.Random(424243)
    compared = 0
    ok = True
    for label, rank in (("B", 3), ("C", 3), ("F", 4), ("G", 2)):
        rs = get_rs(label, rank)
        _, scalars = get_scalars(label, rank)
        elements = [weyl.random_element(rs, rng) for _ in range(150)]
        for w in elements:
            for a in range(rs.nroots):
                ok = ok and chevalley.c_word(scalars, w, a) == \
                    chevalley.ad_word_sign(scalars, w, a)
                compared += 1
    triples = 0
    for label in ("A", "B", "G"):
        rs = get_rs(label, 2)
        group = weyl.enumerate_group(rs)
        for u in group:
            for v in group:
                for x in group:
                    ok = ok and tits.check_two_cocycle_identity(u, v, x)
                    triples += 1
    _verdict(9, ok and compared >= 10_000,
             f"scalar composition vs adjoint operator composition on "
             f"{compared} (w, a) pairs (B3/C3/F4/G2); 2-cocycle identity "
             f"on {triples} exhaustive A2/B2/G2 triples")
