import random

import pytest

from nilorbits.correspondence import (MalformedInputError,
                                      _decode_orbit, identify,
                                      identify_parabolic,
                                      parabolic_representative,
                                      pattern_to_matrix, rank_signature, refine,
                                      tex_matrix, tex_pattern, tex_table)
from nilorbits.harness import random_group_element_pair
from nilorbits.linalg import (DomainError, GroupKind, Matrix, SpaceSpec,
                              is_two_nilpotent, lie_member)
from nilorbits.patterns import (LinkPattern, dotted, enumerate_patterns,
                                undotted, unoriented_loop, upper_loop)

from conftest import random_rational_matrix, rank_table_direct


def all_groups(max_l):
    for l in range(1, max_l + 1):
        yield GroupKind.symplectic(2 * l)
        yield GroupKind.orthogonal(2 * l)
        yield GroupKind.orthogonal(2 * l + 1)


def borel_patterns(g):
    return enumerate_patterns(g.family, g.l, (1,) * g.l)


def compositions(total):
    if total == 0:
        yield ()
        return
    for head in range(1, total + 1):
        for rest in compositions(total - head):
            yield (head,) + rest


def test_rank_two_symplectic_table(sp4_table):
    g = GroupKind.symplectic(4)
    pats = borel_patterns(g)
    assert {p.text() for p in pats} == set(sp4_table)
    for p in pats:
        assert pattern_to_matrix(p, g) == sp4_table[p.text()], p.text()


def test_rank_two_orthogonal_table(o4_table):
    g = GroupKind.orthogonal(4)
    pats = borel_patterns(g)
    assert {p.text() for p in pats} == set(o4_table)
    for p in pats:
        assert pattern_to_matrix(p, g) == o4_table[p.text()], p.text()


def test_representatives_live_in_the_algebra():
    for g in all_groups(3):
        for p in borel_patterns(g):
            x = pattern_to_matrix(p, g)
            assert lie_member(x, g), (g.name, p.text())
            assert is_two_nilpotent(x), (g.name, p.text())


def test_pattern_to_matrix_rejects():
    g = GroupKind.symplectic(4)
    with pytest.raises(DomainError, match="capacities"):
        pattern_to_matrix(LinkPattern("symplectic", 1, (2,), ()), g)
    with pytest.raises(DomainError, match="family"):
        pattern_to_matrix(LinkPattern.borel("orthogonal", 2), g)
    with pytest.raises(DomainError, match="rank"):
        pattern_to_matrix(LinkPattern.borel("symplectic", 3), g)
    crowded = LinkPattern.borel("symplectic", 1, (upper_loop(1), upper_loop(1)))
    with pytest.raises(DomainError, match="not valid"):
        pattern_to_matrix(crowded, g.symplectic(2))


def test_rank_signature_matches_submatrix_ranks(sp4_table, o4_table):
    mats = list(sp4_table.values()) + list(o4_table.values())
    rng = random.Random(7)
    mats += [random_rational_matrix(rng, n, n) for n in (4, 5) for _ in range(5)]
    for x in mats:
        sig = rank_signature(x)
        direct = rank_table_direct(x)
        n = x.rows
        for i in range(1, n + 2):
            for j in range(0, n + 1):
                assert sig.rank(i, j) == direct[(i, j)], (i, j)


def test_rank_signature_indexing_bounds():
    sig = rank_signature(Matrix.zero(3))
    with pytest.raises(DomainError):
        sig.rank(0, 1)
    with pytest.raises(DomainError):
        sig.rank(1, 4)


def test_delta_positions_frozen(sp4_table):
    assert rank_signature(Matrix.zero(4)).delta_positions() == ()
    assert rank_signature(sp4_table["{1->2}"]).delta_positions() == ((2, 1), (4, 3))
    assert rank_signature(sp4_table["{uloop(1)}"]).delta_positions() == ((1, 4),)
    assert rank_signature(sp4_table["{1..>2}"]).delta_positions() == ((3, 1), (4, 2))


def test_rank_signature_constant_on_orbits():
    for g in (GroupKind.symplectic(4), GroupKind.orthogonal(5)):
        spec = SpaceSpec.borel(g)
        for idx, p in enumerate(borel_patterns(g)):
            x = pattern_to_matrix(p, g)
            base = rank_signature(x)
            for c in range(3):
                u, u_inv = random_group_element_pair(g, spec, 31 * idx + c)
                assert rank_signature(u @ x @ u_inv) == base, (g.name, p.text())


def test_identify_round_trip():
    for g in all_groups(3):
        for p in borel_patterns(g):
            assert identify(pattern_to_matrix(p, g), g) == p, (g.name, p.text())


def test_identify_rejects_non_members():
    g = GroupKind.symplectic(4)
    with pytest.raises(DomainError, match="expected a 4x4"):
        identify(Matrix.zero(3), g)
    with pytest.raises(DomainError, match="matrix not in sp_4"):
        identify(Matrix.identity(4), g)
    diag = Matrix.from_rows([[1, 0, 0, 0], [0, 2, 0, 0],
                             [0, 0, -2, 0], [0, 0, 0, -1]])
    with pytest.raises(DomainError, match="not 2-nilpotent"):
        identify(diag, g)


def test_decode_rejects_malformed_positions():
    with pytest.raises(MalformedInputError, match="middle index"):
        _decode_orbit((3, 1), 5, 2)
    with pytest.raises(MalformedInputError, match="diagonal"):
        _decode_orbit((2, 2), 4, 2)
    with pytest.raises(MalformedInputError, match="no low partner"):
        _decode_orbit((4, 3), 4, 2)


def test_refine_worked_example():
    g = GroupKind.symplectic(12)
    spec = SpaceSpec.from_blocks(g, (4, 2))
    p = LinkPattern("symplectic", 2, (4, 2),
                    (unoriented_loop(1), upper_loop(1), dotted(1, 2)))
    fine = refine(p, spec)
    assert fine.text() == "{2->1, uloop(3), 4..>5}"
    x = parabolic_representative(p, spec)
    assert x == pattern_to_matrix(fine, g)
    assert x.support() == [(1, 2), (3, 10), (8, 4), (9, 5), (11, 12)]
    assert identify_parabolic(x, spec) == p


def test_refine_rejects_mismatches():
    g = GroupKind.symplectic(8)
    spec = SpaceSpec.from_blocks(g, (2, 2))
    with pytest.raises(DomainError, match="blocks"):
        refine(LinkPattern("symplectic", 1, (4,), ()), spec)
    with pytest.raises(DomainError, match="family"):
        refine(LinkPattern("orthogonal", 2, (2, 2), ()), spec)


def test_identify_parabolic_round_trips_every_flag():
    totals = {"sp_4": 20, "sp_6": 142, "o_4": 9, "o_5": 9, "o_6": 33}
    groups = [GroupKind.symplectic(4), GroupKind.symplectic(6),
              GroupKind.orthogonal(4), GroupKind.orthogonal(5),
              GroupKind.orthogonal(6)]
    for g in groups:
        seen = 0
        for blocks in compositions(g.l):
            spec = SpaceSpec.from_blocks(g, blocks)
            for p in enumerate_patterns(g.family, len(blocks), blocks):
                x = parabolic_representative(p, spec)
                assert lie_member(x, g) and is_two_nilpotent(x)
                assert identify_parabolic(x, spec) == p, (g.name, blocks, p.text())
                seen += 1
        assert seen == totals[g.name]


def test_tex_emitters():
    assert tex_matrix(Matrix.zero(2)) == (
        "\\begin{pmatrix}\n0 & 0 \\\\\n0 & 0\n\\end{pmatrix}")
    assert tex_pattern(LinkPattern.borel("symplectic", 2)) == "\\varnothing"
    fancy = tex_pattern(LinkPattern.borel(
        "symplectic", 3, (undotted(2, 1), dotted(1, 3), upper_loop(2))))
    assert "\\rightarrow" in fancy and "\\dashrightarrow" in fancy
    assert "\\circlearrowleft" in fancy
    g = GroupKind.orthogonal(4)
    p = borel_patterns(g)[0]
    table = tex_table([(p, pattern_to_matrix(p, g))])
    assert table.splitlines()[0] == "\\begin{tabular}{c|c}"
    assert "pattern & representative" in table.splitlines()[1]
    assert table.splitlines()[-1] == "\\end{tabular}"
