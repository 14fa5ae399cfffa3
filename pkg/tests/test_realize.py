"""Exact realizations: sepr of matrices, grids, targeted constructions."""
import random
from fractions import Fraction
from itertools import combinations

import pytest

from seprkit.pattern import (
    OrderGuardError,
    SignPattern,
    full_mask,
    mask_from,
    parse_pattern,
    signed_det_masked,
)
from seprkit.realize import (
    MagnitudeGrid,
    RationalMatrix,
    _det_fraction,
    allnonzero_realization,
    distinct_sepr_search,
    dominated_realization,
    grid_realizations,
    ones_realization,
    scale_diagonal_to_one,
    sepr_of_matrix,
    sweep_sepr_table,
    verify_inverse_relation,
    zero_minor_realization,
)
from seprkit.signs import AmbSign, Sign


def test_sepr_reference_matrices():
    cases = [
        ([[0, 1, 0], [1, 0, 1], [1, 0, 0]], "NS-A+"),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], "A+A+A+"),
        ([[1, 1, 1], [1, 1, 1], [1, 1, 1]], "A+NN"),
        ([[0, 1, 1], [1, 0, 1], [1, 1, 0]], "NA-A+"),
        ([[0, 1], [-1, 0]], "NA+"),
        ([[0, 1], [1, 0]], "NA-"),
        ([[0, -1, -1], [1, 0, 1], [1, 1, 0]], "NA*A-"),
    ]
    for rows, want in cases:
        assert str(sepr_of_matrix(RationalMatrix.from_rows(rows))) == want


def test_sepr_rational_entries():
    M = RationalMatrix.from_rows(
        [[1, "9/10", 0], ["9/10", 1, "9/10"], [0, "9/10", 1]])
    assert str(sepr_of_matrix(M)) == "A+A+A-"


def test_sepr_rejects_floats():
    with pytest.raises(TypeError):
        RationalMatrix.from_rows([[0.5]])


def test_sepr_is_scale_invariant():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randint(1, 4)
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
                for _ in range(n)]
        M = RationalMatrix.from_rows(rows)
        M6 = RationalMatrix.from_rows([[6 * x for x in row] for row in rows])
        assert sepr_of_matrix(M) == sepr_of_matrix(M6)


def test_sepr_order_guard():
    with pytest.raises(OrderGuardError):
        sepr_of_matrix(RationalMatrix.identity(15))


def test_matrix_parse_roundtrip():
    text = "0 1/2 -3\n1 0 2/7\n-1 1 0"
    M = RationalMatrix.parse(text)
    assert M.to_text() == text
    assert M.entry(0, 1) == Fraction(1, 2)
    with pytest.raises(ValueError):
        RationalMatrix.parse("1 x\n0 1")


def test_grid_realizations_exhaustive():
    P = parse_pattern("0+\n-0")
    mats = list(grid_realizations(P, MagnitudeGrid.of(1)))
    assert len(mats) == 1
    assert mats[0].rows == ((Fraction(0), Fraction(1)), (Fraction(-1), Fraction(0)))
    mats = list(grid_realizations(P, MagnitudeGrid.of(1, 2)))
    assert len(mats) == 4
    assert all(m.is_realization_of(P) for m in mats)


def test_grid_realizations_zero_pattern():
    mats = list(grid_realizations(SignPattern.zero(2)))
    assert len(mats) == 1 and mats[0].det() == 0


def test_grid_realizations_subsample_deterministic():
    P = parse_pattern("++++\n++++\n++++\n++++")
    a = [m.to_text() for m in grid_realizations(P, budget=50, seed=9)]
    b = [m.to_text() for m in grid_realizations(P, budget=50, seed=9)]
    c = [m.to_text() for m in grid_realizations(P, budget=50, seed=10)]
    assert a == b and len(a) == 50
    assert a != c
    # the canonical all-unit realization leads the subsample
    assert a[0] == "\n".join(" ".join("1" for _ in range(4)) for _ in range(4))


def test_sweep_matches_stream():
    P = parse_pattern("+-\n+-")
    g = MagnitudeGrid.of(1, 2, 3)
    table = sweep_sepr_table(P, g, budget=10**5)
    stream = {str(sepr_of_matrix(B)) for B in grid_realizations(P, g, budget=10**5)}
    assert {str(s) for s in table} == stream
    for seq, wit in table.items():
        assert wit.is_realization_of(P)
        assert sepr_of_matrix(wit) == seq


def test_sweep_reference_sets():
    P = parse_pattern("++0\n--+\n0+0")
    assert {str(s) for s in sweep_sepr_table(P)} == {"S*S-A-", "S*S*A-"}
    Q = parse_pattern("-+-\n-++\n--0")
    assert {str(s) for s in sweep_sepr_table(Q)} == {"S*A*A-", "S*S*A-"}


def test_dominated_and_zero_realizations():
    P = parse_pattern("++\n--")
    m = full_mask(2)
    assert dominated_realization(P, m, Sign.PLUS).det() > 0
    assert dominated_realization(P, m, Sign.MINUS).det() < 0
    Z = zero_minor_realization(P, m)
    assert Z.det() == 0 and Z.is_realization_of(P)
    # signed patterns cannot be steered to the opposite sign
    S = parse_pattern("0+\n-0")
    assert dominated_realization(S, m, Sign.MINUS) is None
    assert zero_minor_realization(S, m) is None
    assert zero_minor_realization(SignPattern.zero(2), m).det() == 0


def test_zero_minor_realization_random():
    rng = random.Random(21)
    hits = 0
    while hits < 60:
        n = rng.randint(2, 4)
        P = SignPattern(tuple(
            tuple(rng.choice([Sign.ZERO, Sign.PLUS, Sign.MINUS]) for _ in range(n))
            for _ in range(n)))
        k = rng.randint(2, n)
        mask = mask_from(random.Random(hits).sample(range(n), k))
        if signed_det_masked(P, mask).value is not AmbSign.AMBIGUOUS:
            continue
        B = zero_minor_realization(P, mask)
        idx = [i for i in range(n) if mask >> i & 1]
        assert _det_fraction(B.rows, idx, idx) == 0
        assert B.is_realization_of(P)
        hits += 1


def test_allnonzero_trivial_cases():
    P = parse_pattern("0+\n-0")  # no ambiguous subpattern anywhere
    assert allnonzero_realization(P) == ones_realization(P)
    B = allnonzero_realization(parse_pattern("++\n--"))
    assert B.det() != 0


def test_allnonzero_reference_pattern():
    P = parse_pattern("++0\n--+\n0+0")
    B = allnonzero_realization(P)
    n = P.n
    for k in range(1, n + 1):
        for r in combinations(range(n), k):
            for c in combinations(range(n), k):
                d = signed_det_masked(P, mask_from(r), mask_from(c))
                if d.value is AmbSign.AMBIGUOUS:
                    assert _det_fraction(B.rows, r, c) != 0


def test_scale_diagonal_to_one():
    M = RationalMatrix.from_rows([[1, 2], [2, 1]])
    assert scale_diagonal_to_one(M) == M
    M = RationalMatrix.from_rows([[4, 6], [6, 9]])
    S = scale_diagonal_to_one(M)
    assert S.rows == ((Fraction(1), Fraction(1)), (Fraction(1), Fraction(1)))
    with pytest.raises(ValueError):
        scale_diagonal_to_one(RationalMatrix.from_rows([[0, 1], [1, 1]]))
    with pytest.raises(ValueError):
        scale_diagonal_to_one(RationalMatrix.from_rows([[2, 1], [1, 1]]))


def test_scale_diagonal_preserves_sepr():
    rng = random.Random(22)
    for _ in range(40):
        n = rng.randint(2, 4)
        d = [rng.randint(1, 4) for _ in range(n)]
        rows = [[Fraction(rng.randint(0, 5)) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            rows[i][i] = Fraction(d[i] * d[i])
            for j in range(i + 1, n):
                rows[j][i] = rows[i][j]
        M = RationalMatrix.from_rows(rows)
        S = scale_diagonal_to_one(M)
        assert all(S.rows[i][i] == 1 for i in range(n))
        assert sepr_of_matrix(S) == sepr_of_matrix(M)


def test_inverse_relation_identity():
    chk = verify_inverse_relation(RationalMatrix.identity(3))
    assert chk.passed and str(chk.sepr) == "A+A+A+"


def test_inverse_relation_singular():
    with pytest.raises(ValueError):
        verify_inverse_relation(RationalMatrix.from_rows([[1, 1], [1, 1]]))


def test_inverse_relation_both_branches():
    rng = random.Random(23)
    seen_pos = seen_neg = 0
    while seen_pos < 15 or seen_neg < 15:
        n = rng.randint(2, 5)
        M = RationalMatrix.from_rows(
            [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        d = M.det()
        if d == 0:
            continue
        chk = verify_inverse_relation(M)
        assert chk.passed, (M.to_text(), str(chk.sepr_of_inverse), str(chk.expected))
        if d > 0:
            seen_pos += 1
        else:
            seen_neg += 1


def test_distinct_sepr_search():
    found = distinct_sepr_search(parse_pattern("++\n--"))
    assert found is not None
    b1, s1, b2, s2 = found
    assert s1 != s2
    assert sepr_of_matrix(b1) == s1 and sepr_of_matrix(b2) == s2
    # a pattern with every term fixed has nothing to find
    assert distinct_sepr_search(parse_pattern("0+\n-0"), budget=200) is None


def test_epsilon_grid_diagonal_sequences():
    # diagonal sign patterns realize the all-A sequences using magnitudes
    # 1 and the small per-order epsilon
    P = parse_pattern("-000\n0-00\n00-0\n000-")
    table = sweep_sepr_table(P, MagnitudeGrid.epsilon_preset(4), budget=10**4)
    assert {str(s) for s in table} == {"A-A+A-A+"}


def test_magnitude_grid_validation():
    with pytest.raises(ValueError):
        MagnitudeGrid.of()
    with pytest.raises(ValueError):
        MagnitudeGrid.of(0)
    with pytest.raises(ValueError):
        MagnitudeGrid.of(-1)
    assert MagnitudeGrid.parse("1/6,2, 3").values == (
        Fraction(1, 6), Fraction(2), Fraction(3))


def test_order_guards():
    with pytest.raises(OrderGuardError):
        allnonzero_realization(SignPattern.zero(11))
    with pytest.raises(OrderGuardError):
        verify_inverse_relation(RationalMatrix.identity(7))


def test_matrix_sequences_end_in_definite_symbol():
    # the final term reflects one minor (the determinant), so it is never
    # an S or A* symbol
    rng = random.Random(40)
    for _ in range(200):
        n = rng.randint(1, 4)
        M = RationalMatrix.from_rows(
            [[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
             for _ in range(n)])
        assert str(sepr_of_matrix(M).terms[-1]) in ("A+", "A-", "N")


def test_sweep_matches_stream_when_subsampled():
    P = parse_pattern("++++\n-+-+\n+0+0\n-+++")
    g = MagnitudeGrid.of(1, 2)
    budget = 200  # well below 2**14 grid points
    table = {str(s) for s in sweep_sepr_table(P, g, budget=budget, seed=4)}
    stream = {str(sepr_of_matrix(B)) for B in grid_realizations(P, g, budget=budget, seed=4)}
    assert table == stream
