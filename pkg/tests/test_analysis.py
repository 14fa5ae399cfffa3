"""Analysis layer: fixed terms, uniqueness, estimates, predictions, filters."""
import random

import pytest

from seprkit.analysis import (
    OPEN_INITIAL_PAIRS,
    TEN_INITIAL_PAIRS,
    TermStatus,
    UniqueStatus,
    add_cycle_witness,
    check_semistable_laws,
    classify_symmetric_nonneg_unique,
    fixed_sequence,
    fixed_term,
    nonneg_sequence_check,
    position_upper_sets,
    predicted_sepr,
    semistability_recognizable,
    sepr_set_estimate,
    term_verdicts,
    unique_verdict,
)
from seprkit.digraph import (
    cycle_pattern,
    complete_pattern,
    is_sign_semi_stable,
    leaf_loop_star_pattern,
    path_pattern,
    star_pattern,
)
from seprkit.pattern import SignPattern, mask_from, parse_pattern, signed_det
from seprkit.realize import MagnitudeGrid, grid_realizations, sepr_of_matrix
from seprkit.signs import AmbSign, SeprSymbol, Sign, parse_sequence

P3 = parse_pattern("++0\n--+\n0+0")
Q3 = parse_pattern("-+-\n-++\n--0")
P4 = parse_pattern("++00\n0-+0\n+0++\n00-0")


def rand_pattern(rng, n, zero_weight=1):
    choices = [Sign.ZERO] * zero_weight + [Sign.PLUS, Sign.MINUS]
    return SignPattern(tuple(tuple(rng.choice(choices) for _ in range(n))
                             for _ in range(n)))


# -- fixed terms ------------------------------------------------------------

def test_first_term_always_fixed():
    rng = random.Random(1)
    for _ in range(100):
        v = fixed_term(rand_pattern(rng, rng.randint(1, 4)), 1)
        assert v.fixed and v.status is TermStatus.FIXED_BY_SIGNED_DETS


def test_fixed_term_sstar_by_witnesses():
    v = fixed_term(P4, 3)
    assert v.status is TermStatus.FIXED_SSTAR_BY_WITNESSES
    assert v.symbol is SeprSymbol.SST
    plus, minus, zero = v.witnesses
    assert signed_det(P4.principal(plus)).value is AmbSign.PLUS
    assert signed_det(P4.principal(minus)).value is AmbSign.MINUS
    assert signed_det(P4.principal(zero)).value is AmbSign.ZERO
    assert v.ambiguous_masks == (mask_from([0, 1, 2]),)


def test_fixed_term_unknown():
    v = fixed_term(parse_pattern("++\n--"), 2)
    assert v.status is TermStatus.UNKNOWN and not v.fixed
    with pytest.raises(ValueError):
        fixed_term(P3, 4)


def test_fixed_term_agreement_with_realizations():
    rng = random.Random(2)
    grid = MagnitudeGrid.of(1, 2, "1/2")
    for _ in range(150):
        P = rand_pattern(rng, rng.randint(1, 3))
        for k in range(1, P.n + 1):
            v = fixed_term(P, k)
            if not v.fixed:
                continue
            for B in grid_realizations(P, grid, budget=12):
                assert sepr_of_matrix(B).terms[k - 1] is v.symbol


# -- uniqueness -------------------------------------------------------------

def test_unique_verdict_reference_patterns():
    v = unique_verdict(P3.direct_sum(Q3))
    assert v.unique and str(v.sequence) == "S*S*S*S*S*A+"

    v = unique_verdict(P3)
    assert v.status is UniqueStatus.NOT_UNIQUE
    _, s1, _, s2 = v.witnesses
    assert {str(s1), str(s2)} <= {"S*S-A-", "S*S*A-"}

    v = unique_verdict(P4)
    assert v.unique and str(v.sequence) == "S*S*S*A-"


def test_unique_verdict_sns_alternating():
    # negative diagonal, all cycle products negative: alternating A's
    P = parse_pattern("-+0\n0-+\n-0-")
    v = unique_verdict(P)
    assert v.unique and str(v.sequence) == "A-A+A-"


def test_unique_verdict_undecided_at_order5():
    # order-5 pattern with an unfixed position and a tiny search budget
    P = parse_pattern("++000\n--000\n00+00\n000+0\n0000+")
    v = unique_verdict(P, search_budget=1)
    assert v.status in (UniqueStatus.UNDECIDED, UniqueStatus.NOT_UNIQUE)
    full = unique_verdict(P)
    assert full.status is UniqueStatus.NOT_UNIQUE


def test_unique_condition_implies_shared_sequence():
    rng = random.Random(3)
    grid = MagnitudeGrid.of(1, 2, "1/2")
    checked = 0
    while checked < 60:
        P = rand_pattern(rng, rng.randint(2, 4))
        seq = fixed_sequence(P)
        if seq is None:
            continue
        checked += 1
        for B in grid_realizations(P, grid, budget=10):
            assert sepr_of_matrix(B) == seq


def test_a_persistence_without_ambiguity():
    # unique sequence and no ambiguous principal subpattern: once in the
    # A family, the sequence stays in the A family
    rng = random.Random(4)
    afam = {SeprSymbol.AP, SeprSymbol.AM, SeprSymbol.AST}
    checked = 0
    while checked < 200:
        P = rand_pattern(rng, rng.randint(2, 4))
        verdicts = term_verdicts(P)
        if not all(v.status is TermStatus.FIXED_BY_SIGNED_DETS for v in verdicts):
            continue
        checked += 1
        seq = [v.symbol for v in verdicts]
        for a, b in zip(seq, seq[1:]):
            if a in afam:
                assert b in afam, P.to_text()


# -- sepr-set estimates -----------------------------------------------------

def test_estimate_reference_patterns():
    est = sepr_set_estimate(parse_pattern("++00\n0-+0\n+0+0\n00-0"))
    assert {str(s) for s in est.sequences} >= {"S*S*NN", "S*S*S+N", "S*S*S-N"}
    est = sepr_set_estimate(Q3)
    assert {str(s) for s in est.sequences} == {"S*A*A-", "S*S*A-"}
    assert est.tight


def test_estimate_zero_pattern():
    est = sepr_set_estimate(SignPattern.zero(3), budget=10)
    assert {str(s) for s in est.sequences} == {"NNN"}
    assert est.tight
    assert all(u == frozenset({SeprSymbol.N}) for u in est.upper_per_position)


def test_estimate_witnesses_are_valid():
    est = sepr_set_estimate(P3)
    for seq, wit in est.lower.items():
        assert wit.is_realization_of(P3)
        assert sepr_of_matrix(wit) == seq


def test_upper_sets():
    uppers = position_upper_sets(P3)
    assert uppers[0] == frozenset({SeprSymbol.SST})
    assert uppers[1] == frozenset({SeprSymbol.SST, SeprSymbol.SM})
    assert uppers[2] == frozenset({SeprSymbol.AM})


# -- predictions ------------------------------------------------------------

def test_predicted_cycles():
    pred = predicted_sepr(cycle_pattern(3, preset="symmetric-positive"))
    assert pred.rule == "n-cycle" and str(pred.sequence) == "NNA+"
    # 4-cycle, all plus: signed product is negative
    pred = predicted_sepr(cycle_pattern(4, preset="symmetric-positive"))
    assert str(pred.sequence) == "NNNA-"


def test_predicted_cycle_with_loops():
    P = cycle_pattern(5, loops=2, preset="negative-diagonal")
    pred = predicted_sepr(P)
    assert pred.rule == "n-cycle-with-loops"
    assert pred.sequence == fixed_sequence(P)


def test_predicted_matches_fixed_sequences():
    cases = [
        cycle_pattern(4, preset="skew"),
        cycle_pattern(6, loops=3, preset="negative-diagonal"),
        cycle_pattern(5, loops=5, preset="symmetric-positive"),
        path_pattern(5, "one"),
        star_pattern(4, "center"),
        parse_pattern("0-00\n+0+0\n000+\n+000"),
    ]
    for P in cases:
        pred = predicted_sepr(P)
        assert pred is not None, P.to_text()
        assert pred.sequence == fixed_sequence(P), (P.to_text(), pred.rule)


def test_predicted_none_for_mismatched_all_loop_cycle():
    # 5-cycle with five negative loops but positive signed cycle product:
    # the determinant mixes both signs, so nothing is predicted (and the
    # pattern is in fact not unique)
    P = cycle_pattern(5, loops=5, preset="negative-diagonal")
    assert predicted_sepr(P) is None
    assert fixed_sequence(P) is None


def test_predicted_zero_diag_semistable():
    P = parse_pattern("0-00\n+0+0\n000+\n+000")
    pred = predicted_sepr(P)
    assert str(pred.sequence) == "NS+NA+"


def test_predicted_sns_odd_order():
    # looped directed 3-cycle with matching signs fires the cycle rule
    P = parse_pattern("-+0\n0-+\n-0-")
    pred = predicted_sepr(P)
    assert pred.rule == "n-cycle-all-loops"
    assert str(pred.sequence) == "A-A+A-"
    # a non-cycle shape with every cycle product negative takes the SNS rule
    P = parse_pattern("-+0\n--+\n0--")
    pred = predicted_sepr(P)
    assert pred.rule == "all-cycle-products-negative"
    assert str(pred.sequence) == "A-A+A-"


def test_predicted_doubly_directed_cycles():
    # skew 4-cycle with negative traversal product
    P = parse_pattern("0-0-\n+0+0\n0-0+\n+0-0")
    pred = predicted_sepr(P)
    assert pred is not None and pred.rule == "skew-doubly-directed-cycle"
    assert str(pred.sequence) == "NS+NA+"
    assert pred.sequence == fixed_sequence(P)
    # positive traversal product: no prediction (not unique at order 4)
    assert predicted_sepr(parse_pattern("0+0-\n-0+0\n0-0+\n+0-0")) is None
    # symmetric 3-cycle and 5-cycle
    for n in (3, 5):
        C = cycle_pattern(n, preset="symmetric-positive")
        rows = [list(r) for r in C.rows]
        for i in range(n):
            rows[(i + 1) % n][i] = Sign.PLUS
        P = SignPattern(tuple(tuple(r) for r in rows))
        pred = predicted_sepr(P)
        assert pred.rule == "symmetric-doubly-directed-cycle"
        assert pred.sequence == fixed_sequence(P), (n, pred.rule)


def test_predicted_none_for_unstructured():
    assert predicted_sepr(parse_pattern("++\n--")) is None


# -- sequence laws ----------------------------------------------------------

def test_semistable_laws_pass_examples():
    assert check_semistable_laws(parse_sequence("S-S+S-S+A-")).ok
    assert check_semistable_laws(parse_sequence("NS+NA+")).ok
    assert check_semistable_laws(parse_sequence("A-A+A-A+")).ok


def test_semistable_laws_violations():
    r = check_semistable_laws(parse_sequence("S+NA+"))
    assert not r.ok
    assert any("not attainable" in v for v in r.violations)
    r = check_semistable_laws(parse_sequence("S+S-N"))
    assert any("parity" in v for v in r.violations)
    r = check_semistable_laws(parse_sequence("A-A+S-A+"))
    assert any("abandoned" in v for v in r.violations)
    r = check_semistable_laws(parse_sequence("NS+S-S+"))
    assert any("not repeated" in v for v in r.violations)
    r = check_semistable_laws(parse_sequence("S-NS-A+"))
    assert any("terminal" in v for v in r.violations)


def test_semistability_recognizable():
    assert semistability_recognizable(path_pattern(2))
    assert semistability_recognizable(star_pattern(4, "center"))
    assert not semistability_recognizable(path_pattern(4))
    with pytest.raises(ValueError):
        semistability_recognizable(parse_pattern("+"))


def test_add_cycle_witness_4path():
    base = path_pattern(4)
    w = add_cycle_witness(base)
    assert not is_sign_semi_stable(w)
    assert fixed_sequence(w) == fixed_sequence(base)
    same = sum(1 for i in range(4) for j in range(4) if w.rows[i][j] == base.rows[i][j])
    assert same == 15  # exactly one entry changed


def test_add_cycle_witness_loop_ended_3path():
    base = path_pattern(3, "one")
    w = add_cycle_witness(base)
    assert not is_sign_semi_stable(w)
    assert fixed_sequence(w) == fixed_sequence(base)


def test_add_cycle_witness_preconditions():
    with pytest.raises(ValueError):
        add_cycle_witness(star_pattern(4))  # no 4-path, no loop-ended 3-path
    with pytest.raises(ValueError):
        add_cycle_witness(parse_pattern("++\n--"))  # not semi-stable
    with pytest.raises(ValueError):
        add_cycle_witness(parse_pattern("0+00\n-00+\n000+\n0000"))  # not simplified


# -- symmetric nonnegative filters -------------------------------------------

def test_nonneg_sequence_check_examples():
    assert not nonneg_sequence_check(parse_sequence("A+NA-")).ok
    assert nonneg_sequence_check(parse_sequence("NA-A+")).ok
    assert nonneg_sequence_check(parse_sequence("NS-N")).ok
    assert not nonneg_sequence_check(parse_sequence("NA-N")).ok
    assert not nonneg_sequence_check(parse_sequence("A-A+A-")).ok  # bad start
    assert not nonneg_sequence_check(parse_sequence("NS+NA+")).ok  # NS+ start
    assert not nonneg_sequence_check(parse_sequence("S+A+N")).ok  # S+A+ start
    assert not nonneg_sequence_check(parse_sequence("A+A*NA-")).ok  # A*N inside
    assert not nonneg_sequence_check(parse_sequence("S+S*NN")).ok  # S*NN inside
    assert not nonneg_sequence_check(parse_sequence("A+NNA+")).ok  # NN tail
    assert nonneg_sequence_check(parse_sequence("A+NNN")).ok


def test_nonneg_check_matches_order3_catalog():
    from seprkit.enumeration import ORDER3_NONNEG_SEQUENCES

    for text in ORDER3_NONNEG_SEQUENCES:
        assert nonneg_sequence_check(parse_sequence(text)).ok, text
    for text in ("A+NA-", "NA-A-", "NA-N"):
        assert not nonneg_sequence_check(parse_sequence(text)).ok, text


# -- symmetric nonnegative classification ------------------------------------

def test_classify_determined_cases():
    cases = [
        (parse_pattern("+00\n0+0\n00+"), "1", "A+A+A+"),
        (complete_pattern(3), "2", "NA-A+"),
        (complete_pattern(2), "2", "NA-"),
        (SignPattern.zero(3), "3", "NNN"),
        (leaf_loop_star_pattern(4), "4", "S+A*A*A-"),
        (complete_pattern(2, loops="one"), "5", "S+A-"),
        (parse_pattern("+00\n000\n000"), "6", "S+NN"),
        (parse_pattern("+00\n0+0\n000"), "7", "S+S+N"),
    ]
    for P, case, seq in cases:
        cls = classify_symmetric_nonneg_unique(P)
        assert cls is not None
        assert cls.case == case and str(cls.sequence) == seq


def test_classify_open_and_none():
    cls = classify_symmetric_nonneg_unique(
        path_pattern(4, preset="symmetric-positive"))
    assert cls.case == "open" and str(cls.sequence) == "NS-NA+"
    assert classify_symmetric_nonneg_unique(complete_pattern(4)) is None
    with pytest.raises(ValueError):
        classify_symmetric_nonneg_unique(parse_pattern("0+\n-0"))


def test_ten_pairs_shape():
    assert len(TEN_INITIAL_PAIRS) == 10
    assert OPEN_INITIAL_PAIRS < TEN_INITIAL_PAIRS


def _dominant_diagonal_pattern(n, diag):
    """Irreducible pattern with first row feedback and subdiagonal chain."""
    rows = [[Sign.ZERO] * n for _ in range(n)]
    for j in range(n):
        if diag is Sign.PLUS:
            rows[0][j] = Sign.PLUS if j % 2 == 0 else Sign.MINUS
        else:
            rows[0][j] = Sign.MINUS
    for i in range(n):
        rows[i][i] = diag
        if i + 1 < n:
            rows[i + 1][i] = Sign.PLUS
    return SignPattern(tuple(tuple(r) for r in rows))


def test_irreducible_all_a_sequences():
    # irreducible patterns whose unique sequences are A+A+... and A-A+A-...
    for n in (3, 4, 5):
        plus = _dominant_diagonal_pattern(n, Sign.PLUS)
        v = unique_verdict(plus)
        assert v.unique and str(v.sequence) == "A+" * n
        from seprkit.digraph import is_irreducible

        assert is_irreducible(plus)
        minus = _dominant_diagonal_pattern(n, Sign.MINUS)
        v = unique_verdict(minus)
        want = "".join("A-" if k % 2 else "A+" for k in range(1, n + 1))
        assert v.unique and str(v.sequence) == want
        assert is_irreducible(minus)


def test_pending_verdict_with_starved_search():
    v = unique_verdict(parse_pattern("++\n--"), search_budget=1)
    assert v.status is UniqueStatus.NOT_UNIQUE_PENDING_WITNESSES
    assert v.warning and "grid" in v.warning


def test_complement_principal():
    assert P4.complement_principal(mask_from([0])) == P4.principal(mask_from([1, 2, 3]))
