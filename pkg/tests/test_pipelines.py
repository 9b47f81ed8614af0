import pytest

from coxpop import automata as fa
from coxpop import pipelines as pl
from coxpop.plans import UncalibratedCatalog, enumerate_forbidden


def test_index_tables():
    assert pl.WORD_LENGTH["A"](5) == 6 and pl.WORD_LENGTH["B"](4) == 5 and pl.WORD_LENGTH["Atilde"](7) == 7
    assert pl.FIRST_N == {"A": 0, "B": 1, "Atilde": 1}


def test_type_a_counts():
    assert pl.automaton_counts("A", 1, 8) == {n: max(1, 2 ** (n - 1)) for n in range(9)}
    assert [pl.automaton_counts("A", 2, 5)[n] for n in range(1, 6)] == [1, 2, 6, 16, 42]


def test_type_b_counts():
    assert pl.automaton_counts("B", 1, 6) == {n: 2**n for n in range(1, 7)}
    assert list(pl.automaton_counts("B", 2, 4).values()) == [2, 6, 16, 42]


def test_atilde_t1_tail():
    counts = pl.automaton_counts("Atilde", 1, 10)
    assert all(counts[n] == 2**n - 1 for n in counts)


def test_atilde_t2_against_brute():
    rep = pl.count("Atilde", 2, 6, "both")
    assert rep.ok
    assert [rep.merged()[n] for n in range(2, 7)] == [5, 19, 49, 131, 353]


def test_uncalibrated_catalog_is_rejected():
    with pytest.raises(UncalibratedCatalog):
        pl.build_language_A(2, enumerate_forbidden(2, 6))


def test_calibration_detects_a_bad_catalog():
    bad = enumerate_forbidden(2, 10)
    bad.segments = set(bad.sorted_segments()[:3])
    with pytest.raises(pl.CalibrationFailed):
        pl.calibrate(bad, 6)


def test_count_report_json_schema():
    rep = pl.count("B", 2, 4, "both")
    data = rep.to_json()
    assert data["family"] == "B" and data["t"] == 2
    assert data["counts"] == {"1": 2, "2": 6, "3": 16, "4": 42}
    assert data["status"] == "OK"


def test_count_report_marks_failures():
    rep = pl.CountReport("A", 2, brute={3: 6}, automaton={3: 7})
    assert rep.mismatches == [3] and rep.status == "FAILED"


@pytest.mark.parametrize(
    "family,num,den",
    [
        ("A", (1, -1, -1, -1), (1, -2, -1, -2)),
        ("B", (0, 2, 2, 2), (1, -2, -1, -2)),
        ("A", None, None),
    ],
)
def test_generating_functions(family, num, den):
    if num is None:
        gf, s = pl.generating_function("A", 1)
        assert gf == fa.RationalGF((1, -1), (1, -2))
        return
    gf, s = pl.generating_function(family, 2)
    assert gf == fa.RationalGF(num, den)
    N = len(s) + 9
    assert gf.expand(N) == pl.full_series(family, 2, N)


def test_atilde_gf_held_out():
    gf, s = pl.generating_function("Atilde", 2)
    N = len(s) + 9
    assert gf.expand(N) == pl.full_series("Atilde", 2, N)
    assert gf.expand(9)[2:] == [5, 19, 49, 131, 353, 939, 2497, 6643]


def test_recurrence_table_initial_conditions():
    L, M = pl.recurrence_table_B(6)
    assert all(L[(n, 0)] == 1 and M[(n, 0)] == 0 for n in range(2, 7))
    assert L[(1, 0)] == M[(1, 0)] == 1


def test_recurrence_matches_direct_count():
    L, M = pl.recurrence_table_B(5)
    Ld, Md = pl.direct_table_B(5)
    assert {k: v for k, v in L.items() if v} == {k: v for k, v in Ld.items() if v}
    assert {k: v for k, v in M.items() if v} == {k: v for k, v in Md.items() if v}


def test_scan_counts_type_a():
    assert [pl.scan_count_A(2, n) for n in range(1, 6)] == [1, 2, 6, 16, 42]
