import pytest

from mcinterp.table import DEFAULT_ROWS, TableRow, run_row, run_table


def test_sixteen_rows_in_order():
    assert len(DEFAULT_ROWS) == 16
    assert [r.mu for r in DEFAULT_ROWS] == [16, 24, 32, 32, 48, 48, 48, 72, 72,
                                           72, 96, 96, 96, 108, 108, 108]


def test_first_row():
    d1, _ = run_row(TableRow(f=16))
    assert f"{d1:.3e}" == "1.482e+00"


def test_f_and_hf_row():
    d1, d2 = run_row(TableRow(f=24, hf=24))
    assert (f"{d1:.3e}", f"{d2:.3e}") == ("2.861e-01", "2.400e-01")


def test_single_row_matches_full_run():
    full = {row: (d1, d2) for row, d1, d2 in run_table()}
    row = TableRow(f=36, d1=36, d2=36)
    assert run_row(row) == full[row]


def test_unequal_counts_rejected():
    with pytest.raises(ValueError):
        TableRow(f=16, hf=8).band()


def test_bank_order():
    row = TableRow(f=8, d2=8, hf=8)
    assert [c.kind for c in row.bank()] == ["identity", "hilbert", "derivative"]
    assert row.band().m == 3
