import json

import numpy as np
import pytest

from vizrec.dataset import (FieldType, field_stats, infer_field_type,
                            load_table)
from vizrec.datasets_builtin import birdstrikes_csv, movies_csv
from vizrec.errors import EmptyDataset, ParseError, UnknownField

from conftest import N, Q, T, make_dataset


class TestInference:
    def test_all_numeric_strings(self):
        assert infer_field_type(["1.5", "2", "3.25"]) is Q

    def test_all_iso_dates(self):
        assert infer_field_type(["2001-05-01", "1999-12-31"]) is T

    def test_mixed_below_threshold_is_nominal(self):
        # 1/3 numeric < 95% threshold
        assert infer_field_type(["Drama", "Comedy", "7"]) is N

    def test_numeric_checked_before_temporal(self):
        # 4-digit years parse as numbers, so the numeric rule wins
        assert infer_field_type(["1999", "2004", "2011"]) is Q

    def test_all_missing_defaults_to_nominal(self):
        assert infer_field_type(["", None, ""]) is N

    def test_sparse_dirty_cells_tolerated(self):
        values = ["1"] * 99 + ["oops"]
        assert infer_field_type(values) is Q


class TestLoadTable:
    def test_movies_sized_csv(self):
        ds = load_table(movies_csv(), "csv", name="movies")
        assert ds.row_count == 3201
        assert len(ds.fields) == 15

    def test_birdstrikes_sized_csv(self):
        ds = load_table(birdstrikes_csv(), "csv", name="birdstrikes")
        assert ds.row_count == 10000
        assert len(ds.fields) == 14
        census = {t: sum(1 for f in ds.fields if f.type is t) for t in FieldType}
        assert census == {N: 9, T: 1, Q: 4}

    def test_single_column(self):
        ds = load_table("v\na\nb\na\n", "csv")
        assert ds.row_count == 3
        assert ds.fields[0].type is N

    def test_json_records(self):
        payload = json.dumps([{"x": 1, "y": "a"}, {"x": 2, "y": "b"}])
        ds = load_table(payload, "json-records")
        assert ds.field_names == ("x", "y")
        assert ds.field_type("x") is Q

    def test_reload_identical_bytes_is_bit_stable(self):
        raw = movies_csv()
        a = load_table(raw, "csv")
        b = load_table(raw, "csv")
        assert a.fields == b.fields
        assert a.rows == b.rows

    def test_empty_rows_rejected(self):
        with pytest.raises(EmptyDataset):
            load_table("a,b\n", "csv")

    def test_malformed_json_rejected(self):
        with pytest.raises(ParseError):
            load_table("{not json", "json-records")

    def test_ragged_csv_rejected(self):
        with pytest.raises(ParseError):
            load_table("a,b\n1,2,3\n", "csv")

    def test_missing_accounting(self, movies):
        for f in movies.fields:
            col = movies.column(f.name)
            present = sum(1 for v in col if v is not None)
            stats = field_stats(movies, f.name)
            assert stats.missing_count + present == movies.row_count


class TestFieldStats:
    def test_symmetric_sequence(self):
        ds = make_dataset("t", [("q", Q)], [(float(v),) for v in [1, 2, 3, 4, 5]])
        s = field_stats(ds, "q")
        assert (s.min, s.max, s.mean, s.outlier_count) == (1, 5, 3, 0)

    def test_outlier_by_iqr_fences(self):
        values = [1.0, 1.0, 1.0, 1.0, 100.0]
        ds = make_dataset("t", [("q", Q)], [(v,) for v in values])
        # independent fence computation on the raw values
        q1, q3 = np.percentile(values, [25, 75])
        fence_lo, fence_hi = q1 - 1.5 * (q3 - q1), q3 + 1.5 * (q3 - q1)
        expected = sum(1 for v in values if v < fence_lo or v > fence_hi)
        assert expected == 1
        assert field_stats(ds, "q").outlier_count == expected

    def test_nominal_cardinality(self):
        ds = make_dataset("t", [("n", N)], [("a",), ("b",), ("a",)])
        s = field_stats(ds, "n")
        assert s.cardinality == 2
        assert s.outlier_count == 0

    def test_constant_field_skewness_zero(self):
        ds = make_dataset("t", [("q", Q)], [(7.0,)] * 10)
        s = field_stats(ds, "q")
        assert s.skewness == 0.0
        assert s.outlier_count == 0  # cardinality 1

    def test_adjusted_fisher_pearson_matches_direct_formula(self):
        values = np.array([1.0, 2.0, 2.0, 3.0, 9.0, 4.0])
        ds = make_dataset("t", [("q", Q)], [(float(v),) for v in values])
        n = len(values)
        g1 = np.mean(((values - values.mean()) / values.std()) ** 3)
        expected = g1 * np.sqrt(n * (n - 1)) / (n - 2)
        assert field_stats(ds, "q").skewness == pytest.approx(expected)

    def test_unknown_field(self, tiny):
        with pytest.raises(UnknownField):
            field_stats(tiny, "nope")

    def test_cardinality_bounded_by_rows(self, movies):
        for f in movies.field_names:
            assert field_stats(movies, f).cardinality <= movies.row_count
