import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from logcauchy import (ArityError, DomainError,
                       InterpolationError, ParameterError, RangeError,
                       TableFormatError, TabulatedFunction, TiledExtension,
                       canonical_generator, continuity_defect, extend,
                       extend_at_log, load_table, log_extend_at_log,
                       reflexivity_residual, table_generator, tile_index,
                       tile_index_log)
from logcauchy.generators import Generator, QuotientSpec, Sign, quotient_eval

LOG = math.log


def canonical_closed_form(k):
    a = 1.0 / (k - 1)
    return lambda x: LOG(x) * math.exp(-a * LOG(x))


def canonical_log_closed_form(k):
    a = 1.0 / (k - 1)
    return lambda log_x: LOG(log_x) - a * log_x


class TestTileIndex:
    def test_boundaries_p2_k2(self):
        assert tile_index(2.0, 2.0, 2) == 0
        assert tile_index(4.0, 2.0, 2) == 1
        assert tile_index(16.0, 2.0, 2) == 2

    def test_negative_tile(self):
        assert tile_index(math.sqrt(2.0), 2.0, 2) == -1

    def test_boundary_correction(self):
        assert tile_index(3.9999999, 2.0, 2) == 0
        assert tile_index(4.0000001, 2.0, 2) == 1

    def test_representable_boundaries_exact(self):
        # 2**(2**n) is an exact double for n <= 9
        for n in range(0, 10):
            assert tile_index(float(2 ** (2 ** n)), 2.0, 2) == n

    def test_interior_points_all_tiles(self):
        logp = LOG(2.0)
        for k in (2, 3, 5):
            for n in range(-20, 21):
                mid = 0.5 * (k ** n + k ** (n + 1)) * logp
                assert tile_index_log(mid, 2.0, k) == n

    @given(x=st.floats(min_value=1.0 + 1e-9, max_value=1e300),
           p=st.sampled_from([1.5, 2.0, 3.0, 10.0]),
           k=st.integers(min_value=2, max_value=6))
    def test_partition_membership(self, x, p, k):
        n = tile_index(x, p, k)
        logp = LOG(p)
        log_x = LOG(x)
        assert float(k) ** n * logp <= log_x < float(k) ** (n + 1) * logp

    def test_boundary_flag(self):
        n, near = tile_index(4.0, 2.0, 2, flag=True)
        assert n == 1 and near
        n, near = tile_index(5.0, 2.0, 2, flag=True)
        assert n == 1 and not near

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            tile_index(1.0, 2.0, 2)
        with pytest.raises(DomainError):
            tile_index(0.5, 2.0, 2)
        with pytest.raises(ParameterError):
            tile_index(3.0, 1.0, 2)
        with pytest.raises(ArityError):
            tile_index(3.0, 2.0, 1)

    def test_extreme_floats_settle(self):
        # the closest representable points to the excluded endpoints
        tiny = math.nextafter(1.0, 2.0)
        assert tile_index(tiny, 2.0, 2) <= -51
        assert tile_index(tiny, tiny, 2) == 0
        huge = math.nextafter(math.inf, 0.0)
        n = tile_index(huge, 2.0, 2)
        logp = math.log(2.0)
        assert 2.0 ** n * logp <= math.log(huge) < 2.0 ** (n + 1) * logp
        with pytest.raises(ParameterError):
            tile_index(3.0, 1.0 + 1e-300, 2)   # rounds to p = 1 exactly


class TestExtension:
    def test_identity_tile_is_exact(self):
        ext = TiledExtension(p=2.0, k=2, f0=lambda x: LOG(x) / x)
        for x in (2.0, 2.5, 3.0, 3.9999):
            assert extend(ext, x) == LOG(x) / x

    def test_hand_evaluated_point(self):
        # tile n=2 at x=16: 4 * 16**(-3/4) * f0(2) = log(16)/16
        ext = TiledExtension(p=2.0, k=2, f0=lambda x: LOG(x) / x)
        assert math.isclose(extend(ext, 16.0), LOG(16.0) / 16.0,
                            rel_tol=1e-14)
        assert math.isclose(extend(ext, 16.0), 4.0 * 16.0 ** -0.75 * (LOG(2.0) / 2.0),
                            rel_tol=1e-14)

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_closed_form_oracle_across_tiles(self, k):
        closed = canonical_closed_form(k)
        log_closed = canonical_log_closed_form(k)
        ext = TiledExtension(p=2.0, k=k, f0=closed)
        logp = LOG(2.0)
        rng = np.random.default_rng(17)
        for n in range(-6, 7):
            lo = float(k) ** n * logp
            hi = float(k) ** (n + 1) * logp
            for log_x in rng.uniform(lo, hi * (1 - 1e-12), 30):
                got = log_extend_at_log(ext, log_x)
                want = log_closed(log_x)
                assert abs(got - want) <= 1e-10 * max(1.0, abs(want))
                if hi < 700.0:   # value itself representable
                    v = extend_at_log(ext, log_x)
                    w = math.exp(want)
                    assert abs(v - w) <= 1e-10 * abs(w)

    def test_continuity_defect_canonical(self):
        for k in (2, 3, 5):
            ext = TiledExtension(p=2.0, k=k, f0=canonical_closed_form(k))
            assert continuity_defect(ext) < 1e-10

    def test_continuity_defect_constant(self):
        # constants glue exactly when k/p = 1
        assert continuity_defect(TiledExtension(p=2.0, k=2, f0=lambda x: 1.0)) == 0.0
        assert math.isclose(
            continuity_defect(TiledExtension(p=2.0, k=3, f0=lambda x: 1.0)),
            0.5, rel_tol=1e-12)

    def test_nonnegative_tiles_variant(self):
        full = TiledExtension(p=2.0, k=2, f0=lambda x: LOG(x) / x)
        half = TiledExtension(p=2.0, k=2, f0=lambda x: LOG(x) / x,
                              nonnegative_tiles=True)
        for x in (2.0, 3.0, 10.0, 250.0):
            assert extend(half, x) == extend(full, x)
        with pytest.raises(DomainError):
            extend(half, 1.5)

    def test_tile_cap_range_error(self):
        ext = TiledExtension(p=2.0, k=2, f0=lambda x: LOG(x) / x, tile_cap=4)
        with pytest.raises(RangeError) as info:
            extend_at_log(ext, (2.0 ** 6) * LOG(2.0) * 1.5)
        assert info.value.tile is not None
        with pytest.raises(RangeError):
            extend_at_log(ext, (2.0 ** -7) * LOG(2.0) * 1.5)

    def test_parameter_validation(self):
        with pytest.raises(ParameterError):
            TiledExtension(p=1.0, k=2, f0=lambda x: 1.0)
        with pytest.raises(ArityError):
            TiledExtension(p=2.0, k=1, f0=lambda x: 1.0)

    def test_sign_changing_base_data_rejected(self):
        with pytest.raises(ParameterError):
            TiledExtension(p=2.0, k=2, f0=lambda x: x - 3.0)

    def test_non_stabilising_limit_reports_none(self):
        # oscillates without a limit on the approach to p**k = 4
        ext = TiledExtension(p=2.0, k=2,
                             f0=lambda x: 2.0 + math.sin(1.0 / (4.0 - x)))
        assert continuity_defect(ext) is None

    def test_domain_error_below_one(self):
        ext = TiledExtension(p=2.0, k=2, f0=lambda x: 1.0)
        with pytest.raises(DomainError):
            extend(ext, 0.9)


class TestReflexivityResidual:
    @given(x=st.floats(min_value=1.0 + 1e-9, max_value=1e6),
           k=st.integers(min_value=2, max_value=6))
    def test_canonical_is_a_solution(self, x, k):
        f = canonical_generator(1.0, k)
        fx = float(np.asarray(f.eval(x)))
        assert abs(reflexivity_residual(f, x, k)) <= 1e-12 * abs(fx)

    def test_log_generator_hand_value(self):
        g = Generator(eval=lambda x: np.log(np.asarray(x, dtype=float)),
                      domain=__import__("logcauchy").Domain.ABOVE_ONE,
                      sign=Sign.POSITIVE, label="log")
        got = reflexivity_residual(g, 3.0, 2)
        assert math.isclose(got, -2.0 * LOG(3.0), rel_tol=1e-12)

    def test_extension_satisfies_equation(self):
        ext = TiledExtension(p=2.0, k=2, f0=canonical_closed_form(2))
        rng = np.random.default_rng(23)
        logp = LOG(2.0)
        for _ in range(100):
            log_x = rng.uniform(0.1 * logp, 8.0 * logp)
            # stay away from tile boundaries in relative log distance
            n = tile_index_log(log_x, 2.0, 2)
            lo = 2.0 ** n * logp
            hi = 2.0 ** (n + 1) * logp
            if min(log_x - lo, hi - log_x) < 1e-9 * log_x:
                continue
            x = math.exp(log_x)
            fx = ext.value_at_log(log_x)
            assert abs(reflexivity_residual(ext, x, 2)) <= 1e-11 * abs(fx)

    def test_mismatched_arity_rejected(self):
        ext = TiledExtension(p=2.0, k=2, f0=canonical_closed_form(2))
        with pytest.raises(ParameterError):
            reflexivity_residual(ext, 3.0, 3)

    def test_log_route_survives_extreme_powers(self):
        # x**k leaves double range; the log-argument entry point keeps the
        # residual meaningful
        f = canonical_generator(1.0, 6)
        x = 1e300
        fx = float(np.asarray(f.eval(x)))
        assert abs(reflexivity_residual(f, x, 6)) <= 1e-10 * abs(fx)

    def test_growing_generator_overflow_is_a_range_error(self):
        from logcauchy import affine_generator
        with pytest.raises(RangeError):
            reflexivity_residual(affine_generator(1.0, 0.0), 1e60, 6)


def write_table(path, rows, header="x,f"):
    path.write_text(header + "\n" + "\n".join(f"{x!r},{f!r}" for x, f in rows),
                    encoding="utf-8")


class TestTables:
    def make_canonical_table(self, tmp_path, k=2, points=128):
        closed = canonical_closed_form(k)
        xs = np.exp(np.linspace(LOG(2.0), k * LOG(2.0), points, endpoint=False))
        rows = [(float(x), closed(float(x))) for x in xs]
        path = tmp_path / "table.csv"
        write_table(path, rows)
        return path

    def test_roundtrip_and_interpolation(self, tmp_path):
        path = self.make_canonical_table(tmp_path)
        table = load_table(path)
        ext = TiledExtension(p=2.0, k=2, f0=table)
        closed = canonical_closed_form(2)
        # exact at the nodes, close in between, across a few tiles
        assert extend(ext, 2.0) == closed(2.0)
        for x in (2.3, 3.7, 5.1, 9.9, 17.2, 1.7, 1.2):
            assert math.isclose(extend(ext, x), closed(x), rel_tol=1e-4)

    def test_dense_table_meets_accuracy_budget(self, tmp_path):
        path = self.make_canonical_table(tmp_path, points=512)
        ext = TiledExtension(p=2.0, k=2, f0=load_table(path))
        closed = canonical_closed_form(2)
        xs = np.linspace(2.05, 3.95, 50)
        worst = max(abs(extend(ext, float(x)) - closed(float(x)))
                    / closed(float(x)) for x in xs)
        assert worst < 1e-5

    def test_table_continuity_defect(self, tmp_path):
        path = self.make_canonical_table(tmp_path, points=256)
        ext = TiledExtension(p=2.0, k=2, f0=load_table(path))
        assert continuity_defect(ext) < 1e-4

    def test_hull_violation(self, tmp_path):
        path = tmp_path / "narrow.csv"
        write_table(path, [(2.5, 1.0), (3.0, 1.1), (3.5, 1.2)])
        table = load_table(path)
        with pytest.raises(InterpolationError):
            table(2.1)
        ext = TiledExtension(p=2.0, k=2, f0=table)
        with pytest.raises(InterpolationError):
            extend(ext, 4.4)   # folds to 2.1, below the first abscissa

    def test_table_generator_quotient(self, tmp_path):
        # a generator table may span many tiles; it only needs to cover the
        # coordinates and their product
        closed = canonical_closed_form(2)
        xs = np.exp(np.linspace(LOG(1.3), LOG(30.0), 2000))
        path = tmp_path / "gen.csv"
        write_table(path, [(float(x), closed(float(x))) for x in xs])
        gen = table_generator(path)
        spec = QuotientSpec(gen, 2)
        got = quotient_eval(spec, (1.9, 2.0))
        want = quotient_eval(QuotientSpec(canonical_generator(1.0, 2), 2),
                             (1.9, 2.0))
        assert math.isclose(got, want, rel_tol=1e-4)
        with pytest.raises(InterpolationError):
            quotient_eval(spec, (20.0, 25.0))   # product leaves the hull

    def test_format_errors_carry_line_numbers(self, tmp_path):
        cases = [
            ("y,f\n2.0,1.0\n3.0,1.5", "line 1"),
            ("x,f\n2.0,1.0\nfoo,1.5", "line 3"),
            ("x,f\n2.0,1.0\n2.0,1.5", "line 3"),
            ("x,f\n2.0,1.0\n1.5,1.5", "line 3"),
            ("x,f\n2.0,1.0\n3.0", "line 3"),
            ("x,f\n-2.0,1.0\n3.0,1.5", "line 2"),
            ("x,f\n2.0,1.0", "line 2"),
            ("", "line 1"),
        ]
        for i, (content, fragment) in enumerate(cases):
            path = tmp_path / f"bad{i}.csv"
            path.write_text(content, encoding="utf-8")
            with pytest.raises(TableFormatError) as info:
                load_table(path)
            assert fragment in str(info.value)

    def test_sign_consistency_enforced(self, tmp_path):
        path = tmp_path / "mixed.csv"
        write_table(path, [(2.0, 1.0), (2.5, -1.0), (3.0, 1.0)])
        with pytest.raises(TableFormatError):
            load_table(path)

    def test_abscissae_must_fit_base_tile(self, tmp_path):
        path = tmp_path / "wide.csv"
        write_table(path, [(2.0, 1.0), (4.5, 1.2)])   # 4.5 >= p**k
        with pytest.raises(ParameterError):
            TiledExtension(p=2.0, k=2, f0=load_table(path))

    def test_blank_lines_ignored(self, tmp_path):
        path = tmp_path / "blank.csv"
        path.write_text("x,f\n2.0,1.0\n\n3.0,1.5\n", encoding="utf-8")
        table = load_table(path)
        assert table.values.tolist() == [1.0, 1.5]
