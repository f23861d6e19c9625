"""Zero-file parsing, digitization, reordering, and digit statistics."""

import random
from fractions import Fraction

import mpmath as mp
import pytest

from fraczeta.errors import InputError, ParseError
from fraczeta.zeros import (
    PI_100,
    digit_stats,
    digitize,
    parse_zero_file,
    reorder,
    reorder_external_weights,
)

GAMMA_1 = "14.134725141734693"
GAMMA_2 = "21.022039638771555"


def write_zero_file(tmp_path, text, name="zeros.txt"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestParse:
    def test_two_ordinates(self, tmp_path):
        table = parse_zero_file(write_zero_file(tmp_path, f"{GAMMA_1}\n{GAMMA_2}\n"))
        assert len(table) == 2
        assert table.gammas[0] < table.gammas[1]
        assert table.gammas[0] == Fraction(14134725141734693, 10**15)
        assert table.ordering == "standard"
        assert table.ordering_warning is None

    def test_comments_skipped(self, tmp_path):
        table = parse_zero_file(
            write_zero_file(tmp_path, f"# header line\n{GAMMA_1}\n")
        )
        assert len(table) == 1

    def test_parse_error_carries_line_number(self, tmp_path):
        path = write_zero_file(tmp_path, f"{GAMMA_1}\n{GAMMA_2}\nabc\n")
        with pytest.raises(ParseError, match="line 3"):
            parse_zero_file(path)

    def test_empty_file_rejected(self, tmp_path):
        path = write_zero_file(tmp_path, "# only a comment\n")
        with pytest.raises(InputError):
            parse_zero_file(path)

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(InputError):
            parse_zero_file(tmp_path / "absent.txt")

    def test_nonpositive_value_rejected(self, tmp_path):
        path = write_zero_file(tmp_path, "-3.5\n")
        with pytest.raises(InputError):
            parse_zero_file(path)

    def test_unsorted_input_recorded(self, tmp_path):
        table = parse_zero_file(write_zero_file(tmp_path, f"{GAMMA_2}\n{GAMMA_1}\n"))
        assert table.ordering_warning is not None

    def test_fixture_file(self, zero_table):
        assert len(zero_table) == 100
        assert zero_table.ordering_warning is None

    def test_pi_constant_matches_independent_computation(self):
        with mp.workdps(110):
            assert abs(mp.mpf(PI_100) - mp.pi) < mp.mpf("1e-99")


class TestDigitize:
    def test_first_zero_against_high_precision_oracle(self, zero_table):
        seq = digitize(zero_table, precision_digits=50, boundary_tol=1e-4)
        entry = seq.entries[0]
        with mp.workdps(80):
            gamma = mp.mpf(GAMMA_1 + "790457251983562")  # more digits of the ordinate
            x = gamma / (2 * mp.pi)
            t_oracle = x - mp.floor(x)
            assert abs(entry.t - t_oracle) < mp.mpf("1e-25")
        assert entry.a == 0
        # 4t sits 0.00156 below 1: near the cell edge but outside tol 1e-4
        assert entry.boundary_flag is False

    def test_synthetic_quarter_pi_offset(self, tmp_path):
        # gamma = 2*pi*k + pi/4 lands exactly at t = 1/8
        with mp.workdps(60):
            gamma = mp.nstr(2 * mp.pi * 3 + mp.pi / 4, 45)
        path = tmp_path / "synthetic.txt"
        path.write_text(gamma + "\n")
        seq = digitize(parse_zero_file(path), 50)
        assert seq.entries[0].a == 0
        assert abs(seq.entries[0].t - mp.mpf("0.125")) < mp.mpf("1e-40")

    def test_synthetic_half_turn(self, tmp_path):
        with mp.workdps(60):
            gamma = mp.nstr(2 * mp.pi * 5 + mp.pi, 45)
        path = tmp_path / "synthetic.txt"
        path.write_text(gamma + "\n")
        seq = digitize(parse_zero_file(path), 50)
        assert seq.entries[0].a == 2
        assert abs(seq.entries[0].t - mp.mpf("0.5")) < mp.mpf("1e-40")

    def test_all_digits_in_range_and_floor_consistent(self, zero_digits):
        for e in zero_digits:
            assert e.a in (0, 1, 2, 3)
            assert int(mp.floor(4 * e.t)) == e.a

    def test_precision_stability_40_vs_60(self, zero_table):
        a40 = digitize(zero_table, 40)
        a60 = digitize(zero_table, 60)
        for e40, e60 in zip(a40, a60):
            if not e40.boundary_flag:
                assert e40.a == e60.a

    def test_minimum_precision_enforced(self, zero_table):
        with pytest.raises(InputError):
            digitize(zero_table, 39)

    def test_zf_retained_pairs_always_two(self, zero_digits):
        from fraczeta.grids import make_zf_spec

        spec = make_zf_spec(zero_digits)
        for level in range(1, len(zero_digits) + 1):
            assert len(spec.retained_at(level)) == 2


class TestReorder:
    def test_random_is_deterministic(self, zero_table):
        a = reorder(zero_table, "random", seed=123)
        b = reorder(zero_table, "random", seed=123)
        assert a.gammas == b.gammas
        assert a.ordering == "random(seed=123)"

    def test_different_seeds_differ(self, zero_table):
        a = reorder(zero_table, "random", seed=1)
        b = reorder(zero_table, "random", seed=2)
        assert a.gammas != b.gammas

    def test_standard_restores_ascending(self, zero_table):
        shuffled = reorder(zero_table, "random", seed=99)
        restored = reorder(shuffled, "standard")
        assert restored.gammas == zero_table.gammas
        assert restored.gamma_strings == zero_table.gamma_strings

    def test_single_element_unchanged(self, tmp_path):
        path = tmp_path / "one.txt"
        path.write_text("14.1347251417\n")
        table = parse_zero_file(path)
        assert reorder(table, "random", seed=5).gammas == table.gammas

    def test_unknown_mode_rejected(self, zero_table):
        with pytest.raises(InputError):
            reorder(zero_table, "sideways")

    def test_external_weights(self, tmp_path):
        zeros = tmp_path / "z.txt"
        zeros.write_text("10.5\n20.5\n30.5\n")
        table = parse_zero_file(zeros)
        weights = tmp_path / "w.txt"
        weights.write_text("# idx weight\n1 0.9\n2 0.1\n3 0.5\n")
        out = reorder_external_weights(table, weights)
        assert [str(g) for g in out.gammas] == ["41/2", "61/2", "21/2"]
        assert out.ordering.startswith("external-weights")

    def test_external_weights_must_cover_all(self, tmp_path):
        zeros = tmp_path / "z.txt"
        zeros.write_text("10.5\n20.5\n")
        table = parse_zero_file(zeros)
        weights = tmp_path / "w.txt"
        weights.write_text("1 0.9\n")
        with pytest.raises(InputError):
            reorder_external_weights(table, weights)


class TestDigitStats:
    def test_perfect_uniformity(self):
        stats = digit_stats([0, 1, 2, 3, 0, 1, 2, 3])
        assert stats.chi_square == 0.0
        assert stats.reject_at_05 is False
        assert stats.counts == (2, 2, 2, 2)

    def test_all_zeros_rejected(self):
        # O = (8,0,0,0), E = 2: chi2 = (36 + 4 + 4 + 4)/2 = 24
        stats = digit_stats([0] * 8)
        assert stats.chi_square == pytest.approx(24.0)
        assert stats.reject_at_05 is True

    def test_length_validated(self):
        with pytest.raises(InputError):
            digit_stats([0, 1, 2, 3])

    def test_permutation_invariance(self, zero_digits):
        base = digit_stats(zero_digits)
        shuffled = list(zero_digits.digits())
        random.Random(17).shuffle(shuffled)
        other = digit_stats(shuffled)
        assert other.counts == base.counts
        assert other.chi_square == base.chi_square

    def test_calibration_under_uniform_digits(self):
        # at the 5% level, ~95 of 100 uniform samples should not reject
        non_rejects = 0
        for seed in range(100):
            rng = random.Random(seed)
            sample = [rng.randrange(4) for _ in range(10_000)]
            if not digit_stats(sample).reject_at_05:
                non_rejects += 1
        assert non_rejects >= 94

    def test_real_zero_digits_report(self, zero_digits):
        stats = digit_stats(zero_digits)
        assert sum(stats.counts) == len(zero_digits)
        assert stats.df == 3
        assert stats.chi_square >= 0
