import pytest

from monstertower.blowup import (
    BlowupState,
    blowup_once,
    blowup_resolve,
    cross_check,
)
from monstertower.corpus import generate_corpus, with_precision_retry
from monstertower.errors import MaxLevelExceeded, MismatchReport, NonPrimitiveParameterization
from monstertower.invariants import multiplicity_sequence
from monstertower.series import parse_series
from monstertower.tower import lift_to_regularization, nash_order_profile, parse_curve


def germ(text, precision=64):
    return parse_curve(text, precision)[0]


class TestBlowupOnce:
    def test_first_quotient(self):
        c = germ("x=t^5, y=t^7")
        state = BlowupState(c.x, c.y, "x_0", "y_0", None, None, 0)
        state, step = blowup_once(state)
        assert step.new_coord.agrees_with(parse_series("t^2"))
        assert (step.new_name, step.symbol) == ("y_1", "R")

    def test_full_coordinate_chain(self):
        c = germ("x=t^5, y=t^7")
        state = BlowupState(c.x, c.y, "x_0", "y_0", None, None, 0)
        seen = []
        for _ in range(5):
            state, step = blowup_once(state)
            seen.append((step.new_name, str(step.new_coord).split(" + O")[0]))
        assert seen == [
            ("y_1", "t^2"),
            ("x_1", "t^3"),
            ("x_2", "t"),
            ("y_2", "t"),
            ("y_3", "1"),  # tie divides the newer coordinate by the older
        ]

    def test_recentering_divisor(self):
        # x = t^15, y = t^24 + t^25 passes through x_3 = 1, so later
        # quotients divide by x_3 - 1
        trace = blowup_resolve(germ("x=t^15, y=t^24+t^25", 96))
        assert trace.steps[4].new_coord.constant_term() == 1
        assert trace.profile == (15, 24, 9, 6, 3, 3, 0, 2, 1)


class TestBlowupResolve:
    def test_quintic(self):
        trace = blowup_resolve(germ("x=t^5, y=t^7"))
        assert trace.word.symbols == "RVTV"
        assert trace.regularity_level == 4
        assert trace.multiplicities == (5, 2, 2, 1, 1)

    def test_ramphoid_word(self):
        assert blowup_resolve(germ("x=t^2, y=t^4+t^5")).word.symbols == "RRV"

    def test_smooth_curve(self):
        trace = blowup_resolve(germ("x=t, y=t^3"))
        assert trace.word.symbols == "R"
        assert trace.regularity_level == 1

    def test_order_profile_example(self):
        trace = blowup_resolve(germ("x=t^15, y=t^24+t^25", 96))
        assert trace.word.symbols == "RVVVRVT"
        assert trace.profile == nash_order_profile(germ("x=t^15, y=t^24+t^25", 96))

    def test_non_primitive_rejected(self):
        with pytest.raises(NonPrimitiveParameterization):
            blowup_resolve(germ("x=t^3, y=t^6"))

    def test_budget(self):
        with pytest.raises(MaxLevelExceeded):
            blowup_resolve(germ("x=t^5, y=t^7"), max_level=2)


class TestCrossCheck:
    @pytest.mark.parametrize(
        "curve,precision",
        [
            ("x=t^5, y=t^7", 64),
            ("x=t^15, y=t^24+t^25", 96),
            ("x=t^2, y=t^4+t^5", 64),
            ("x=t, y=t^2", 64),
            ("x=t^14, y=14*t^18+14*t^19", 96),
        ],
    )
    def test_golden_curves_agree(self, curve, precision):
        report = cross_check(germ(curve, precision))
        assert report.ok
        assert report.nash_word == report.blowup_word

    def test_multiplicities_match_word_route(self):
        c = germ("x=t^5, y=t^7")
        report = cross_check(c)
        word = lift_to_regularization(c).word
        assert report.nash_multiplicities == multiplicity_sequence(word)
        assert report.blowup_multiplicities == report.nash_multiplicities

    def test_small_random_corpus(self):
        for spec in generate_corpus(25, seed=99):
            report = with_precision_retry(cross_check, spec)
            assert report.ok

    def test_vertical_orders_agree_with_word_route(self):
        # divisor-intersection orders along the lift vs multiplicity
        # differences read off the word
        from monstertower.invariants import vertical_orders
        from monstertower.tower import curve_word, vertical_orders_from_curve

        def check(c):
            assert tuple(vertical_orders_from_curve(c)) == tuple(
                vertical_orders(curve_word(c, 0))
            )
            return True

        for spec in generate_corpus(25, seed=7):
            assert with_precision_retry(check, spec)

    def test_mismatch_raises_with_report(self):
        # sanity: cross_check raising is observable via a doctored comparison
        c = germ("x=t^5, y=t^7")
        report = cross_check(c)
        assert report.to_json_dict()["agree"] is True
        with pytest.raises(MismatchReport):
            raise MismatchReport("forced", report)
