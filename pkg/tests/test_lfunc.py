from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from picard.errors import ValidationError
from picard.lfunc import (
    ZETA3_UPPER,
    bernoulli3,
    bernoulli3_chi,
    bernoulli3_chi_half,
    l_at_three_upper,
    l_minus_two,
    l_minus_two_numeric,
)
from picard.quadfield import is_squarefree, make_field

EXACT = {1: Fraction(-1, 2), 2: Fraction(-3), 3: Fraction(-2, 9), 5: Fraction(-30), 6: Fraction(-46),
         7: Fraction(-16, 7), 11: Fraction(-6), 15: Fraction(-16), 19: Fraction(-22),
         23: Fraction(-48), 31: Fraction(-96)}


@pytest.mark.parametrize("d,val", sorted(EXACT.items()))
def test_l_minus_two_exact(d, val):
    assert l_minus_two(make_field(d)) == val


def test_bernoulli3_d1_term():
    assert bernoulli3(Fraction(1, 4)) == Fraction(3, 64)


@pytest.mark.parametrize("d", [3, 7, 23])
def test_numeric_oracle_examples(d):
    rep = l_minus_two_numeric(make_field(d), 10_000)
    assert rep.agrees
    assert abs(rep.numeric - float(EXACT[d])) <= rep.tail_bound


def test_numeric_tail_d3_small():
    rep = l_minus_two_numeric(make_field(3), 10_000)
    assert rep.tail_bound < 1e-6
    assert round(rep.numeric, 4) == -0.2222


def test_numeric_rejects_short_sums():
    with pytest.raises(ValidationError):
        l_minus_two_numeric(make_field(23), 10)


@pytest.mark.parametrize("d", [d for d in range(1, 101) if is_squarefree(d)])
def test_oracle_agreement_up_to_100(d):
    f = make_field(d)
    exact = l_minus_two(f)
    assert exact < 0
    assert l_minus_two_numeric(f, 100_000).agrees


@given(st.sampled_from([d for d in range(1, 201) if is_squarefree(d)]))
@settings(max_examples=60)
def test_bernoulli_half_sum(d):
    f = make_field(d)
    assert bernoulli3_chi(f) == bernoulli3_chi_half(f)
    assert l_minus_two(f) < 0


def test_l_at_three_bounds():
    assert 0 < l_at_three_upper(make_field(3)) < 1
    assert abs(l_at_three_upper(make_field(7)) - 1.0934) < 1e-3
    assert ZETA3_UPPER == Fraction(5, 4)
