"""
Property-based tests for the tightening condition against exact arithmetic.
"""

from decimal import Decimal, localcontext

import pytest
from hypothesis import assume, given, settings, strategies as st

from apps.superposition.services import RiskBoundInputs, check_tightening

norms = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False)


@st.composite
def bound_inputs(draw, orthogonal=False):
    M = draw(st.integers(min_value=1, max_value=5000))
    U0 = draw(norms)
    return RiskBoundInputs(
        U0=U0,
        A0=draw(norms),
        U0_prime=U0 if orthogonal else draw(norms),
        M=M,
        M_prime=draw(st.integers(min_value=1, max_value=M)),
        C=draw(st.integers(min_value=1, max_value=200)),
        L=draw(st.integers(min_value=1, max_value=5)),
        n_events=draw(st.integers(min_value=2, max_value=10**9)),
        delta=draw(st.floats(min_value=1e-6, max_value=0.499)),
    )


def exact_rhs(inputs: RiskBoundInputs) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = 50
        log_events = Decimal(inputs.n_events).ln()
        log_conf = (Decimal(2) / Decimal(inputs.delta)).ln()
        CL = Decimal(inputs.C * inputs.L)
        numerator = (inputs.M + CL) * log_events + log_conf
        denominator = (inputs.M_prime + CL) * log_events + log_conf
        A0, U0 = Decimal(inputs.A0), Decimal(inputs.U0)
        return +((A0 + U0) * numerator / denominator - A0)


@pytest.mark.property
class TestTighteningProperties:
    """check_tightening agrees with a 50-digit evaluation of the quotient form."""

    @settings(max_examples=1000, deadline=None)
    @given(inputs=bound_inputs())
    def test_rhs_matches_exact_arithmetic(self, inputs):
        result = check_tightening(inputs)

        assert result.rhs == pytest.approx(float(exact_rhs(inputs)), rel=1e-12)

    @settings(max_examples=300, deadline=None)
    @given(inputs=bound_inputs(orthogonal=True))
    def test_orthogonal_superposition_holds(self, inputs):
        assert check_tightening(inputs).holds

    @settings(max_examples=300, deadline=None)
    @given(inputs=bound_inputs())
    def test_fewer_folders_never_loosen(self, inputs):
        assume(inputs.M_prime > 1)
        fewer = RiskBoundInputs(**{**inputs.__dict__, "M_prime": inputs.M_prime - 1})

        assert check_tightening(fewer).rhs >= check_tightening(inputs).rhs
