import numpy as np
import pytest

from minlorentz.errors import DomainError
from minlorentz.funcs import (Add, ExprFn, ExprSyntaxError, Fun, Mul, Num,
                              Pow, TableFn, UnknownFunctionError, Var,
                              differentiate, parse, to_text)


class TestParse:
    def test_product(self):
        assert parse("2*t") == Mul(Num(2.0), Var())

    def test_power_plus_function(self):
        assert parse("t^2 + sin(t)") == Add(Pow(Var(), 2), Fun("sin", Var()))

    def test_double_star_rejected_at_offset_2(self):
        with pytest.raises(ExprSyntaxError) as err:
            parse("2**t")
        assert err.value.offset == 2

    def test_unknown_function(self):
        with pytest.raises(UnknownFunctionError) as err:
            parse("sn(t)")
        assert err.value.offset == 0
        assert err.value.name == "sn"

    def test_unbalanced_paren_offset(self):
        with pytest.raises(ExprSyntaxError) as err:
            parse("sin(t")
        assert err.value.offset == 5

    def test_exponent_must_be_integer(self):
        with pytest.raises(ExprSyntaxError):
            parse("t^t")
        with pytest.raises(ExprSyntaxError):
            parse("t^2.5")

    def test_negative_exponent_allowed(self):
        assert parse("t^-2") == Pow(Var(), -2)

    def test_unary_minus_binds_to_base(self):
        # grammar: factor := base ('^' int)?, base := '-' base,
        # so -t^2 means (-t)^2
        assert parse("-t^2") == Pow(parse("-t"), 2)
        assert parse("-t^2")(3.0) == 9.0

    def test_precedence(self):
        assert parse("1 + 2*t")(3.0) == 7.0
        assert parse("(1 + 2)*t")(3.0) == 9.0

    def test_stray_character(self):
        with pytest.raises(ExprSyntaxError):
            parse("t @ 2")


class TestPrintRoundTrip:
    CASES = [
        "2*t", "t^2 + sin(t)", "1/(1 + t^2)", "-(t + 1)", "-t^3",
        "sin(2*t)*cos(t) - tanh(t)/3", "exp(-t^2)", "sqrt(1 + t^2)",
        "t - 1 - 2", "t/(2/t)", "2^3 + t^-1", "ln(cosh(t))",
    ]

    @pytest.mark.parametrize("text", CASES)
    def test_parse_print_parse_idempotent(self, text):
        ast1 = parse(text)
        ast2 = parse(to_text(ast1))
        assert ast1 == ast2

    @pytest.mark.parametrize("text", CASES)
    def test_derivative_print_stable(self, text):
        d = differentiate(parse(text))
        again = parse(to_text(d))
        assert parse(to_text(again)) == again


class TestDifferentiate:
    def test_power_rule(self):
        assert to_text(differentiate(parse("t^2"))) == "2*t"

    def test_chain_rule_sin(self):
        d = differentiate(parse("sin(2*t)"))
        assert d == Mul(Fun("cos", Mul(Num(2.0), Var())), Num(2.0))

    def test_constant(self):
        assert differentiate(parse("5")) == Num(0.0)

    def test_quotient_rule_value(self):
        d = ExprFn("t/(1 + t^2)")
        # (1 - t^2)/(1 + t^2)^2 at t = 2 -> -3/25
        assert d.deriv(2.0) == pytest.approx(-3.0 / 25.0, rel=1e-15)

    @pytest.mark.parametrize("text", TestPrintRoundTrip.CASES)
    def test_against_central_difference(self, text):
        fn = ExprFn(text)
        hstep = 1e-5
        for t in (-0.7, -0.2, 0.31, 0.9, 1.4):
            try:
                fd = (fn(t + hstep) - fn(t - hstep)) / (2 * hstep)
                sym = fn.deriv(t)
            except DomainError:
                continue
            assert abs(sym - fd) <= 1e-6 * (1.0 + abs(sym))


class TestEval:
    def test_simple_value(self):
        assert ExprFn("2*t")(3.0) == 6.0

    def test_derivative_value(self):
        assert ExprFn("t^2").deriv(5.0) == 10.0

    def test_ln_domain(self):
        with pytest.raises(DomainError):
            ExprFn("ln(t)")(-1.0)

    def test_sqrt_domain(self):
        with pytest.raises(DomainError):
            ExprFn("sqrt(t)")(-0.5)

    def test_division_by_zero(self):
        with pytest.raises(DomainError):
            ExprFn("1/t")(0.0)

    def test_array_eval_matches_scalar(self):
        fn = ExprFn("sin(2*t) + t^3/4")
        ts = np.linspace(-1, 1, 17)
        arr = fn(ts)
        assert arr.shape == ts.shape
        for i, t in enumerate(ts):
            assert arr[i] == fn(float(t))


class TestTableFn:
    def _table_from(self, fn: ExprFn, lo, hi, n):
        ts = np.linspace(lo, hi, n)
        return TableFn(ts, fn(ts), fn.deriv(ts))

    def test_reproduces_source_values(self):
        fn = ExprFn("sin(t) + t^2/3")
        tab = self._table_from(fn, -1.0, 1.0, 2001)
        ts = np.linspace(-1.0, 1.0, 509)
        assert np.max(np.abs(tab(ts) - fn(ts))) < 1e-12

    def test_derivative_close_to_symbolic_at_fine_spacing(self):
        # knots at spacing 1e-3: interpolated derivative within 1e-6 relative
        fn = ExprFn("sin(t) + exp(t/2)")
        tab = self._table_from(fn, 0.0, 1.0, 1001)
        ts = np.linspace(0.0, 1.0, 777)
        sym = fn.deriv(ts)
        err = np.max(np.abs(tab.deriv(ts) - sym) / (1.0 + np.abs(sym)))
        assert err <= 1e-6

    def test_out_of_range(self):
        tab = self._table_from(ExprFn("t"), 0.0, 1.0, 5)
        with pytest.raises(DomainError):
            tab(1.5)

    def test_needs_four_knots(self):
        with pytest.raises(ValueError):
            TableFn([0.0, 1.0, 2.0], [0.0, 1.0, 2.0], [1.0, 1.0, 1.0])

    def test_knots_strictly_increasing(self):
        with pytest.raises(ValueError):
            TableFn([0.0, 1.0, 1.0, 2.0], np.zeros(4), np.zeros(4))

    def test_second_derivative_roughly_matches(self):
        fn = ExprFn("cos(t)")
        tab = self._table_from(fn, 0.0, 3.0, 3001)
        ts = np.linspace(0.1, 2.9, 100)
        assert np.max(np.abs(tab.second(ts) + fn(ts))) < 1e-5
