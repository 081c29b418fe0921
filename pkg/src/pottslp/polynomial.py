"""Exact sparse multivariate polynomials over the rationals.

A polynomial lives in Q[lam, t, q, r, s]: the variable alphabet is fixed and
ordered, a term maps a 5-tuple of non-negative exponents to a non-zero
Fraction coefficient, and the zero polynomial has no terms.  Everything is
exact; there is no floating point anywhere in this package.

Rational functions are unreduced numerator/denominator pairs.  Equality of
a/b and c/d is the cross-multiplied polynomial identity a*d == c*b, which
avoids any need for multivariate GCDs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

VARIABLES = ("lam", "t", "q", "r", "s")
_VAR_INDEX = {name: i for i, name in enumerate(VARIABLES)}

Exponent = tuple  # 5-tuple of non-negative ints, one per variable
Scalar = Union[int, Fraction]

_ZERO_EXP = (0,) * len(VARIABLES)


class InexactDivisionError(ArithmeticError):
    """Raised when divide_exact is asked for a division with remainder."""


def _grlex_key(exp: Exponent) -> tuple:
    return (sum(exp), exp)


@dataclass(frozen=True)
class CoefficientCheck:
    """Result of a coefficient-sign scan."""

    all_nonneg: bool
    is_zero: bool
    witness: tuple[Exponent, Fraction] | None = None


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    e = tuple(exp)
                    if len(e) != len(VARIABLES) or any(x < 0 for x in e):
                        raise ValueError(f"bad exponent vector {e!r}")
                    clean[e] = clean.get(e, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def const(value: Scalar) -> "Polynomial":
        return Polynomial({_ZERO_EXP: Fraction(value)})

    @staticmethod
    def var(name: str) -> "Polynomial":
        if name not in _VAR_INDEX:
            raise ValueError(f"unknown variable {name!r}; alphabet is {VARIABLES}")
        exp = [0] * len(VARIABLES)
        exp[_VAR_INDEX[name]] = 1
        return Polynomial({tuple(exp): Fraction(1)})

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def variables_used(self) -> tuple[str, ...]:
        used = [False] * len(VARIABLES)
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for i, v in enumerate(VARIABLES) if used[i])

    def degree(self, name: str) -> int:
        """Largest exponent of one variable; 0 for the zero polynomial."""
        i = _VAR_INDEX[name]
        return max((exp[i] for exp in self.terms), default=0)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (raises otherwise)."""
        if self.is_zero:
            return Fraction(0)
        if set(self.terms) != {_ZERO_EXP}:
            raise ValueError("polynomial is not constant")
        return self.terms[_ZERO_EXP]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.is_zero:
            return "Polynomial(0)"
        return f"Polynomial({' + '.join(self.to_text().splitlines())})"

    # -- ring arithmetic ----------------------------------------------

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other)
        return None

    def __add__(self, other) -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in o.terms.items():
            nc = out.get(exp, Fraction(0)) + c
            if nc:
                out[exp] = nc
            else:
                out.pop(exp, None)
        return _raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return _raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "Polynomial":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return Polynomial.zero()
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nc = out.get(e, Fraction(0)) + c1 * c2
                if nc:
                    out[e] = nc
                else:
                    del out[e]
        return _raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power requires a non-negative integer")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def derivative(self, name: str) -> "Polynomial":
        i = _VAR_INDEX[name]
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                out[tuple(e)] = c * exp[i]
        return _raw(out)

    # -- evaluation and substitution ----------------------------------

    def eval_rational(self, point: Mapping[str, Scalar]) -> Fraction:
        """Evaluate exactly; every variable occurring in self must be bound."""
        values: list[Fraction | None] = [None] * len(VARIABLES)
        for name, val in point.items():
            if name not in _VAR_INDEX:
                raise ValueError(f"unknown variable {name!r}")
            values[_VAR_INDEX[name]] = Fraction(val)
        total = Fraction(0)
        for exp, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(exp):
                if e:
                    v = values[i]
                    if v is None:
                        raise ValueError(f"missing binding for variable {VARIABLES[i]!r}")
                    term *= v ** e
            total += term
        return total

    def substitute(self, bindings: Mapping[str, "RationalFunction | Polynomial | Scalar"]) -> "RationalFunction":
        """Replace variables by rational functions, exactly.

        A binding value may not itself involve a bound variable, so the
        result does not depend on substitution order.
        """
        binds: dict[str, RationalFunction] = {}
        for name, value in bindings.items():
            if name not in _VAR_INDEX:
                raise ValueError(f"unknown variable {name!r}")
            rf = as_rational_function(value)
            if rf.den.is_zero:
                raise ZeroDivisionError(f"binding for {name!r} has zero denominator")
            binds[name] = rf
        for name, rf in binds.items():
            touched = set(rf.num.variables_used()) | set(rf.den.variables_used())
            bad = touched & set(binds)
            if bad:
                raise ValueError(f"binding for {name!r} involves bound variable(s) {sorted(bad)}")

        num, den = self, Polynomial.const(1)
        for name in VARIABLES:
            if name not in binds:
                continue
            rf = binds[name]
            i = _VAR_INDEX[name]
            dmax = num.degree(name)
            if dmax == 0:
                continue
            # num = sum_e coeff_e(rest) * var^e  ->  sum_e coeff_e * bnum^e * bden^(dmax-e)
            bnum_pow = [Polynomial.const(1)]
            bden_pow = [Polynomial.const(1)]
            for _ in range(dmax):
                bnum_pow.append(bnum_pow[-1] * rf.num)
                bden_pow.append(bden_pow[-1] * rf.den)
            pieces: dict[int, dict[Exponent, Fraction]] = {}
            for exp, c in num.terms.items():
                e = exp[i]
                stripped = list(exp)
                stripped[i] = 0
                pieces.setdefault(e, {})[tuple(stripped)] = c
            acc = Polynomial.zero()
            for e, rest in pieces.items():
                acc = acc + _raw(rest) * bnum_pow[e] * bden_pow[dmax - e]
            num = acc
            den = den * bden_pow[dmax]
        return RationalFunction(num, den)

    def divide_exact(self, den: "Polynomial") -> "Polynomial":
        """Exact polynomial quotient; raises InexactDivisionError otherwise."""
        if den.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return Polynomial.zero()
        d_exp = max(den.terms, key=_grlex_key)
        d_coeff = den.terms[d_exp]
        rem = dict(self.terms)
        quot: dict[Exponent, Fraction] = {}
        while rem:
            r_exp = max(rem, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(r_exp, d_exp))
            if any(x < 0 for x in diff):
                raise InexactDivisionError(
                    f"inexact division: remainder term {_term_text(r_exp, rem[r_exp])}"
                )
            q_coeff = rem[r_exp] / d_coeff
            quot[diff] = quot.get(diff, Fraction(0)) + q_coeff
            for e, c in den.terms.items():
                tgt = tuple(a + b for a, b in zip(diff, e))
                nc = rem.get(tgt, Fraction(0)) - q_coeff * c
                if nc:
                    rem[tgt] = nc
                else:
                    rem.pop(tgt, None)
        return _raw(quot)

    def coeffs_nonneg(self) -> CoefficientCheck:
        """Scan stored coefficients for negativity; exact by construction."""
        for exp in sorted(self.terms, key=_grlex_key):
            c = self.terms[exp]
            if c < 0:
                return CoefficientCheck(all_nonneg=False, is_zero=False, witness=(exp, c))
        return CoefficientCheck(all_nonneg=True, is_zero=self.is_zero)

    # -- text form ------------------------------------------------------

    def to_text(self) -> str:
        """One term per line, graded-lex order, e.g. '3/2 * lam^2 q'."""
        if self.is_zero:
            return "0"
        lines = []
        for exp in sorted(self.terms, key=_grlex_key):
            lines.append(_term_text(exp, self.terms[exp]))
        return "\n".join(lines)


def _raw(terms: dict[Exponent, Fraction]) -> Polynomial:
    p = Polynomial()
    object.__setattr__(p, "terms", terms)
    return p


def _term_text(exp: Exponent, coeff: Fraction) -> str:
    factors = [f"{VARIABLES[i]}^{e}" if e > 1 else VARIABLES[i]
               for i, e in enumerate(exp) if e]
    if not factors:
        return str(coeff)
    return f"{coeff} * " + " ".join(factors)


def as_rational_function(value) -> "RationalFunction":
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, Polynomial):
        return RationalFunction(value, Polynomial.const(1))
    if isinstance(value, (int, Fraction)):
        return RationalFunction(Polynomial.const(value), Polynomial.const(1))
    raise TypeError(f"cannot interpret {value!r} as a rational function")


class RationalFunction:
    """Unreduced quotient of two polynomials with a non-zero denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.const(1)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("RationalFunction is immutable")

    def __repr__(self) -> str:
        return f"RationalFunction(({'; '.join(self.num.to_text().splitlines())}) / ({'; '.join(self.den.to_text().splitlines())}))"

    def _coerce(self, other) -> "RationalFunction | None":
        try:
            return as_rational_function(other)
        except TypeError:
            return None

    def __add__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def substitute(self, bindings) -> "RationalFunction":
        n = self.num.substitute(bindings)
        d = self.den.substitute(bindings)
        return n / d

    def eval_rational(self, point: Mapping[str, Scalar]) -> Fraction:
        dv = self.den.eval_rational(point)
        if dv == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return self.num.eval_rational(point) / dv


# convenience singletons for the fixed alphabet
LAM = Polynomial.var("lam")
T = Polynomial.var("t")
Q = Polynomial.var("q")
R = Polynomial.var("r")
S = Polynomial.var("s")


def poly(value: Scalar) -> Polynomial:
    """Shorthand for a constant polynomial."""
    return Polynomial.const(value)
