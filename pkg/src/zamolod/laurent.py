"""Sparse multivariate Laurent polynomials over the integers.

A polynomial is stored as a dict mapping exponent tuples (which may contain
negative entries) to nonzero Python ints.  Python ints are arbitrary
precision, so coefficients never overflow; exponents are kept inside the
signed 32-bit range and overflow raises loudly.

This is deliberately small: the T-system only needs +, *, exact division by
a divisor known to divide, and per-variable degree bookkeeping.
"""

from __future__ import annotations

import math
import re
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]

EXP_MIN = -(2**31)
EXP_MAX = 2**31 - 1


class InexactDivision(ArithmeticError):
    """Raised when exact_div is asked to divide by a non-divisor."""


class ZeroPolynomial(ValueError):
    """Raised when a degree is requested from the zero polynomial."""


class ExponentOverflow(OverflowError):
    pass


def _check_exp(e: Exponent) -> Exponent:
    for a in e:
        if a < EXP_MIN or a > EXP_MAX:
            raise ExponentOverflow(f"exponent {a} outside signed 32-bit range")
    return e


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return _check_exp(tuple(x + y for x, y in zip(a, b)))


def _sub_exp(a: Exponent, b: Exponent) -> Exponent:
    return _check_exp(tuple(x - y for x, y in zip(a, b)))


class LaurentPoly:
    """Immutable sparse Laurent polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | None = None):
        self.nvars = int(nvars)
        clean: Dict[Exponent, int] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != self.nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                if c:
                    clean[_check_exp(tuple(int(x) for x in e))] = int(c)
        self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def const(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls(len(exps), {tuple(exps): coeff})

    # -- basic protocol ---------------------------------------------------
    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return LaurentPoly.const(self.nvars, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if not self._terms or not other._terms:
            return LaurentPoly(self.nvars)
        out: Dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise InexactDivision("only monomials can be raised to negative powers")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise InexactDivision("monomial coefficient is not a unit")
            return LaurentPoly(self.nvars, {tuple(x * k for x in e): c ** (-k)})
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^exps."""
        exps = tuple(exps)
        return LaurentPoly(self.nvars, {_add_exp(e, exps): c for e, c in self._terms.items()})

    def exact_div(self, q: "LaurentPoly") -> "LaurentPoly":
        return exact_div(self, q)

    def __truediv__(self, q) -> "LaurentPoly":
        return exact_div(self, self._coerce(q))

    # -- degrees --------------------------------------------------------------
    def deg_max(self, i: int) -> int:
        if not self._terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(e[i] for e in self._terms)

    def deg_min(self, i: int) -> int:
        if not self._terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return min(e[i] for e in self._terms)

    def tropicalize(self, weights: Sequence) -> object:
        """max over terms of <weights, exponent> (the support function of the Newton polytope)."""
        if not self._terms:
            raise ZeroPolynomial("tropicalization of the zero polynomial")
        return max(sum(w * a for w, a in zip(weights, e)) for e in self._terms)

    # -- evaluation -----------------------------------------------------------
    def eval_positive(self, point: Sequence[float], log_domain: bool = False) -> float:
        """Evaluate at a strictly positive real point.

        With ``log_domain=True`` the log of the value is returned, computed
        via log-sum-exp so large degrees do not overflow.  That only makes
        sense when the value is positive, which holds for the positive
        Laurent polynomials produced by the T-system.
        """
        if any(p <= 0 for p in point):
            raise ValueError("evaluation point must be strictly positive")
        logs = [math.log(p) for p in point]
        if not log_domain:
            return sum(c * math.exp(sum(a * l for a, l in zip(e, logs))) for e, c in self._terms.items())
        vals = []
        for e, c in self._terms.items():
            if c <= 0:
                raise ValueError("log-domain evaluation needs positive coefficients")
            vals.append(math.log(c) + sum(a * l for a, l in zip(e, logs)))
        m = max(vals)
        return m + math.log(sum(math.exp(v - m) for v in vals))

    def eval_at_ones(self) -> int:
        return sum(self._terms.values())

    # -- text form ---------------------------------------------------------
    def sorted_terms(self):
        # lexicographically descending exponents: canonical order
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {to_text(self)!r})"


def monomial_from_exponents(exps: Sequence[int]) -> LaurentPoly:
    if any(a < 0 for a in exps):
        raise ValueError("monomial_from_exponents expects nonnegative exponents")
    return LaurentPoly.monomial(exps)


def product_of_powers(factors: Sequence[LaurentPoly], powers: Sequence[int], nvars: int) -> LaurentPoly:
    """prod_i factors[i]**powers[i], skipping zero powers (empty product = 1)."""
    out = LaurentPoly.one(nvars)
    for f, p in zip(factors, powers):
        if p:
            out = out * (f ** p)
    return out


def _leading(terms: Mapping[Exponent, int]) -> Exponent:
    return max(terms)


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return p / q, raising InexactDivision unless q divides p in Z[x^{+-1}].

    Division by a monomial is a shift.  Otherwise we run ordinary long
    division with respect to lex order; for an exact divisor every
    quotient term lies in the per-variable degree box cut out by p and q and
    above min(p)/min(q), so a candidate outside those bounds proves q does not
    divide p (and the loop is finite).
    """
    if q.nvars != p.nvars:
        raise ValueError("variable count mismatch")
    if q.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if p.is_zero():
        return LaurentPoly(p.nvars)
    qt = q._terms
    if len(qt) == 1:
        (e, c), = qt.items()
        out = {}
        for pe, pc in p._terms.items():
            quo, rem = divmod(pc, c)
            if rem:
                raise InexactDivision("coefficient not divisible by monomial coefficient")
            out[_sub_exp(pe, e)] = quo
        return LaurentPoly(p.nvars, out)

    q_lead = _leading(qt)
    q_lead_c = qt[q_lead]
    q_low = min(qt)
    floor = _sub_exp(min(p._terms), q_low)
    # per-variable degree box the quotient must live in; keeps the loop finite
    n = p.nvars
    hi = [max(e[i] for e in p._terms) - max(e[i] for e in qt) for i in range(n)]
    lo = [min(e[i] for e in p._terms) - min(e[i] for e in qt) for i in range(n)]
    rem = dict(p._terms)
    quot: Dict[Exponent, int] = {}
    q_items = list(qt.items())
    while rem:
        lead = _leading(rem)
        e = _sub_exp(lead, q_lead)
        if e < floor or any(a < l or a > h for a, l, h in zip(e, lo, hi)):
            raise InexactDivision("remainder does not vanish")
        c, r = divmod(rem[lead], q_lead_c)
        if r:
            raise InexactDivision("leading coefficient not divisible")
        quot[e] = c
        for qe, qc in q_items:
            te = tuple(x + y for x, y in zip(e, qe))
            v = rem.get(te, 0) - c * qc
            if v:
                rem[te] = v
            else:
                rem.pop(te, None)
    return LaurentPoly(p.nvars, quot)


# -- text serialization ------------------------------------------------------

def _mono_text(e: Exponent) -> str:
    parts = []
    for i, a in enumerate(e):
        if a == 0:
            continue
        parts.append(f"x{i + 1}" if a == 1 else f"x{i + 1}^{a}")
    return "*".join(parts)


def to_text(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for k, (e, c) in enumerate(p.sorted_terms()):
        mono = _mono_text(e)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if k == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


_TERM_RE = re.compile(r"^(?:(\d+)\*?)?((?:x\d+(?:\^-?\d+)?\*?)*)$")


def from_text(s: str, nvars: int) -> LaurentPoly:
    """Parse the text form produced by to_text (e.g. ``3*x1^2*x4^-1 + x2``)."""
    s = s.strip()
    if s == "0":
        return LaurentPoly(nvars)
    # split on +/- that separate terms (surrounded by spaces, or leading minus)
    tokens = re.split(r"\s+([+-])\s+", s)
    signs = ["+"] + tokens[1::2]
    bodies = tokens[0::2]
    terms: Dict[Exponent, int] = {}
    for sign, body in zip(signs, bodies):
        body = body.strip()
        neg = sign == "-"
        if body.startswith("-"):
            neg = not neg
            body = body[1:]
        m = _TERM_RE.match(body)
        if not m or not body:
            raise ValueError(f"cannot parse term {body!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        e = [0] * nvars
        for var, pw in re.findall(r"x(\d+)(?:\^(-?\d+))?", m.group(2) or ""):
            idx = int(var) - 1
            if idx < 0 or idx >= nvars:
                raise ValueError(f"variable x{var} out of range")
            e[idx] += int(pw) if pw else 1
        e = tuple(e)
        terms[e] = terms.get(e, 0) + (-coeff if neg else coeff)
    return LaurentPoly(nvars, terms)


def newton_positive(p: LaurentPoly, projections: Iterable[Sequence[int]] = ()) -> bool:
    """Cheap Newton-positivity check.

    For each variable the terms attaining the extreme degree, and for each
    supplied linear functional the terms maximizing it, must include a
    positive coefficient at a lex-extreme exponent.  Full polytope vertex
    enumeration is not attempted; extreme points of a linear functional
    restricted to the maximizing face are found by lex order, which is
    always a vertex.
    """
    if p.is_zero():
        return True
    funcs = []
    for i in range(p.nvars):
        e = [0] * p.nvars
        e[i] = 1
        funcs.append(e)
        funcs.append([-x for x in e])
    funcs.extend(list(f) for f in projections)
    items = list(p.items())
    for f in funcs:
        best = max(sum(a * b for a, b in zip(f, e)) for e, _ in items)
        face = [(e, c) for e, c in items if sum(a * b for a, b in zip(f, e)) == best]
        for pick in (max, min):
            e, c = pick(face, key=lambda t: t[0])
            if c <= 0:
                return False
    return True
