"""Sparse multivariate integer polynomials with half-integer exponents.

Exponents are stored doubled (``d`` encodes ``x^(d/2)``) and packed into a
single Python int per monomial, 16 bits per variable with variable 1 in the
most significant field.  Integer comparison of packed keys is therefore the
lexicographic order on doubled exponent vectors, and monomial multiplication
is integer addition.

Polynomials in a distinguished variable ``t`` with :class:`MPoly`
coefficients are represented by :class:`TPoly`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "MPoly",
    "TPoly",
    "Var",
    "mp_add",
    "mp_mul",
    "mp_neg",
    "mp_pow",
    "mp_partial",
    "mp_specialize",
    "mp_reduce_mod",
    "mp_sqrt",
    "mp_divexact",
    "mp_evaluate",
    "tp_resultant",
    "tp_discriminant",
    "tp_sylvester_resultant",
    "det_cofactor",
]

_BITS = 16
_FIELD = (1 << _BITS) - 1
# exponents must stay below the guard bit of each field
_MAX_EXP = (1 << (_BITS - 1)) - 1


def _shift(nvars: int, i: int) -> int:
    # i is 0-based
    return _BITS * (nvars - 1 - i)


def _pack(nvars: int, exps: Sequence[int]) -> int:
    key = 0
    for d in exps:
        if d < 0 or d > _MAX_EXP:
            raise ValueError(f"doubled exponent {d} out of range")
        key = (key << _BITS) | d
    return key


def _unpack(nvars: int, key: int) -> tuple[int, ...]:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & _FIELD
        key >>= _BITS
    return tuple(out)


def _guard_mask(nvars: int) -> int:
    g = 0
    for _ in range(nvars):
        g = (g << _BITS) | (1 << (_BITS - 1))
    return g


class MPoly:
    """Immutable sparse polynomial in ``x1..xm`` over the integers.

    Build polynomials with :meth:`const`, :meth:`var`, :meth:`monomial` or
    :meth:`from_terms`; combine them with the usual operators.
    """

    __slots__ = ("nvars", "_terms", "_bound", "_hash")

    def __init__(self, nvars: int, terms: Mapping[int, int] | None = None, _bound: int | None = None):
        # terms are packed keys; callers outside this module use from_terms
        self.nvars = nvars
        self._terms: dict[int, int] = {k: c for k, c in (terms or {}).items() if c}
        self._bound = _bound
        self._hash = None

    @classmethod
    def _new(cls, nvars: int, terms: dict[int, int], bound: int | None = None) -> "MPoly":
        # trusted constructor: terms already free of zero coefficients
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._bound = bound
        obj._hash = None
        return obj

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls._new(nvars, {}, 0)

    @classmethod
    def const(cls, c: int, nvars: int) -> "MPoly":
        return cls(nvars, {0: int(c)}, 0)

    @classmethod
    def var(cls, i: int, nvars: int) -> "MPoly":
        """The variable ``x_i`` (1-based)."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} outside 1..{nvars}")
        return cls(nvars, {2 << _shift(nvars, i - 1): 1}, 2)

    @classmethod
    def monomial(cls, doubled: Sequence[int], coeff: int = 1) -> "MPoly":
        nvars = len(doubled)
        return cls(nvars, {_pack(nvars, doubled): int(coeff)})

    @classmethod
    def from_terms(cls, nvars: int, terms: Iterable[tuple[Sequence[int], int]]) -> "MPoly":
        acc: dict[int, int] = {}
        bound = 0
        for exps, c in terms:
            if len(exps) != nvars:
                raise ValueError("exponent vector length does not match nvars")
            k = _pack(nvars, exps)
            acc[k] = acc.get(k, 0) + int(c)
            if exps:
                bound = max(bound, max(exps))
        return cls(nvars, acc, bound)

    # -- inspection ---------------------------------------------------
    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """(doubled exponents, coefficient) pairs in ascending lex order."""
        return [(_unpack(self.nvars, k), self._terms[k]) for k in sorted(self._terms)]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._terms.get(0, 0)

    def has_integer_exponents(self) -> bool:
        odd = 0
        for _ in range(self.nvars):
            odd = (odd << _BITS) | 1
        return all(not (k & odd) for k in self._terms)

    def coeff(self, doubled: Sequence[int]) -> int:
        return self._terms.get(_pack(self.nvars, doubled), 0)

    def leading_term(self) -> tuple[tuple[int, ...], int]:
        k = max(self._terms)
        return _unpack(self.nvars, k), self._terms[k]

    def max_exponent(self) -> int:
        """Largest doubled exponent of any variable in any term."""
        if self._bound is None:
            b = 0
            for k in self._terms:
                while k:
                    f = k & _FIELD
                    if f > b:
                        b = f
                    k >>= _BITS
            self._bound = b
        return self._bound

    def degree_in(self, i: int) -> int:
        """Doubled degree in ``x_i`` (1-based); -1 for the zero polynomial."""
        s = _shift(self.nvars, i - 1)
        return max(((k >> s) & _FIELD for k in self._terms), default=-1)

    def total_degree(self) -> int:
        """Doubled total degree; -1 for zero."""
        return max((sum(_unpack(self.nvars, k)) for k in self._terms), default=-1)

    def variables(self) -> set[int]:
        out = set()
        for k in self._terms:
            for i, d in enumerate(_unpack(self.nvars, k)):
                if d:
                    out.add(i + 1)
        return out

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "MPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} != {other.nvars}")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, int):
            return MPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        res = dict(a)
        for k, c in b.items():
            v = res.get(k, 0) + c
            if v:
                res[k] = v
            else:
                del res[k]
        ba, bb = self._bound, other._bound
        return MPoly._new(self.nvars, res, None if ba is None or bb is None else max(ba, bb))

    __radd__ = __add__

    def __neg__(self):
        return MPoly._new(self.nvars, {k: -c for k, c in self._terms.items()}, self._bound)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return MPoly(self.nvars)
            return MPoly._new(self.nvars, {k: c * other for k, c in self._terms.items()}, self._bound)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return MPoly(self.nvars)
        bound = self.max_exponent() + other.max_exponent()
        if bound > _MAX_EXP:
            raise OverflowError("exponent exceeds packed field width")
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        res: dict[int, int] = {}
        get = res.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                res[k] = get(k, 0) + ca * cb
        return MPoly._new(self.nvars, {k: c for k, c in res.items() if c}, bound)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MPoly({self.render()!r}, nvars={self.nvars})"

    def __str__(self) -> str:
        return self.render()

    # -- rendering ----------------------------------------------------
    def render(self) -> str:
        """Canonical text: ascending lex order, ``4*x1^(5/2)*x2^(1/2)`` style."""
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.terms():
            mono = _render_monomial(exps)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def to_json(self) -> list[dict]:
        return [{"exponents_doubled": list(e), "coeff": str(c)} for e, c in self.terms()]

    @classmethod
    def from_json(cls, nvars: int, data: list[dict]) -> "MPoly":
        return cls.from_terms(nvars, ((t["exponents_doubled"], int(t["coeff"])) for t in data))


def _render_monomial(exps: Sequence[int]) -> str:
    factors = []
    for i, d in enumerate(exps):
        if not d:
            continue
        name = f"x{i + 1}"
        if d == 2:
            factors.append(name)
        elif d % 2:
            factors.append(f"{name}^({d}/2)")
        else:
            factors.append(f"{name}^{d // 2}")
    return "*".join(factors)


# -- module-level operations ------------------------------------------

def mp_add(p: MPoly, q: MPoly) -> MPoly:
    p._check(q)
    return p + q


def mp_mul(p: MPoly, q: MPoly) -> MPoly:
    p._check(q)
    return p * q


def mp_neg(p: MPoly) -> MPoly:
    return -p


def mp_pow(p: MPoly, k: int) -> MPoly:
    return p ** k


def mp_partial(p: MPoly, i: int) -> MPoly:
    """Formal derivative in ``x_i`` (1-based); integer exponents in ``x_i`` only."""
    if not 1 <= i <= p.nvars:
        raise ValueError(f"variable index {i} outside 1..{p.nvars}")
    s = _shift(p.nvars, i - 1)
    res: dict[int, int] = {}
    for k, c in p._terms.items():
        d = (k >> s) & _FIELD
        if d & 1:
            raise ValueError(f"half-integer exponent in x{i}; derivative unsupported")
        if d:
            nk = k - (2 << s)
            res[nk] = res.get(nk, 0) + c * (d // 2)
    return MPoly(p.nvars, res)


@dataclass(frozen=True)
class Var:
    """Substitution target: the variable ``x_index`` (1-based)."""

    index: int


Assignment = Mapping[int, Union[int, Var]]


def _resolve(assignment: Assignment, nvars: int) -> dict[int, Union[int, Var]]:
    out: dict[int, Union[int, Var]] = {}
    for i in assignment:
        if not 1 <= i <= nvars:
            raise ValueError(f"variable index {i} outside 1..{nvars}")
        seen = {i}
        target = assignment[i]
        while isinstance(target, Var):
            j = target.index
            if not 1 <= j <= nvars:
                raise ValueError(f"variable index {j} outside 1..{nvars}")
            if j not in assignment:
                break
            if j in seen:
                raise ValueError(f"cyclic substitution through x{j}")
            seen.add(j)
            target = assignment[j]
        if isinstance(target, Var) and target.index == i:
            continue
        out[i] = target
    return out


def _half_power(value: int, d: int) -> int:
    # value^(d/2)
    if d % 2 == 0:
        return value ** (d // 2)
    if value < 0:
        raise ValueError("negative value substituted into a half-integer exponent")
    r = math.isqrt(value)
    if r * r != value:
        raise ValueError(f"{value} is not a perfect square; cannot substitute into a half-integer exponent")
    return r ** d


def mp_specialize(p: MPoly, assignment: Assignment) -> MPoly:
    """Substitute variables: ``{i: 0}``, ``{i: Var(j)}`` or ``{i: value}``.

    Chains of variable substitutions are followed to their representative;
    cycles raise ``ValueError``.  Integers substituted into half-integer
    exponents must be perfect squares.
    """
    subs = _resolve(assignment, p.nvars)
    if not subs:
        return p
    n = p.nvars
    res: dict[int, int] = {}
    cache: dict[tuple[int, int], int] = {}
    for k, c in p._terms.items():
        exps = list(_unpack(n, k))
        coeff = c
        for i, target in subs.items():
            d = exps[i - 1]
            if not d:
                continue
            exps[i - 1] = 0
            if isinstance(target, Var):
                exps[target.index - 1] += d
            else:
                key = (target, d)
                v = cache.get(key)
                if v is None:
                    v = cache[key] = _half_power(target, d)
                coeff *= v
                if not coeff:
                    break
        if coeff:
            nk = _pack(n, exps)
            res[nk] = res.get(nk, 0) + coeff
    return MPoly(n, res)


def mp_evaluate(p: MPoly, values: Sequence[int]) -> int:
    """Evaluate at an integer point (length ``nvars``)."""
    if len(values) != p.nvars:
        raise ValueError("point length does not match nvars")
    total = 0
    cache: dict[tuple[int, int], int] = {}
    for k, c in p._terms.items():
        term = c
        for i, d in enumerate(_unpack(p.nvars, k)):
            if d:
                key = (i, d)
                v = cache.get(key)
                if v is None:
                    v = cache[key] = _half_power(values[i], d)
                term *= v
        total += term
    return total


def mp_reduce_mod(p: MPoly, prime: int) -> MPoly:
    """Reduce every coefficient into ``[0, prime)``."""
    if prime < 2:
        raise ValueError("modulus must be >= 2")
    return MPoly(p.nvars, {k: c % prime for k, c in p._terms.items()}, p._bound)


def mp_divexact(p: MPoly, d: MPoly) -> MPoly:
    """Exact quotient ``p / d``; raises ``ArithmeticError`` if ``d`` does not divide ``p``."""
    p._check(d)
    if not d._terms:
        raise ZeroDivisionError("division by the zero polynomial")
    n = p.nvars
    if d.is_constant():
        c = d.constant_value()
        out = {}
        for k, v in p._terms.items():
            q, r = divmod(v, c)
            if r:
                raise ArithmeticError("inexact division by constant")
            out[k] = q
        return MPoly(n, out, p._bound)
    guard = _guard_mask(n)
    lk = max(d._terms)
    lc = d._terms[lk]
    rem = dict(p._terms)
    quot: dict[int, int] = {}
    while rem:
        k = max(rem)
        diff = (k | guard) - lk
        if (diff & guard) != guard:
            raise ArithmeticError("inexact polynomial division")
        qk = diff & ~guard
        qc, r = divmod(rem[k], lc)
        if r:
            raise ArithmeticError("inexact polynomial division")
        quot[qk] = qc
        for dk, dc in d._terms.items():
            nk = qk + dk
            v = rem.get(nk, 0) - qc * dc
            if v:
                rem[nk] = v
            else:
                rem.pop(nk, None)
    return MPoly(n, quot)


def mp_sqrt(p: MPoly) -> MPoly | None:
    """Square root in Z[x] with positive leading coefficient, or ``None``.

    Peels the lex-leading term and subtracts cross terms until the remainder
    vanishes.  Candidate terms are confined to half the per-variable degree
    of ``p``, which bounds the loop.
    """
    if not p.has_integer_exponents():
        raise ValueError("mp_sqrt requires integer exponents")
    n = p.nvars
    if not p._terms:
        return MPoly(n)
    guard = _guard_mask(n)
    limits = [p.degree_in(i + 1) // 2 for i in range(n)]
    lk = max(p._terms)
    lc = p._terms[lk]
    if lc < 0:
        return None
    exps = _unpack(n, lk)
    if any(e % 4 for e in exps):
        return None
    r0 = math.isqrt(lc)
    if r0 * r0 != lc:
        return None
    s_lead_key = _pack(n, [e // 2 for e in exps])
    s = {s_lead_key: r0}
    rem = dict(p._terms)
    _sub_product(rem, {s_lead_key: r0}, {s_lead_key: r0})
    two_lead = 2 * r0
    while rem:
        k = max(rem)
        diff = (k | guard) - s_lead_key
        if (diff & guard) != guard:
            return None
        tk = diff & ~guard
        if tk >= s_lead_key:
            return None
        texps = _unpack(n, tk)
        if any(e % 2 or e > lim for e, lim in zip(texps, limits)):
            return None
        tc, r = divmod(rem[k], two_lead)
        if r:
            return None
        # rem -= 2*s*t + t^2
        _sub_product(rem, {key: 2 * c for key, c in s.items()}, {tk: tc})
        _sub_product(rem, {tk: tc}, {tk: tc})
        s[tk] = s.get(tk, 0) + tc
    return MPoly(n, s)


def _sub_product(acc: dict[int, int], a: dict[int, int], b: dict[int, int]) -> None:
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = acc.get(k, 0) - ca * cb
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)


# -- polynomials in t ---------------------------------------------------

class TPoly:
    """Polynomial in ``t`` with :class:`MPoly` coefficients, ``coeffs[k]`` at ``t^k``."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, coeffs: Sequence[MPoly], nvars: int | None = None):
        cs = list(coeffs)
        if nvars is None:
            if not cs:
                raise ValueError("nvars required for an empty coefficient list")
            nvars = cs[0].nvars
        for c in cs:
            if c.nvars != nvars:
                raise ValueError("coefficient nvars mismatch")
        while cs and cs[-1].is_zero():
            cs.pop()
        self.nvars = nvars
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls, nvars: int) -> "TPoly":
        return cls([MPoly.zero(nvars), MPoly.const(1, nvars)])

    @classmethod
    def const(cls, c: MPoly | int, nvars: int) -> "TPoly":
        if isinstance(c, int):
            c = MPoly.const(c, nvars)
        return cls([c], nvars)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> MPoly:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, k: int) -> MPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return MPoly.zero(self.nvars)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.nvars, self.coeffs))

    def __add__(self, other: "TPoly") -> "TPoly":
        if isinstance(other, (int, MPoly)):
            other = TPoly.const(other, self.nvars)
        n = max(len(self.coeffs), len(other.coeffs))
        return TPoly([self.coeff(k) + other.coeff(k) for k in range(n)], self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "TPoly":
        return TPoly([-c for c in self.coeffs], self.nvars)

    def __sub__(self, other: "TPoly") -> "TPoly":
        if isinstance(other, (int, MPoly)):
            other = TPoly.const(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "TPoly":
        if isinstance(other, (int, MPoly)):
            return TPoly([c * other for c in self.coeffs], self.nvars)
        if not self.coeffs or not other.coeffs:
            return TPoly([], self.nvars)
        out = [MPoly.zero(self.nvars) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TPoly(out, self.nvars)

    __rmul__ = __mul__

    def derivative(self) -> "TPoly":
        return TPoly([c * k for k, c in enumerate(self.coeffs)][1:], self.nvars)

    def negate_t(self) -> "TPoly":
        """``P(-t)``."""
        return TPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)], self.nvars)

    def map_coeffs(self, f) -> "TPoly":
        return TPoly([f(c) for c in self.coeffs], self.nvars)

    def specialize(self, assignment: Assignment) -> "TPoly":
        return self.map_coeffs(lambda c: mp_specialize(c, assignment))

    def reduce_mod(self, prime: int) -> "TPoly":
        return self.map_coeffs(lambda c: mp_reduce_mod(c, prime))

    def evaluate(self, values: Sequence[int]) -> list[int]:
        """Integer coefficient list after substituting a point for ``x``."""
        return [mp_evaluate(c, values) for c in self.coeffs]

    def has_integer_exponents(self) -> bool:
        return all(c.has_integer_exponents() for c in self.coeffs)

    def render(self) -> str:
        """``t^2 - (x2 - x1)*t - 4*x1*x2`` style."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            tpow = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if k == 0 and len(c) > 1:
                # a trailing constant needs no parentheses; keep its own signs
                text = c.render()
                if not parts:
                    parts.append(text)
                elif text.startswith("-"):
                    parts.append(f" - {text[1:]}")
                else:
                    parts.append(f" + {text}")
                continue
            _, first = c.terms()[0]
            negative = first < 0
            body_poly = -c if negative else c
            if len(body_poly) == 1:
                text = body_poly.render()
                if tpow:
                    body = tpow if text == "1" else f"{text}*{tpow}"
                else:
                    body = text
            else:
                body = f"({body_poly.render()})*{tpow}" if tpow else body_poly.render()
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f" - {body}" if negative else f" + {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"TPoly({self.render()!r})"

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> list[list[dict]]:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, nvars: int, data: list[list[dict]]) -> "TPoly":
        return cls([MPoly.from_json(nvars, c) for c in data], nvars)


def _prem(a: TPoly, b: TPoly) -> TPoly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    n = a.nvars
    lb = b.lc()
    db = b.degree
    r = list(a.coeffs)
    e = a.degree - db + 1
    while len(r) - 1 >= db and r:
        dr = len(r) - 1
        lr = r[-1]
        # r = lb*r - lr * t^(dr-db) * b
        new = [c * lb for c in r]
        for k, bc in enumerate(b.coeffs):
            if not bc.is_zero():
                new[k + dr - db] = new[k + dr - db] - lr * bc
        while new and new[-1].is_zero():
            new.pop()
        r = new
        e -= 1
    if e > 0:
        f = lb ** e
        r = [c * f for c in r]
    return TPoly(r, n)


def tp_resultant(P: TPoly, Q: TPoly) -> MPoly:
    """Resultant in ``t`` by the subresultant PRS; stays in Z[x].

    Convention: ``Res(P, Q) = lc(P)^deg Q * prod Q(roots of P)``.
    """
    if P.is_zero() or Q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    if P.nvars != Q.nvars:
        raise ValueError("nvars mismatch")
    n = P.nvars
    A, B = P, Q
    s = 1
    if A.degree < B.degree:
        A, B = B, A
        if A.degree % 2 and B.degree % 2:
            s = -1
    if B.degree == 0:
        return B.lc() ** A.degree * s
    g = MPoly.const(1, n)
    h = MPoly.const(1, n)
    while B.degree > 0:
        delta = A.degree - B.degree
        if A.degree % 2 and B.degree % 2:
            s = -s
        R = _prem(A, B)
        A = B
        if R.is_zero():
            return MPoly.zero(n)
        div = g * h ** delta
        B = R.map_coeffs(lambda c: mp_divexact(c, div))
        g = A.lc()
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = mp_divexact(g ** delta, h ** (delta - 1))
    # deg B == 0
    da = A.degree
    if da == 1:
        res = B.lc()
    else:
        res = mp_divexact(B.lc() ** da, h ** (da - 1))
    return res * s


def tp_discriminant(P: TPoly) -> MPoly:
    """``(-1)^(n(n-1)/2) * Res(P, P') / lc(P)``.

    For ``t^2 - b t - c`` this is ``b^2 + 4c``.
    """
    if P.is_zero():
        raise ValueError("discriminant of the zero polynomial")
    n = P.degree
    if n == 0:
        raise ValueError("discriminant of a constant")
    if n == 1:
        return MPoly.const(1, P.nvars)
    r = mp_divexact(tp_resultant(P, P.derivative()), P.lc())
    return -r if (n * (n - 1) // 2) % 2 else r


def sylvester_matrix(P: TPoly, Q: TPoly) -> list[list[MPoly]]:
    m, n = P.degree, Q.degree
    size = m + n
    zero = MPoly.zero(P.nvars)
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(P.coeffs)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(Q.coeffs)):
            row[i + k] = c
        rows.append(row)
    return rows


def tp_sylvester_resultant(P: TPoly, Q: TPoly) -> MPoly:
    """Resultant as the Sylvester determinant (cross-check route)."""
    if P.is_zero() or Q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    if P.degree == 0 and Q.degree == 0:
        return MPoly.const(1, P.nvars)
    return det_cofactor(sylvester_matrix(P, Q), MPoly.zero(P.nvars))


def det_cofactor(rows: Sequence[Sequence], zero):
    """Laplace expansion along rows, memoised on the set of used columns.

    Division-free and exact for any commutative ring elements supporting
    ``+``, ``-``, ``*``; ``O(n 2^n)`` minors, so keep ``n`` small.
    """
    n = len(rows)
    if n == 0:
        return zero + 1
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    memo: dict[int, object] = {}

    def minor(row: int, used: int):
        if row == n:
            return zero + 1
        hit = memo.get(used)
        if hit is not None:
            return hit
        acc = zero
        sign_pos = 0
        for col in range(n):
            if used & (1 << col):
                continue
            entry = rows[row][col]
            if not _is_zero(entry):
                sub = minor(row + 1, used | (1 << col))
                if not _is_zero(sub):
                    term = entry * sub
                    acc = acc - term if sign_pos % 2 else acc + term
            sign_pos += 1
        memo[used] = acc
        return acc

    return minor(0, 0)


def _is_zero(x) -> bool:
    if isinstance(x, (MPoly, TPoly)):
        return x.is_zero()
    return x == 0
