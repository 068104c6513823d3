"""Exact scalars in Q(i) and the super-commutative parameter algebra.

Parameters are even (``t1``, ``t2``, ...) or odd (``theta1``, ...).  A
monomial is stored as an exponent tuple aligned with its
:class:`ParameterList`; odd exponents are 0 or 1 and the odd factors are
understood to be multiplied in list order, so ``theta2*theta1`` is stored
as ``-theta1*theta2``.

Ideals are handled by truncated-degree linear algebra: a
:class:`RelationIdeal` decides membership by row reduction over the
monomial basis of the truncated ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping

from ._syntax import Evaluator
from .errors import AlgebraError

EVEN, ODD = 0, 1


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot make a rational from {x!r}")


class Scalar:
    """Gaussian rational ``re + im*i``; immutable, exact."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, key, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(x)

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        value = Evaluator(
            text,
            constant=lambda re, im: Scalar(re, im),
            variable=lambda name: (_ for _ in ()).throw(KeyError(name)),
        ).parse()
        return value

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar(other)
            else:
                return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return Scalar(self.re * other, self.im * other)
            return NotImplemented
        if not self.im and not other.im:
            return Scalar(self.re * other.re)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def inv(self) -> "Scalar":
        n = self.norm()
        if not n:
            raise AlgebraError("division by zero", code="E_DIVZERO")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = Scalar.coerce(other)
        if not other.im:
            if not other.re:
                raise AlgebraError("division by zero", code="E_DIVZERO")
            return Scalar(self.re / other.re, self.im / other.re)
        return self * other.inv()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def sqrt(self) -> "Scalar | None":
        """A square root in Q(i), or ``None`` when none exists."""
        p, q = self.re, self.im
        if not p and not q:
            return ZERO
        modulus = _rational_sqrt(p * p + q * q)
        if modulus is None:
            return None
        a = _rational_sqrt((p + modulus) / 2)
        if a is None:
            return None
        if a:
            return Scalar(a, q / (2 * a))
        b = _rational_sqrt((modulus - p) / 2)
        if b is None:
            return None
        return Scalar(0, b)

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def sort_key(self) -> tuple:
        return (self.re, self.im)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{self}')"


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = _isqrt_exact(n), _isqrt_exact(d)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n: int) -> int | None:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(s: Scalar) -> str:
    """Whitespace-free canonical text: ``1/2``, ``i``, ``-3/2i``, ``1+2i``."""
    re, im = s.re, s.im
    if not im:
        return _fmt_frac(re)
    if abs(im) == 1:
        imag = "i"
    else:
        imag = _fmt_frac(abs(im)) + "i"
    if not re:
        return ("-" if im < 0 else "") + imag
    return _fmt_frac(re) + ("-" if im < 0 else "+") + imag


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def scalar_arith(a: Scalar, b: Scalar | None, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise AlgebraError(f"unknown scalar operation {op!r}")


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class Parameter:
    name: str
    parity: int
    index: int

    @classmethod
    def even(cls, index: int, prefix: str = "t") -> "Parameter":
        return cls(f"{prefix}{index}", EVEN, index)

    @classmethod
    def odd(cls, index: int, prefix: str = "theta") -> "Parameter":
        return cls(f"{prefix}{index}", ODD, index)

    @classmethod
    def from_name(cls, name: str, parity: int | None = None) -> "Parameter":
        """Infer parity from ``t<k>`` / ``theta<k>`` naming when not given."""
        stem = name.rstrip("0123456789")
        digits = name[len(stem):]
        index = int(digits) if digits else 1
        if parity is None:
            parity = ODD if stem == "theta" else EVEN
        return cls(name, parity, index)


@dataclass(frozen=True)
class ParameterList:
    params: tuple[Parameter, ...] = ()

    def __post_init__(self):
        names = [p.name for p in self.params]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate parameter names in {names}")

    @classmethod
    def standard(cls, n_even: int, n_odd: int) -> "ParameterList":
        return cls(
            tuple(Parameter.even(k) for k in range(1, n_even + 1))
            + tuple(Parameter.odd(k) for k in range(1, n_odd + 1))
        )

    @classmethod
    def of(cls, *names: str) -> "ParameterList":
        return cls(tuple(Parameter.from_name(n) for n in names))

    def __len__(self):
        return len(self.params)

    def __iter__(self):
        return iter(self.params)

    @cached_property
    def names(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params)

    @cached_property
    def position(self) -> dict[str, int]:
        return {p.name: k for k, p in enumerate(self.params)}

    @cached_property
    def parities(self) -> tuple[int, ...]:
        return tuple(p.parity for p in self.params)

    @cached_property
    def odd_positions(self) -> tuple[int, ...]:
        return tuple(k for k, p in enumerate(self.params) if p.parity == ODD)

    @cached_property
    def unit(self) -> tuple[int, ...]:
        return (0,) * len(self.params)

    def monomial_parity(self, mono: tuple[int, ...]) -> int:
        return sum(mono[k] for k in self.odd_positions) & 1

    def monomial_str(self, mono: tuple[int, ...]) -> str:
        parts = []
        for k, e in enumerate(mono):
            if e == 1:
                parts.append(self.params[k].name)
            elif e > 1:
                parts.append(f"{self.params[k].name}^{e}")
        return "*".join(parts) if parts else "1"

    def monomials_of_degree(self, k: int) -> tuple[tuple[int, ...], ...]:
        return _monomials_of_degree(self, k)

    def union(self, other: "ParameterList") -> "ParameterList":
        extra = tuple(p for p in other.params if p.name not in self.position)
        for p in other.params:
            if p.name in self.position and self.params[self.position[p.name]] != p:
                raise AlgebraError(f"parameter {p.name} declared with two parities")
        return ParameterList(self.params + extra)


_MONO_CACHE: dict[tuple, tuple] = {}


def _monomials_of_degree(ring: ParameterList, k: int):
    key = (ring.parities, k)
    hit = _MONO_CACHE.get(key)
    if hit is not None:
        return hit
    n = len(ring)
    out = []
    for combo in combinations_with_replacement(range(n), k):
        exps = [0] * n
        ok = True
        for j in combo:
            exps[j] += 1
            if ring.parities[j] == ODD and exps[j] > 1:
                ok = False
                break
        if ok:
            out.append(tuple(exps))
    result = tuple(sorted(set(out), reverse=True))
    _MONO_CACHE[key] = result
    return result


def monomial_mul(ring: ParameterList, a: tuple[int, ...], b: tuple[int, ...]):
    """Product of two monomials: ``(sign, monomial)`` or ``None`` if zero."""
    odd = ring.odd_positions
    sign = 1
    if odd:
        # moving each odd factor of b left past the larger odd factors of a
        count = 0
        seen_after = 0
        for k in reversed(odd):
            if b[k]:
                if a[k]:
                    return None
                count += seen_after
            if a[k]:
                seen_after += 1
        if count & 1:
            sign = -1
    return sign, tuple(x + y for x, y in zip(a, b))


def monomial_degree(mono: tuple[int, ...]) -> int:
    return sum(mono)


# ---------------------------------------------------------------------------
# polynomials


class SuperPolynomial:
    """Element of C[t] (x) Lambda[theta] over a fixed parameter list."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: ParameterList, terms: Mapping[tuple, Scalar] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            for mono, c in terms.items():
                if len(mono) != len(ring):
                    raise AlgebraError("monomial length does not match the parameter list")
                c = Scalar.coerce(c)
                if c:
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms: dict) -> "SuperPolynomial":
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, ring: ParameterList = ParameterList()) -> "SuperPolynomial":
        c = Scalar.coerce(c)
        return cls._raw(ring, {ring.unit: c} if c else {})

    @classmethod
    def zero(cls, ring: ParameterList = ParameterList()) -> "SuperPolynomial":
        return cls._raw(ring, {})

    @classmethod
    def variable(cls, name: str, ring: ParameterList) -> "SuperPolynomial":
        k = ring.position[name]
        mono = tuple(1 if j == k else 0 for j in range(len(ring)))
        return cls._raw(ring, {mono: ONE})

    @classmethod
    def parse(cls, text: str, ring: ParameterList) -> "SuperPolynomial":
        return Evaluator(
            text,
            constant=lambda re, im: cls.constant(Scalar(re, im), ring),
            variable=lambda name: cls.variable(name, ring),
        ).parse()

    @property
    def terms(self) -> Mapping[tuple, Scalar]:
        return self._terms

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other: "SuperPolynomial"):
        if other.ring != self.ring:
            raise AlgebraError(
                f"mismatched parameter lists {self.ring.names} and {other.ring.names}",
                code="E_RING_MISMATCH",
            )

    def _lift(self, other) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            self._check(other)
            return other
        if isinstance(other, (Scalar, int, Fraction)):
            return SuperPolynomial.constant(other, self.ring)
        raise TypeError

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return SuperPolynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "SuperPolynomial":
        c = Scalar.coerce(c)
        if not c:
            return SuperPolynomial._raw(self.ring, {})
        return SuperPolynomial._raw(self.ring, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        self._check(other)
        return poly_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (Scalar, int, Fraction)):
            c = Scalar.coerce(other)
            if not c:
                return not self._terms
            return self._terms == {self.ring.unit: c}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # structure ------------------------------------------------------------
    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def low_degree(self) -> int:
        return min((sum(m) for m in self._terms), default=-1)

    def parity(self) -> int | None:
        """Common parity of all terms; ``None`` when mixed or zero."""
        ps = {self.ring.monomial_parity(m) for m in self._terms}
        return ps.pop() if len(ps) == 1 else None

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def constant_term(self) -> Scalar:
        return self._terms.get(self.ring.unit, ZERO)

    def truncate(self, degree: int) -> "SuperPolynomial":
        if self.degree() <= degree:
            return self
        return SuperPolynomial._raw(
            self.ring, {m: c for m, c in self._terms.items() if sum(m) <= degree}
        )

    def component(self, degree: int) -> "SuperPolynomial":
        return SuperPolynomial._raw(
            self.ring, {m: c for m, c in self._terms.items() if sum(m) == degree}
        )

    def to_ring(self, ring: ParameterList) -> "SuperPolynomial":
        """Re-express over ``ring``, which must contain every used parameter."""
        if ring == self.ring:
            return self
        pos = []
        for k, p in enumerate(self.ring.params):
            if p.name not in ring.position:
                if any(m[k] for m in self._terms):
                    raise AlgebraError(f"parameter {p.name} missing from target list")
                pos.append(None)
                continue
            if ring.params[ring.position[p.name]].parity != p.parity:
                raise AlgebraError(f"parameter {p.name} changes parity")
            pos.append(ring.position[p.name])
        out = SuperPolynomial.zero(ring)
        for m, c in self._terms.items():
            term = SuperPolynomial.constant(c, ring)
            for k, e in enumerate(m):
                for _ in range(e):
                    term = term * SuperPolynomial.variable(ring.params[pos[k]].name, ring)
            out = out + term
        return out

    def substitute(self, values: Mapping[str, "SuperPolynomial | Scalar | int"],
                   ring: ParameterList | None = None) -> "SuperPolynomial":
        """Replace named parameters; result lives over ``ring`` (default: same)."""
        ring = self.ring if ring is None else ring
        images = []
        for p in self.ring.params:
            if p.name in values:
                v = values[p.name]
                if not isinstance(v, SuperPolynomial):
                    v = SuperPolynomial.constant(v, ring)
                images.append(v)
            else:
                images.append(SuperPolynomial.variable(p.name, ring))
        out = SuperPolynomial.zero(ring)
        for m, c in self._terms.items():
            term = SuperPolynomial.constant(c, ring)
            for k, e in enumerate(m):
                for _ in range(e):
                    term = term * images[k]
            out = out + term
        return out

    def sorted_items(self) -> list[tuple[tuple, Scalar]]:
        return sorted(self._terms.items(), key=lambda mc: (sum(mc[0]), tuple(-e for e in mc[0])))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"SuperPolynomial('{self}')"


def poly_mul(p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    """Koszul-signed product of two polynomials over the same parameters."""
    if p.ring != q.ring:
        raise AlgebraError(
            f"mismatched parameter lists {p.ring.names} and {q.ring.names}",
            code="E_RING_MISMATCH",
        )
    ring = p.ring
    out: dict = {}
    for a, ca in p._terms.items():
        for b, cb in q._terms.items():
            prod = monomial_mul(ring, a, b)
            if prod is None:
                continue
            sign, m = prod
            c = ca * cb
            if sign < 0:
                c = -c
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                del out[m]
    return SuperPolynomial._raw(ring, out)


def format_polynomial(p: SuperPolynomial) -> str:
    if not p:
        return "0"
    pieces = []
    for mono, c in p.sorted_items():
        ms = p.ring.monomial_str(mono)
        if ms == "1":
            body, neg = format_scalar(c), False
            if body.startswith("-") and "+" not in body[1:] and "-" not in body[1:]:
                body, neg = body[1:], True
        else:
            if c == 1:
                body, neg = ms, False
            elif c == -1:
                body, neg = ms, True
            elif c.is_real or not c.re:
                cs = format_scalar(c)
                neg = cs.startswith("-")
                body = (cs[1:] if neg else cs) + "*" + ms
            else:
                body, neg = f"({format_scalar(c)})*{ms}", False
        pieces.append((neg, body))
    first_neg, first = pieces[0]
    out = ("-" if first_neg else "") + first
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


# ---------------------------------------------------------------------------
# ideals


def _nullspace_int(rows: list[list[int]], n: int) -> list[list[int]]:
    """Integer basis of {x : r.x = 0 for every row r} (rational elimination)."""
    mat = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        pv = mat[r][c]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, c in enumerate(pivots):
            x[c] = -mat[i][f]
        den = 1
        for v in x:
            den = den * v.denominator // _gcd(den, v.denominator)
        basis.append([int(v * den) for v in x])
    return basis


def _gcd(a, b):
    import math

    return math.gcd(a, b)


class _Echelon:
    """Sparse row echelon form; pivot of a row is its largest column key."""

    def __init__(self):
        self.rows: dict = {}  # pivot column -> row dict (pivot entry 1)

    def reduce(self, vec: dict) -> dict:
        # every column of a pivot row is <= its pivot, so eliminating in
        # descending pivot order never reintroduces an eliminated column
        vec = dict(vec)
        rows = self.rows
        while True:
            cand = [k for k in vec if k in rows]
            if not cand:
                return vec
            k = max(cand)
            c = vec.pop(k)
            for col, v in rows[k].items():
                if col == k:
                    continue
                s = vec.get(col)
                s = -c * v if s is None else s - c * v
                if s:
                    vec[col] = s
                else:
                    vec.pop(col, None)

    def insert(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        k = max(vec)
        inv = vec[k].inv()
        self.rows[k] = {col: v * inv for col, v in vec.items()}
        return True


def _col_key(mono: tuple[int, ...]) -> tuple:
    # local ordering: low degrees are eliminated first, so normal forms keep
    # the highest-degree representative as in a power series ring
    return (-sum(mono), mono)


@dataclass(frozen=True, eq=False)
class RelationIdeal:
    """Ideal generated by ``generators`` in the ring truncated above
    ``truncation_degree``.
    """

    generators: tuple[SuperPolynomial, ...]
    ring: ParameterList
    truncation_degree: int = 6
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __init__(self, generators: Iterable[SuperPolynomial], ring: ParameterList | None = None,
                 truncation_degree: int = 6):
        gens = []
        for g in generators:
            if ring is None:
                ring = g.ring
            if g.ring != ring:
                raise AlgebraError("ideal generators over different parameter lists",
                                   code="E_RING_MISMATCH")
            if g:
                gens.append(g.truncate(truncation_degree))
        if ring is None:
            ring = ParameterList()
        if truncation_degree < 1:
            raise AlgebraError("truncation degree must be positive")
        object.__setattr__(self, "generators", tuple(g for g in gens if g))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "truncation_degree", truncation_degree)
        object.__setattr__(self, "_cache", {})

    def with_generators(self, extra: Iterable[SuperPolynomial]) -> "RelationIdeal":
        return RelationIdeal(self.generators + tuple(extra), self.ring, self.truncation_degree)

    def with_truncation(self, degree: int) -> "RelationIdeal":
        return RelationIdeal(self.generators, self.ring, degree)

    # gradings ---------------------------------------------------------------
    @cached_property
    def _grading(self):
        """Integer gradings for which every generator is homogeneous.

        The ideal splits into graded pieces, so membership is decided one
        piece at a time on much smaller matrices.
        """
        n = len(self.ring)
        diffs = []
        for g in self.generators:
            monos = list(g.terms)
            for m in monos[1:]:
                diffs.append([a - b for a, b in zip(m, monos[0])])
        basis = _nullspace_int(diffs, n) if diffs else [
            [1 if j == i else 0 for j in range(n)] for i in range(n)
        ]
        parity_ok = all(g.parity() is not None for g in self.generators)
        homogeneous = all(g.is_homogeneous() for g in self.generators)
        return basis, parity_ok, homogeneous

    def grade(self, mono: tuple[int, ...]) -> tuple:
        basis, parity_ok, _ = self._grading
        g = tuple(sum(a * b for a, b in zip(v, mono)) for v in basis)
        if parity_ok:
            g += (self.ring.monomial_parity(mono),)
        return g + (sum(mono),)

    def _quotient_grade(self, key: tuple, ggrade: tuple) -> tuple:
        """Grade a multiplier must have to carry ``ggrade`` into ``key``."""
        need = [a - b for a, b in zip(key, ggrade)]
        basis, parity_ok, _ = self._grading
        if parity_ok:
            need[len(basis)] %= 2
        return tuple(need)

    @cached_property
    def _index(self) -> dict:
        """Monomials of degree <= truncation grouped by (grade, degree)."""
        index: dict = {}
        for k in range(self.truncation_degree + 1):
            for m in self.ring.monomials_of_degree(k):
                index.setdefault(self.grade(m), []).append(m)
        return index

    def _echelon_for(self, key: tuple) -> _Echelon:
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        homogeneous = self._grading[2]
        T = self.truncation_degree
        ring = self.ring
        ech = _Echelon()
        for g in self.generators:
            g_terms = list(g.terms.items())
            ggrade = self.grade(g_terms[0][0])
            if homogeneous:
                need = self._quotient_grade(key, ggrade)
                if need[-1] < 0:
                    continue
                cands = [m for m in ring.monomials_of_degree(need[-1]) if self.grade(m) == need]
            else:
                need = self._quotient_grade(key, ggrade)[:-1]
                cands = []
                for k in range(0, T - g.low_degree() + 1):
                    cands.extend(self._index.get(need + (k,), ()))
            for m in cands:
                row = {}
                for mono, c in g_terms:
                    prod = monomial_mul(ring, m, mono)
                    if prod is None:
                        continue
                    sign, mm = prod
                    if sum(mm) > T:
                        continue
                    col = _col_key(mm)
                    v = c if sign > 0 else -c
                    s = row.get(col)
                    s = v if s is None else s + v
                    if s:
                        row[col] = s
                    else:
                        row.pop(col, None)
                if row:
                    ech.insert(row)
        self._cache[key] = ech
        return ech

    def _component_key(self, mono):
        g = self.grade(mono)
        _, _, homogeneous = self._grading
        if homogeneous:
            return g
        # degree is not a grading: all degrees of one graded piece together
        return g[:-1] + (-1,)

    def reduce(self, p: SuperPolynomial) -> SuperPolynomial:
        """Canonical representative of ``p`` modulo the truncated ideal."""
        if p.ring != self.ring:
            raise AlgebraError(
                f"mismatched parameter lists {p.ring.names} and {self.ring.names}",
                code="E_RING_MISMATCH",
            )
        for mono in p.terms:
            if sum(mono) > self.truncation_degree:
                raise AlgebraError(
                    f"term {self.ring.monomial_str(mono)} exceeds truncation degree "
                    f"{self.truncation_degree}",
                    code="E_DEGREE_OVERFLOW",
                )
        if not self.generators or not p:
            return p
        pieces: dict = {}
        for mono, c in p.terms.items():
            pieces.setdefault(self._component_key(mono), {})[_col_key(mono)] = c
        out = {}
        for key, vec in pieces.items():
            ech = self._echelon_for(key)
            for (_, mono), c in ech.reduce(vec).items():
                out[mono] = c
        return SuperPolynomial._raw(self.ring, out)

    def contains(self, p: SuperPolynomial) -> bool:
        return not self.reduce(p)

    def __contains__(self, p):
        return self.contains(p)

    def __str__(self):
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


def ideal_reduce(p: SuperPolynomial, ideal: RelationIdeal) -> SuperPolynomial:
    return ideal.reduce(p)


def ideal_equal(a: RelationIdeal, b: RelationIdeal, degree: int) -> bool:
    """Equality of the two ideals in the ring truncated above ``degree``."""
    if a.ring != b.ring:
        raise AlgebraError("ideals over different parameter lists", code="E_RING_MISMATCH")
    ta, tb = a.with_truncation(degree), b.with_truncation(degree)
    return all(ta.contains(g) for g in tb.generators) and all(
        tb.contains(g) for g in ta.generators
    )


def iter_monomials(ring: ParameterList, max_degree: int) -> Iterator[tuple[int, ...]]:
    for k in range(max_degree + 1):
        yield from ring.monomials_of_degree(k)
