"""Cochains ``Hom(S(W), W)`` with super-polynomial coefficients.

A cochain is a finite sum of terms ``c * phi[I]_j`` with the coefficient
written on the left.  Moving an odd coefficient past an odd map costs a
sign, which is the only place parameters enter the sign bookkeeping:

    [a*alpha, b*beta] = (-1)^(|alpha||b|) * a*b * [alpha, beta]
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from . import _linalg as la
from ._syntax import Evaluator
from .algebra import ONE, ParameterList, Scalar, SuperPolynomial
from .errors import CochainError, LinftyError
from .superspace import (
    GradedSpace,
    Word,
    _unshuffles,
    exponent_string,
    letters_to_word,
    parse_word,
    weight_basis,
    word_letters,
    word_parity,
)


@dataclass(frozen=True, order=True)
class ElementaryMap:
    """``phi[I]_j``: sends the word ``I`` to the basis vector ``j`` (0-based)."""

    source: Word
    target: int

    @property
    def weight(self) -> int:
        return sum(self.source)

    def parity(self, space: GradedSpace) -> int:
        return (word_parity(space, self.source) + space.letter_parity(self.target)) & 1

    def name(self) -> str:
        return f"phi[{exponent_string(self.source)}]_{self.target + 1}"

    def __str__(self):
        return self.name()


def map_sort_key(space: GradedSpace, phi: ElementaryMap) -> tuple:
    """Canonical order: weight, then source letters, then target."""
    return (phi.weight, word_letters(phi.source), phi.target)


def map_basis(space: GradedSpace, weight: int) -> list[ElementaryMap]:
    """The elementary maps spanning ``L_weight`` in canonical order."""
    return [ElementaryMap(w, j) for w in weight_basis(space, weight) for j in range(space.dim)]


class Cochain:
    __slots__ = ("space", "ring", "_terms")

    def __init__(self, space: GradedSpace, terms: Mapping[ElementaryMap, object] | None = None,
                 ring: ParameterList = ParameterList()):
        self.space = space
        self.ring = ring
        clean = {}
        for phi, c in (terms or {}).items():
            self._check_map(phi)
            if not isinstance(c, SuperPolynomial):
                c = SuperPolynomial.constant(c, ring)
            elif c.ring != ring:
                raise CochainError("coefficient over a different parameter list",
                                   code="E_RING_MISMATCH")
            if c:
                clean[phi] = c
        self._terms = clean

    def _check_map(self, phi: ElementaryMap):
        if len(phi.source) != self.space.dim or not 0 <= phi.target < self.space.dim:
            raise CochainError(f"map {phi!r} does not live on space {self.space}")

    @classmethod
    def _raw(cls, space, ring, terms):
        c = object.__new__(cls)
        c.space, c.ring, c._terms = space, ring, terms
        return c

    @classmethod
    def zero(cls, space: GradedSpace, ring: ParameterList = ParameterList()) -> "Cochain":
        return cls._raw(space, ring, {})

    @classmethod
    def elementary(cls, space: GradedSpace, phi: ElementaryMap,
                   ring: ParameterList = ParameterList()) -> "Cochain":
        return cls(space, {phi: 1}, ring)

    @classmethod
    def parse(cls, text: str, space: GradedSpace,
              ring: ParameterList = ParameterList()) -> "Cochain":
        """Parse ``phi[101]_1 + (-1)*phi[011]_2`` style text."""

        def elementary(src: str, tgt: int):
            try:
                word = parse_word(space, src)
            except LinftyError as exc:
                raise ValueError(exc.args[0]) from None
            if not 1 <= tgt <= space.dim:
                raise ValueError(f"target {tgt} out of range for space {space}")
            return cls._raw(space, ring, {ElementaryMap(word, tgt - 1): SuperPolynomial.constant(1, ring)})

        value = Evaluator(
            text,
            constant=lambda re, im: SuperPolynomial.constant(Scalar(re, im), ring),
            variable=lambda name: SuperPolynomial.variable(name, ring),
            elementary=elementary,
        ).parse()
        if isinstance(value, SuperPolynomial):
            if value:
                raise CochainError(f"expression {text!r} has no elementary maps", code="E_PARSE")
            return cls.zero(space, ring)
        return value

    # container protocol ---------------------------------------------------
    @property
    def terms(self) -> Mapping[ElementaryMap, SuperPolynomial]:
        return self._terms

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, phi: ElementaryMap) -> SuperPolynomial:
        return self._terms.get(phi, SuperPolynomial.zero(self.ring))

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: map_sort_key(self.space, kv[0]))

    # arithmetic -----------------------------------------------------------
    def _compatible(self, other: "Cochain"):
        if other.space != self.space:
            raise CochainError(f"cochains on different spaces {self.space} and {other.space}",
                               code="E_SPACE_MISMATCH")
        if other.ring != self.ring:
            raise CochainError("cochains over different parameter lists", code="E_RING_MISMATCH")

    def __add__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        self._compatible(other)
        out = dict(self._terms)
        for phi, c in other._terms.items():
            s = out[phi] + c if phi in out else c
            if s:
                out[phi] = s
            else:
                out.pop(phi, None)
        return Cochain._raw(self.space, self.ring, out)

    def __neg__(self):
        return Cochain._raw(self.space, self.ring, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, other):
        """Left multiplication by a scalar or polynomial."""
        if isinstance(other, SuperPolynomial):
            if other.ring != self.ring:
                raise CochainError("coefficient over a different parameter list",
                                   code="E_RING_MISMATCH")
            out = {}
            for phi, c in self._terms.items():
                p = other * c
                if p:
                    out[phi] = p
            return Cochain._raw(self.space, self.ring, out)
        try:
            s = Scalar.coerce(other)
        except (TypeError, LinftyError):
            return NotImplemented
        if not s:
            return Cochain.zero(self.space, self.ring)
        return Cochain._raw(self.space, self.ring, {k: v.scale(s) for k, v in self._terms.items()})

    def __mul__(self, other):
        """Right multiplication: ``(c*phi)*p = (-1)^(|phi||p|) (c*p)*phi``."""
        if not isinstance(other, SuperPolynomial):
            return self.__rmul__(other)
        out = Cochain.zero(self.space, self.ring)
        for part in _parity_parts(other):
            odd = part.parity()
            terms = {}
            for phi, c in self._terms.items():
                v = c * part
                if v:
                    terms[phi] = -v if odd and phi.parity(self.space) else v
            out = out + Cochain._raw(self.space, self.ring, terms)
        return out

    def __eq__(self, other):
        if isinstance(other, Cochain):
            return (self.space == other.space and self.ring == other.ring
                    and self._terms == other._terms)
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.space, self.ring, frozenset(self._terms.items())))

    # structure ------------------------------------------------------------
    def weights(self) -> set[int]:
        return {phi.weight for phi in self._terms}

    def weight_component(self, n: int) -> "Cochain":
        return Cochain._raw(self.space, self.ring,
                            {k: v for k, v in self._terms.items() if k.weight == n})

    def parity(self) -> int | None:
        """Total parity (map plus coefficient); ``None`` if mixed or zero."""
        seen = set()
        for phi, c in self._terms.items():
            cp = c.parity()
            if cp is None:
                return None
            seen.add((phi.parity(self.space) + cp) & 1)
        return seen.pop() if len(seen) == 1 else None

    def is_odd(self) -> bool:
        return not self._terms or self.parity() == 1

    def is_parameter_free(self) -> bool:
        return all(set(c.terms) <= {self.ring.unit} for c in self._terms.values())

    def map_coefficients(self) -> dict[ElementaryMap, Scalar]:
        if not self.is_parameter_free():
            raise CochainError("cochain has parameter-dependent coefficients")
        return {phi: c.constant_term() for phi, c in self._terms.items()}

    def to_ring(self, ring: ParameterList) -> "Cochain":
        if ring == self.ring:
            return self
        return Cochain(self.space, {k: v.to_ring(ring) for k, v in self._terms.items()}, ring)

    def map_coefficients_poly(self, fn) -> "Cochain":
        """Apply ``fn`` to every coefficient (dropping zeros)."""
        out = {}
        for phi, c in self._terms.items():
            v = fn(c)
            if v:
                out[phi] = v
        return Cochain._raw(self.space, self.ring, out)

    def truncate(self, degree: int) -> "Cochain":
        return self.map_coefficients_poly(lambda c: c.truncate(degree))

    def apply(self, word: Word) -> dict[int, SuperPolynomial]:
        """Value on a basis word, as target index -> coefficient."""
        out = {}
        for phi, c in self._terms.items():
            if phi.source == word:
                out[phi.target] = out[phi.target] + c if phi.target in out else c
        return {k: v for k, v in out.items() if v}

    def __str__(self):
        return format_cochain(self)

    def __repr__(self):
        return f"Cochain('{self}')"


def _parity_parts(p: SuperPolynomial) -> list[SuperPolynomial]:
    even, odd = {}, {}
    for m, c in p.terms.items():
        (odd if p.ring.monomial_parity(m) else even)[m] = c
    return [SuperPolynomial(p.ring, part) for part in (even, odd) if part]


def format_cochain(c: Cochain) -> str:
    if not c:
        return "0"
    pieces = []
    for phi, coef in c.sorted_items():
        name = phi.name()
        if coef == 1:
            pieces.append((False, name))
        elif coef == -1:
            pieces.append((True, name))
        elif len(coef) == 1:
            text = str(coef)
            neg = text.startswith("-")
            body = text[1:] if neg else text
            if "+" in body or "-" in body:
                body, neg = f"({text})", False
            pieces.append((neg, f"{body}*{name}"))
        else:
            pieces.append((False, f"({coef})*{name}"))
    out = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


# ---------------------------------------------------------------------------
# coderivation lift


def _lift_elementary(space: GradedSpace, phi: ElementaryMap, word: Word) -> dict[Word, int]:
    """``lift(phi)(word)`` for an elementary map, as word -> integer."""
    return dict(_lift_cached(space, phi, word))


@lru_cache(maxsize=None)
def _lift_cached(space: GradedSpace, phi: ElementaryMap, word: Word):
    letters = word_letters(word)
    k = phi.weight
    n = len(letters)
    if k > n:
        return ()
    pars = tuple(space.letter_parity(j) for j in letters)
    out: dict = {}
    for sh in _unshuffles(k, pars):
        left = tuple(letters[i] for i in sh.left)
        # a subsequence of a canonical sequence is canonical
        if letters_to_word(space, left)[1] != phi.source:
            continue
        if k == n:
            out[None] = out.get(None, 0) + sh.sign
            continue
        res = letters_to_word(space, (phi.target,) + tuple(letters[i] for i in sh.right))
        if res is None:
            continue
        s, w = res
        out[w] = out.get(w, 0) + sh.sign * s
    if None in out:
        # weight k case: phi(word) is the single letter phi.target
        c = out.pop(None)
        tw = space.letter(phi.target)
        out[tw] = out.get(tw, 0) + c
    return tuple((w, c) for w, c in out.items() if c)


def lift_apply(phi: Cochain, word: Word) -> dict[Word, SuperPolynomial]:
    """The coderivation of ``phi`` applied to a basis word of ``S(W)``."""
    out: dict[Word, SuperPolynomial] = {}
    for m, c in phi.items():
        for w, v in _lift_cached(phi.space, m, tuple(word)):
            p = c.scale(Scalar(v))
            out[w] = out[w] + p if w in out else p
    return {w: p for w, p in out.items() if p}


# ---------------------------------------------------------------------------
# brackets of elementary maps


@lru_cache(maxsize=None)
def _bracket_lift(space: GradedSpace, a: ElementaryMap, b: ElementaryMap):
    """``a o lift(b) - (-1)^(|a||b|) b o lift(a)`` via coderivation lifts."""
    n = a.weight + b.weight - 1
    if space.max_weight is not None and n > space.max_weight:
        return ()
    sign = -1 if a.parity(space) and b.parity(space) else 1
    out: dict = {}
    for w in weight_basis(space, n):
        val: dict[int, int] = {}
        for v, c in _lift_cached(space, b, w):
            if v == a.source:
                val[a.target] = val.get(a.target, 0) + c
        for v, c in _lift_cached(space, a, w):
            if v == b.source:
                val[b.target] = val.get(b.target, 0) - sign * c
        for j, c in val.items():
            if c:
                out[ElementaryMap(w, j)] = c
    return tuple(sorted(out.items()))


@lru_cache(maxsize=None)
def _bracket_braform(space: GradedSpace, a: ElementaryMap, b: ElementaryMap):
    """The same bracket, evaluated word by word from the unshuffle sum."""
    m, n = a.weight, b.weight
    total = m + n - 1
    if space.max_weight is not None and total > space.max_weight:
        return ()
    eps = -1 if a.parity(space) and b.parity(space) else 1
    out: dict = {}
    for w in weight_basis(space, total):
        letters = word_letters(w)
        pars = tuple(space.letter_parity(j) for j in letters)
        for outer, inner, sgn in ((a, b, 1), (b, a, -eps)):
            k = inner.weight
            for sh in _unshuffles(k, pars):
                first = letters_to_word(space, [letters[i] for i in sh.left])
                if first[1] != inner.source:
                    continue
                res = letters_to_word(space, [inner.target] + [letters[i] for i in sh.right])
                if res is None or res[1] != outer.source:
                    continue
                key = ElementaryMap(w, outer.target)
                out[key] = out.get(key, 0) + sgn * sh.sign * res[0]
    return tuple(sorted((k, v) for k, v in out.items() if v))


def _bracket(alpha: Cochain, beta: Cochain, table, truncation: int | None) -> Cochain:
    if alpha.space != beta.space:
        raise CochainError(f"bracket of cochains on different spaces {alpha.space} and {beta.space}",
                           code="E_SPACE_MISMATCH")
    if alpha.ring != beta.ring:
        raise CochainError("bracket of cochains over different parameter lists",
                           code="E_RING_MISMATCH")
    space, ring = alpha.space, alpha.ring
    acc: dict[ElementaryMap, SuperPolynomial] = {}
    beta_parts = [(b, part, part.parity() or 0)
                  for b, cb in beta.items() for part in _parity_parts(cb)]
    for a, ca in alpha.items():
        a_odd = a.parity(space)
        for b, cb, cb_par in beta_parts:
            elem = table(space, a, b)
            if not elem:
                continue
            coef = ca * cb
            if truncation is not None:
                coef = coef.truncate(truncation)
            if not coef:
                continue
            if a_odd and cb_par:
                coef = -coef
            for phi, v in elem:
                p = coef.scale(Scalar(v)) if v != 1 else coef
                acc[phi] = acc[phi] + p if phi in acc else p
    return Cochain._raw(space, ring, {k: v for k, v in acc.items() if v})


def bracket(alpha: Cochain, beta: Cochain, *, truncation: int | None = None) -> Cochain:
    """Graded bracket ``[alpha, beta]``; coefficients above ``truncation`` dropped."""
    return _bracket(alpha, beta, _bracket_lift, truncation)


def bracket_braform(alpha: Cochain, beta: Cochain, *, truncation: int | None = None) -> Cochain:
    """Independent evaluation of the bracket straight from the unshuffle formula."""
    return _bracket(alpha, beta, _bracket_braform, truncation)


def is_codifferential(d: Cochain) -> bool:
    if not d.is_odd():
        raise CochainError("codifferential must be odd", code="E_NOT_ODD")
    return not bracket(d, d)


def coboundary(d: Cochain, phi: Cochain) -> Cochain:
    """``D(phi) = [phi, d]``."""
    return bracket(phi, d)


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True)
class LinearAutomorphism:
    """Invertible even linear map of ``W``; row ``i`` is the image of basis vector ``i``."""

    matrix: tuple[tuple[Scalar, ...], ...]
    space: GradedSpace

    def __init__(self, matrix: Iterable[Iterable], space: GradedSpace):
        rows = tuple(tuple(Scalar.coerce(x) for x in r) for r in matrix)
        n = space.dim
        if len(rows) != n or any(len(r) != n for r in rows):
            raise CochainError(f"automorphism matrix must be {n}x{n}")
        for i in range(n):
            for j in range(n):
                if rows[i][j] and space.letter_parity(i) != space.letter_parity(j):
                    raise CochainError("automorphism does not respect the grading")
        if not la.det([list(r) for r in rows]):
            raise CochainError("automorphism matrix is singular", code="E_SINGULAR")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "space", space)

    @classmethod
    def identity(cls, space: GradedSpace) -> "LinearAutomorphism":
        return cls(la.identity(space.dim), space)

    def inverse(self) -> "LinearAutomorphism":
        return LinearAutomorphism(la.inverse([list(r) for r in self.matrix]), self.space)

    def image(self, j: int) -> dict[int, Scalar]:
        return {k: v for k, v in enumerate(self.matrix[j]) if v}

    def apply_word(self, word: Word) -> dict[Word, Scalar]:
        """Multiplicative extension to ``S(W)``."""
        acc: dict[tuple, Scalar] = {(): ONE}
        for j in word_letters(word):
            nxt: dict = {}
            for prefix, c in acc.items():
                for k, v in self.image(j).items():
                    nxt_key = prefix + (k,)
                    nxt[nxt_key] = nxt.get(nxt_key, Scalar(0)) + c * v
            acc = {k: v for k, v in nxt.items() if v}
        out: dict[Word, Scalar] = {}
        for letters, c in acc.items():
            res = letters_to_word(self.space, letters)
            if res is None:
                continue
            s, w = res
            out[w] = out.get(w, Scalar(0)) + (c if s > 0 else -c)
        return {w: c for w, c in out.items() if c}


def transform(d: Cochain, g: LinearAutomorphism) -> Cochain:
    """Pullback ``g^-1 o d o g`` of ``d`` along the coalgebra automorphism of ``g``."""
    if g.space != d.space:
        raise CochainError("automorphism and cochain live on different spaces")
    ginv = g.inverse()
    space, ring = d.space, d.ring
    acc: dict[ElementaryMap, SuperPolynomial] = {}
    for n in sorted(d.weights()):
        for w in weight_basis(space, n):
            for v, c in g.apply_word(w).items():
                for j, p in d.apply(v).items():
                    for k, x in ginv.image(j).items():
                        phi = ElementaryMap(w, k)
                        term = p.scale(c * x)
                        acc[phi] = acc[phi] + term if phi in acc else term
    return Cochain(space, acc, ring)


def inner_derivation(d: Cochain, w: int) -> Cochain:
    """The ``L_1`` cochain ``x -> -d(w x)`` for the basis vector ``w`` (0-based)."""
    space = d.space
    if not 0 <= w < space.dim:
        raise CochainError(f"basis index {w + 1} out of range for space {space}")
    quad = d.weight_component(2)
    acc: dict[ElementaryMap, SuperPolynomial] = {}
    for x in range(space.dim):
        res = letters_to_word(space, (w, x))
        if res is None:
            continue
        s, word = res
        for j, p in quad.apply(word).items():
            acc[ElementaryMap(space.letter(x), j)] = p if s < 0 else -p
    return Cochain(space, acc, d.ring)
