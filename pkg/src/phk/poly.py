"""Exact sparse multivariate polynomial and tensor-polynomial arithmetic.

A polynomial in n variables is a map from exponent tuples to nonzero
rational coefficients (``fractions.Fraction``).  All arithmetic is exact;
equality is map equality, so canonical form (no stored zero coefficients)
is maintained eagerly by every constructor.

Two- and three-fold tensor products of the polynomial ring use the same
representation with pairs/triples of exponent tuples as keys.  Values are
immutable by convention: no method mutates its receiver.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import GradingError, VariableMismatchError

Mono = tuple[int, ...]

_ZERO = Fraction(0)


def _clean(nvars: int, items: Iterable[tuple[Mono, Fraction]]) -> dict[Mono, Fraction]:
    out: dict[Mono, Fraction] = {}
    for mono, coeff in items:
        mono = tuple(mono)
        if len(mono) != nvars:
            raise VariableMismatchError(
                f"monomial {mono} has {len(mono)} exponents, expected {nvars}"
            )
        if any(e < 0 for e in mono):
            raise ValueError(f"negative exponent in monomial {mono}")
        coeff = Fraction(coeff)
        if coeff:
            acc = out.get(mono, _ZERO) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
    return out


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def zero_mono(nvars: int) -> Mono:
    return (0,) * nvars


class Poly:
    """A sparse polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Mono, Fraction] | Iterable | None = None):
        self.nvars = int(nvars)
        if terms is None:
            self.terms: dict[Mono, Fraction] = {}
        else:
            items = terms.items() if isinstance(terms, Mapping) else terms
            self.terms = _clean(self.nvars, items)

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value) -> Poly:
        return cls(nvars, {zero_mono(nvars): Fraction(value)})

    @classmethod
    def one(cls, nvars: int) -> Poly:
        return cls.const(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, i: int) -> Poly:
        if not 0 <= i < nvars:
            raise VariableMismatchError(f"variable index {i} out of range for n={nvars}")
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, mono: Mono, coeff=1) -> Poly:
        return cls(nvars, {tuple(mono): Fraction(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, mono: Mono) -> Fraction:
        return self.terms.get(tuple(mono), _ZERO)

    @property
    def constant(self) -> Fraction:
        return self.terms.get(zero_mono(self.nvars), _ZERO)

    def _check(self, other: Poly) -> None:
        if self.nvars != other.nvars:
            raise VariableMismatchError(
                f"operands over {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono, _ZERO) + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        res = Poly.__new__(Poly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def __neg__(self) -> Poly:
        res = Poly.__new__(Poly)
        res.nvars = self.nvars
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, value) -> Poly:
        value = Fraction(value)
        res = Poly.__new__(Poly)
        res.nvars = self.nvars
        res.terms = {m: c * value for m, c in self.terms.items()} if value else {}
        return res

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                acc = out.get(m, _ZERO) + c1 * c2
                if acc:
                    out[m] = acc
                else:
                    out.pop(m, None)
        res = Poly.__new__(Poly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def diff(self, i: int) -> Poly:
        """Formal partial derivative with respect to variable ``i`` (0-based)."""
        if not 0 <= i < self.nvars:
            raise VariableMismatchError(f"variable index {i} out of range for n={self.nvars}")
        out: dict[Mono, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[i]
            if e:
                lowered = mono[:i] + (e - 1,) + mono[i + 1 :]
                acc = out.get(lowered, _ZERO) + coeff * e
                if acc:
                    out[lowered] = acc
                else:
                    out.pop(lowered, None)
        res = Poly.__new__(Poly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def substitute(self, images: Sequence[Poly]) -> Poly:
        """Evaluate at ``x_i := images[i]``; the unique algebra-map extension."""
        if len(images) != self.nvars:
            raise VariableMismatchError(
                f"{len(images)} images given for {self.nvars} variables"
            )
        target_n = images[0].nvars if images else self.nvars
        powers: dict[tuple[int, int], Poly] = {}

        def power(i: int, e: int) -> Poly:
            got = powers.get((i, e))
            if got is None:
                got = images[i] ** e
                powers[(i, e)] = got
            return got

        acc = Poly.zero(target_n)
        for mono, coeff in self.terms.items():
            term = Poly.const(target_n, coeff)
            for i, e in enumerate(mono):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc

    def total_degree(self) -> int | None:
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    __hash__ = None  # mutable-dict backed; identity hashing would be misleading

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {dict(sorted(self.terms.items()))})"


def normalize_weights(weights: Sequence[int], nvars: int) -> tuple[int, ...]:
    """Validate grading weights: one per variable, each an integer >= 1.

    Weight 0 is rejected: it would break connectedness (degree-0 part must
    be the scalars), which downstream graded checks rely on.
    """
    w = tuple(int(x) for x in weights)
    if len(w) != nvars:
        raise GradingError(f"{len(w)} weights for {nvars} variables")
    if any(x < 1 for x in w):
        raise GradingError(f"grading weights must all be >= 1, got {w}")
    return w


def mono_weighted_degree(mono: Mono, weights: Sequence[int]) -> int:
    return sum(w * e for w, e in zip(weights, mono))


def weighted_degree(f: Poly, weights: Sequence[int]) -> int | None:
    """Max weighted degree of ``f``; ``None`` for the zero polynomial."""
    w = normalize_weights(weights, f.nvars)
    if f.is_zero:
        return None
    return max(mono_weighted_degree(m, w) for m in f.terms)


def homogeneous_component(f: Poly, weights: Sequence[int], s: int) -> Poly:
    """Sum of the terms of ``f`` of weighted degree exactly ``s``."""
    w = normalize_weights(weights, f.nvars)
    return Poly(f.nvars, {m: c for m, c in f.terms.items() if mono_weighted_degree(m, w) == s})


def homogeneous_components(f: Poly, weights: Sequence[int]) -> dict[int, Poly]:
    w = normalize_weights(weights, f.nvars)
    buckets: dict[int, dict[Mono, Fraction]] = {}
    for m, c in f.terms.items():
        buckets.setdefault(mono_weighted_degree(m, w), {})[m] = c
    return {s: Poly(f.nvars, t) for s, t in sorted(buckets.items())}


def is_homogeneous(f: Poly, weights: Sequence[int]) -> bool:
    w = normalize_weights(weights, f.nvars)
    degs = {mono_weighted_degree(m, w) for m in f.terms}
    return len(degs) <= 1


class TensorPoly:
    """An element of the twofold tensor product of the polynomial ring."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | Iterable | None = None):
        self.nvars = int(nvars)
        self.terms: dict[tuple[Mono, Mono], Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in items:
                left, right = key
                left, right = tuple(left), tuple(right)
                if len(left) != self.nvars or len(right) != self.nvars:
                    raise VariableMismatchError(f"tensor key {key} does not match n={nvars}")
                coeff = Fraction(coeff)
                if coeff:
                    k = (left, right)
                    acc = self.terms.get(k, _ZERO) + coeff
                    if acc:
                        self.terms[k] = acc
                    else:
                        self.terms.pop(k, None)

    @classmethod
    def zero(cls, nvars: int) -> TensorPoly:
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> TensorPoly:
        z = zero_mono(nvars)
        return cls(nvars, {(z, z): Fraction(1)})

    @classmethod
    def of(cls, f: Poly, g: Poly) -> TensorPoly:
        """The simple tensor f (x) g, expanded bilinearly."""
        if f.nvars != g.nvars:
            raise VariableMismatchError("tensor factors over different variable counts")
        out = {}
        for m1, c1 in f.terms.items():
            for m2, c2 in g.terms.items():
                out[(m1, m2)] = c1 * c2
        return cls(f.nvars, out)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: TensorPoly) -> None:
        if self.nvars != other.nvars:
            raise VariableMismatchError(
                f"operands over {self.nvars} and {other.nvars} variables"
            )

    def __add__(self, other: TensorPoly) -> TensorPoly:
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k, _ZERO) + c
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        res = TensorPoly.__new__(TensorPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def __neg__(self) -> TensorPoly:
        res = TensorPoly.__new__(TensorPoly)
        res.nvars = self.nvars
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other: TensorPoly) -> TensorPoly:
        return self + (-other)

    def scale(self, value) -> TensorPoly:
        value = Fraction(value)
        res = TensorPoly.__new__(TensorPoly)
        res.nvars = self.nvars
        res.terms = {k: c * value for k, c in self.terms.items()} if value else {}
        return res

    def __mul__(self, other):
        """Componentwise product: (a(x)b)(c(x)d) = ac (x) bd, bilinearly."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out: dict[tuple[Mono, Mono], Fraction] = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                k = (mono_mul(l1, l2), mono_mul(r1, r2))
                acc = out.get(k, _ZERO) + c1 * c2
                if acc:
                    out[k] = acc
                else:
                    out.pop(k, None)
        res = TensorPoly.__new__(TensorPoly)
        res.nvars = self.nvars
        res.terms = out
        return res

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> TensorPoly:
        if k < 0:
            raise ValueError("negative power")
        result = TensorPoly.one(self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def left_polys(self) -> list[tuple[Mono, Mono, Fraction]]:
        return [(l, r, c) for (l, r), c in self.terms.items()]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"TensorPoly({self.nvars}, {dict(sorted(self.terms.items()))})"


def tensor_mul(u: TensorPoly, v: TensorPoly) -> TensorPoly:
    return u * v


def tensor_weighted_degree(t: TensorPoly, weights: Sequence[int]) -> int | None:
    """Max of deg(u) + deg(v) over the terms u (x) v; ``None`` when zero."""
    w = normalize_weights(weights, t.nvars)
    if t.is_zero:
        return None
    return max(
        mono_weighted_degree(l, w) + mono_weighted_degree(r, w) for (l, r) in t.terms
    )


def tensor_is_homogeneous(t: TensorPoly, weights: Sequence[int], s: int) -> bool:
    """True iff every term u (x) v satisfies deg u + deg v = s."""
    w = normalize_weights(weights, t.nvars)
    return all(
        mono_weighted_degree(l, w) + mono_weighted_degree(r, w) == s
        for (l, r) in t.terms
    )


class TensorPoly3:
    """An element of the threefold tensor product, used for coassociativity."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | Iterable | None = None):
        self.nvars = int(nvars)
        self.terms: dict[tuple[Mono, Mono, Mono], Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in items:
                key = tuple(tuple(part) for part in key)
                if len(key) != 3 or any(len(p) != self.nvars for p in key):
                    raise VariableMismatchError(f"triple-tensor key {key} bad for n={nvars}")
                coeff = Fraction(coeff)
                if coeff:
                    acc = self.terms.get(key, _ZERO) + coeff
                    if acc:
                        self.terms[key] = acc
                    else:
                        self.terms.pop(key, None)

    @classmethod
    def zero(cls, nvars: int) -> TensorPoly3:
        return cls(nvars)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: TensorPoly3) -> TensorPoly3:
        if self.nvars != other.nvars:
            raise VariableMismatchError("triple tensors over different variable counts")
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k, _ZERO) + c
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        res = TensorPoly3.__new__(TensorPoly3)
        res.nvars = self.nvars
        res.terms = out
        return res

    def __sub__(self, other: TensorPoly3) -> TensorPoly3:
        res = TensorPoly3.__new__(TensorPoly3)
        res.nvars = other.nvars
        res.terms = {k: -c for k, c in other.terms.items()}
        return self + res

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorPoly3)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"TensorPoly3({self.nvars}, {dict(sorted(self.terms.items()))})"
