"""The enveloping algebra of a Poisson polynomial algebra, in PBW normal form.

Elements are stored on the basis m^alpha h^beta: a commutative monomial in
the m-generators followed by an ascending word in the h-generators.  The
basis property is the Rinehart PBW theorem for the Kaehler-differential
Lie-Rinehart pair of a smooth algebra.

Multiplication renormalizes words with two rewrite rules:

  (R1)  h_i m_f       ->  m_f h_i + m_{ {x_i, f} }
  (R2)  h_i h_j       ->  h_j h_i + h_{ {x_i, x_j} }      (for i > j)

where h of an arbitrary polynomial is expanded by linearity and the
product rule h_{fg} = m_g h_f + m_f h_g (so h_1 = 0, forced by applying
that rule at f = g = 1).  Rewriting terminates: an (R2) swap lowers the
inversion count of the h-word at fixed h-degree, and the correction terms
of (R1)/(R2) strictly lower the h-degree, so the lexicographic measure
(h-degree, inversions) decreases at every step.  Confluence is the
computational shadow of the Jacobi identity; u_mul therefore insists on a
verified Poisson structure, and associativity is exercised on random
triples in the tests rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import GradingError, NotPoissonDerivationError, VariableMismatchError
from .poisson import DEGREE_ANY, NOT_HOMOGENEOUS, Derivation, PoissonStructure, check_poisson_derivation
from .poly import Mono, Poly, mono_mul, mono_weighted_degree, zero_mono

_ZERO = Fraction(0)

U_ZERO_DEGREE = "zero"


def _unit_key(nvars: int) -> tuple[Mono, Mono]:
    z = zero_mono(nvars)
    return (z, z)


class UElement:
    """Normal-form element: map (m-exponents, h-exponents) -> coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping | Iterable | None = None):
        self.nvars = int(nvars)
        self.terms: dict[tuple[Mono, Mono], Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for (mpart, hpart), coeff in items:
                mpart, hpart = tuple(mpart), tuple(hpart)
                if len(mpart) != self.nvars or len(hpart) != self.nvars:
                    raise VariableMismatchError(
                        f"term key ({mpart},{hpart}) does not match n={self.nvars}"
                    )
                coeff = Fraction(coeff)
                if coeff:
                    k = (mpart, hpart)
                    acc = self.terms.get(k, _ZERO) + coeff
                    if acc:
                        self.terms[k] = acc
                    else:
                        self.terms.pop(k, None)

    @classmethod
    def zero(cls, nvars: int) -> UElement:
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int) -> UElement:
        return cls(nvars, {_unit_key(nvars): Fraction(1)})

    @classmethod
    def from_m(cls, p: Poly) -> UElement:
        """m_p: the commutative copy of a polynomial (m is an algebra map)."""
        z = zero_mono(p.nvars)
        return cls(p.nvars, {(m, z): c for m, c in p.terms.items()})

    @classmethod
    def h_generator(cls, nvars: int, i: int) -> UElement:
        if not 0 <= i < nvars:
            raise VariableMismatchError(f"variable index {i} out of range for n={nvars}")
        h = [0] * nvars
        h[i] = 1
        return cls(nvars, {(zero_mono(nvars), tuple(h)): Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: UElement) -> None:
        if self.nvars != other.nvars:
            raise VariableMismatchError("operands over different variable counts")

    def __add__(self, other: UElement) -> UElement:
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            acc = out.get(k, _ZERO) + c
            if acc:
                out[k] = acc
            else:
                out.pop(k, None)
        res = UElement.__new__(UElement)
        res.nvars = self.nvars
        res.terms = out
        return res

    def __neg__(self) -> UElement:
        res = UElement.__new__(UElement)
        res.nvars = self.nvars
        res.terms = {k: -c for k, c in self.terms.items()}
        return res

    def __sub__(self, other: UElement) -> UElement:
        return self + (-other)

    def scale(self, value) -> UElement:
        value = Fraction(value)
        res = UElement.__new__(UElement)
        res.nvars = self.nvars
        res.terms = {k: c * value for k, c in self.terms.items()} if value else {}
        return res

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def h_degree(self) -> int:
        return max((sum(h) for (_, h) in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UElement)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"UElement({self.nvars}, {dict(sorted(self.terms.items()))})"


def expand_h(P: PoissonStructure, p: Poly) -> UElement:
    """Normal form of h_p for an arbitrary polynomial p.

    Iterating h_{fg} = m_g h_f + m_f h_g down to generators gives the
    closed form h_{x^a} = sum_i a_i m_{x^(a - e_i)} h_{x_i}; the result is
    independent of the splitting order (the rule is symmetric), which the
    tests confirm against a randomized recursive splitter.
    """
    if p.nvars != P.nvars:
        raise VariableMismatchError("polynomial does not match the structure")
    n = p.nvars
    acc: dict[tuple[Mono, Mono], Fraction] = {}
    for mono, coeff in p.terms.items():
        for i, e in enumerate(mono):
            if e:
                lowered = mono[:i] + (e - 1,) + mono[i + 1 :]
                h = [0] * n
                h[i] = 1
                key = (lowered, tuple(h))
                val = acc.get(key, _ZERO) + coeff * e
                if val:
                    acc[key] = val
                else:
                    acc.pop(key, None)
    return UElement(n, acc)


def _m_mono_times(mexp: Mono, u: UElement) -> UElement:
    """m^mexp * u; m-parts are commutative and sit leftmost already."""
    res = UElement.__new__(UElement)
    res.nvars = u.nvars
    res.terms = {(mono_mul(mexp, m), h): c for (m, h), c in u.terms.items()}
    return res


def _first_h_index(hexp: Mono) -> int | None:
    for i, e in enumerate(hexp):
        if e:
            return i
    return None


def _hgen_times_hword(P: PoissonStructure, i: int, hexp: Mono) -> UElement:
    """Normal form of h_i h^hexp (hexp stored ascending).

    Recursion is well founded on (h-degree, inversions): the swap branch
    keeps the degree and removes the single inversion contributed by the
    leading letter, and the bracket branch lowers the h-degree by one.
    """
    n = P.nvars
    j = _first_h_index(hexp)
    if j is None or i <= j:
        bumped = list(hexp)
        bumped[i] += 1
        return UElement(n, {(zero_mono(n), tuple(bumped)): Fraction(1)})
    rest = list(hexp)
    rest[j] -= 1
    rest = tuple(rest)
    # h_i h_j = h_j h_i + h_{ {x_i, x_j} }
    swapped = _hgen_times(P, j, _hgen_times_hword(P, i, rest))
    pij = P.pair(i, j)
    if pij.is_zero:
        return swapped
    correction = u_mul(P, expand_h(P, pij), UElement(n, {(zero_mono(n), rest): Fraction(1)}))
    return swapped + correction


def _hgen_times(P: PoissonStructure, i: int, u: UElement) -> UElement:
    """Normal form of h_i * u."""
    n = P.nvars
    acc = UElement.zero(n)
    xi = P.variable(i)
    for (mexp, hexp), coeff in u.terms.items():
        # (R1): h_i m^mexp = m^mexp h_i + m_{ {x_i, x^mexp} }
        acc = acc + _m_mono_times(mexp, _hgen_times_hword(P, i, hexp)).scale(coeff)
        if any(mexp):
            br = P.bracket(xi, Poly.monomial(n, mexp))
            if not br.is_zero:
                moved = UElement(
                    n, {(m, hexp): c * coeff for m, c in br.terms.items()}
                )
                acc = acc + moved
    return acc


def u_mul(P: PoissonStructure, u: UElement, v: UElement) -> UElement:
    """Product in the enveloping algebra, renormalized to the PBW basis."""
    if u.nvars != P.nvars or v.nvars != P.nvars:
        raise VariableMismatchError("operands do not match the structure")
    P.ensure_valid()
    n = P.nvars
    acc = UElement.zero(n)
    for (mexp, hexp), coeff in u.terms.items():
        w = v
        # apply the h-letters right to left, then prefix the m-part
        for i in range(n - 1, -1, -1):
            for _ in range(hexp[i]):
                w = _hgen_times(P, i, w)
        acc = acc + _m_mono_times(mexp, w).scale(coeff)
    return acc


def u_commutator(P: PoissonStructure, u: UElement, v: UElement) -> UElement:
    return u_mul(P, u, v) - u_mul(P, v, u)


def _effective_shift(P: PoissonStructure) -> int:
    d = P.bracket_degree()
    if d == NOT_HOMOGENEOUS:
        raise GradingError("bracket is not homogeneous; enveloping degrees undefined")
    if d == DEGREE_ANY:
        return 0  # zero bracket: the enveloping algebra is a polynomial ring
    return d


def u_degree(P: PoissonStructure, u: UElement):
    """Degree under deg m_x = deg x, deg h_x = deg x + d.

    Returns an integer, U_ZERO_DEGREE for the zero element, or
    NOT_HOMOGENEOUS when the terms disagree.
    """
    w = P.require_grading()
    d = _effective_shift(P)
    if u.is_zero:
        return U_ZERO_DEGREE
    degs = {
        mono_weighted_degree(m, w) + mono_weighted_degree(h, w) + d * sum(h)
        for (m, h) in u.terms
    }
    return degs.pop() if len(degs) == 1 else NOT_HOMOGENEOUS


def u_hilbert(P: PoissonStructure, max_degree: int) -> list[int]:
    """Dimensions of the graded pieces of the enveloping algebra, 0..max_degree.

    Counts PBW basis monomials by degree: the coefficient sequence of
    prod_i 1/(1 - t^(d_i)) * prod_i 1/(1 - t^(d_i + d)).  Refuses d < 0,
    where the grading would not be bounded below in the required way.
    """
    w = P.require_grading()
    d = _effective_shift(P)
    if d < 0:
        raise GradingError(f"bracket degree {d} < 0: enveloping grading not connected")
    gens = list(w) + [wi + d for wi in w]
    dims = [0] * (max_degree + 1)
    dims[0] = 1
    for g in gens:
        if g <= 0:
            raise GradingError(f"generator degree {g} <= 0")
        for k in range(g, max_degree + 1):
            dims[k] += dims[k - g]
    return dims


def hilbert_growth_degree(dims: list[int]) -> int | None:
    """Observed polynomial degree of a dimension sequence, if any.

    Least r whose (r+1)-st finite difference vanishes on the window; None
    when the window shows no polynomial behaviour (quasi-polynomial growth
    under non-uniform weights, or too short a window).
    """
    seq = list(dims)
    for r in range(len(seq)):
        diff = [b - a for a, b in zip(seq, seq[1:])]
        if not diff:
            return None
        if all(x == 0 for x in diff):
            return r
        seq = diff
    return None


@dataclass(frozen=True)
class RelationFailure:
    relation: str
    i: int
    j: int
    defect: UElement


@dataclass(frozen=True)
class ExtensionReport:
    """Outcome of extending a Poisson derivation to the enveloping algebra."""

    well_defined: bool
    identity: bool
    failures: tuple[RelationFailure, ...]


def extension_images(P: PoissonStructure, tau: Derivation) -> tuple[list[UElement], list[UElement]]:
    """Images (nu(m_{x_i}), nu(h_{x_i})) of the candidate endomorphism.

    nu fixes every m_a and sends h_a to h_a + m_{tau(a)}.
    """
    n = P.nvars
    ms = [UElement.from_m(P.variable(i)) for i in range(n)]
    hs = [
        UElement.h_generator(n, i) + UElement.from_m(tau.images[i])
        for i in range(n)
    ]
    return ms, hs


def apply_extension(P: PoissonStructure, tau: Derivation, u: UElement) -> UElement:
    """Apply the candidate endomorphism to a normal-form element."""
    n = P.nvars
    _, hs = extension_images(P, tau)
    acc = UElement.zero(n)
    for (mexp, hexp), coeff in u.terms.items():
        prod = UElement.from_m(Poly.monomial(n, mexp))
        for i in range(n):
            for _ in range(hexp[i]):
                prod = u_mul(P, prod, hs[i])
        acc = acc + prod.scale(coeff)
    return acc


def _nu_of_h(P: PoissonStructure, tau: Derivation, p: Poly) -> UElement:
    """nu(h_p) by the defining formula: h_p + m_{tau(p)}."""
    return expand_h(P, p) + UElement.from_m(tau.apply(p))


def extend_poisson_derivation(P: PoissonStructure, tau: Derivation) -> ExtensionReport:
    """Check that nu(m_a) = m_a, nu(h_a) = h_a + m_{tau(a)} is well defined.

    Verifies that the images satisfy every defining relation instance on
    generators: the h-commutator rule on all pairs, the h-of-product rule on
    generator pairs, and the mixed commutator rule on all ordered pairs.
    Reports identity exactly when tau vanishes on all generators.
    """
    if tau.nvars != P.nvars:
        raise VariableMismatchError("derivation does not match the structure")
    P.ensure_valid()
    pre = check_poisson_derivation(P, tau)
    if not pre.ok:
        pairs = ", ".join(f"({f.i},{f.j})" for f in pre.failures)
        raise NotPoissonDerivationError(
            f"tau is not a Poisson derivation (fails on pairs {pairs})"
        )
    n = P.nvars
    ms, hs = extension_images(P, tau)
    failures: list[RelationFailure] = []

    for i in range(n):
        for j in range(i + 1, n):
            # h-commutator rule: [nu h_i, nu h_j] = nu(h_{ {x_i,x_j} })
            lhs = u_mul(P, hs[i], hs[j]) - u_mul(P, hs[j], hs[i])
            rhs = _nu_of_h(P, tau, P.pair(i, j))
            if lhs != rhs:
                failures.append(RelationFailure("h_commutator", i, j, lhs - rhs))
    for i in range(n):
        for j in range(i, n):
            # h-of-product rule on x_i x_j
            prod = P.variable(i) * P.variable(j)
            lhs = u_mul(P, ms[j], hs[i]) + u_mul(P, ms[i], hs[j])
            rhs = _nu_of_h(P, tau, prod)
            if lhs != rhs:
                failures.append(RelationFailure("h_product", i, j, lhs - rhs))
    for i in range(n):
        for j in range(n):
            # mixed commutator rule: [nu h_i, nu m_j] = m_{ {x_i, x_j} }
            lhs = u_mul(P, hs[i], ms[j]) - u_mul(P, ms[j], hs[i])
            rhs = UElement.from_m(P.pair(i, j))
            if lhs != rhs:
                failures.append(RelationFailure("h_m_commutator", i, j, lhs - rhs))

    return ExtensionReport(
        well_defined=not failures,
        identity=tau.is_zero,
        failures=tuple(failures),
    )
