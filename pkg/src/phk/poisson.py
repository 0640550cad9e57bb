"""Poisson brackets on a polynomial ring: axioms, grading, modular derivation.

A structure is determined by the strictly upper triangular table of bracket
polynomials p_ij = {x_i, x_j}; the bracket of arbitrary polynomials is the
biderivation extension

    {f, g} = sum over i<j of p_ij (df/dx_i dg/dx_j - df/dx_j dg/dx_i).

Checking the Jacobi identity on coordinate triples suffices: the jacobiator
of a biderivation-extended bracket is a triderivation, so it vanishes
identically iff it vanishes on the coordinate functions.  The randomized
whole-polynomial checks in the test suite back this argument up.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import GradingError, NotPoissonError, VariableMismatchError
from .poly import (
    Mono,
    Poly,
    TensorPoly,
    is_homogeneous,
    mono_mul,
    normalize_weights,
    weighted_degree,
)

#: Returned by bracket_degree when every bracket polynomial is zero.
DEGREE_ANY = "any"
#: Returned by bracket_degree when no single degree shift works.
NOT_HOMOGENEOUS = "not homogeneous"


@dataclass(frozen=True)
class Derivation:
    """A derivation of the polynomial ring, given by its generator images."""

    images: tuple[Poly, ...]

    def __post_init__(self):
        n = len(self.images)
        for img in self.images:
            if img.nvars != n:
                raise VariableMismatchError(
                    f"derivation image over {img.nvars} variables, expected {n}"
                )

    @property
    def nvars(self) -> int:
        return len(self.images)

    @property
    def is_zero(self) -> bool:
        return all(img.is_zero for img in self.images)

    def apply(self, f: Poly) -> Poly:
        """tau(f) = sum_m df/dx_m * tau(x_m)."""
        if f.nvars != self.nvars:
            raise VariableMismatchError("polynomial and derivation variable counts differ")
        acc = Poly.zero(self.nvars)
        for m, img in enumerate(self.images):
            if not img.is_zero:
                acc = acc + f.diff(m) * img
        return acc

    def scale(self, value) -> Derivation:
        return Derivation(tuple(img.scale(value) for img in self.images))

    @classmethod
    def zero(cls, nvars: int) -> Derivation:
        return cls(tuple(Poly.zero(nvars) for _ in range(nvars)))


@dataclass(frozen=True)
class JacobiFailure:
    i: int
    j: int
    k: int
    defect: Poly


@dataclass(frozen=True)
class JacobiReport:
    ok: bool
    failures: tuple[JacobiFailure, ...]


@dataclass(frozen=True)
class DerivationFailure:
    i: int
    j: int
    defect: Poly


@dataclass(frozen=True)
class DerivationReport:
    ok: bool
    failures: tuple[DerivationFailure, ...]


class PoissonStructure:
    """A Poisson bracket table on k[x_1..x_n] with an optional grading."""

    __slots__ = ("nvars", "names", "p", "grading", "_jacobi", "_mono_cache")

    def __init__(
        self,
        names: Sequence[str],
        brackets: Mapping[tuple[int, int], Poly] | None = None,
        grading: Sequence[int] | None = None,
    ):
        self.names = tuple(str(x) for x in names)
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        self.nvars = len(self.names)
        self.p: dict[tuple[int, int], Poly] = {}
        for (i, j), poly in (brackets or {}).items():
            if not 0 <= i < j < self.nvars:
                raise VariableMismatchError(
                    f"bracket key ({i},{j}) not strictly upper triangular for n={self.nvars}"
                )
            if poly.nvars != self.nvars:
                raise VariableMismatchError(
                    f"bracket polynomial for ({i},{j}) over {poly.nvars} variables"
                )
            if not poly.is_zero:
                self.p[(i, j)] = poly
        self.grading = (
            normalize_weights(grading, self.nvars) if grading is not None else None
        )
        self._jacobi: JacobiReport | None = None
        self._mono_cache: dict[tuple[Mono, Mono], Poly] = {}

    @classmethod
    def zero(cls, names: Sequence[str], grading: Sequence[int] | None = None) -> PoissonStructure:
        return cls(names, {}, grading)

    def with_grading(self, grading: Sequence[int] | None) -> PoissonStructure:
        other = PoissonStructure(self.names, dict(self.p), grading)
        other._jacobi = self._jacobi
        return other

    def variable(self, i: int) -> Poly:
        return Poly.variable(self.nvars, i)

    def pair(self, i: int, j: int) -> Poly:
        """{x_i, x_j} for any index order (antisymmetry built in)."""
        if i == j:
            return Poly.zero(self.nvars)
        if i < j:
            return self.p.get((i, j), Poly.zero(self.nvars))
        got = self.p.get((j, i))
        return -got if got is not None else Poly.zero(self.nvars)

    def bracket(self, f: Poly, g: Poly) -> Poly:
        if f.nvars != self.nvars or g.nvars != self.nvars:
            raise VariableMismatchError("bracket operands do not match the structure")
        if not self.p or f.is_zero or g.is_zero:
            return Poly.zero(self.nvars)
        df = [None] * self.nvars
        dg = [None] * self.nvars
        acc = Poly.zero(self.nvars)
        for (i, j), pij in self.p.items():
            if df[i] is None:
                df[i] = f.diff(i)
            if df[j] is None:
                df[j] = f.diff(j)
            if dg[i] is None:
                dg[i] = g.diff(i)
            if dg[j] is None:
                dg[j] = g.diff(j)
            cross = df[i] * dg[j] - df[j] * dg[i]
            if not cross.is_zero:
                acc = acc + pij * cross
        return acc

    def bracket_mono(self, a: Mono, b: Mono) -> Poly:
        """Bracket of two monomials, memoized (hot path for tensor brackets)."""
        key = (a, b)
        got = self._mono_cache.get(key)
        if got is None:
            got = self.bracket(Poly.monomial(self.nvars, a), Poly.monomial(self.nvars, b))
            self._mono_cache[key] = got
        return got

    def tensor_bracket(self, u: TensorPoly, v: TensorPoly) -> TensorPoly:
        """{a(x)b, c(x)d} = {a,c}(x)bd + ac(x){b,d}, extended bilinearly."""
        if u.nvars != self.nvars or v.nvars != self.nvars:
            raise VariableMismatchError("tensor operands do not match the structure")
        acc: dict[tuple[Mono, Mono], Fraction] = {}
        for (a, b), cu in u.terms.items():
            for (c, d), cv in v.terms.items():
                coeff = cu * cv
                left = self.bracket_mono(a, c)
                if not left.is_zero:
                    bd = mono_mul(b, d)
                    for m, cc in left.terms.items():
                        k = (m, bd)
                        acc[k] = acc.get(k, Fraction(0)) + coeff * cc
                right = self.bracket_mono(b, d)
                if not right.is_zero:
                    ac = mono_mul(a, c)
                    for m, cc in right.terms.items():
                        k = (ac, m)
                        acc[k] = acc.get(k, Fraction(0)) + coeff * cc
        return TensorPoly(self.nvars, acc)

    def jacobiator(self, i: int, j: int, k: int) -> Poly:
        return (
            self.bracket(self.variable(i), self.pair(j, k))
            + self.bracket(self.variable(j), self.pair(k, i))
            + self.bracket(self.variable(k), self.pair(i, j))
        )

    def validate(self) -> JacobiReport:
        """Check the Jacobi identity on all coordinate triples (cached)."""
        if self._jacobi is None:
            failures = []
            for i in range(self.nvars):
                for j in range(i + 1, self.nvars):
                    for k in range(j + 1, self.nvars):
                        defect = self.jacobiator(i, j, k)
                        if not defect.is_zero:
                            failures.append(JacobiFailure(i, j, k, defect))
            self._jacobi = JacobiReport(ok=not failures, failures=tuple(failures))
        return self._jacobi

    @property
    def is_valid(self) -> bool:
        return self.validate().ok

    def ensure_valid(self) -> None:
        report = self.validate()
        if not report.ok:
            raise NotPoissonError(
                (f.i, f.j, f.k, f.defect) for f in report.failures
            )

    def require_grading(self) -> tuple[int, ...]:
        if self.grading is None:
            raise GradingError("structure carries no grading")
        return self.grading

    def bracket_degree(self):
        """The shift d with {A(i), A(j)} in A(i+j+d), when it exists.

        Returns an integer, DEGREE_ANY for the zero bracket, or
        NOT_HOMOGENEOUS when the bracket table admits no single shift.
        """
        w = self.require_grading()
        degree = None
        for (i, j), pij in self.p.items():
            if not is_homogeneous(pij, w):
                return NOT_HOMOGENEOUS
            d = weighted_degree(pij, w) - w[i] - w[j]
            if degree is None:
                degree = d
            elif degree != d:
                return NOT_HOMOGENEOUS
        return DEGREE_ANY if degree is None else degree

    def __repr__(self) -> str:
        entries = ", ".join(
            f"{{{self.names[i]},{self.names[j]}}}" for (i, j) in sorted(self.p)
        )
        return f"PoissonStructure({self.names}, nonzero=[{entries}], grading={self.grading})"


def validate_poisson(P: PoissonStructure) -> JacobiReport:
    return P.validate()


def bracket_degree(P: PoissonStructure):
    return P.bracket_degree()


def modular_derivation(P: PoissonStructure) -> Derivation:
    """delta(x_i) = sum_j d{x_i, x_j}/dx_j, for the standard volume form.

    Requires a verified bracket: the divergence formula computes the modular
    derivation only when the table actually is Poisson.
    """
    P.ensure_valid()
    images = []
    for i in range(P.nvars):
        acc = Poly.zero(P.nvars)
        for j in range(P.nvars):
            if i != j:
                acc = acc + P.pair(i, j).diff(j)
        images.append(acc)
    return Derivation(tuple(images))


def is_unimodular(P: PoissonStructure) -> bool:
    """True iff the modular derivation vanishes.

    A derivation vanishes iff it vanishes on generators, so the generator
    images decide this exactly.
    """
    return modular_derivation(P).is_zero


def check_poisson_derivation(P: PoissonStructure, tau: Derivation) -> DerivationReport:
    """Verify tau{x_i,x_j} = {tau x_i, x_j} + {x_i, tau x_j} on all pairs.

    Both sides are biderivation-like in (f, g), so generator pairs decide
    the Poisson-derivation property for the extension of tau.
    """
    if tau.nvars != P.nvars:
        raise VariableMismatchError("derivation does not match the structure")
    failures = []
    for i in range(P.nvars):
        for j in range(i + 1, P.nvars):
            lhs = tau.apply(P.pair(i, j))
            rhs = P.bracket(tau.images[i], P.variable(j)) + P.bracket(
                P.variable(i), tau.images[j]
            )
            defect = lhs - rhs
            if not defect.is_zero:
                failures.append(DerivationFailure(i, j, defect))
    return DerivationReport(ok=not failures, failures=tuple(failures))
