"""Coalgebra data on the polynomial ring and the combined Hopf/Poisson checks.

The coproduct, counit and antipode are stored through their generator images
and extended as algebra maps (the antipode of a commutative Hopf algebra is
an algebra endomorphism, so multiplicative extension is correct here).

Generator-level checks suffice throughout this module:
  * coassociativity: both sides are algebra maps A -> A^(x)3, and two algebra
    maps agreeing on generators agree everywhere;
  * the counit/antipode axioms: the convolution identities compare algebra
    maps (counit extension is multiplicative, and so is mu(S(x)id)Delta on a
    commutative algebra);
  * the Poisson-coproduct identity: both sides are biderivations along the
    algebra map Delta, hence determined by their values on generator pairs.
The randomized whole-polynomial property tests exercise these arguments on
random inputs rather than trusting them silently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import PhkError, VariableMismatchError
from .poisson import PoissonStructure
from .poly import (
    Mono,
    Poly,
    TensorPoly,
    TensorPoly3,
    mono_weighted_degree,
    tensor_is_homogeneous,
    zero_mono,
)

STATUS_HOPF = "hopf"
STATUS_BIALGEBRA = "bialgebra"
STATUS_FAILED = "failed"


@dataclass(frozen=True)
class CoalgebraData:
    """Generator images of the coproduct, counit and (optional) antipode."""

    delta: tuple[TensorPoly, ...]
    counit: tuple[Fraction, ...]
    antipode: tuple[Poly, ...] | None = None

    def __post_init__(self):
        n = len(self.delta)
        if len(self.counit) != n:
            raise VariableMismatchError("counit images do not match the generator count")
        for t in self.delta:
            if t.nvars != n:
                raise VariableMismatchError("coproduct image over a different variable count")
        if self.antipode is not None:
            if len(self.antipode) != n:
                raise VariableMismatchError("antipode images do not match the generator count")
            for p in self.antipode:
                if p.nvars != n:
                    raise VariableMismatchError("antipode image over a different variable count")

    @classmethod
    def primitive(cls, nvars: int, with_antipode: bool = True) -> CoalgebraData:
        """All generators primitive; counit zero; antipode -id if requested."""
        delta = []
        for i in range(nvars):
            x = Poly.variable(nvars, i)
            one = Poly.one(nvars)
            delta.append(TensorPoly.of(x, one) + TensorPoly.of(one, x))
        antipode = (
            tuple(-Poly.variable(nvars, i) for i in range(nvars)) if with_antipode else None
        )
        return cls(tuple(delta), tuple(Fraction(0) for _ in range(nvars)), antipode)


class PoissonHopfAlgebra:
    """A Poisson structure together with coalgebra data on the same ring."""

    __slots__ = ("structure", "coalg", "name", "params", "metadata", "_powers")

    def __init__(
        self,
        structure: PoissonStructure,
        coalg: CoalgebraData,
        name: str = "",
        params: Mapping | None = None,
        metadata: Mapping | None = None,
    ):
        if len(coalg.delta) != structure.nvars:
            raise VariableMismatchError("coalgebra data does not match the structure")
        self.structure = structure
        self.coalg = coalg
        self.name = name
        self.params = dict(params or {})
        self.metadata = dict(metadata or {})
        self._powers: dict[tuple[int, int], TensorPoly] = {}

    @property
    def nvars(self) -> int:
        return self.structure.nvars

    @property
    def names(self) -> tuple[str, ...]:
        return self.structure.names

    def _delta_power(self, i: int, e: int) -> TensorPoly:
        got = self._powers.get((i, e))
        if got is None:
            got = self.coalg.delta[i] ** e
            self._powers[(i, e)] = got
        return got

    def coproduct(self, f: Poly) -> TensorPoly:
        """Algebra-map extension of the generator coproducts."""
        if f.nvars != self.nvars:
            raise VariableMismatchError("polynomial does not match the algebra")
        acc = TensorPoly.zero(self.nvars)
        for mono, coeff in f.terms.items():
            term = TensorPoly.one(self.nvars)
            for i, e in enumerate(mono):
                if e:
                    term = term * self._delta_power(i, e)
            acc = acc + term.scale(coeff)
        return acc

    def counit(self, f: Poly) -> Fraction:
        """Algebra-map extension of the generator counit values."""
        if f.nvars != self.nvars:
            raise VariableMismatchError("polynomial does not match the algebra")
        total = Fraction(0)
        eps = self.coalg.counit
        for mono, coeff in f.terms.items():
            val = coeff
            for i, e in enumerate(mono):
                if e:
                    val *= eps[i] ** e
            total += val
        return total

    def antipode(self, f: Poly) -> Poly:
        if self.coalg.antipode is None:
            raise PhkError("no antipode data on this algebra")
        return f.substitute(list(self.coalg.antipode))

    def is_primitive(self, i: int) -> bool:
        x = Poly.variable(self.nvars, i)
        one = Poly.one(self.nvars)
        return self.coalg.delta[i] == TensorPoly.of(x, one) + TensorPoly.of(one, x)

    def __repr__(self) -> str:
        return f"PoissonHopfAlgebra({self.name or self.names})"


def coproduct_extend(H: PoissonHopfAlgebra, f: Poly) -> TensorPoly:
    return H.coproduct(f)


def is_primitive(H: PoissonHopfAlgebra, i: int) -> bool:
    return H.is_primitive(i)


@dataclass(frozen=True)
class CheckItem:
    check: str
    subject: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class CoalgebraReport:
    items: tuple[CheckItem, ...]
    antipode_present: bool

    @property
    def coassociative(self) -> bool:
        return all(it.ok for it in self.items if it.check == "coassociativity")

    @property
    def counit_ok(self) -> bool:
        return all(it.ok for it in self.items if it.check == "counit")

    @property
    def antipode_ok(self) -> bool | None:
        if not self.antipode_present:
            return None
        return all(it.ok for it in self.items if it.check == "antipode")

    @property
    def status(self) -> str:
        if not (self.coassociative and self.counit_ok):
            return STATUS_FAILED
        if not self.antipode_present:
            return STATUS_BIALGEBRA
        return STATUS_HOPF if self.antipode_ok else STATUS_FAILED

    @property
    def ok(self) -> bool:
        return self.status in (STATUS_HOPF, STATUS_BIALGEBRA)


def _mono_poly(nvars: int, mono: Mono, coeff=1) -> Poly:
    return Poly.monomial(nvars, mono, coeff)


def _t3_delta_left(H: PoissonHopfAlgebra, t: TensorPoly) -> TensorPoly3:
    """(Delta (x) id) applied to t."""
    n = H.nvars
    acc: dict = {}
    for (left, right), coeff in t.terms.items():
        inner = H.coproduct(_mono_poly(n, left))
        for (a, b), c2 in inner.terms.items():
            key = (a, b, right)
            acc[key] = acc.get(key, Fraction(0)) + coeff * c2
    return TensorPoly3(n, acc)


def _t3_delta_right(H: PoissonHopfAlgebra, t: TensorPoly) -> TensorPoly3:
    """(id (x) Delta) applied to t."""
    n = H.nvars
    acc: dict = {}
    for (left, right), coeff in t.terms.items():
        inner = H.coproduct(_mono_poly(n, right))
        for (a, b), c2 in inner.terms.items():
            key = (left, a, b)
            acc[key] = acc.get(key, Fraction(0)) + coeff * c2
    return TensorPoly3(n, acc)


def counit_left(H: PoissonHopfAlgebra, t: TensorPoly) -> Poly:
    """(eps (x) id) applied to t, landing back in the ring."""
    n = H.nvars
    acc = Poly.zero(n)
    for (left, right), coeff in t.terms.items():
        val = H.counit(_mono_poly(n, left)) * coeff
        if val:
            acc = acc + _mono_poly(n, right, val)
    return acc


def counit_right(H: PoissonHopfAlgebra, t: TensorPoly) -> Poly:
    n = H.nvars
    acc = Poly.zero(n)
    for (left, right), coeff in t.terms.items():
        val = H.counit(_mono_poly(n, right)) * coeff
        if val:
            acc = acc + _mono_poly(n, left, val)
    return acc


def _convolve_antipode(H: PoissonHopfAlgebra, t: TensorPoly, side: str) -> Poly:
    """mu(S (x) id) or mu(id (x) S) applied to t."""
    n = H.nvars
    acc = Poly.zero(n)
    for (left, right), coeff in t.terms.items():
        if side == "left":
            prod = H.antipode(_mono_poly(n, left)) * _mono_poly(n, right)
        else:
            prod = _mono_poly(n, left) * H.antipode(_mono_poly(n, right))
        acc = acc + prod.scale(coeff)
    return acc


def check_coalgebra_axioms(H: PoissonHopfAlgebra) -> CoalgebraReport:
    """Coassociativity, counit and antipode axioms, on each generator."""
    items: list[CheckItem] = []
    n = H.nvars
    for i in range(n):
        x = Poly.variable(n, i)
        dx = H.coalg.delta[i]
        lhs = _t3_delta_left(H, dx)
        rhs = _t3_delta_right(H, dx)
        items.append(
            CheckItem(
                "coassociativity",
                H.names[i],
                lhs == rhs,
                "" if lhs == rhs else f"defect {lhs - rhs!r}",
            )
        )
        cl = counit_left(H, dx)
        cr = counit_right(H, dx)
        ok = cl == x and cr == x
        items.append(
            CheckItem(
                "counit",
                H.names[i],
                ok,
                "" if ok else f"(eps(x)id) gave {cl!r}, (id(x)eps) gave {cr!r}",
            )
        )
    if H.coalg.antipode is not None:
        for i in range(n):
            dx = H.coalg.delta[i]
            target = Poly.const(n, H.coalg.counit[i])
            left = _convolve_antipode(H, dx, "left")
            right = _convolve_antipode(H, dx, "right")
            ok = left == target and right == target
            items.append(
                CheckItem(
                    "antipode",
                    H.names[i],
                    ok,
                    "" if ok else f"mu(S(x)id) gave {left!r}, mu(id(x)S) gave {right!r}",
                )
            )
    return CoalgebraReport(tuple(items), antipode_present=H.coalg.antipode is not None)


@dataclass(frozen=True)
class GradedReport:
    items: tuple[CheckItem, ...]

    @property
    def ok(self) -> bool:
        return all(it.ok for it in self.items)


def check_graded_connected(H: PoissonHopfAlgebra) -> GradedReport:
    """Connected-graded compatibility of the coalgebra data.

    (a) counit vanishes on every generator (forced for a graded Hopf
        structure on a connected graded algebra);
    (b) each coproduct image is homogeneous of total degree deg x_i under
        deg(u (x) v) = deg u + deg v;
    (c) each antipode image, when present, is homogeneous of degree deg x_i.
    """
    w = H.structure.require_grading()
    items: list[CheckItem] = []
    n = H.nvars
    for i in range(n):
        ok = H.coalg.counit[i] == 0
        items.append(
            CheckItem(
                "counit_vanishes",
                H.names[i],
                ok,
                "" if ok else f"eps({H.names[i]}) = {H.coalg.counit[i]}",
            )
        )
    for i in range(n):
        ok = tensor_is_homogeneous(H.coalg.delta[i], w, w[i])
        items.append(
            CheckItem(
                "coproduct_degree",
                H.names[i],
                ok,
                "" if ok else f"coproduct of {H.names[i]} not homogeneous of degree {w[i]}",
            )
        )
    if H.coalg.antipode is not None:
        for i in range(n):
            img = H.coalg.antipode[i]
            ok = all(mono_weighted_degree(m, w) == w[i] for m in img.terms)
            items.append(
                CheckItem(
                    "antipode_degree",
                    H.names[i],
                    ok,
                    "" if ok else f"antipode image of {H.names[i]} not of degree {w[i]}",
                )
            )
    return GradedReport(tuple(items))


@dataclass(frozen=True)
class PoissonCoproductReport:
    items: tuple[CheckItem, ...]

    @property
    def ok(self) -> bool:
        return all(it.ok for it in self.items)


def check_poisson_coproduct(H: PoissonHopfAlgebra) -> PoissonCoproductReport:
    """Delta{x_i,x_j} = {Delta x_i, Delta x_j} and eps{x_i,x_j} = 0, all pairs."""
    P = H.structure
    P.ensure_valid()
    items: list[CheckItem] = []
    for i in range(P.nvars):
        for j in range(i + 1, P.nvars):
            pij = P.pair(i, j)
            lhs = H.coproduct(pij)
            rhs = P.tensor_bracket(H.coalg.delta[i], H.coalg.delta[j])
            ok = lhs == rhs
            subject = f"{H.names[i]},{H.names[j]}"
            items.append(
                CheckItem(
                    "coproduct_bracket",
                    subject,
                    ok,
                    "" if ok else f"defect {lhs - rhs!r}",
                )
            )
            eps_val = H.counit(pij)
            items.append(
                CheckItem(
                    "counit_bracket",
                    subject,
                    eps_val == 0,
                    "" if eps_val == 0 else f"eps of bracket = {eps_val}",
                )
            )
    return PoissonCoproductReport(tuple(items))


@dataclass(frozen=True)
class AntimorphismReport:
    items: tuple[CheckItem, ...] = field(default_factory=tuple)
    applicable: bool = True

    @property
    def ok(self) -> bool:
        return all(it.ok for it in self.items)


def check_antipode_antimorphism(H: PoissonHopfAlgebra) -> AntimorphismReport:
    """Informational: S{x_i,x_j} = -{S x_i, S x_j} on generator pairs."""
    if H.coalg.antipode is None:
        return AntimorphismReport(tuple(), applicable=False)
    P = H.structure
    items: list[CheckItem] = []
    for i in range(P.nvars):
        for j in range(i + 1, P.nvars):
            lhs = H.antipode(P.pair(i, j))
            rhs = -P.bracket(H.coalg.antipode[i], H.coalg.antipode[j])
            ok = lhs == rhs
            items.append(
                CheckItem(
                    "antipode_antimorphism",
                    f"{H.names[i]},{H.names[j]}",
                    ok,
                    "" if ok else f"defect {lhs - rhs!r}",
                )
            )
    return AntimorphismReport(tuple(items))
