"""Built-in algebra instances with exactly parameterized golden values.

Every entry bundles the data needed to drive the verification suite end to
end (a Poisson/coalgebra payload, a filtered presentation, or both) plus
the expected values it must reproduce.  Expected values are constructed
directly from the entry's parameters, never by calling the operations under
test; each carries an ``origin`` tag in {"reported", "derived", "trivial"}
describing how the value was obtained.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import CatalogError
from .expr import parse_poly_expr, parse_tensor_expr
from .grfilter import FilteredPresentation
from .hopf import CoalgebraData, PoissonHopfAlgebra
from .poisson import DEGREE_ANY, PoissonStructure
from .poly import Poly, TensorPoly


@dataclass(frozen=True)
class Expected:
    """Golden values an entry must reproduce exactly."""

    modular: tuple[Poly, ...] | None = None
    unimodular: bool | None = None
    bracket_degree: int | str | None = None
    t: int | str | None = None
    induced: Mapping[tuple[int, int], Poly] | None = None
    hilbert: tuple[int, ...] | None = None
    origins: Mapping[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    key: str
    description: str
    params: Mapping
    algebra: PoissonHopfAlgebra | None
    presentation: FilteredPresentation | None
    expected: Expected
    metadata: Mapping = field(default_factory=dict)


def _polys(names: Sequence[str], table: Mapping[str, str]) -> dict[tuple[int, int], Poly]:
    index = {nm: i for i, nm in enumerate(names)}
    out = {}
    for key, text in table.items():
        a, b = key.split(",")
        out[(index[a.strip()], index[b.strip()])] = parse_poly_expr(text, names)
    return out


def _coalg(
    names: Sequence[str],
    delta: Mapping[str, str],
    counit: Mapping[str, Fraction] | None = None,
    antipode: Mapping[str, str] | None = None,
) -> CoalgebraData:
    n = len(names)
    eps = tuple(Fraction((counit or {}).get(nm, 0)) for nm in names)
    dl = tuple(parse_tensor_expr(delta[nm], names) for nm in names)
    sp = None
    if antipode is not None:
        sp = tuple(parse_poly_expr(antipode[nm], names) for nm in names)
    return CoalgebraData(dl, eps, sp)


def _frac(x) -> Fraction:
    return Fraction(x)


def _slug(x: Fraction) -> str:
    x = Fraction(x)
    body = f"{abs(x.numerator)}" if x.denominator == 1 else f"{abs(x.numerator)}o{x.denominator}"
    return f"m{body}" if x < 0 else body


# -- individual builders --------------------------------------------------


def _build_example_4_1(i: int = 1) -> CatalogEntry:
    i = int(i)
    if i < 0:
        raise CatalogError("parameter i must be a non-negative integer")
    names = ("x", "y")
    structure = PoissonStructure(names, _polys(names, {"x,y": "x*y"}), grading=(1, 1))
    ypow = "1" if i == 0 else ("y" if i == 1 else f"y^{i}")
    coalg = _coalg(
        names,
        {"x": f"x@1 + {ypow}@x", "y": "y@y"},
        counit={"x": Fraction(0), "y": Fraction(1)},
        antipode=None,  # the group-like generator is not invertible here
    )
    algebra = PoissonHopfAlgebra(structure, coalg, name="example_4_1", params={"i": i})
    expected = Expected(
        modular=(parse_poly_expr("x", names), parse_poly_expr("-y", names)),
        unimodular=False,
        bracket_degree=0,
        hilbert=(1, 4, 10, 20, 35),
        origins={
            "modular": "reported",
            "unimodular": "reported",
            "bracket_degree": "reported",
            "hilbert": "derived",
        },
    )
    return CatalogEntry(
        name="example_4_1",
        key=f"example_4_1_i{i}",
        description=(
            "two-variable bialgebra-only instance: {x,y} = xy, y group-like, "
            "x twisted-primitive; connected graded with degree-0 bracket, "
            "yet not unimodular"
        ),
        params={"i": i},
        algebra=algebra,
        presentation=None,
        expected=expected,
    )


_E19_NAMES = ("a", "b", "c", "z", "w")
_E19_BRACKETS = {"a,b": "c", "z,w": "1/3*c^3"}
# The antisymmetric mixed terms are forced: with the symmetric variant the
# coproduct is not compatible with the bracket (defect on the (b,z) pair).
_E19_DELTA = {
    "a": "a@1 + 1@a",
    "b": "b@1 + 1@b",
    "c": "c@1 + 1@c",
    "z": "z@1 + 1@z + a@c - c@a",
    "w": "w@1 + 1@w + b@c - c@b",
}
_E19_ANTIPODE = {"a": "-a", "b": "-b", "c": "-c", "z": "-z", "w": "-w"}


def _build_example_1_9(grading: tuple[int, ...], key: str, degree: int) -> CatalogEntry:
    names = _E19_NAMES
    structure = PoissonStructure(names, _polys(names, _E19_BRACKETS), grading=grading)
    coalg = _coalg(names, _E19_DELTA, antipode=_E19_ANTIPODE)
    algebra = PoissonHopfAlgebra(structure, coalg, name=key)
    presentation = None
    if key == "example_1_9_coradical":
        presentation = FilteredPresentation(
            names, grading, _polys(names, _E19_BRACKETS)
        )
    zero = Poly.zero(5)
    expected = Expected(
        modular=(zero, zero, zero, zero, zero),
        unimodular=True,
        bracket_degree=degree,
        t=1 if presentation is not None else None,
        induced=_polys(names, _E19_BRACKETS) if presentation is not None else None,
        origins={
            "modular": "reported",
            "unimodular": "reported",
            "bracket_degree": "reported",
            "t": "reported",
            "induced": "reported",
        },
    )
    return CatalogEntry(
        name=key,
        key=key,
        description=(
            "five-variable unimodular instance: {a,b} = c, {z,w} = c^3/3, "
            f"grading {grading} with bracket degree {degree}"
        ),
        params={"grading": grading},
        algebra=algebra,
        presentation=presentation,
        expected=expected,
    )


_KS_PRESETS: dict[str, tuple[tuple[str, ...], dict[tuple[int, int], dict[int, Fraction]]]] = {
    # [x, y] = y
    "nonabelian2": (("x", "y"), {(0, 1): {1: Fraction(1)}}),
    # [x, y] = z, z central
    "heisenberg3": (("x", "y", "z"), {(0, 1): {2: Fraction(1)}}),
}


def _dense_constants(
    n: int, upper: Mapping[tuple[int, int], Mapping[int, Fraction]]
) -> list[list[list[Fraction]]]:
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), row in upper.items():
        if not 0 <= i < j < n:
            raise CatalogError(f"structure-constant key ({i},{j}) not upper triangular")
        for k, v in row.items():
            v = Fraction(v)
            c[i][j][k] = v
            c[j][i][k] = -v
    return c


def _lie_jacobi_defects(c: list[list[list[Fraction]]]) -> list[tuple[int, int, int, int]]:
    n = len(c)
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(n):
                    total = Fraction(0)
                    for m in range(n):
                        total += (
                            c[i][j][m] * c[m][k][l]
                            + c[j][k][m] * c[m][i][l]
                            + c[k][i][m] * c[m][j][l]
                        )
                    if total:
                        bad.append((i, j, k, l))
    return bad


def _build_kostant_souriau(
    preset: str | None = None,
    constants: Mapping[tuple[int, int], Mapping[int, Fraction]] | None = None,
    names: Sequence[str] | None = None,
) -> CatalogEntry:
    if constants is None:
        preset = preset or "heisenberg3"
        if preset not in _KS_PRESETS:
            raise CatalogError(f"unknown preset {preset!r}; know {sorted(_KS_PRESETS)}")
        names, constants = _KS_PRESETS[preset]
    elif names is None:
        raise CatalogError("explicit structure constants require variable names")
    names = tuple(names)
    n = len(names)
    dense = _dense_constants(n, constants)
    defects = _lie_jacobi_defects(dense)
    if defects:
        raise CatalogError(f"structure constants violate the Jacobi identity at {defects}")
    brackets = {}
    for (i, j), row in constants.items():
        poly = Poly(n, {tuple(1 if t == k else 0 for t in range(n)): Fraction(v) for k, v in row.items()})
        if not poly.is_zero:
            brackets[(i, j)] = poly
    structure = PoissonStructure(names, brackets, grading=(1,) * n)
    algebra = PoissonHopfAlgebra(
        structure,
        CoalgebraData.primitive(n),
        name="kostant_souriau",
        params={"preset": preset} if preset else {},
    )
    # trace of the adjoint action, straight from the constants
    traces = []
    for i in range(n):
        tr = Fraction(0)
        for j in range(n):
            tr += dense[i][j][j]
        traces.append(tr)
    expected = Expected(
        modular=tuple(Poly.const(n, tr) for tr in traces),
        unimodular=all(tr == 0 for tr in traces),
        bracket_degree=DEGREE_ANY if not brackets else -1,
        origins={
            "modular": "reported",
            "unimodular": "derived",
            "bracket_degree": "reported",
        },
    )
    keybit = preset if preset else "custom"
    return CatalogEntry(
        name="kostant_souriau",
        key=f"kostant_souriau_{keybit}",
        description=(
            "linear bracket on the symmetric algebra of a Lie algebra, all "
            "generators primitive and of weight 1; bracket degree -1"
        ),
        params={"preset": preset, "constants": dict(constants)},
        algebra=algebra,
        presentation=None,
        expected=expected,
    )


#: Parameter triples giving pairwise non-isomorphic members of the gr_a
#: family; the last family is (1, mu, 0) together with (1, 1/mu, 0) for
#: nonzero mu.  Stored as metadata for parameter sweeps.
GR_A_ISO_CLASS_BASE: tuple[tuple[Fraction, Fraction, Fraction], ...] = (
    (Fraction(1), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(1)),
    (Fraction(1), Fraction(1), Fraction(1)),
)


def gr_a_iso_class_triples(mu) -> tuple[tuple[Fraction, Fraction, Fraction], ...]:
    """The base iso-class triples plus (1, mu, 0) and (1, 1/mu, 0)."""
    mu = Fraction(mu)
    if mu == 0:
        raise CatalogError("mu must be nonzero")
    return GR_A_ISO_CLASS_BASE + ((Fraction(1), mu, Fraction(0)), (Fraction(1), 1 / mu, Fraction(0)))


def _build_gr_a(lam=1, mu=1, alpha=1) -> CatalogEntry:
    lam, mu, alpha = _frac(lam), _frac(mu), _frac(alpha)
    names = ("x", "y", "z")

    def lin(cx, cy) -> Poly:
        return Poly(3, {(1, 0, 0): Fraction(cx), (0, 1, 0): Fraction(cy)})

    # displayed brackets: {x,y} = 0, {z,x} = lam*x + alpha*y, {z,y} = mu*y
    brackets = {(0, 2): -lin(lam, alpha), (1, 2): -lin(0, mu)}
    structure = PoissonStructure(names, brackets, grading=(1, 1, 2))
    coalg = _coalg(
        names,
        {"x": "x@1 + 1@x", "y": "y@1 + 1@y", "z": "z@1 + 1@z + x@y"},
        antipode={"x": "-x", "y": "-y", "z": "x*y - z"},
    )
    algebra = PoissonHopfAlgebra(
        structure, coalg, name="grA", params={"lam": lam, "mu": mu, "alpha": alpha}
    )
    presentation = FilteredPresentation(names, (1, 1, 2), brackets)
    nonzero = any(v != 0 for v in (lam, mu, alpha))
    expected = Expected(
        modular=(Poly.zero(3), Poly.zero(3), Poly.const(3, lam + mu)),
        unimodular=(lam + mu == 0),
        bracket_degree=-2 if nonzero else DEGREE_ANY,
        t=2 if nonzero else "commutative",
        induced={k: v for k, v in brackets.items() if not v.is_zero},
        origins={
            "modular": "reported",
            "unimodular": "derived",
            "bracket_degree": "reported",
            "t": "reported",
            "induced": "reported",
        },
    )
    return CatalogEntry(
        name="grA",
        key=f"grA_{_slug(lam)}_{_slug(mu)}_{_slug(alpha)}",
        description=(
            "three-variable family from a filtered presentation on the "
            "Heisenberg group: {x,y} = 0, {z,x} = lam*x + alpha*y, {z,y} = mu*y"
        ),
        params={"lam": lam, "mu": mu, "alpha": alpha},
        algebra=algebra,
        presentation=presentation,
        expected=expected,
        metadata={
            "iso_class_base": GR_A_ISO_CLASS_BASE,
            "iso_class_family": "(1, mu, 0) and (1, 1/mu, 0) for nonzero mu",
        },
    )


def _build_gr_b(lam=0) -> CatalogEntry:
    lam = _frac(lam)
    names = ("x", "y", "z")
    # presentation commutators carry the filtration-lower lam*y term
    lam_txt = f"{lam.numerator}/{lam.denominator}" if lam.denominator != 1 else str(lam)
    commutators = _polys(
        names,
        {"x,y": "y", "x,z": f"z - ({lam_txt})*y", "y,z": "-1/2*y^2"},
    )
    presentation = FilteredPresentation(names, (1, 1, 2), commutators)
    # displayed induced brackets: {x,y} = y, {z,x} = -z, {z,y} = (1/2) y^2
    brackets = _polys(names, {"x,y": "y", "x,z": "z", "y,z": "-1/2*y^2"})
    structure = PoissonStructure(names, brackets, grading=(1, 1, 2))
    coalg = _coalg(
        names,
        {"x": "x@1 + 1@x", "y": "y@1 + 1@y", "z": "z@1 + 1@z + x@y"},
        antipode={"x": "-x", "y": "-y", "z": "x*y - z"},
    )
    algebra = PoissonHopfAlgebra(structure, coalg, name="grB", params={"lam": lam})
    expected = Expected(
        modular=(Poly.const(3, 2), Poly.zero(3), Poly.variable(3, 1)),
        unimodular=False,
        bracket_degree=-1,
        t=1,
        induced=dict(brackets),
        origins={
            "modular": "reported",
            "unimodular": "reported",
            "bracket_degree": "reported",
            "t": "reported",
            "induced": "reported",
        },
    )
    return CatalogEntry(
        name="grB",
        key=f"grB_{_slug(lam)}",
        description=(
            "three-variable family whose induced structure is independent of "
            "the parameter: {x,y} = y, {z,x} = -z, {z,y} = y^2/2"
        ),
        params={"lam": lam},
        algebra=algebra,
        presentation=presentation,
        expected=expected,
    )


def _build_zero_bracket(nvars=3, weights: Sequence[int] | None = None) -> CatalogEntry:
    n = int(nvars)
    if n < 1:
        raise CatalogError("need at least one variable")
    weights = tuple(weights) if weights is not None else (1,) * n
    names = tuple(f"x{i+1}" for i in range(n))
    structure = PoissonStructure.zero(names, weights)
    algebra = PoissonHopfAlgebra(
        structure, CoalgebraData.primitive(n), name="zero_bracket", params={"nvars": n}
    )
    expected = Expected(
        modular=tuple(Poly.zero(n) for _ in range(n)),
        unimodular=True,
        bracket_degree=DEGREE_ANY,
        origins={"modular": "trivial", "unimodular": "trivial", "bracket_degree": "trivial"},
    )
    return CatalogEntry(
        name="zero_bracket",
        key=f"zero_bracket_{n}",
        description="zero bracket; the enveloping algebra and both homology "
        "complexes degenerate to closed-form oracles",
        params={"nvars": n, "weights": weights},
        algebra=algebra,
        presentation=None,
        expected=expected,
    )


_BUILDERS = {
    "example_4_1": _build_example_4_1,
    "example_1_9_coradical": lambda: _build_example_1_9((1, 1, 1, 2, 2), "example_1_9_coradical", -1),
    "example_1_9_degree0": lambda: _build_example_1_9((1, 1, 2, 3, 3), "example_1_9_degree0", 0),
    "kostant_souriau": _build_kostant_souriau,
    "grA": _build_gr_a,
    "grB": _build_gr_b,
    "zero_bracket": _build_zero_bracket,
}


def catalog_names() -> list[str]:
    return sorted(_BUILDERS)


def catalog_get(name: str, **params) -> CatalogEntry:
    """Build a catalog entry by name; parameters depend on the family."""
    builder = _BUILDERS.get(name)
    if builder is None:
        raise CatalogError(f"unknown catalog name {name!r}; know {catalog_names()}")
    return builder(**params)


def default_entries() -> list[CatalogEntry]:
    """The concrete instances exercised by the suite and listed by the CLI."""
    entries: list[CatalogEntry] = []
    for i in (0, 1, 2):
        entries.append(catalog_get("example_4_1", i=i))
    entries.append(catalog_get("example_1_9_coradical"))
    entries.append(catalog_get("example_1_9_degree0"))
    entries.append(catalog_get("kostant_souriau", preset="nonabelian2"))
    entries.append(catalog_get("kostant_souriau", preset="heisenberg3"))
    for lam, mu, alpha in gr_a_iso_class_triples(2):
        entries.append(catalog_get("grA", lam=lam, mu=mu, alpha=alpha))
    for lam in (0, 1, -1, Fraction(7, 3)):
        entries.append(catalog_get("grB", lam=lam))
    entries.append(catalog_get("zero_bracket", nvars=3, weights=(1, 1, 1)))
    return entries


def instance(key: str) -> CatalogEntry:
    """Look up one of the concrete default instances by its key."""
    for entry in default_entries():
        if entry.key == key:
            return entry
    raise CatalogError(f"unknown instance key {key!r}; see instance_keys()")


def instance_keys() -> list[str]:
    return [entry.key for entry in default_entries()]
