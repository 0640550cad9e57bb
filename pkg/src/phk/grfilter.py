"""Associated-graded Poisson structures from filtered presentations.

Input: generators with filtration weights m_i and a strictly upper
triangular table of commutator polynomials C_ij (the commutators
[y_i, y_j] written in ordered monomials of the generators).  The induced
graded bracket keeps, for each pair, the component of C_ij in filtration
degree m_i + m_j - t, where t is maximal with every C_ij lying in degree
m_i + m_j - t.

The filtration degree of an ordered monomial is taken to be the weight sum
of its letters.  The filtration is multiplicative, which gives the upper
bound, and reordering corrections live in strictly lower filtration, so
they cannot affect the extracted top component; the catalog data validates
this convention end to end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import PresentationError, VariableMismatchError
from .poisson import PoissonStructure
from .poly import Poly, homogeneous_component, normalize_weights, weighted_degree

COMMUTATIVE = "commutative"


@dataclass(frozen=True)
class FilteredPresentation:
    """Generators with filtration weights and commutator polynomials."""

    names: tuple[str, ...]
    weights: tuple[int, ...]
    commutators: Mapping[tuple[int, int], Poly] = field(default_factory=dict)
    # When set, the presentation claims to come from the coradical filtration
    # of a connected Hopf algebra, which forces t >= 1; compute_t enforces it.
    connected_hopf: bool = True

    def __post_init__(self):
        names = tuple(str(x) for x in self.names)
        object.__setattr__(self, "names", names)
        n = len(names)
        if len(set(names)) != n:
            raise PresentationError(f"duplicate generator names in {names}")
        object.__setattr__(self, "weights", normalize_weights(self.weights, n))
        table = {}
        for (i, j), poly in dict(self.commutators).items():
            if not 0 <= i < j < n:
                raise PresentationError(
                    f"commutator key ({i},{j}) not strictly upper triangular for n={n}"
                )
            if poly.nvars != n:
                raise VariableMismatchError(
                    f"commutator for ({i},{j}) over {poly.nvars} variables, expected {n}"
                )
            if not poly.is_zero:
                table[(i, j)] = poly
        object.__setattr__(self, "commutators", table)

    @property
    def nvars(self) -> int:
        return len(self.names)


def filtration_degree(p: Poly, weights: Sequence[int]) -> int | None:
    """Filtration level of an ordered-monomial polynomial: max weight sum.

    ``None`` for the zero polynomial.
    """
    return weighted_degree(p, weights)


def compute_t(F: FilteredPresentation):
    """Maximal t with every commutator in filtration degree m_i + m_j - t.

    Returns COMMUTATIVE when all commutators vanish.
    """
    if not F.commutators:
        return COMMUTATIVE
    t = min(
        F.weights[i] + F.weights[j] - filtration_degree(c, F.weights)
        for (i, j), c in F.commutators.items()
    )
    if F.connected_hopf and t < 1:
        raise PresentationError(
            f"computed t = {t} < 1: commutators too large for a connected Hopf filtration"
        )
    return t


def induced_gr_poisson(F: FilteredPresentation) -> PoissonStructure:
    """Graded Poisson structure on the associated graded ring.

    {x_i, x_j} is the component of C_ij in weighted degree m_i + m_j - t;
    strictly lower components are discarded.  For a commutative presentation
    the zero bracket is returned (its degree is then reported as "any").
    """
    t = compute_t(F)
    if t == COMMUTATIVE:
        return PoissonStructure.zero(F.names, F.weights)
    brackets = {
        (i, j): homogeneous_component(c, F.weights, F.weights[i] + F.weights[j] - t)
        for (i, j), c in F.commutators.items()
    }
    return PoissonStructure(F.names, brackets, F.weights)
