"""
Rational homotopy of function spaces and of homotopy automorphisms,
computed from André-Quillen cohomology of minimal models.
"""

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Optional

from .cdga import DgaMorphism, DgModuleView, FreeCdga, cohomology, postnikov_truncation
from .derivation_complex import Derivation, LiePresentation, aq_cohomology_der, h0_lie_algebra
from .errors import AlgebraError, HypothesisError, NotMinimalError
from .extensions import square_zero_map_dimension
from .linear_algebra import DegreeWindow, rank

if TYPE_CHECKING:
    from spaces.base_space import BasedMap, SpaceModel

logger = logging.getLogger(__name__)


def _require_minimal(space: "SpaceModel") -> FreeCdga:
    model = space.model
    if not model.is_minimal:
        raise NotMinimalError(f"Model of {space.name} must be minimal")
    return model


def pi_rational(space: "SpaceModel", n: int) -> int:
    """dim π_n(Y) ⊗ ℚ as H^{−n}_AQ(A, ℚ), checked against the generator count"""
    if n < 1:
        raise ValueError("Homotopy groups are indexed by n ≥ 1")
    model = _require_minimal(space)
    h = aq_cohomology_der(model, DgModuleView.trivial(model), DegreeWindow(-n, -n))
    dimension = h.slices[-n].dimension
    generators = space.pi_dimension(n)
    if dimension != generators:
        raise AlgebraError(
            f"π_{n}({space.name}): AQ route gives {dimension}, indecomposables give {generators}"
        )
    return dimension


@dataclass
class MappingSpaceResult:
    n: int
    dimension: int
    representatives: List[Derivation] = field(default_factory=list)
    cocycle_dimension: int = 0
    boundary_dimension: int = 0
    lifted_maps: int = 0

    @property
    def set_level_only(self) -> bool:
        """π₁ is identified with H^{−1}_AQ only as a set"""
        return self.n == 1

    def as_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "dimension": self.dimension,
            "cocycles": self.cocycle_dimension,
            "boundaries": self.boundary_dimension,
            "representatives": [r.describe() for r in self.representatives],
            "set_level_only": self.set_level_only,
        }


def mapping_space_homotopy(target: "SpaceModel", source: "SpaceModel", f: "BasedMap", n: int) -> MappingSpaceResult:
    """π_n of the component of f in Map(X, Y) as H^{−n}_AQ(A(Y), A(X))"""
    if n < 1:
        raise ValueError("Homotopy groups are indexed by n ≥ 1")
    model = _require_minimal(target)
    if f.target_model != model or f.source_model != source.model:
        raise AlgebraError(f"{f.name} does not go between the models of {target.name} and {source.name}")
    module = DgModuleView.via(f.morphism)
    h = aq_cohomology_der(model, module, DegreeWindow(-n, -n))
    piece = h.slices[-n]

    lifted = square_zero_map_dimension(f.morphism, DgModuleView.identity(source.model), -n)
    if lifted != piece.cocycle_dimension:
        raise AlgebraError(
            f"Maps into the square-zero extension ({lifted}) disagree with derivation cocycles "
            f"({piece.cocycle_dimension})"
        )
    if n == 1:
        logger.info("π₁ of a function space is reported as a set-level identification")
    return MappingSpaceResult(
        n=n,
        dimension=piece.dimension,
        representatives=h.representatives[-n],
        cocycle_dimension=piece.cocycle_dimension,
        boundary_dimension=piece.boundary_rank,
        lifted_maps=lifted,
    )


def null_component_formula(target: "SpaceModel", source: "SpaceModel", n: int) -> int:
    """Σ_k dim π_k(Y)⊗ℚ · dim H^{k−n}(X; ℚ)"""
    model = _require_minimal(target)
    total = 0
    for k in model.generator_degrees:
        if k - n < 0:
            continue
        h = cohomology(source.model, DegreeWindow(k - n, k - n))[k - n].dimension
        total += len(model.generators_of_degree(k)) * h
    return total


def _check_vanishing_above(algebra: FreeCdga, n: int, known_top: Optional[int]) -> bool:
    """Raise HypothesisError unless H^{>n} = 0; return whether that is certified.

    Without a known top degree only the finite window n+1 .. n+maxdeg+1 is
    inspected, so a pass is reported as uncertified.
    """
    if known_top is not None:
        if known_top > n:
            raise HypothesisError(f"H^{{{known_top}}}({algebra.name}) is not zero above degree {n}")
        return True
    upper = n + max(algebra.max_generator_degree, 1) + 1
    slices = cohomology(algebra, DegreeWindow(n + 1, upper))
    nonzero = [k for k, piece in slices.items() if piece.dimension]
    if nonzero:
        raise HypothesisError(f"H^{{{nonzero[0]}}}({algebra.name}) is not zero above degree {n}")
    logger.warning("H^{>%d}(%s) = 0 was only checked through degree %d", n, algebra.name, upper)
    return False


@dataclass
class HautResult:
    space: str
    lie_algebra: LiePresentation
    cutoff: Optional[int] = None
    hypothesis_certified: bool = True


def haut_lie_algebra(space: "SpaceModel", cutoff: Optional[int] = None) -> HautResult:
    """Lie algebra of hAut(X) as H⁰_AQ(A, A), optionally on a Postnikov truncation"""
    model = _require_minimal(space)
    certified = True
    if cutoff is not None and model.max_generator_degree > cutoff:
        certified = _check_vanishing_above(model, cutoff, space.cohomology_top)
        model, _ = postnikov_truncation(model, cutoff)
        logger.info("hAut(%s) computed on the truncation below degree %d", space.name, cutoff)
    else:
        cutoff = None
    return HautResult(
        space=space.name, lie_algebra=h0_lie_algebra(model), cutoff=cutoff, hypothesis_certified=certified
    )


@dataclass
class TruncationReport:
    n: int
    full_dimension: int
    truncated_dimension: int
    restriction_rank: int
    hypothesis_certified: bool = True

    @property
    def bijective(self) -> bool:
        return self.full_dimension == self.truncated_dimension == self.restriction_rank


def truncation_stability_check(
    source: FreeCdga, target: FreeCdga, f: DgaMorphism, n: int, known_top: Optional[int] = None
) -> TruncationReport:
    """Compare H⁰_AQ(A, B) with H⁰_AQ(A≤n, B≤n) along restriction of derivations"""
    if not (source.is_minimal and target.is_minimal):
        raise NotMinimalError("Both models must be minimal")
    if f.source != source or f.target != target:
        raise AlgebraError(f"{f.name} does not go from {source.name} to {target.name}")
    certified = _check_vanishing_above(source, n, known_top)

    full = aq_cohomology_der(source, DgModuleView.via(f), DegreeWindow(0, 0))
    source_n, _ = postnikov_truncation(source, n)
    target_n, _ = postnikov_truncation(target, n)
    f_n = DgaMorphism(source_n, target_n, {gen.id: f.image(gen.id) for gen in source_n.generators})
    module_n = DgModuleView.via(f_n)
    truncated = aq_cohomology_der(source_n, module_n, DegreeWindow(0, 0))

    columns = []
    for theta in full.representatives[0]:
        restricted = Derivation(source_n, module_n, 0, {gen.id: theta.value(gen.id) for gen in source_n.generators})
        columns.append(truncated.classify(restricted))
    restriction_rank = rank([list(row) for row in zip(*columns)], len(columns)) if columns and columns[0] else 0
    report = TruncationReport(
        n=n,
        full_dimension=full.slices[0].dimension,
        truncated_dimension=truncated.slices[0].dimension,
        restriction_rank=restriction_rank,
        hypothesis_certified=certified,
    )
    logger.info("Truncation at %d: %s", n, report)
    return report
