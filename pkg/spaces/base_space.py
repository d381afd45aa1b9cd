from typing import Any, Dict, Optional

from core.cdga import DgaMorphism, FreeCdga, cohomology
from core.errors import AlgebraError, NotMinimalError
from core.linear_algebra import DegreeWindow


class SpaceModel:
    """Base class for rational spaces described by a minimal Sullivan model"""

    def __init__(self, name: str, provenance: str = "catalog"):
        self.name = name
        self.provenance = provenance
        self._model: Optional[FreeCdga] = None

    def build_model(self) -> FreeCdga:
        raise NotImplementedError

    @property
    def model(self) -> FreeCdga:
        if self._model is None:
            model = self.build_model()
            if not model.is_minimal:
                raise NotMinimalError(f"Model of {self.name} is not minimal")
            if not model.is_sullivan:
                raise NotMinimalError(f"Model of {self.name} does not satisfy the Sullivan condition")
            self._model = model
        return self._model

    def pi_dimension(self, n: int) -> int:
        """Number of degree-n generators, i.e. dim π_n ⊗ ℚ"""
        return len(self.model.generators_of_degree(n))

    def cohomology_dimensions(self, top: int) -> Dict[int, int]:
        slices = cohomology(self.model, DegreeWindow(0, top))
        return {k: piece.dimension for k, piece in slices.items()}

    @property
    def cohomology_top(self) -> Optional[int]:
        """Highest non-vanishing cohomology degree when known in closed form"""
        return None

    def describe(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "provenance": self.provenance,
            "model": self.model.describe(),
        }

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class UserSpace(SpaceModel):
    """Space given directly by a user-supplied minimal model"""

    def __init__(self, algebra: FreeCdga, provenance: str = "user DSL"):
        super().__init__(algebra.name, provenance)
        self._algebra = algebra

    def build_model(self) -> FreeCdga:
        return self._algebra


class BasedMap:
    """Algebra map A(Y) → A(X) standing for a map f: X → Y"""

    def __init__(self, morphism: DgaMorphism, name: Optional[str] = None):
        violations = morphism.check()
        if violations:
            raise AlgebraError(f"Map {morphism.name} does not commute with d: {violations[0]}")
        self.morphism = morphism
        self.name = name or morphism.name

    @property
    def target_model(self) -> FreeCdga:
        """Model of Y"""
        return self.morphism.source

    @property
    def source_model(self) -> FreeCdga:
        """Model of X"""
        return self.morphism.target

    @classmethod
    def identity(cls, space: SpaceModel) -> "BasedMap":
        return cls(DgaMorphism.identity(space.model), name=f"id_{space.name}")

    @classmethod
    def trivial(cls, y: SpaceModel, x: SpaceModel) -> "BasedMap":
        """The constant map: every generator goes to zero"""
        return cls(DgaMorphism(y.model, x.model, {}, name=f"const_{x.name}→{y.name}"), name="constant")

    @property
    def is_trivial(self) -> bool:
        return all(value.is_zero for value in self.morphism.assignment.values())

    def __repr__(self) -> str:
        return f"BasedMap({self.name})"
