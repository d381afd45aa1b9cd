from typing import Optional, Sequence

from core.cdga import FreeCdga, rename_generators, tensor_product, trivial_algebra
from core.errors import AlgebraError
from .base_space import SpaceModel


class ProductSpace(SpaceModel):
    """X₁ × ⋯ × X_k; generator ids of factor i get the suffix i (1-based)"""

    def __init__(self, factors: Sequence[SpaceModel]):
        if not factors:
            raise AlgebraError("A product needs at least one factor")
        super().__init__("product(" + ",".join(f.name for f in factors) + ")")
        self.factors = list(factors)

    def build_model(self) -> FreeCdga:
        model = trivial_algebra(self.name)
        for index, factor in enumerate(self.factors, start=1):
            renamed, _ = rename_generators(
                factor.model, {gen.id: f"{gen.id}{index}" for gen in factor.model.generators}
            )
            model = tensor_product(model, renamed, name=self.name)
        return model

    @property
    def cohomology_top(self) -> Optional[int]:
        tops = [factor.cohomology_top for factor in self.factors]
        if any(top is None for top in tops):
            return None
        return sum(tops)
