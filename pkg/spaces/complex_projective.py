from typing import Optional

from core.cdga import FreeCdga, build_cdga
from core.errors import DegreeError
from core.graded_algebra import Element, Generator
from .base_space import SpaceModel


class ComplexProjective(SpaceModel):
    """ℂPⁿ: Λ(x₂, y_{2n+1}; dy = x^{n+1})"""

    def __init__(self, n: int):
        if n < 1:
            raise DegreeError(f"Complex dimension must be ≥ 1, got {n}")
        super().__init__(f"complex_projective({n})")
        self.n = n

    def build_model(self) -> FreeCdga:
        x = Generator("x", 2)
        y = Generator("y", 2 * self.n + 1)
        return build_cdga([x, y], {"y": Element.generator(x) ** (self.n + 1)}, name=self.name)

    @property
    def cohomology_top(self) -> Optional[int]:
        return 2 * self.n
