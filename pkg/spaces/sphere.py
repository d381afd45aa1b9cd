from typing import Optional

from core.cdga import FreeCdga, build_cdga
from core.errors import DegreeError
from core.graded_algebra import Element, Generator
from .base_space import SpaceModel


class Sphere(SpaceModel):
    """Sⁿ: Λ(x_n) for n odd, Λ(x_n, y_{2n−1}; dy = x²) for n even"""

    def __init__(self, n: int):
        if n < 1:
            raise DegreeError(f"Sphere dimension must be ≥ 1, got {n}")
        super().__init__(f"sphere({n})")
        self.n = n

    def build_model(self) -> FreeCdga:
        x = Generator("x", self.n)
        if self.n % 2:
            return build_cdga([x], {}, name=self.name)
        y = Generator("y", 2 * self.n - 1)
        return build_cdga([x, y], {"y": Element.generator(x) ** 2}, name=self.name)

    @property
    def cohomology_top(self) -> Optional[int]:
        return self.n
