from core.cdga import FreeCdga, build_cdga
from core.errors import DegreeError
from core.graded_algebra import Generator
from .base_space import SpaceModel


class EilenbergMacLane(SpaceModel):
    """K(ℚ, n): Λ(x_n) with zero differential"""

    def __init__(self, n: int):
        if n < 1:
            raise DegreeError(f"K(Q, n) needs n ≥ 1, got {n}")
        super().__init__(f"k(Q,{n})")
        self.n = n

    def build_model(self) -> FreeCdga:
        return build_cdga([Generator("x", self.n)], {}, name=self.name)

    @property
    def cohomology_top(self):
        return self.n if self.n % 2 else None
