from typing import Optional

from core.cdga import FreeCdga, trivial_algebra
from .base_space import SpaceModel


class Point(SpaceModel):
    """The one-point space, modelled by ℚ"""

    def __init__(self):
        super().__init__("point")

    def build_model(self) -> FreeCdga:
        return trivial_algebra(self.name)

    @property
    def cohomology_top(self) -> Optional[int]:
        return 0
