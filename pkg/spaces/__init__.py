"""
Spaces Package - catalog of rational spaces

Each space carries a minimal Sullivan model; ``space_catalog`` parses names
such as ``sphere(2)``, ``complex_projective(2)``, ``k(Q,4)``, ``point`` and
``product(sphere(2),sphere(3))``.
"""

from typing import Dict, List, Type

from cachetools import LRUCache, cached

from config import Config
from core.errors import AlgebraError
from .base_space import BasedMap, SpaceModel, UserSpace
from .complex_projective import ComplexProjective
from .eilenberg_maclane import EilenbergMacLane
from .point import Point
from .product import ProductSpace
from .sphere import Sphere

__all__ = [
    "SpaceModel",
    "UserSpace",
    "BasedMap",
    "Sphere",
    "ComplexProjective",
    "EilenbergMacLane",
    "Point",
    "ProductSpace",
    "space_catalog",
    "create_space",
    "catalog_names",
]

# Space categories
ELEMENTARY_SPACES = [
    "Sphere",
    "ComplexProjective",
    "EilenbergMacLane",
    "Point",
]

COMPOSITE_SPACES = [
    "ProductSpace",
]


def get_all_space_classes() -> Dict[str, Type[SpaceModel]]:
    """Return all catalog space classes by catalog keyword"""
    return {
        "sphere": Sphere,
        "complex_projective": ComplexProjective,
        "k": EilenbergMacLane,
        "point": Point,
        "product": ProductSpace,
    }


def catalog_names() -> List[str]:
    return [
        "point",
        "sphere(n)",
        "complex_projective(n)",
        "k(Q,n)",
        "product(space,space,...)",
    ]


def create_space(space_type: str, *params) -> SpaceModel:
    """Factory function to create spaces by catalog keyword"""
    space_classes = get_all_space_classes()

    if space_type not in space_classes:
        raise AlgebraError(f"Unknown space type: {space_type}")

    return space_classes[space_type](*params)


def _split_arguments(text: str) -> List[str]:
    parts, depth, current = [], 0, ""
    for char in text:
        if char == "," and depth == 0:
            parts.append(current.strip())
            current = ""
            continue
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth < 0:
                raise AlgebraError(f"Unbalanced parentheses in '{text}'")
        current += char
    if depth:
        raise AlgebraError(f"Unbalanced parentheses in '{text}'")
    if current.strip():
        parts.append(current.strip())
    return parts


def _parse_integer(text: str, context: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise AlgebraError(f"Expected an integer in {context}, got '{text}'")


@cached(cache=LRUCache(maxsize=Config.AQ_CACHE_SIZE))
def space_catalog(name: str) -> SpaceModel:
    """Parse a catalog name into a space with a validated minimal model"""
    text = name.replace(" ", "")
    if text == "point":
        return create_space("point")
    if "(" not in text or not text.endswith(")"):
        raise AlgebraError(f"Unknown catalog space '{name}'")
    keyword, inner = text[:text.index("(")], text[text.index("(") + 1:-1]
    arguments = _split_arguments(inner)
    if keyword == "product":
        if not arguments:
            raise AlgebraError("product() needs at least one factor")
        return create_space("product", [space_catalog(argument) for argument in arguments])
    if keyword == "k":
        if len(arguments) != 2 or arguments[0] not in ("Q", "q"):
            raise AlgebraError(f"Expected k(Q,n), got '{name}'")
        return create_space("k", _parse_integer(arguments[1], name))
    if keyword in ("sphere", "complex_projective"):
        if len(arguments) != 1:
            raise AlgebraError(f"{keyword} takes one integer, got '{name}'")
        return create_space(keyword, _parse_integer(arguments[0], name))
    raise AlgebraError(f"Unknown catalog space '{name}'")
