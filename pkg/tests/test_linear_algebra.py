from fractions import Fraction

import pytest

from core.errors import ComplexError, WindowError
from core.linear_algebra import (
    ComplexWindow,
    DegreeWindow,
    EchelonSpan,
    cohomology_window,
    is_invertible,
    kernel_basis,
    mat_vec,
    rank,
    solve_linear,
)


def test_kernel_basis():
    assert kernel_basis([[1, 0], [0, 1]], 2) == []
    assert kernel_basis([[2, 0], [0, 0]], 2) == [[0, 1]]
    assert kernel_basis([[1, 2], [1, 2]], 2) == [[1, Fraction(-1, 2)]]
    assert kernel_basis([], 2) == [[1, 0], [0, 1]]
    assert kernel_basis([[2, 2, 2], [3, 3, 3]], 3) == [[1, -1, 0], [1, 0, -1]]


def test_kernel_vectors_are_annihilated(rng):
    for _ in range(50):
        rows, columns = int(rng.integers(1, 5)), int(rng.integers(1, 6))
        matrix = [[Fraction(int(v)) for v in rng.integers(-3, 4, size=columns)] for _ in range(rows)]
        kernel = kernel_basis(matrix, columns)
        assert len(kernel) + rank(matrix, columns) == columns
        for vector in kernel:
            assert not any(mat_vec(matrix, vector))


def test_solve_linear():
    assert solve_linear([[1, 1], [1, -1]], [3, 1], 2) == [2, 1]
    assert solve_linear([[1, 1], [2, 2]], [1, 3], 2) is None
    solution = solve_linear([[Fraction(1, 3), 0]], [1], 2)
    assert solution[0] == 3


def test_is_invertible():
    assert is_invertible([[2, 1], [1, 1]])
    assert not is_invertible([[1, 2], [2, 4]])
    assert not is_invertible([[1, 2, 3]])


def test_echelon_span():
    span = EchelonSpan(3)
    assert span.add([1, 1, 0])
    assert span.add([0, 1, 1])
    assert not span.add([1, 2, 1])
    assert span.contains([2, 0, -2])
    assert not span.contains([0, 0, 1])
    assert span.rank == 2


def test_degree_window():
    window = DegreeWindow.parse("-4:0")
    assert (window.lo, window.hi, window.width) == (-4, 0, 5)
    assert -2 in window and 1 not in window
    assert window.widen().degrees() == range(-5, 2)
    with pytest.raises(WindowError):
        DegreeWindow.parse("3")
    with pytest.raises(WindowError):
        DegreeWindow(2, 1)


def test_cohomology_window_marks_edges():
    # 0 → ℚ² → ℚ → 0 with d = (1 1)
    complex_window = ComplexWindow(
        window=DegreeWindow(0, 1),
        bases={0: ["a", "b"], 1: ["c"]},
        differentials={0: [[1, 1]]},
    )
    slices = cohomology_window(complex_window)
    assert slices[0].dimension == 1
    assert slices[0].edge == "lower"
    assert slices[1].dimension == 0
    assert slices[1].edge == "upper"


def test_complex_check_detects_non_complex():
    complex_window = ComplexWindow(
        window=DegreeWindow(0, 2),
        bases={0: ["a"], 1: ["b"], 2: ["c"]},
        differentials={0: [[1]], 1: [[1]]},
    )
    with pytest.raises(ComplexError):
        complex_window.check()
