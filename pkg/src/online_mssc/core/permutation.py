"""
Permutation algebra for MSSC lists.

A Permutation maps element ids 0..n-1 to 1-based list positions and keeps the
inverse map (position -> element) alongside, so both lookups are O(1).
Reordering cost between two lists is their inversion count, computed with a
merge-sort pass; the quadratic pair count is kept as the reference oracle.
"""

from collections.abc import Iterable, Sequence
from itertools import combinations

from ..exceptions import DomainMismatchError, InvalidPositionError, UnknownElementError


class Permutation:
    """
    Bijection between n elements and list positions 1..n.

    Instances are mutated in place only through move_to_front_inplace(); every
    other operation returns a new object.
    """

    __slots__ = ("_pos", "_elem")

    def __init__(self, positions: Sequence[int]):
        """
        Build a permutation from its forward map.

        Args:
            positions: positions[z] is the 1-based position of element z

        Raises:
            DomainMismatchError: If positions is not a bijection onto 1..n
        """
        n = len(positions)
        if n == 0:
            raise DomainMismatchError("a permutation needs at least one element")
        elem = [-1] * n
        for z, pos in enumerate(positions):
            if not 1 <= pos <= n or elem[pos - 1] != -1:
                raise DomainMismatchError(
                    f"positions {list(positions)} are not a bijection onto 1..{n}"
                )
            elem[pos - 1] = z
        self._pos = list(positions)
        self._elem = elem

    @classmethod
    def from_order(cls, order: Iterable[int]) -> "Permutation":
        """Build a permutation from the list of element ids read front to back."""
        order = list(order)
        n = len(order)
        positions = [0] * n
        for idx, z in enumerate(order):
            if not 0 <= z < n or positions[z]:
                raise DomainMismatchError(
                    f"order {order} is not an arrangement of 0..{n - 1}"
                )
            positions[z] = idx + 1
        return cls(positions)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        """Element z at position z + 1."""
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self._pos)

    def position(self, z: int) -> int:
        """Return the 1-based position of element z."""
        if not 0 <= z < len(self._pos):
            raise UnknownElementError(f"element {z} is not in 0..{len(self._pos) - 1}")
        return self._pos[z]

    def element_at(self, pos: int) -> int:
        """Return the element stored at 1-based position pos."""
        if not 1 <= pos <= len(self._elem):
            raise InvalidPositionError(f"position {pos} is not in 1..{len(self._elem)}")
        return self._elem[pos - 1]

    def order(self) -> list[int]:
        """Element ids by position, front first."""
        return list(self._elem)

    def positions(self) -> list[int]:
        """Positions indexed by element id."""
        return list(self._pos)

    def copy(self) -> "Permutation":
        clone = object.__new__(Permutation)
        clone._pos = list(self._pos)
        clone._elem = list(self._elem)
        return clone

    def move_to_front_inplace(self, z: int) -> int:
        """
        Bring z to position 1 by adjacent swaps and return the swap count.

        Elements that preceded z move back by one position; nothing else moves.
        """
        old = self.position(z)
        elem, pos = self._elem, self._pos
        for i in range(old - 1, 0, -1):
            moved = elem[i - 1]
            elem[i] = moved
            pos[moved] = i + 1
        elem[0] = z
        pos[z] = 1
        return old - 1

    def is_consistent(self) -> bool:
        """Check that the forward and inverse maps agree."""
        return all(self._pos[z] == i + 1 for i, z in enumerate(self._elem))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._pos == other._pos

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self._pos)

    def __repr__(self) -> str:
        return f"Permutation.from_order({self._elem})"


def _check_same_universe(pi1: Permutation, pi2: Permutation) -> None:
    if pi1.n != pi2.n:
        raise DomainMismatchError(
            f"permutations over {pi1.n} and {pi2.n} elements cannot be compared"
        )


def _count_inversions(seq: list[int]) -> tuple[list[int], int]:
    """Merge sort returning (sorted copy, number of inverted pairs)."""
    if len(seq) <= 1:
        return seq, 0
    mid = len(seq) // 2
    left, inv_left = _count_inversions(seq[:mid])
    right, inv_right = _count_inversions(seq[mid:])
    merged: list[int] = []
    inversions = inv_left + inv_right
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            # every element still waiting on the left is larger
            inversions += len(left) - i
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, inversions


def inversion_distance(pi1: Permutation, pi2: Permutation) -> int:
    """
    Number of element pairs ordered differently by pi1 and pi2.

    Equals the minimum number of adjacent swaps turning one list into the
    other. Runs in O(n log n).

    Raises:
        DomainMismatchError: If the permutations have different sizes
    """
    _check_same_universe(pi1, pi2)
    pos2 = pi2._pos
    _, inversions = _count_inversions([pos2[z] for z in pi1._elem])
    return inversions


def inversion_distance_bruteforce(pi1: Permutation, pi2: Permutation) -> int:
    """O(n^2) pair count; reference oracle for inversion_distance."""
    _check_same_universe(pi1, pi2)
    p1, p2 = pi1._pos, pi2._pos
    return sum(
        1
        for x, y in combinations(range(pi1.n), 2)
        if (p1[x] < p1[y]) != (p2[x] < p2[y])
    )


def move_to_front(pi: Permutation, z: int) -> tuple[Permutation, int]:
    """Return (pi with z moved to position 1, number of adjacent swaps used)."""
    moved = pi.copy()
    cost = moved.move_to_front_inplace(z)
    return moved, cost


def position_decompose(pos: int) -> tuple[int, int]:
    """
    Split a position as pos = 2**p + q with 0 <= q < 2**p.

    Raises:
        InvalidPositionError: If pos < 1
    """
    if pos < 1:
        raise InvalidPositionError(f"position {pos} is smaller than 1")
    p = pos.bit_length() - 1
    return p, pos - (1 << p)
