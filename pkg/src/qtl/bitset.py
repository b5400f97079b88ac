"""Element sets and point sets as Python ints used as bit masks.

Bit ``i`` set means index ``i`` is a member.  Carriers are capped at 64, so
every mask also fits a ``uint64`` when handed to the numeric kernels.
"""

from typing import Iterable, Iterator


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def members(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask: int) -> list:
    return list(members(mask))


def full(n: int) -> int:
    return (1 << n) - 1


def size(mask: int) -> int:
    return mask.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
