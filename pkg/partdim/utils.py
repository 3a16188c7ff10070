from typing import List

from partdim.errors import InvalidParams


def parse_int_range(text: str) -> List[int]:
    """
    Parse a size range for sweeps.

    Args:
        text: Either a single integer like "6" or an inclusive range "3..9"

    Returns:
        list: The integers in the range, ascending
    """
    try:
        if ".." in text:
            low, high = text.split("..", 1)
            start, stop = int(low), int(high)
        else:
            start = stop = int(text)
    except ValueError:
        raise InvalidParams(f"Cannot parse range {text!r}, expected N or A..B")
    if start > stop:
        raise InvalidParams(f"Empty range {text!r}")
    return list(range(start, stop + 1))


def half_floor(k: int) -> int:
    return k // 2


def half_ceil(k: int) -> int:
    return (k + 1) // 2
