"""Small shared helpers."""

from __future__ import annotations

import math

# ceil after snapping to 9 decimals, so float fuzz on exact integers
# (e.g. 27**(1/3) = 3.0000000000000004) does not bump the result
def ceil_int(value: float) -> int:
    return math.ceil(round(value, 9))
