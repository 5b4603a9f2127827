"""Pure-Python Z2 column reduction.

Columns are kept as arbitrary-precision integers (bit k set = row k
nonzero), so column addition is a single XOR and the pivot is
``bit_length() - 1``. Fast enough for test- and benchmark-sized
complexes; the compiled kernel covers real workloads.
"""

import numpy as np


def reduce_columns(col_ptr, rows):
    """Reduce a Z2 boundary matrix given in CSC layout.

    Parameters
    ----------
    col_ptr : int64 array, length m+1
        Column j occupies rows[col_ptr[j]:col_ptr[j+1]].
    rows : int32 array
        Row indices per column, sorted ascending.

    Returns
    -------
    lows : int32 array, length m
        lows[j] is the pivot row of reduced column j, or -1 if the
        column reduced to zero.
    """
    m = len(col_ptr) - 1
    lows = np.full(m, -1, dtype=np.int32)
    pivot_owner = {}  # pivot row -> column index
    stored = {}  # column index -> bitmask of its reduced column

    for j in range(m):
        cur = 0
        for r in rows[col_ptr[j] : col_ptr[j + 1]]:
            cur |= 1 << int(r)
        while cur:
            low = cur.bit_length() - 1
            owner = pivot_owner.get(low)
            if owner is None:
                pivot_owner[low] = j
                stored[j] = cur
                lows[j] = low
                break
            cur ^= stored[owner]
    return lows
