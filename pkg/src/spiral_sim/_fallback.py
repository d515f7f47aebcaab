"""Pure-numpy tick kernel, used when the compiled extension is unavailable."""

import numpy as np


def step_counts(w_old, w_new, drive, index, beta, threshold):
    """Write the next willingness buffer into ``w_new`` and count transitions.

    Neighbour sums accumulate column by column so every agent adds its
    neighbours in table order, matching the compiled kernel bit for bit.
    Padded slots read a trailing zero.
    """
    padded = np.append(w_old, 0.0)
    gathered = padded[index.table]
    acc = np.zeros(len(w_old))
    for c in range(gathered.shape[1]):
        acc += gathered[:, c]
    np.add(w_old + drive, beta * acc, out=w_new)
    was_silent = w_old <= threshold
    is_silent = w_new <= threshold
    silent = int(is_silent.sum())
    new_silent = int((is_silent & ~was_silent).sum())
    new_speaking = int((was_silent & ~is_silent).sum())
    return silent, new_silent, new_speaking
