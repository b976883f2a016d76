"""Pure-numpy fallback for the transfer-matrix chain product.

Same contract as the compiled ``_tmmcore.chain_product``; the product is
formed by pairwise reduction of the stacked per-slice matrices, which changes
only the grouping of the multiplications.
"""

from __future__ import annotations

import numpy as np


def chain_product(g, phase, g_lead):
    g = np.asarray(g, dtype=complex)
    phase = np.asarray(phase, dtype=complex)
    if g.shape != phase.shape:
        raise ValueError("g and phase must have equal length")
    n = g.shape[0]
    left = np.empty(n + 1, dtype=complex)
    left[0] = g_lead
    left[1:] = g
    right = np.empty(n + 1, dtype=complex)
    right[:n] = g
    right[n] = g_lead
    eta = right / left

    mats = np.empty((n + 1, 2, 2), dtype=complex)
    a = 0.5 * (1.0 + eta)
    b = 0.5 * (1.0 - eta)
    mats[:, 0, 0] = a
    mats[:, 1, 1] = a
    mats[:, 0, 1] = b
    mats[:, 1, 0] = b
    # interface j is followed by propagation through slice j
    mats[:n, :, 0] *= phase[:, None]
    mats[:n, :, 1] /= phase[:, None]

    while mats.shape[0] > 1:
        if mats.shape[0] % 2:
            mats = np.concatenate([mats, np.eye(2, dtype=complex)[None]], axis=0)
        mats = mats[0::2] @ mats[1::2]
    m = mats[0]
    return complex(m[0, 0]), complex(m[1, 0])
