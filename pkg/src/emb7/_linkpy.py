"""Pure numpy kernel for the degree integrand of the generalized Gauss map.

Twin of the compiled extension in _linkcore.pyx; selected automatically
when the extension is unavailable.  Accumulates

    sum_{a,b} w_a w_b det[D | dF_a | -dH_b] / |D|^7,   D = F_a - H_b,

chunked over the first cycle's nodes so memory stays bounded.  Chunks are
combined in index order, so results are reproducible run to run.
"""

from __future__ import annotations

import numpy as np

_CHUNK_BYTES = 1 << 27


def pair_sum(fx: np.ndarray, dfx: np.ndarray, wx: np.ndarray,
             fy: np.ndarray, dfy: np.ndarray, wy: np.ndarray) -> float:
    na = fx.shape[0]
    nb = fy.shape[0]
    if na == 0 or nb == 0:
        return 0.0
    chunk = max(1, min(na, _CHUNK_BYTES // (nb * 49 * 8)))
    total = 0.0
    for a0 in range(0, na, chunk):
        a1 = min(a0 + chunk, na)
        c = a1 - a0
        diff = fx[a0:a1, None, :] - fy[None, :, :]          # (c, nb, 7)
        mats = np.empty((c, nb, 7, 7))
        mats[..., 0] = diff
        for j in range(3):
            mats[..., 1 + j] = dfx[a0:a1, None, j, :]
            mats[..., 4 + j] = -dfy[None, :, j, :]
        dets = np.linalg.det(mats)
        r2 = np.einsum("abi,abi->ab", diff, diff)
        weights = wx[a0:a1, None] * wy[None, :]
        total += float(np.sum(weights * dets / (r2 ** 3 * np.sqrt(r2))))
    return total
