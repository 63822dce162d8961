"""Compiled lattice-point walker; mirrors the pure-Python one in lattices.py.

Kept in its own module so importing the package never requires numba.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    AVAILABLE = True
except ImportError:  # pragma: no cover
    njit = None
    AVAILABLE = False

RADIUS_INFLATION = 1.0 + 2.0 ** -20

if AVAILABLE:

    @njit(cache=True)
    def _walk(dvec, lmat, center, radius, half):  # pragma: no cover - compiled
        d = dvec.shape[0]
        centered = False
        for i in range(d):
            if center[i] != 0.0:
                centered = True
        cap = 4096
        out = np.empty((cap, d), dtype=np.int64)
        count = 0
        x = np.zeros(d, dtype=np.int64)
        acc = np.zeros(d + 1)
        lo = np.zeros(d, dtype=np.int64)
        hi = np.zeros(d, dtype=np.int64)
        ck = np.zeros(d)
        best = radius

        k = d - 1
        while True:
            # init level k
            s = center[k]
            for i in range(k + 1, d):
                s -= lmat[i, k] * (x[i] - center[i])
            ck[k] = s
            rem = best - acc[k + 1]
            if rem < 0.0:
                lo[k] = 0
                hi[k] = -1
            else:
                spread = np.sqrt(rem / dvec[k]) if dvec[k] > 0.0 else 0.0
                lo[k] = np.int64(np.ceil(s - spread - 1e-9))
                hi[k] = np.int64(np.floor(s + spread + 1e-9))
                if half and not centered and lo[k] < 0:
                    allzero = True
                    for i in range(k + 1, d):
                        if x[i] != 0:
                            allzero = False
                            break
                    if allzero:
                        lo[k] = 0
            x[k] = lo[k]

            while True:
                if x[k] > hi[k]:
                    k += 1
                    if k >= d:
                        return out[:count]
                    x[k] += 1
                    continue
                diff = x[k] - ck[k]
                val = acc[k + 1] + dvec[k] * diff * diff
                if val > best:
                    x[k] += 1
                    continue
                if k == 0:
                    skip = False
                    if half and not centered:
                        allzero = True
                        for i in range(d):
                            if x[i] != 0:
                                allzero = False
                                break
                        skip = allzero
                    if not skip:
                        if count == cap:
                            cap *= 2
                            grown = np.empty((cap, d), dtype=np.int64)
                            grown[:count] = out
                            out = grown
                        out[count] = x
                        count += 1
                        nb = val * RADIUS_INFLATION
                        if nb < best:
                            best = nb
                    x[0] += 1
                    continue
                acc[k] = val
                k -= 1
                break  # drop to the init-level block


def enumerate_points(dvec, lmat, center, radius, half):
    if not AVAILABLE:  # pragma: no cover
        raise RuntimeError("numba kernel not available")
    return _walk(
        np.ascontiguousarray(dvec, dtype=np.float64),
        np.ascontiguousarray(lmat, dtype=np.float64),
        np.ascontiguousarray(center, dtype=np.float64),
        float(radius),
        bool(half),
    )
