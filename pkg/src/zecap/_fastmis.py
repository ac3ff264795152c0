"""Optional numba-compiled kernel for the independence-number search.

Same branch-and-bound as the pure-Python path in :mod:`zecap.graphs` (greedy
clique-cover bound, bitset neighborhoods), with bitsets packed into uint64
words.  Import failure of numba is non-fatal; callers fall back to Python.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

HAVE_NUMBA = njit is not None

if HAVE_NUMBA:

    @njit(cache=True)
    def _solve(adj, n, W, best_init, incumbent, node_budget):
        # frame d holds its candidate set, its cover order and a cursor
        cand = np.zeros((n + 2, W), dtype=np.uint64)
        order_v = np.zeros((n + 2, n), dtype=np.int32)
        order_k = np.zeros((n + 2, n), dtype=np.int32)
        pos = np.zeros(n + 2, dtype=np.int64)
        chosen = np.zeros(n + 2, dtype=np.int32)
        best_set = incumbent.copy()
        best = best_init

        class_mask = np.zeros((n, W), dtype=np.uint64)
        class_len = np.zeros(n, dtype=np.int32)
        class_members = np.zeros((n, n), dtype=np.int32)

        for v in range(n):
            w = v >> 6
            cand[0, w] |= np.uint64(1) << np.uint64(v & 63)

        nodes = np.int64(0)
        exact = True
        d = 0
        order_v[0, 0] = -1

        while d >= 0:
            if pos[d] == 0 and order_v[d, 0] == -1:
                # fresh frame: build the greedy clique cover of cand[d]
                nodes += 1
                if nodes > node_budget:
                    exact = False
                    break
                ncls = 0
                olen = 0
                for w in range(W):
                    bits = cand[d, w]
                    while bits != np.uint64(0):
                        t = 0
                        x = bits
                        while x & np.uint64(1) == np.uint64(0):
                            x >>= np.uint64(1)
                            t += 1
                        v = (w << 6) + t
                        bits &= bits - np.uint64(1)
                        placed = False
                        for ci in range(ncls):
                            ok = True
                            for ww in range(W):
                                if class_mask[ci, ww] & ~adj[v, ww] != np.uint64(0):
                                    ok = False
                                    break
                            if ok:
                                class_mask[ci, v >> 6] |= np.uint64(1) << np.uint64(v & 63)
                                class_members[ci, class_len[ci]] = v
                                class_len[ci] += 1
                                placed = True
                                break
                        if not placed:
                            for ww in range(W):
                                class_mask[ncls, ww] = np.uint64(0)
                            class_mask[ncls, v >> 6] = np.uint64(1) << np.uint64(v & 63)
                            class_members[ncls, 0] = v
                            class_len[ncls] = 1
                            ncls += 1
                for ci in range(ncls):
                    for mi in range(class_len[ci]):
                        order_v[d, olen] = class_members[ci, mi]
                        order_k[d, olen] = ci + 1
                        olen += 1
                pos[d] = olen - 1
                if olen == 0:
                    pos[d] = -1

            if pos[d] < 0:
                d -= 1
                continue

            p = pos[d]
            v = order_v[d, p]
            k = order_k[d, p]
            if d + k <= best:
                pos[d] = -1  # cover classes are sorted; nothing left can improve
                continue
            pos[d] -= 1
            cand[d, v >> 6] &= ~(np.uint64(1) << np.uint64(v & 63))
            chosen[d] = v
            if d + 1 > best:
                best = d + 1
                for i in range(d + 1):
                    best_set[i] = chosen[i]
            empty = True
            for w in range(W):
                cand[d + 1, w] = cand[d, w] & ~adj[v, w]
                if cand[d + 1, w] != np.uint64(0):
                    empty = False
            if not empty:
                d += 1
                pos[d] = 0
                order_v[d, 0] = -1

        return best, best_set, nodes, exact

    def solve(neighbor_masks, n, best_init, incumbent, node_budget):
        """Run the compiled search; returns (alpha, witness, nodes, exact)."""
        W = max(1, (n + 63) // 64)
        adj = np.zeros((n, W), dtype=np.uint64)
        for v, mask in enumerate(neighbor_masks):
            m = mask
            w = 0
            while m:
                adj[v, w] = m & 0xFFFFFFFFFFFFFFFF
                m >>= 64
                w += 1
        inc = np.full(n + 2, -1, dtype=np.int32)
        for i, v in enumerate(incumbent):
            inc[i] = v
        best, best_set, nodes, exact = _solve(adj, n, W, best_init, inc, node_budget)
        witness = sorted(int(v) for v in best_set[:best])
        return best, witness, int(nodes), bool(exact)

else:  # pragma: no cover
    def solve(*args, **kwargs):
        raise RuntimeError("numba is not available")
