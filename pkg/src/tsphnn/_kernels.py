"""Hot numeric kernels, JIT-compiled with numba when available.

Every kernel is plain Python over NumPy arrays; ``maybe_njit`` compiles it
with ``numba.njit`` unless the environment variable ``TSPHNN_NO_NUMBA`` is
set (to anything other than "0"/"false") or numba is not importable.  Both
paths execute the same source, so results are identical move-for-move;
only speed differs.  ``benchmarks/bench_kernels.py`` compares the two.
"""

import os

import numpy as np


def _numba_requested() -> bool:
    flag = os.environ.get("TSPHNN_NO_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


NUMBA_ENABLED = False
if _numba_requested():
    try:
        import numba

        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False


def maybe_njit(func):
    if NUMBA_ENABLED:
        return numba.njit(cache=True)(func)
    return func


@maybe_njit
def closed_tour_length(d, order):
    """Length of the closed tour visiting ``order`` and returning to its start."""
    n = order.shape[0]
    total = 0.0
    for i in range(n - 1):
        total += d[order[i], order[i + 1]]
    total += d[order[n - 1], order[0]]
    return total


@maybe_njit
def next_permutation(a):
    """Advance ``a`` in place to its lexicographic successor.

    Returns False when ``a`` was already the last permutation.
    """
    n = a.shape[0]
    i = n - 2
    while i >= 0 and a[i] >= a[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = n - 1
    while a[j] <= a[i]:
        j -= 1
    a[i], a[j] = a[j], a[i]
    lo = i + 1
    hi = n - 1
    while lo < hi:
        a[lo], a[hi] = a[hi], a[lo]
        lo += 1
        hi -= 1
    return True


@maybe_njit
def brute_force_search(d):
    """Exhaustive minimum over all (n-1)!/2 canonical closed tours.

    City 0 is pinned to the first slot and only orderings whose second city
    is smaller than their last are evaluated, so each undirected tour is
    scored exactly once.  Enumeration is lexicographic and ties keep the
    first (lexicographically smallest) tour.
    """
    n = d.shape[0]
    tail = np.arange(1, n, dtype=np.int64)
    best = np.empty(n, dtype=np.int64)
    best[0] = 0
    best[1:] = tail
    best_len = np.inf
    more = True
    while more:
        if tail[0] < tail[n - 2]:
            length = d[0, tail[0]]
            for i in range(n - 2):
                length += d[tail[i], tail[i + 1]]
            length += d[tail[n - 2], 0]
            if length < best_len:
                best_len = length
                best[1:] = tail
        more = next_permutation(tail)
    return best, best_len


@maybe_njit
def swap_positions(order, k, uniforms):
    """Exchange the cities at k disjoint position pairs, chosen by ``uniforms``.

    ``uniforms`` supplies 2k draws in [0, 1) consumed by a partial
    Fisher-Yates shuffle that picks 2k distinct positions; consecutive
    picks are paired.  Returns a new array; ``order`` is untouched.
    """
    n = order.shape[0]
    pos = np.arange(n)
    for j in range(2 * k):
        r = j + int(uniforms[j] * (n - j))
        if r >= n:
            r = n - 1
        pos[j], pos[r] = pos[r], pos[j]
    out = order.copy()
    for p in range(k):
        a = pos[2 * p]
        b = pos[2 * p + 1]
        out[a], out[b] = out[b], out[a]
    return out


@maybe_njit
def anneal_loop(d, start, t0, cooling, t_floor, iters, k, uniforms):
    """Metropolis annealing over tour space with geometric cooling.

    Each step draws a k-pair swap neighbour (2k uniforms) plus one
    acceptance uniform from row ``uniforms[step]``.  Tracks and returns the
    best tour seen; the final walker state is returned alongside so either
    convention is available to callers.
    """
    cur = start.copy()
    cur_len = closed_tour_length(d, cur)
    best = cur.copy()
    best_len = cur_len
    temps = np.empty(iters)
    cur_lens = np.empty(iters)
    best_lens = np.empty(iters)
    for step in range(iters):
        temp = t0 * cooling ** step
        if temp < t_floor:
            temp = t_floor
        cand = swap_positions(cur, k, uniforms[step])
        cand_len = closed_tour_length(d, cand)
        if cand_len <= cur_len:
            accept = True
        else:
            accept = np.exp(-(cand_len - cur_len) / temp) >= uniforms[step, 2 * k]
        if accept:
            cur = cand
            cur_len = cand_len
            if cur_len < best_len:
                best_len = cur_len
                best = cur.copy()
        temps[step] = temp
        cur_lens[step] = cur_len
        best_lens[step] = best_len
    return best, best_len, cur, temps, cur_lens, best_lens


@maybe_njit
def hopfield_dynamics(w, bias, g, threshold, orders, snaps):
    """Asynchronous threshold updates until a full sweep changes nothing.

    ``g`` (flat n^2 state, mutated in place) is swept in the unit order
    given by each row of ``orders``.  After each sweep the state is copied
    into ``snaps``.  Returns (sweeps_used, converged, max_de) where max_de
    is the largest single-update energy change observed (-inf when no unit
    ever flipped); with symmetric zero-diagonal weights it stays <= 0.
    """
    n2 = g.shape[0]
    max_sweeps = orders.shape[0]
    sweeps_used = 0
    converged = False
    max_de = -np.inf
    for s in range(max_sweeps):
        changed = False
        for t in range(n2):
            u = orders[s, t]
            net = np.dot(w[u], g) + bias[u]
            new = 1.0 if net >= threshold else 0.0
            dv = new - g[u]
            if dv != 0.0:
                de = -dv * net
                if de > max_de:
                    max_de = de
                g[u] = new
                changed = True
        snaps[s, :] = g
        sweeps_used = s + 1
        if not changed:
            converged = True
            break
    return sweeps_used, converged, max_de


@maybe_njit
def two_opt_loop(d, start, min_gain):
    """Best-improvement 2-opt: reverse the segment whose exchange saves most.

    Repeats until no reversal improves the closed tour by more than
    ``min_gain``.  Candidate scan order (and therefore tie-breaking) is
    fixed, so the result is deterministic.
    """
    n = start.shape[0]
    tour = start.copy()
    improved = True
    while improved:
        improved = False
        best_delta = -min_gain
        best_i = -1
        best_j = -1
        for i in range(1, n - 1):
            a = tour[i - 1]
            b = tour[i]
            for j in range(i + 1, n):
                c = tour[j]
                e = tour[(j + 1) % n]
                delta = d[a, c] + d[b, e] - d[a, b] - d[c, e]
                if delta < best_delta:
                    best_delta = delta
                    best_i = i
                    best_j = j
        if best_i >= 0:
            lo = best_i
            hi = best_j
            while lo < hi:
                tour[lo], tour[hi] = tour[hi], tour[lo]
                lo += 1
                hi -= 1
            improved = True
    return tour


@maybe_njit
def _rebuild_three_opt(tour, i, j, k, combo):
    """Reconnect the three cut edges (i,i+1), (j,j+1), (k,k+1) per ``combo``.

    With segments S1 = tour[i+1..j] and S2 = tour[j+1..k], the 7 non-identity
    reconnections are every combination of reversing S1/S2 and swapping them.
    """
    n = tour.shape[0]
    out = np.empty(n, dtype=np.int64)
    idx = 0
    for p in range(i + 1):
        out[idx] = tour[p]
        idx += 1
    if combo == 1:  # rev(S1), S2
        for p in range(j, i, -1):
            out[idx] = tour[p]
            idx += 1
        for p in range(j + 1, k + 1):
            out[idx] = tour[p]
            idx += 1
    elif combo == 2:  # S1, rev(S2)
        for p in range(i + 1, j + 1):
            out[idx] = tour[p]
            idx += 1
        for p in range(k, j, -1):
            out[idx] = tour[p]
            idx += 1
    elif combo == 3:  # rev(S1), rev(S2)
        for p in range(j, i, -1):
            out[idx] = tour[p]
            idx += 1
        for p in range(k, j, -1):
            out[idx] = tour[p]
            idx += 1
    elif combo == 4:  # S2, S1
        for p in range(j + 1, k + 1):
            out[idx] = tour[p]
            idx += 1
        for p in range(i + 1, j + 1):
            out[idx] = tour[p]
            idx += 1
    elif combo == 5:  # S2, rev(S1)
        for p in range(j + 1, k + 1):
            out[idx] = tour[p]
            idx += 1
        for p in range(j, i, -1):
            out[idx] = tour[p]
            idx += 1
    elif combo == 6:  # rev(S2), S1
        for p in range(k, j, -1):
            out[idx] = tour[p]
            idx += 1
        for p in range(i + 1, j + 1):
            out[idx] = tour[p]
            idx += 1
    else:  # combo == 7: rev(S2), rev(S1)
        for p in range(k, j, -1):
            out[idx] = tour[p]
            idx += 1
        for p in range(j, i, -1):
            out[idx] = tour[p]
            idx += 1
    for p in range(k + 1, n):
        out[idx] = tour[p]
        idx += 1
    return out


@maybe_njit
def three_opt_loop(d, start, min_gain):
    """Best-improvement 3-opt over all edge triples and 7 reconnections each."""
    n = start.shape[0]
    tour = start.copy()
    improved = True
    while improved:
        improved = False
        best_delta = -min_gain
        best_i = -1
        best_j = -1
        best_k = -1
        best_combo = 0
        for i in range(n - 2):
            a = tour[i]
            b = tour[i + 1]
            for j in range(i + 1, n - 1):
                c = tour[j]
                dd = tour[j + 1]
                for k in range(j + 1, n):
                    e = tour[k]
                    f = tour[(k + 1) % n]
                    base = d[a, b] + d[c, dd] + d[e, f]
                    d1 = d[a, c] + d[b, dd] + d[e, f] - base
                    d2 = d[a, b] + d[c, e] + d[dd, f] - base
                    d3 = d[a, c] + d[b, e] + d[dd, f] - base
                    d4 = d[a, dd] + d[e, b] + d[c, f] - base
                    d5 = d[a, dd] + d[e, c] + d[b, f] - base
                    d6 = d[a, e] + d[dd, b] + d[c, f] - base
                    d7 = d[a, e] + d[dd, c] + d[b, f] - base
                    if d1 < best_delta:
                        best_delta = d1
                        best_i, best_j, best_k, best_combo = i, j, k, 1
                    if d2 < best_delta:
                        best_delta = d2
                        best_i, best_j, best_k, best_combo = i, j, k, 2
                    if d3 < best_delta:
                        best_delta = d3
                        best_i, best_j, best_k, best_combo = i, j, k, 3
                    if d4 < best_delta:
                        best_delta = d4
                        best_i, best_j, best_k, best_combo = i, j, k, 4
                    if d5 < best_delta:
                        best_delta = d5
                        best_i, best_j, best_k, best_combo = i, j, k, 5
                    if d6 < best_delta:
                        best_delta = d6
                        best_i, best_j, best_k, best_combo = i, j, k, 6
                    if d7 < best_delta:
                        best_delta = d7
                        best_i, best_j, best_k, best_combo = i, j, k, 7
        if best_combo > 0:
            tour = _rebuild_three_opt(tour, best_i, best_j, best_k, best_combo)
            improved = True
    return tour


def warmup():
    """Trigger JIT compilation of every kernel on a tiny problem."""
    d = np.array([[0.0, 1.0, 2.0], [1.0, 0.0, 1.5], [2.0, 1.5, 0.0]])
    order = np.array([0, 1, 2], dtype=np.int64)
    closed_tour_length(d, order)
    brute_force_search(d)
    u = np.full((2, 3), 0.5)
    anneal_loop(d, order, 1.0, 0.9, 1e-12, 2, 1, u)
    two_opt_loop(d, order, 1e-12)
    three_opt_loop(d, order, 1e-12)
    w = np.zeros((9, 9))
    bias = np.zeros(9)
    g = np.zeros(9)
    orders = np.arange(9, dtype=np.int64).reshape(1, 9).repeat(2, axis=0)
    snaps = np.zeros((2, 9))
    hopfield_dynamics(w, bias, g, 0.0, orders, snaps)
