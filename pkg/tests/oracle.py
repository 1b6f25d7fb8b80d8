"""Brute-force reference implementations, deliberately free of numpy and of
the package's residue reduction: every angle is formed from the raw product."""
import math


def sin2(p, c, N):
    return math.sin(2.0 * math.pi * p * c / N) ** 2


def cost(points, c, N, weights=None):
    weights = weights or [1.0] * len(points)
    return sum(w * sin2(p, c, N) for p, w in zip(points, weights))


def sensitivities(points, N, threshold=1e-12):
    costs = {c: cost(points, c, N) for c in range(1, N + 1)}
    out = []
    for p in points:
        best = 0.0
        for c in range(1, N + 1):
            if costs[c] > threshold:
                best = max(best, sin2(p, c, N) / costs[c])
        out.append(best)
    return out


def argmin_query(points, N, penalty=lambda c: 0.0, queries=None):
    best_c, best_v = None, None
    for c in (queries or range(1, N + 1)):
        v = cost(points, c, N) + penalty(c)
        if best_v is None or v < best_v - 1e-12:
            best_c, best_v = c, v
    return best_c, best_v


def restricted(p, N):
    half = N // 2
    return [c for c in range(1, N + 1) if N / 8 <= (c * p) % half <= 3 * N / 8]


def g_value(p, points, N):
    half = N // 2
    lo = N / (16 * math.log2(N))
    hi = half - lo
    return min(
        sum(1 for q in points if lo <= (c * q) % half <= hi)
        for c in restricted(p, N)
    )
