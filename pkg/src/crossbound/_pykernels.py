"""Pure-Python versions of the compiled inner loops."""

import math


def _shared(a, b):
    d = a - b
    if d == 0:
        return 2
    if d == 1 or d == -1:
        return 1
    return 0


def pair_class_totals(upper):
    n1 = n2 = 0
    n = len(upper)
    for i in range(n):
        ui = upper[i]
        for j in range(i + 1, n):
            s = _shared(ui, upper[j])
            if s == 1:
                n1 += 1
            elif s == 2:
                n2 += 1
    return n1, n2


def shared_upper_profile(upper):
    n = len(upper)
    one = [0] * n
    two = [0] * n
    for i in range(n):
        ui = upper[i]
        c1 = c2 = 0
        for j in range(n):
            if j == i:
                continue
            s = _shared(ui, upper[j])
            if s == 1:
                c1 += 1
            elif s == 2:
                c2 += 1
        one[i] = c1
        two[i] = c2
    return one, two


def distinct_curves(upper, masks):
    n = len(upper)
    for i in range(n):
        for j in range(i + 1, n):
            if upper[i] == upper[j] and masks[i] == masks[j]:
                return False
    return True


def objective_grid_min(n, step):
    best_i, best = 1, math.inf
    for i in range(1, n + 1):
        x = i * step
        h = -x * math.log(x) - (1.0 - x) * math.log(1.0 - x)
        f = 2.0 * x / (h * h)
        if f < best:
            best, best_i = f, i
    return best_i, best
