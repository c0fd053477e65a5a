# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Must stay behaviourally identical to _pykernels."""

from libc.math cimport log


cdef inline int _shared(long long a, long long b) noexcept nogil:
    cdef long long d = a - b
    if d == 0:
        return 2
    if d == 1 or d == -1:
        return 1
    return 0


def pair_class_totals(const long long[:] upper):
    cdef Py_ssize_t n = upper.shape[0], i, j
    cdef long long n1 = 0, n2 = 0
    cdef int s
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                s = _shared(upper[i], upper[j])
                if s == 1:
                    n1 += 1
                elif s == 2:
                    n2 += 1
    return int(n1), int(n2)


def shared_upper_profile(const long long[:] upper):
    cdef Py_ssize_t n = upper.shape[0], i, j
    cdef int s
    one = [0] * n
    two = [0] * n
    cdef long long c1, c2
    for i in range(n):
        c1 = 0
        c2 = 0
        with nogil:
            for j in range(n):
                if j == i:
                    continue
                s = _shared(upper[i], upper[j])
                if s == 1:
                    c1 += 1
                elif s == 2:
                    c2 += 1
        one[i] = c1
        two[i] = c2
    return one, two


def distinct_curves(const long long[:] upper, const unsigned long long[:] masks):
    cdef Py_ssize_t n = upper.shape[0], i, j
    cdef bint ok = True
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                if upper[i] == upper[j] and masks[i] == masks[j]:
                    ok = False
                    break
            if not ok:
                break
    return bool(ok)


def objective_grid_min(Py_ssize_t n, double step):
    cdef Py_ssize_t i, best_i = 1
    cdef double x, h, f, best = 1e300
    with nogil:
        for i in range(1, n + 1):
            x = i * step
            h = -x * log(x) - (1.0 - x) * log(1.0 - x)
            f = 2.0 * x / (h * h)
            if f < best:
                best = f
                best_i = i
    return best_i, best
