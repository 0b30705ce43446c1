# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; see _kernels_py for the reference semantics."""
import numpy as np

from libc.stdint cimport int64_t, uint64_t

BACKEND = "cython"


def digits_from_bits(bits, radices, double bias=-1.0):
    b_np = np.ascontiguousarray(bits, dtype=np.uint64)
    r_np = np.ascontiguousarray(radices, dtype=np.int64)
    cdef uint64_t[:, ::1] b = b_np
    cdef int64_t[::1] r = r_np
    cdef Py_ssize_t count = b.shape[0], depth = b.shape[1]
    out = np.empty((count, depth), dtype=np.int64)
    cdef int64_t[:, ::1] d = out
    cdef Py_ssize_t i, j
    cdef double u
    with nogil:
        for i in range(count):
            for j in range(depth):
                d[i, j] = <int64_t>(b[i, j] % <uint64_t>r[j])
            if bias >= 0.0 and depth > 0:
                u = <double>(b[i, 0] >> 11) * (1.0 / 9007199254740992.0)
                if u < bias:
                    d[i, 0] = 0
                else:
                    d[i, 0] = 1 + <int64_t>(b[i, 0] % <uint64_t>(r[0] - 1))
    return out


def phi_midpoints(digits, radices):
    d_np = np.ascontiguousarray(digits, dtype=np.int64)
    r_np = np.ascontiguousarray(radices, dtype=np.int64)
    cdef int64_t[:, ::1] d = d_np
    cdef int64_t[::1] r = r_np
    cdef Py_ssize_t count = d.shape[0], depth = r.shape[0]
    out = np.empty(count, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, j
    cdef double v
    with nogil:
        for i in range(count):
            v = 0.5
            for j in range(depth - 1, -1, -1):
                v = (<double>d[i, j] + v) / <double>r[j]
            o[i] = v
    return out


def pushforward_sweep(radices):
    rad = [int(n) for n in radices]
    cdef Py_ssize_t n = len(rad)
    cdef int64_t size = 1
    for x in rad:
        size *= x
    radv_np = np.array(rad if rad else [1], dtype=np.int64)
    weights_np = np.zeros(max(n, 1), dtype=np.int64)
    cdef int64_t prefix = 1
    cdef Py_ssize_t k
    for k in range(n):
        prefix *= rad[k]
        weights_np[k] = size // prefix
    cdef int64_t[::1] radv = radv_np
    cdef int64_t[::1] w = weights_np
    phi_np = np.empty(size, dtype=np.int64)
    cdef int64_t[::1] phi_num = phi_np
    odo_np = np.zeros(max(n, 1), dtype=np.int64)
    cdef int64_t[::1] odo = odo_np
    cdef int64_t acc
    cdef Py_ssize_t p, i, j
    cdef int64_t failures = 0
    cdef int64_t first_a = -1, first_b = -1
    with nogil:
        # Odometer enumeration visits C_n in lex order.
        for p in range(size):
            acc = 0
            for k in range(n):
                acc += odo[k] * w[k]
            phi_num[p] = acc
            k = n - 1
            while k >= 0:
                odo[k] += 1
                if odo[k] < radv[k]:
                    break
                odo[k] = 0
                k -= 1
        for i in range(size - 1):
            for j in range(i + 1, size):
                if phi_num[j] - phi_num[i] != j - i:
                    if failures == 0:
                        first_a = i
                        first_b = j
                    failures += 1
    return size * (size - 1) // 2, failures, first_a, first_b
