# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, floor, fabs, copysign, sqrt, M_PI

cnp.import_array()

cdef extern from *:
    """
    #include <stdint.h>
    static inline uint64_t hm_mulhi(uint64_t a, uint64_t b) {
        return (uint64_t)(((unsigned __int128)a * b) >> 64);
    }
    """
    unsigned long long hm_mulhi(unsigned long long a, unsigned long long b) nogil

ctypedef unsigned long long u64

cdef u64 GAMMA = 0x9E3779B97F4A7C15ULL
cdef u64 MIX1 = 0xBF58476D1CE4E5B9ULL
cdef u64 MIX2 = 0x94D049BB133111EBULL
cdef double TIE_EPS = 1e-9


cdef inline u64 _mix(u64 z) nogil:
    z = (z ^ (z >> 30)) * MIX1
    z = (z ^ (z >> 27)) * MIX2
    return z ^ (z >> 31)


cdef inline double _rha(double x) nogil:
    return copysign(floor(fabs(x) + (0.5 + TIE_EPS)), x)


def round_half_away(x):
    x = np.asarray(x, dtype=np.float64)
    return np.copysign(np.floor(np.abs(x) + (0.5 + TIE_EPS)), x)


def splitmix64_fill(seed, Py_ssize_t n):
    cdef Py_ssize_t i
    cdef u64 state = <u64>(seed & 0xFFFFFFFFFFFFFFFF)
    out = np.empty(max(n, 0), dtype=np.uint64)
    cdef u64[::1] o = out
    with nogil:
        for i in range(n):
            state = state + GAMMA
            o[i] = _mix(state)
    return out


def shuffle_prefix(Py_ssize_t n, Py_ssize_t k, seed):
    cdef Py_ssize_t i, j, tmp
    cdef Py_ssize_t steps = min(k, n - 1)
    cdef u64 state = <u64>(seed & 0xFFFFFFFFFFFFFFFF)
    perm = np.arange(n, dtype=np.int64)
    cdef cnp.int64_t[::1] p = perm
    with nogil:
        for i in range(steps):
            state = state + GAMMA
            j = i + <Py_ssize_t>hm_mulhi(_mix(state), <u64>(n - i))
            tmp = p[i]
            p[i] = p[j]
            p[j] = tmp
    return perm[:k].copy()


def fft_rows(x):
    a = np.ascontiguousarray(x, dtype=np.complex128)
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    out = np.empty((m, n), dtype=np.complex128)
    cdef const double complex[:, ::1] src = a
    cdef double complex[:, ::1] dst = out
    cdef Py_ssize_t bits = 0, r, i, j, b, size, half, start, kk, step
    cdef double complex t, u, w
    while (1 << bits) < n:
        bits += 1
    rev_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] rev = rev_arr
    for i in range(n):
        j = 0
        for b in range(bits):
            j |= ((i >> b) & 1) << (bits - 1 - b)
        rev[i] = j
    tw_arr = np.exp(-2j * np.pi * np.arange(max(n // 2, 1)) / n)
    cdef double complex[::1] tw = tw_arr
    with nogil:
        for r in range(m):
            for i in range(n):
                dst[r, rev[i]] = src[r, i]
            size = 2
            while size <= n:
                half = size // 2
                step = n // size
                start = 0
                while start < n:
                    for kk in range(half):
                        w = tw[kk * step]
                        t = w * dst[r, start + half + kk]
                        u = dst[r, start + kk]
                        dst[r, start + kk] = u + t
                        dst[r, start + half + kk] = u - t
                    start += size
                size *= 2
    return out


def jpeg_blocks(pixels, qtable):
    src_arr = np.ascontiguousarray(pixels, dtype=np.uint8)
    q_arr = np.ascontiguousarray(qtable, dtype=np.float64)
    cdef Py_ssize_t h = src_arr.shape[0], w = src_arr.shape[1]
    out = np.empty((h, w), dtype=np.uint8)
    cdef const unsigned char[:, ::1] src = src_arr
    cdef unsigned char[:, ::1] dst = out
    cdef const double[:, ::1] q = q_arr
    cdef double c[8][8]
    cdef double blk[8][8]
    cdef double tmp[8][8]
    cdef Py_ssize_t bi, bj, i, j, k
    cdef double s, v
    for k in range(8):
        for i in range(8):
            if k == 0:
                c[k][i] = sqrt(0.125)
            else:
                c[k][i] = 0.5 * cos(M_PI * (2 * i + 1) * k / 16.0)
    with nogil:
        for bi in range(0, h, 8):
            for bj in range(0, w, 8):
                for i in range(8):
                    for j in range(8):
                        blk[i][j] = <double>src[bi + i, bj + j] - 128.0
                # tmp = C @ blk
                for i in range(8):
                    for j in range(8):
                        s = 0.0
                        for k in range(8):
                            s = s + c[i][k] * blk[k][j]
                        tmp[i][j] = s
                # blk = tmp @ C.T, then quantize
                for i in range(8):
                    for j in range(8):
                        s = 0.0
                        for k in range(8):
                            s = s + tmp[i][k] * c[j][k]
                        blk[i][j] = _rha(s / q[i, j]) * q[i, j]
                # tmp = C.T @ blk
                for i in range(8):
                    for j in range(8):
                        s = 0.0
                        for k in range(8):
                            s = s + c[k][i] * blk[k][j]
                        tmp[i][j] = s
                # blk = tmp @ C
                for i in range(8):
                    for j in range(8):
                        s = 0.0
                        for k in range(8):
                            s = s + tmp[i][k] * c[k][j]
                        v = _rha(s + 128.0)
                        if v < 0.0:
                            v = 0.0
                        elif v > 255.0:
                            v = 255.0
                        dst[bi + i, bj + j] = <unsigned char>v
    return out
