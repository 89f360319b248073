# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled walk kernels: scalar inner loops over walks and steps.

Same contract as walkcheck.kernel_py; see that module for semantics.
"""

import numpy as np

cimport cython
cimport numpy as cnp

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32
ctypedef cnp.uint8_t u8


def walk_endpoints(i32[:, ::1] adj, i32[::1] deg, int d,
                   i64[::1] starts, u8[:, ::1] coins, i64[::1] groups,
                   u8[:, ::1] cache, i64[::1] endpoints, i64[::1] moves):
    cdef Py_ssize_t B = coins.shape[0]
    cdef Py_ssize_t L = coins.shape[1]
    cdef Py_ssize_t i, j
    cdef long v, g, mv
    cdef int c
    for i in range(B):
        v = starts[i]
        g = groups[i]
        mv = 0
        for j in range(L):
            c = coins[i, j]
            if c < d:
                cache[g, v * d + c] = 1
                if c < deg[v]:
                    v = adj[v, c]
                    mv += 1
        endpoints[i] = v
        moves[i] = mv


def walk_traces(i32[:, ::1] adj, i32[::1] deg, int d,
                i64[::1] starts, u8[:, ::1] coins, i64[::1] groups,
                u8[:, ::1] cache, i32[:, ::1] verts, u8[:, ::1] pars):
    cdef Py_ssize_t B = coins.shape[0]
    cdef Py_ssize_t L = coins.shape[1]
    cdef Py_ssize_t i, j
    cdef long v, g
    cdef int c
    cdef u8 par
    for i in range(B):
        v = starts[i]
        g = groups[i]
        par = 0
        for j in range(L):
            c = coins[i, j]
            if c < d:
                cache[g, v * d + c] = 1
                if c < deg[v]:
                    v = adj[v, c]
                    par ^= 1
            verts[i, j] = <i32>v
            pars[i, j] = par


def walk_parity_scan(i32[:, ::1] adj, i32[::1] deg, int d,
                     i64[::1] starts, u8[:, ::1] coins, i64[::1] groups,
                     u8[:, ::1] cache, u8[:, ::1] occ, u8[::1] hit):
    cdef Py_ssize_t B = coins.shape[0]
    cdef Py_ssize_t L = coins.shape[1]
    cdef Py_ssize_t n = deg.shape[0]
    cdef Py_ssize_t i, j
    cdef long v, g
    cdef int c
    cdef long par
    for i in range(B):
        v = starts[i]
        g = groups[i]
        par = 0
        for j in range(L):
            c = coins[i, j]
            if c < d:
                cache[g, v * d + c] = 1
                if c < deg[v]:
                    v = adj[v, c]
                    par ^= 1
            if occ[g, (1 - par) * n + v]:
                hit[g] = 1
            occ[g, par * n + v] = 1
