# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled gate and channel kernels.

All kernels mutate their array argument in place. Qubit ``q`` of an
``n``-qubit register lives at bit position ``n - 1 - q`` of the basis index.
"""

cdef inline Py_ssize_t _bit(int n, int q):
    return (<Py_ssize_t>1) << (n - 1 - q)


def apply_1q_sv(double complex[::1] psi, int n, int q, double complex[:, ::1] u):
    cdef Py_ssize_t dim = psi.shape[0]
    cdef Py_ssize_t b = _bit(n, q)
    cdef Py_ssize_t i, j
    cdef double complex u00 = u[0, 0], u01 = u[0, 1], u10 = u[1, 0], u11 = u[1, 1]
    cdef double complex a0, a1
    for i in range(dim):
        if i & b:
            continue
        j = i | b
        a0 = psi[i]
        a1 = psi[j]
        psi[i] = u00 * a0 + u01 * a1
        psi[j] = u10 * a0 + u11 * a1


def apply_cnot_sv(double complex[::1] psi, int n, int control, int target):
    cdef Py_ssize_t dim = psi.shape[0]
    cdef Py_ssize_t cb = _bit(n, control)
    cdef Py_ssize_t tb = _bit(n, target)
    cdef Py_ssize_t i, j
    cdef double complex tmp
    for i in range(dim):
        if (i & cb) and not (i & tb):
            j = i | tb
            tmp = psi[i]
            psi[i] = psi[j]
            psi[j] = tmp


def apply_1q_dm(double complex[:, ::1] rho, int n, int q, double complex[:, ::1] u):
    cdef Py_ssize_t dim = rho.shape[0]
    cdef Py_ssize_t b = _bit(n, q)
    cdef Py_ssize_t i, j, r
    cdef double complex u00 = u[0, 0], u01 = u[0, 1], u10 = u[1, 0], u11 = u[1, 1]
    cdef double complex c00 = u00.conjugate(), c01 = u01.conjugate()
    cdef double complex c10 = u10.conjugate(), c11 = u11.conjugate()
    cdef double complex a0, a1
    # U rho
    for i in range(dim):
        if i & b:
            continue
        j = i | b
        for r in range(dim):
            a0 = rho[i, r]
            a1 = rho[j, r]
            rho[i, r] = u00 * a0 + u01 * a1
            rho[j, r] = u10 * a0 + u11 * a1
    # (U rho) U^dagger
    for r in range(dim):
        for i in range(dim):
            if i & b:
                continue
            j = i | b
            a0 = rho[r, i]
            a1 = rho[r, j]
            rho[r, i] = a0 * c00 + a1 * c01
            rho[r, j] = a0 * c10 + a1 * c11


def apply_cnot_dm(double complex[:, ::1] rho, int n, int control, int target):
    cdef Py_ssize_t dim = rho.shape[0]
    cdef Py_ssize_t cb = _bit(n, control)
    cdef Py_ssize_t tb = _bit(n, target)
    cdef Py_ssize_t i, j, r
    cdef double complex tmp
    for i in range(dim):
        if (i & cb) and not (i & tb):
            j = i | tb
            for r in range(dim):
                tmp = rho[i, r]
                rho[i, r] = rho[j, r]
                rho[j, r] = tmp
    for i in range(dim):
        if (i & cb) and not (i & tb):
            j = i | tb
            for r in range(dim):
                tmp = rho[r, i]
                rho[r, i] = rho[r, j]
                rho[r, j] = tmp


def dephase_dm(double complex[:, ::1] rho, int n, int q, double scale):
    cdef Py_ssize_t dim = rho.shape[0]
    cdef Py_ssize_t b = _bit(n, q)
    cdef Py_ssize_t i, j
    for i in range(dim):
        for j in range(dim):
            if (i ^ j) & b:
                rho[i, j] = rho[i, j] * scale
