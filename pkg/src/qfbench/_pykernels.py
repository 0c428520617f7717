"""Pure-Python (numpy) versions of the kernels in ``_kernels.pyx``.

Same signatures and in-place semantics as the compiled module.
"""

import numpy as np


def _cnot_permutation(n, control, target):
    idx = np.arange(1 << n)
    cb = 1 << (n - 1 - control)
    tb = 1 << (n - 1 - target)
    return np.where(idx & cb, idx ^ tb, idx)


def apply_1q_sv(psi, n, q, u):
    t = psi.reshape((2,) * n)
    t = np.moveaxis(np.tensordot(u, t, axes=([1], [q])), 0, q)
    psi[:] = t.reshape(-1)


def apply_cnot_sv(psi, n, control, target):
    psi[:] = psi[_cnot_permutation(n, control, target)]


def apply_1q_dm(rho, n, q, u):
    t = rho.reshape((2,) * (2 * n))
    t = np.moveaxis(np.tensordot(u, t, axes=([1], [q])), 0, q)
    t = np.moveaxis(np.tensordot(t, u.conj(), axes=([n + q], [1])), -1, n + q)
    rho[:, :] = t.reshape(rho.shape)


def apply_cnot_dm(rho, n, control, target):
    perm = _cnot_permutation(n, control, target)
    rho[:, :] = rho[np.ix_(perm, perm)]


def dephase_dm(rho, n, q, scale):
    idx = np.arange(1 << n)
    b = 1 << (n - 1 - q)
    differ = ((idx[:, None] ^ idx[None, :]) & b) != 0
    rho[differ] *= scale
