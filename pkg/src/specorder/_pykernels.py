"""Pure-Python (numpy) fallback for the compiled eigensolver kernels.

Implements the same Householder + implicit-shift QL algorithm as
``_ckernels.pyx`` with the inner loops vectorized.  Slower than the compiled
core but dependency-free beyond numpy; selected automatically by ``backend``
when the extension is unavailable.
"""

import math

import numpy as np

_EPS = np.finfo(np.float64).eps


def tridiagonalize(a, d, e):
    """Householder reduction of symmetric ``a`` to tridiagonal (``d``, ``e[1:]``).

    ``a`` is overwritten with the accumulated orthogonal transform.
    """
    n = a.shape[0]
    for i in range(n - 1, 0, -1):
        l = i - 1
        h = 0.0
        if l > 0:
            scale = float(np.sum(np.abs(a[i, : l + 1])))
            if scale == 0.0:
                e[i] = a[i, l]
            else:
                a[i, : l + 1] /= scale
                h = float(np.dot(a[i, : l + 1], a[i, : l + 1]))
                f = a[i, l]
                g = -math.sqrt(h) if f >= 0.0 else math.sqrt(h)
                e[i] = scale * g
                h -= f * g
                a[i, l] = f - g
                u = a[i, : l + 1]
                # p = A u / h over the leading (l+1) block, symmetric storage
                sub = a[: l + 1, : l + 1]
                p = (np.tril(sub) + np.tril(sub, -1).T) @ u / h
                a[: l + 1, i] = u / h
                f = float(np.dot(p, u))
                hh = f / (h + h)
                q = p - hh * u
                e[: l + 1] = q
                sub -= np.tril(np.outer(u, q) + np.outer(q, u))
        else:
            e[i] = a[i, l]
        d[i] = h

    d[0] = 0.0
    e[0] = 0.0
    for i in range(n):
        l = i
        if d[i] != 0.0:
            g = a[i, :l] @ a[:l, :l]
            a[:l, :l] -= np.outer(a[:l, i], g)
        d[i] = a[i, i]
        a[i, i] = 1.0
        a[:l, i] = 0.0
        a[i, :l] = 0.0


def ql_implicit(d, e, z, max_sweeps):
    """Implicit-shift QL on tridiagonal (``d``, ``e[1:]``), rotations folded
    into the columns of ``z``.  Returns 0 on success, 1 + failing index on
    non-convergence.
    """
    n = d.shape[0]
    e[:-1] = e[1:]
    e[n - 1] = 0.0

    for l in range(n):
        sweeps = 0
        while True:
            for m in range(l, n - 1):
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= _EPS * dd:
                    break
            else:
                m = n - 1
            if m == l:
                break
            if sweeps == max_sweeps:
                return 1 + l
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = c = 1.0
            p = 0.0
            r = 1.0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi = z[:, i].copy()
                zi1 = z[:, i + 1].copy()
                z[:, i + 1] = s * zi + c * zi1
                z[:, i] = c * zi - s * zi1
                i -= 1
            if r == 0.0 and i >= l:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return 0
