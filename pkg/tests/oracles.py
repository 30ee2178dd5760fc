"""Independent oracles shared by several test modules."""
import numpy as np

from k3lat.roots import box_bounds


def box_oracle(L):
    """All x in the box |x_i| <= b_i with x.x = -2, by a vectorized 4 + 4 split."""
    b = box_bounds(L)
    G = np.array(L.G, dtype=np.int64)
    n = len(b)
    h = n // 2

    def grid(bs):
        axes = [np.arange(-k, k + 1) for k in bs]
        return np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, len(bs))

    X, Y = grid(b[:h]), grid(b[h:])
    qa = np.einsum("ij,jk,ik->i", X, G[:h, :h], X)
    qb = np.einsum("ij,jk,ik->i", Y, G[h:, h:], Y)
    XC = X @ G[:h, h:]
    found = []
    for start in range(0, len(X), 512):
        q = qa[start:start + 512, None] + qb[None, :] + 2 * XC[start:start + 512] @ Y.T
        ii, jj = np.nonzero(q == -2)
        for i, j in zip(ii, jj):
            found.append(tuple(X[start + i]) + tuple(Y[j]))
    return sorted(tuple(int(c) for c in v) for v in found)
