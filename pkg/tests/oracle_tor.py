"""Brute-force Tor of F2[U]-module shapes, independent of the min-rule.

A torsion module is a direct sum of cyclics F[U]/U^n, realized as an F2
vector space with U acting as a nilpotent shift.  Tor against another
torsion module is computed from the explicit two-step free resolution
0 -> F[U]^k -> F[U]^k' -> M -> 0: tensoring gives one block matrix over F2
whose kernel and cokernel, with their induced U-actions, are decomposed
into cyclic summands through the rank sequence of the nilpotent operator.
Free summands (the U-towers) are flat, so they tensor through unchanged;
that textbook fact is the only non-matrix ingredient.
"""

import numpy as np


def gf2_rref(m):
    """Row-reduce a copy of m over F2; returns (rref, pivot columns)."""
    a = (np.array(m, dtype=np.int8) % 2).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def gf2_rank(m):
    if m.size == 0:
        return 0
    _, pivots = gf2_rref(m)
    return len(pivots)


def gf2_nullspace(m):
    """Basis matrix (cols = basis vectors) of the kernel of m over F2."""
    rows, cols = m.shape
    rref, pivots = gf2_rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int8)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for r, pc in enumerate(pivots):
            if rref[r, fc]:
                basis[pc, j] = 1
    return basis


def gf2_solve(a, b):
    """Solve a @ x = b over F2; a must have full column rank."""
    rows, cols = a.shape
    b = np.atleast_2d(b)
    if b.shape[0] != rows:
        b = b.T
    aug = np.concatenate([a % 2, b % 2], axis=1).astype(np.int8)
    rref, pivots = gf2_rref(aug)
    if any(p >= cols for p in pivots):
        raise ValueError("inconsistent system")
    x = np.zeros((cols, b.shape[1]), dtype=np.int8)
    for r, pc in enumerate(pivots):
        x[pc] = rref[r, cols:]
    return x


def nilpotent_partition(n):
    """Cyclic-summand exponents of a nilpotent F2 operator, via its rank sequence."""
    dim = n.shape[0]
    if dim == 0:
        return []
    ranks = [dim]
    power = np.eye(dim, dtype=np.int8)
    while ranks[-1] > 0:
        power = (power @ n) % 2
        ranks.append(gf2_rank(power))
    # ranks[j-1] - ranks[j] = number of parts of size >= j
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    parts = []
    for j, count in enumerate(at_least, start=1):
        exactly = count - (at_least[j] if j < len(at_least) else 0)
        parts.extend([j] * exactly)
    return sorted(parts)


def _shift(m):
    return np.eye(m, k=-1, dtype=np.int8)


def _block_diag(blocks):
    total = sum(b.shape[0] for b in blocks)
    out = np.zeros((total, total), dtype=np.int8)
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at:at + k, at:at + k] = b
        at += k
    return out


def torsion_tor(exponents1, exponents2):
    """Exponent multiset of Tor_0 + Tor_1 of two torsion modules.

    Resolution of M1 = +F[U]/U^{n_i}: the presentation map is the diagonal
    matrix diag(U^{n_i}); tensoring with M2 yields one nilpotent-shift
    block matrix over F2 whose kernel and cokernel carry the induced
    U-action.
    """
    if not exponents1 or not exponents2:
        return []
    m2_dim = sum(exponents2)
    u2 = _block_diag([_shift(m) for m in exponents2])
    # multiplication by U^{n_i} acting on one copy of M2 per torsion generator of M1
    blocks = []
    for n in exponents1:
        p = np.eye(m2_dim, dtype=np.int8)
        for _ in range(n):
            p = (p @ u2) % 2
        blocks.append(p)
    big = _block_diag(blocks)
    u_big = _block_diag([u2] * len(exponents1))

    parts = []
    # Tor_1 = ker(big), U-invariant since U commutes with multiplication
    k = gf2_nullspace(big)
    if k.shape[1]:
        induced = gf2_solve(k, (u_big @ k) % 2)
        parts.extend(nilpotent_partition(induced))
    # Tor_0 = coker(big): pick a column-space basis, extend it to the full
    # space by standard vectors, read the induced action in complement
    # coordinates
    _, col_pivots = gf2_rref(big)
    img_basis = big[:, col_pivots] if col_pivots else np.zeros((big.shape[0], 0), dtype=np.int8)
    dim = big.shape[0]
    # extend image basis to the full space, quotient = complement coordinates
    chosen = []
    current = img_basis
    for e in range(dim):
        vec = np.zeros((dim, 1), dtype=np.int8)
        vec[e, 0] = 1
        candidate = np.concatenate([current, vec], axis=1)
        if gf2_rank(candidate) > gf2_rank(current):
            current = candidate
            chosen.append(e)
    comp = np.zeros((dim, len(chosen)), dtype=np.int8)
    for j, e in enumerate(chosen):
        comp[e, j] = 1
    if comp.shape[1]:
        full = np.concatenate([img_basis, comp], axis=1)
        coords = gf2_solve(full, (u_big @ comp) % 2)
        induced_q = coords[img_basis.shape[1]:, :]
        parts.extend(nilpotent_partition(induced_q))
    return sorted(parts)


def module_tor_shape(torsion1, torsion2):
    """(tower_count, torsion exponents) of Tor of two HM-module shapes.

    Each module is one U-tower (free summand) plus the given torsion.
    Free summands are flat: tower x tower -> one tower; tower x torsion ->
    that torsion verbatim.  The torsion x torsion part is brute-forced.
    """
    torsion = sorted(list(torsion1) + list(torsion2) + torsion_tor(torsion1, torsion2))
    return 1, torsion
