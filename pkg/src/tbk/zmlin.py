"""Exact linear algebra over Z/mZ: Howell normal form, solving, Smith form.

The Howell form is the canonical echelon form for row spans over Z/mZ:
two matrices have the same row span iff their Howell forms are identical.
That property (which plain echelon forms lack over a ring with zero
divisors) is what makes membership tests and kernels decidable here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import ModulusMismatchError


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = gcd(a, b) = s*a + t*b."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def modinv(a: int, m: int) -> int:
    g, s, _ = egcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} is not invertible mod {m}")
    return s % m


def unit_for(a: int, m: int) -> int:
    """A unit u mod m with u*a == gcd(a, m) mod m."""
    a %= m
    if a == 0:
        return 1
    g = gcd(a, m)
    b = a // g
    step = m // g
    t = 0
    while gcd(b + t * step, m) != 1:
        t += 1
    return modinv(b + t * step, m)


class HowellBasis:
    """Incrementally built Howell basis of a row span in (Z/m)^width.

    Rows are inserted one at a time and reduced against the current pivot
    rows; pivot replacements and annihilator rows keep the span saturated,
    so ``rows()`` is the canonical Howell normal form of everything
    inserted so far.
    """

    def __init__(self, modulus: int, width: int):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.modulus = modulus
        self.width = width
        self.pivots: dict[int, np.ndarray] = {}

    def insert(self, row) -> None:
        m = self.modulus
        if m == 1:
            return
        stack = [np.asarray(row, dtype=np.int64) % m]
        tmp = np.empty(self.width, dtype=np.int64)
        while stack:
            r = stack.pop()
            if not r.flags.owndata or not r.flags.writeable:
                r = r.copy()
            start = 0
            while True:
                nz = np.nonzero(r[start:])[0]
                if len(nz) == 0:
                    break
                j = start + int(nz[0])
                v = int(r[j])
                p = self.pivots.get(j)
                if p is None:
                    r = (r * unit_for(v, m)) % m
                    self.pivots[j] = r
                    g = int(r[j])
                    if m // g > 1:
                        stack.append((r * (m // g)) % m)
                    break
                d = int(p[j])
                if v % d == 0:
                    np.multiply(p, v // d, out=tmp)
                    np.subtract(r, tmp, out=r)
                    np.mod(r, m, out=r)
                    start = j + 1
                    continue
                # gcd-combine the incoming row with the pivot row
                g, s, t = egcd(d, v)
                new = ((s * p + t * r) * unit_for((s * d + t * v) % m, m)) % m
                self.pivots[j] = new
                if m // g > 1:
                    stack.append((new * (m // g)) % m)
                stack.append((p - (d // g) * new) % m)
                np.multiply(new, v // g, out=tmp)
                np.subtract(r, tmp, out=r)
                np.mod(r, m, out=r)
                start = j + 1

    def rows(self) -> np.ndarray:
        """The canonical Howell form (pivot order, entries reduced above)."""
        cols = sorted(self.pivots)
        out = [self.pivots[j].copy() for j in cols]
        for idx, j in enumerate(cols):
            d = int(out[idx][j])
            for prev in range(idx):
                q = int(out[prev][j]) // d
                if q:
                    out[prev] = (out[prev] - q * out[idx]) % self.modulus
        if not out:
            return np.zeros((0, self.width), dtype=np.int64)
        return np.array(out, dtype=np.int64)

    def reduce(self, vec) -> np.ndarray:
        """Reduce vec against the basis (no insertion); zero iff in the span."""
        m = self.modulus
        r = np.asarray(vec, dtype=np.int64) % m
        if m == 1:
            return r * 0
        start = 0
        while True:
            nz = np.nonzero(r[start:])[0]
            if len(nz) == 0:
                return r
            j = start + int(nz[0])
            p = self.pivots.get(j)
            if p is None:
                return r
            d = int(p[j])
            v = int(r[j])
            if v % d:
                return r
            r = (r - (v // d) * p) % m
            start = j + 1


def howell_form(mat, modulus: int) -> np.ndarray:
    """Canonical Howell normal form of the row span of ``mat``.

    Column-at-a-time elimination over the whole block: pivots are built by
    unimodular 2x2 combines until their leading entry divides every other
    entry in the column, the column is cleared in one vectorized update,
    and an annihilator multiple of the pivot keeps the span saturated.
    """
    m = modulus
    a = np.atleast_2d(np.asarray(mat, dtype=np.int64)) % m
    rows, width = a.shape
    if m == 1 or rows == 0:
        return np.zeros((0, width), dtype=np.int64)
    buf = np.empty((rows + width + 1, width), dtype=np.int64)
    buf[:rows] = a
    count = rows
    pivots: list[tuple[int, np.ndarray]] = []
    for j in range(width):
        col = buf[:count, j]
        nz = np.nonzero(col)[0]
        if len(nz) == 0:
            continue
        i0 = int(nz[0])
        piv = buf[i0].copy()
        count -= 1
        buf[i0] = buf[count]
        while True:
            d = gcd(int(piv[j]), m)
            col = buf[:count, j]
            bad = np.nonzero(col % d)[0]
            if len(bad) == 0:
                break
            i = int(bad[0])
            av, bv = int(piv[j]), int(buf[i, j])
            g, s, t = egcd(av, bv)
            new_piv = (s * piv + t * buf[i]) % m
            buf[i] = ((av // g) * buf[i] - (bv // g) * piv) % m
            piv = new_piv
        piv = (piv * unit_for(int(piv[j]), m)) % m
        d = int(piv[j])
        col = buf[:count, j]
        sel = np.nonzero(col)[0]
        if len(sel):
            q = col[sel] // d
            buf[sel] = (buf[sel] - np.outer(q, piv)) % m
        if m // d > 1:
            buf[count] = (piv * (m // d)) % m
            count += 1
        pivots.append((j, piv))
        if count > 64 and j % 32 == 31:
            live = buf[:count].any(axis=1)
            kept = int(live.sum())
            buf[:kept] = buf[:count][live]
            count = kept
    out = [p for _, p in pivots]
    cols = [j for j, _ in pivots]
    for idx, j in enumerate(cols):
        d = int(out[idx][j])
        for prev in range(idx):
            q = int(out[prev][j]) // d
            if q:
                out[prev] = (out[prev] - q * out[idx]) % m
    if not out:
        return np.zeros((0, width), dtype=np.int64)
    return np.array(out, dtype=np.int64)


def left_kernel(mat, modulus: int) -> np.ndarray:
    """Generators of {y : y @ mat == 0 mod modulus}, as Howell-form rows."""
    a = np.atleast_2d(np.asarray(mat, dtype=np.int64))
    k, n = a.shape
    if modulus == 1:
        return np.eye(k, dtype=np.int64) * 0
    aug = np.hstack([a % modulus, np.eye(k, dtype=np.int64)])
    h = howell_form(aug, modulus)
    mask = ~h[:, :n].any(axis=1) if len(h) else np.zeros(0, dtype=bool)
    return h[mask][:, n:] if len(h) else np.zeros((0, k), dtype=np.int64)


def right_kernel(mat, modulus: int) -> np.ndarray:
    """Generators of {x : mat @ x == 0 mod modulus}, one per row."""
    a = np.atleast_2d(np.asarray(mat, dtype=np.int64))
    # Reduce the row count first: the right kernel only depends on the row span.
    h = howell_form(a, modulus)
    if len(h) == 0:
        n = a.shape[1]
        return np.eye(n, dtype=np.int64) if modulus > 1 else np.zeros((0, n), np.int64)
    return left_kernel(h.T, modulus)


def solve(mat, rhs, modulus: int) -> tuple[np.ndarray, np.ndarray] | None:
    """Solve mat @ x == rhs mod modulus.

    Returns (particular solution, null-space generator rows), or None when
    the system is infeasible. Infeasibility is definitive: the reduction
    walks the Howell form of the column span, where membership is decidable.
    """
    a = np.atleast_2d(np.asarray(mat, dtype=np.int64))
    b = np.asarray(rhs, dtype=np.int64)
    rows, cols = a.shape
    if b.shape != (rows,):
        raise ValueError(f"rhs has shape {b.shape}, expected ({rows},)")
    m = modulus
    if m == 1:
        return np.zeros(cols, dtype=np.int64), np.zeros((0, cols), dtype=np.int64)
    # Column-span view: rows of [A^T | I] are (column of A, unit coeff vector).
    aug = np.hstack([a.T % m, np.eye(cols, dtype=np.int64)])
    basis = HowellBasis(m, rows + cols)
    for row in aug:
        basis.insert(row)
    r = np.concatenate([b % m, np.zeros(cols, dtype=np.int64)])
    while True:
        lead = np.nonzero(r[:rows])[0]
        if len(lead) == 0:
            break
        j = int(lead[0])
        p = basis.pivots.get(j)
        if p is None:
            return None
        d = int(p[j])
        v = int(r[j])
        if v % d:
            return None
        r = (r - (v // d) * p) % m
    x = (-r[rows:]) % m
    h = basis.rows()
    mask = ~h[:, :rows].any(axis=1) if len(h) else np.zeros(0, dtype=bool)
    null = h[mask][:, rows:] if len(h) else np.zeros((0, cols), dtype=np.int64)
    return x, null


class SpanSolver:
    """Repeated solve of t @ rows = target over Z_m, sharing one reduction."""

    def __init__(self, rows: np.ndarray, modulus: int):
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        self.count, self.width = rows.shape
        self.modulus = modulus
        aug = np.hstack([rows % modulus,
                         np.eye(self.count, dtype=np.int64)])
        self.basis = HowellBasis(modulus, self.width + self.count)
        for row in aug:
            self.basis.insert(row)

    def coefficients(self, target) -> np.ndarray | None:
        """t with t @ rows == target, or None when target is outside the span."""
        m = self.modulus
        if m == 1:
            return np.zeros(self.count, dtype=np.int64)
        r = np.concatenate([np.asarray(target, dtype=np.int64) % m,
                            np.zeros(self.count, dtype=np.int64)])
        start = 0
        while True:
            nz = np.nonzero(r[start:self.width])[0]
            if len(nz) == 0:
                break
            j = start + int(nz[0])
            p = self.basis.pivots.get(j)
            if p is None:
                return None
            d = int(p[j])
            v = int(r[j])
            if v % d:
                return None
            r = (r - (v // d) * p) % m
            start = j + 1
        return (-r[self.width:]) % m


def smith_form(mat, modulus: int, track_vinv: bool = False):
    """Smith normal form over the ring Z/mZ.

    Returns (diag, vinv) where diag[i] (a divisor of m) is the i-th diagonal
    invariant, padded with gcd(0, m) = m-equivalent zeros up to the column
    count, and vinv (if tracked) satisfies: row i of vinv, pushed through the
    accumulated column operations, maps to the i-th coordinate vector. The
    cokernel (Z/m)^cols / rowspan(mat) is the direct sum of Z/diag[i].
    """
    m = modulus
    a = np.atleast_2d(np.asarray(mat, dtype=np.int64)) % m
    a = a.copy()
    rows, cols = a.shape
    vinv = np.eye(cols, dtype=np.int64) if track_vinv else None

    def col_addmul(dst, src, t):
        # column op: col_dst += t * col_src; inverse op applied to vinv rows
        a[:, dst] = (a[:, dst] + t * a[:, src]) % m
        if vinv is not None:
            vinv[src] = (vinv[src] - t * vinv[dst]) % m

    def col_swap(i, j):
        a[:, [i, j]] = a[:, [j, i]]
        if vinv is not None:
            vinv[[i, j]] = vinv[[j, i]]

    def col_unit(j, u):
        a[:, j] = (a[:, j] * u) % m
        if vinv is not None:
            vinv[j] = (vinv[j] * modinv(u, m)) % m

    if m == 1:
        return [1] * cols, vinv

    t = 0
    limit = min(rows, cols)
    while t < limit:
        sub = a[t:, t:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            break
        # pick the entry with the smallest gcd with m (deterministic tie-break)
        gcds = np.gcd(sub[nz], m)
        best = None
        for i, j, g in zip(nz[0], nz[1], gcds):
            key = (int(g), int(i), int(j))
            if best is None or key < best:
                best = key
        _, bi, bj = best
        if bi + t != t:
            a[[t, bi + t]] = a[[bi + t, t]]
        if bj + t != t:
            col_swap(t, bj + t)
        while True:
            # clear column t below the pivot
            for i in range(t + 1, rows):
                v = int(a[i, t])
                if v == 0:
                    continue
                d = int(a[t, t])
                if v % d == 0:
                    a[i] = (a[i] - (v // d) * a[t]) % m
                else:
                    g, s, u = egcd(d, v)
                    top = (s * a[t] + u * a[i]) % m
                    a[i] = ((d // g) * a[i] - (v // g) * a[t]) % m
                    a[t] = top
            # clear row t right of the pivot
            row_clear = True
            for j in range(t + 1, cols):
                v = int(a[t, j])
                if v == 0:
                    continue
                d = int(a[t, t])
                if v % d == 0:
                    col_addmul(j, t, -(v // d))
                else:
                    g, s, u = egcd(d, v)
                    # mix columns t and j so the pivot becomes g; the mixing
                    # matrix E = [[s, -(v//g)], [u, d//g]] has determinant 1
                    old_t = a[:, t].copy()
                    a[:, t] = (s * a[:, t] + u * a[:, j]) % m
                    a[:, j] = ((d // g) * a[:, j] - (v // g) * old_t) % m
                    if vinv is not None:
                        rt, rj = vinv[t].copy(), vinv[j].copy()
                        vinv[t] = ((d // g) * rt + (v // g) * rj) % m
                        vinv[j] = (-u * rt + s * rj) % m
                    row_clear = False
            if row_clear and not a[t + 1:, t].any():
                break
        # normalize the pivot to its canonical divisor of m
        d = int(a[t, t])
        u = unit_for(d, m)
        if u != 1:
            col_unit(t, u)
        d = int(a[t, t])
        # enforce divisibility of everything that remains
        fixed = True
        if d > 1:
            rest = a[t + 1:, t + 1:]
            bad = np.nonzero(np.gcd(rest, m) % gcd(d, m))
            if len(bad[0]):
                i = int(bad[0][0]) + t + 1
                a[t] = (a[t] + a[i]) % m
                fixed = False
        if fixed:
            t += 1
    diag = []
    for i in range(cols):
        v = int(a[i, i]) if i < limit else 0
        diag.append(gcd(v, m) if v else m)
    return diag, vinv


@dataclass(frozen=True)
class ZmMatrix:
    """An integer matrix together with the modulus it lives under."""

    modulus: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def make(cls, rows, modulus: int) -> "ZmMatrix":
        a = np.atleast_2d(np.asarray(rows, dtype=np.int64)) % modulus
        return cls(modulus, tuple(tuple(int(x) for x in r) for r in a))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def howell(self) -> "ZmMatrix":
        return ZmMatrix.make(howell_form(self.array(), self.modulus), self.modulus)

    def same_span(self, other: "ZmMatrix") -> bool:
        if self.modulus != other.modulus:
            raise ModulusMismatchError(
                f"moduli differ: {self.modulus} vs {other.modulus}")
        return self.howell() == other.howell()


def zm_solve(a: ZmMatrix, rhs) -> tuple[np.ndarray, np.ndarray] | None:
    """Particular solution plus null-space generators, or None."""
    return solve(a.array(), rhs, a.modulus)
