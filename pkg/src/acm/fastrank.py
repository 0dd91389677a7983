"""Fast exact rank of large sparse integer matrices.

Two layers:

* ``rref_mod_p``: reduced row echelon form mod a prime, implemented with
  blocked float64 matrix products.  All intermediate values are integers;
  exactness holds whenever (rank + block) * p**2 < 2**53, which is checked.
* ``rank_rational_certified``: exact rank over Q.  Echelon forms are computed
  mod several independent primes, combined by CRT, lifted to Q by rational
  reconstruction, and then *verified*: every original row is checked to be
  exactly the claimed combination of the lifted echelon rows, evaluated mod
  enough fresh primes that the residual (a bounded integer after clearing
  denominators) must vanish over Q.  Together with the unconditional bound
  rank_Q >= rank_p this certifies the rank with no unverified assumptions.

A sparse row is either an integer array of column indices (entries 1) or a
pair (cols, vals) of equal-length integer arrays.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np

# primes just above 1.29e6: large enough that random-looking rank drops mod p
# are vanishingly rare, small enough that float64 block elimination is exact
PRIME_POOL = [
    1299709, 1299721, 1299743, 1299763, 1299791, 1299811, 1299817,
    1299821, 1299827, 1299833, 1299841, 1299853, 1299869, 1299877,
    1299887, 1299899, 1299917, 1299919, 1299941, 1299953, 1299979,
    1299989, 1300021, 1300027, 1300031, 1300051, 1300073, 1300097,
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for f in range(2, isqrt(n) + 1):
        if n % f == 0:
            return False
    return True


def _prime_stream():
    """The fixed pool, then successive larger primes (never exhausted)."""
    yield from PRIME_POOL
    n = PRIME_POOL[-1] + 2
    while True:
        if _is_prime(n):
            yield n
        n += 2


def normalize_rows(rows):
    """Coerce rows to (cols, vals) pairs of numpy arrays.

    Values that fit in int64 are stored as such; larger Python integers fall
    back to an object array (reduced mod p entrywise when used).
    """
    out = []
    for r in rows:
        if isinstance(r, tuple) and len(r) == 2:
            cols = np.asarray(r[0], dtype=np.intp)
            vals = r[1]
            if not isinstance(vals, np.ndarray):
                try:
                    vals = np.asarray(vals, dtype=np.int64)
                except OverflowError:
                    vals = np.asarray(vals, dtype=object)
        else:
            cols = np.asarray(r, dtype=np.intp)
            vals = np.ones(cols.size, dtype=np.int64)
        out.append((cols, vals))
    return out


def _vals_mod(vals: np.ndarray, p: int) -> np.ndarray:
    if vals.dtype == object:
        return np.array([int(v) % p for v in vals], dtype=np.float64)
    return (vals % p).astype(np.float64)


def _mod_inplace(a: np.ndarray, p: float) -> None:
    """In-place a %= p for float64 arrays of exact integers, |a| < 2**53 - p.

    Multiply-by-reciprocal plus floor gives the quotient up to +-1; the two
    masked fixups make the result exact.  Several times faster than fmod.
    """
    t = np.floor(a * (1.0 / p))
    t *= p
    a -= t
    np.add(a, p, out=a, where=a < 0)
    np.subtract(a, p, out=a, where=a >= p)


def rref_mod_p(rows, ncols: int, p: int, block: int = 64, reduced: bool = True):
    """Row echelon form mod p of a sparse integer matrix.

    Returns (pivcols, R) with R a dense rank x ncols float64 matrix, entries
    in [0, p).  Elimination is segmented: each block of rows is cleared
    against earlier pivot segments by matrix products, then fully reduced
    internally.  A segment's rows have unit pivots, zeros at all earlier
    pivot columns, but possibly nonzeros at later ones; with reduced=True a
    final back-substitution pass turns R into the true RREF.

    All arithmetic is integer-valued float64; intermediate magnitudes stay
    below (rank + block) * p**2, which is checked against 2**53.
    """
    from scipy.linalg.blas import dger

    rows = normalize_rows(rows)
    m = len(rows)
    maxrank = min(m, ncols)
    if (maxrank + block) * p * p + p >= 2 ** 53:
        raise ValueError(f"prime {p} too large for exact float64 elimination")
    R = np.zeros((maxrank, ncols))
    segments: list[list] = []  # [row start, row end, pivots]
    pivcols: list[int] = []
    rank = 0
    tail = 0  # index of the first unconsolidated segment
    i = 0
    while i < m:
        blk = rows[i:i + block]
        i += len(blk)
        k = len(blk)
        B = np.zeros((k, ncols))
        for j, (cols, vals) in enumerate(blk):
            np.add.at(B[j], cols, _vals_mod(vals, p))
        # clear earlier pivot segments in order; after segment J the columns
        # piv_J hold exact multiples of p, which later segments never touch
        for lo, hi, piv in segments:
            C = B[:, piv].copy()
            _mod_inplace(C, p)
            if np.any(C):
                B -= C @ R[lo:hi]
        # forward elimination inside the block: clear each new pivot column
        # from the rows below it only (earlier pivot rows are fixed up by the
        # triangular inverse below, zero rows are already zero)
        newpiv = []
        pivrows = []
        start = rank
        for j in range(k):
            v = B[j]
            _mod_inplace(v, p)
            nz = np.nonzero(v)[0]
            if nz.size == 0:
                continue
            c = int(nz[0])
            v *= pow(int(v[c]), p - 2, p)
            _mod_inplace(v, p)
            if j + 1 < k:
                coef = B[j + 1:, c].copy()
                _mod_inplace(coef, p)
                if np.any(coef):
                    # in-place rank-1 update on the F-contiguous transpose
                    dger(-1.0, v, coef, a=B[j + 1:].T, overwrite_a=1)
            newpiv.append(c)
            pivrows.append(j)
        if newpiv:
            q = len(newpiv)
            Rnew = B[pivrows]  # pivot rows are untouched after their turn
            if q > 1:
                # reduce the new segment internally: U = Rnew[:, newpiv] is
                # unit upper triangular, so one product by its inverse clears
                # all later pivot columns from earlier rows
                U = Rnew[:, newpiv]
                Uinv = np.eye(q)
                for a in range(q - 2, -1, -1):
                    urow = U[a, a + 1:]
                    if np.any(urow):
                        Uinv[a] -= urow @ Uinv[a + 1:]
                        _mod_inplace(Uinv[a], p)
                Rnew = Uinv @ Rnew
                _mod_inplace(Rnew, p)
            R[start:start + q] = Rnew
            rank = start + q
            segments.append([start, rank, newpiv])
            pivcols.extend(newpiv)
        # consolidate small trailing segments into one internally reduced
        # segment, so the clearing pass above runs as a few large products
        if tail < len(segments) and rank - segments[tail][0] >= 8 * block:
            _backsub(R, p, segments[tail:])
            merged = [segments[tail][0], rank,
                      [c for seg in segments[tail:] for c in seg[2]]]
            del segments[tail:]
            segments.append(merged)
            tail = len(segments)
    if reduced and len(segments) > 1:
        _backsub(R, p, segments)
    return pivcols, R[:rank]


def _backsub(R, p, segments):
    """Back-substitute so the rows covered by `segments` become mutually
    reduced (true RREF across these segments).  Rows above a segment grow
    unreduced during the pass, bounded by rank * p**2, and are normalized
    at the end."""
    base = segments[0][0]
    rank = segments[-1][1]
    for lo, hi, piv in reversed(segments[1:]):
        seg = R[lo:hi]
        _mod_inplace(seg, p)
        C = R[base:lo, piv].copy()
        _mod_inplace(C, p)
        if np.any(C):
            R[base:lo] -= C @ seg
    _mod_inplace(R[base:rank], p)


def rank_mod_p(rows, ncols: int, p: int, block: int = 256) -> int:
    pivcols, _ = rref_mod_p(rows, ncols, p, block, reduced=False)
    return len(pivcols)


def rational_reconstruct(u: int, m: int):
    """Lift u mod m to a fraction n/d with |n|, d <= sqrt(m/2), or None."""
    bnd = isqrt(m // 2)
    r0, r1 = m, u % m
    s0, s1 = 0, 1
    while r1 > bnd:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r1 == 0 and u % m != 0:
        return None
    if s1 == 0 or abs(s1) > bnd or (r1 and gcd(r1, abs(s1)) != 1):
        return None
    if s1 < 0:
        return Fraction(-r1, -s1)
    return Fraction(r1, s1)


def rank_rational_certified(rows, ncols: int, verbose: bool = False) -> int:
    """Exact rank over Q of a sparse integer matrix, with full verification.

    Strategy: RREF mod primes from the pool.  If some prime attains full row
    or column rank, that is already certified (mod-p rank never exceeds the
    rank over Q).  Otherwise the mod-p echelon forms with the maximal rank
    and a common pivot set are CRT-combined, lifted to Q by rational
    reconstruction, and the lift is verified exactly: for every original
    row v, the identity v = v[pivots] @ R is checked mod fresh primes whose
    product exceeds twice the largest possible cleared-denominator residual
    entry, which forces the residual to vanish over Q.
    """
    rows = normalize_rows(rows)
    m = len(rows)
    if m == 0 or ncols == 0:
        return 0
    pool = _prime_stream()
    used: list[tuple[int, tuple, np.ndarray]] = []
    nprimes = 2
    while True:
        while len(used) < nprimes:
            p = next(pool)
            piv, R = rref_mod_p(rows, ncols, p)
            if verbose:
                print(f"  prime {p}: rank={len(piv)}", flush=True)
            if len(piv) == m or len(piv) == ncols:
                # full row/column rank mod p pins the rank over Q
                return len(piv)
            used.append((p, tuple(piv), R))
        best = max(len(piv) for _, piv, _ in used)
        grp = [(p, piv, R) for p, piv, R in used if len(piv) == best]
        if len({piv for _, piv, _ in grp}) != 1:
            nprimes = len(used) + 1
            continue
        piv = grp[0][1]
        r = len(piv)
        P = 1
        for p, _, _ in grp:
            P *= p
        Rfrac = _crt_lift(grp, r, P)
        if Rfrac is None:
            nprimes = len(used) + 1
            continue
        if _verify_rowspan(rows, ncols, piv, Rfrac, pool, verbose):
            return r
        nprimes = max(len(used) + 1, 2 * len(grp))


def _crt_lift(grp, r: int, P: int):
    """CRT-combine echelon forms and reconstruct rational entries.

    Returns a list of sparse rows {col -> Fraction} or None on failure.
    """
    out = []
    for i in range(r):
        sup: set[int] = set()
        for _, _, R in grp:
            sup.update(np.nonzero(R[i])[0].tolist())
        row = {}
        for c in sup:
            x, mod = 0, 1
            for p, _, R in grp:
                v = int(R[i, c])
                t = ((v - x) * pow(mod, -1, p)) % p
                x += mod * t
                mod *= p
            f = rational_reconstruct(x, P)
            if f is None:
                return None
            if f:
                row[c] = f
        out.append(row)
    return out


def _verify_rowspan(rows, ncols, piv, Rfrac, pool, verbose) -> bool:
    """Check exactly that every row equals its pivot-coordinate combination
    of the lifted echelon rows.  A mismatch means the reconstruction was
    wrong (for example, plausible-but-false fractions from too few CRT
    primes), so the caller must retry with more primes."""
    r = len(piv)
    L = 1
    for row in Rfrac:
        for f in row.values():
            L = lcm(L, f.denominator)
    maxabs = max((abs(f) for row in Rfrac for f in row.values()),
                 default=Fraction(0))
    maxsup = max(int(cols.size) for cols, _ in rows)
    maxval = max((max(abs(int(v)) for v in vals) for _, vals in rows if vals.size),
                 default=1)
    # residual entries, times L, are integers bounded by
    # L * maxval * (1 + maxsup * maxabs)
    bound_frac = 2 * L * maxval * (1 + maxsup * maxabs)
    bound = bound_frac.numerator // bound_frac.denominator + 1
    qprimes = []
    qprod = 1
    for q in pool:
        if L % q == 0:
            continue
        qprimes.append(q)
        qprod *= q
        if qprod > bound:
            break
    if qprod <= bound:
        raise RuntimeError("prime pool exhausted during verification")
    pivlist = list(piv)
    for q in qprimes:
        Rq = np.zeros((r, ncols))
        for i, row in enumerate(Rfrac):
            for c, f in row.items():
                Rq[i, c] = f.numerator * pow(f.denominator, -1, q) % q
        m = len(rows)
        blocksz = 512
        for s in range(0, m, blocksz):
            blk = rows[s:s + blocksz]
            V = np.zeros((len(blk), ncols))
            for j, (cols, vals) in enumerate(blk):
                np.add.at(V[j], cols, _vals_mod(vals, q))
            res = (V - V[:, pivlist] @ Rq) % q
            if np.any(res):
                if verbose:
                    print(f"  verification failed mod {q}; retrying with "
                          "more primes", flush=True)
                return False
    if verbose:
        print(f"  verified with {len(qprimes)} primes, denominator lcm {L}",
              flush=True)
    return True
