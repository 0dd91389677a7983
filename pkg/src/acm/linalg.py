"""Exact sparse linear algebra over Q or GF(p).

Vectors are dicts mapping hashable coordinate keys to nonzero field elements
(a polynomial's ``terms`` dict is already a vector in this sense).  The
central object is an incrementally built echelon basis with coordinate
tracking, which gives span dimensions, membership tests with explicit
combinations, particular solutions, and nullspaces.

The pivot of a vector is its smallest key under a fixed sort key; for
exponent-tuple keys the default is graded, then lexicographic, so pivots
(and hence the solutions returned here) are canonical.
"""

from __future__ import annotations


def _default_key(k):
    if isinstance(k, tuple):
        return (sum(k), k)
    return k


class EchelonBasis:
    """Row-echelon basis of a growing span, with coordinate tracking.

    Each stored row is a linear combination of the vectors inserted so far;
    ``coords[j]`` expresses row j in terms of insertion indices.  Rows have
    unit pivots and distinct pivot keys.
    """

    def __init__(self, field, sort_key=None):
        self.field = field
        self.sort_key = sort_key or _default_key
        self.rows: list[dict] = []
        self.pivots: list = []
        self.coords: list[dict] = []
        self._pivot_index: dict = {}
        self.ninserted = 0

    def __len__(self):
        return len(self.rows)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _pivot(self, vec: dict):
        return min(vec, key=self.sort_key)

    def reduce(self, vec: dict):
        """Reduce vec against the basis.

        Returns (residual, comb) where vec = residual + the combination of
        previously inserted vectors given by comb (insertion index -> coeff),
        and residual has no pivot key in common with the basis.
        """
        res = dict(vec)
        comb: dict = {}
        while res:
            piv = self._pivot(res)
            j = self._pivot_index.get(piv)
            if j is None:
                break
            c = res[piv]
            for k, v in self.rows[j].items():
                s = res.get(k, self.field.zero) - c * v
                if s:
                    res[k] = s
                elif k in res:
                    del res[k]
            for i, v in self.coords[j].items():
                s = comb.get(i, self.field.zero) + c * v
                if s:
                    comb[i] = s
                elif i in comb:
                    del comb[i]
        # clear any remaining non-pivot overlaps lazily: pivot keys only
        # matter for termination, but full reduction keeps residuals small
        if res:
            changed = True
            while changed:
                changed = False
                for k in sorted(res, key=self.sort_key):
                    j = self._pivot_index.get(k)
                    if j is None:
                        continue
                    c = res[k]
                    for k2, v in self.rows[j].items():
                        s = res.get(k2, self.field.zero) - c * v
                        if s:
                            res[k2] = s
                        elif k2 in res:
                            del res[k2]
                    for i, v in self.coords[j].items():
                        s = comb.get(i, self.field.zero) + c * v
                        if s:
                            comb[i] = s
                        elif i in comb:
                            del comb[i]
                    changed = True
                    break
        return res, comb

    def insert(self, vec: dict) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        idx = self.ninserted
        self.ninserted += 1
        res, comb = self.reduce(vec)
        if not res:
            return False
        piv = self._pivot(res)
        c = res[piv]
        row = {k: v / c for k, v in res.items()}
        # row = (vec - comb) / c, so in terms of inserted vectors:
        rowco = {i: -v / c for i, v in comb.items()}
        rowco[idx] = self.field.one / c
        self._pivot_index[piv] = len(self.rows)
        self.rows.append(row)
        self.pivots.append(piv)
        self.coords.append(rowco)
        return True

    def contains(self, vec: dict) -> bool:
        res, _ = self.reduce(vec)
        return not res

    def coordinates(self, vec: dict):
        """Combination of inserted vectors equal to vec, or None."""
        res, comb = self.reduce(vec)
        if res:
            return None
        return comb


def span_dim(vectors, field, sort_key=None) -> int:
    """Dimension of the span of an iterable of sparse vectors."""
    basis = EchelonBasis(field, sort_key)
    for v in vectors:
        basis.insert(v)
    return basis.dim


def membership(vec: dict, vectors, field, sort_key=None):
    """Express vec in the span of vectors.

    Returns a dict {index -> coefficient} with vec = sum coeff * vectors[i],
    or None if vec is outside the span.  The solution is the canonical one
    produced by echelon reduction in insertion order.
    """
    basis = EchelonBasis(field, sort_key)
    for v in vectors:
        basis.insert(v)
    return basis.coordinates(vec)


def solve_linear(vectors, target: dict, field, sort_key=None):
    """Alias of membership with solve-the-system phrasing."""
    return membership(target, vectors, field, sort_key)


def nullspace(vectors, field, sort_key=None):
    """Basis of linear dependencies among the given vectors.

    Returns a list of dicts {index -> coefficient}, one per dependency,
    each satisfying sum coeff * vectors[i] = 0.  Each dependency is
    normalized so its highest involved index has coefficient 1.
    """
    vectors = list(vectors)
    basis = EchelonBasis(field, sort_key)
    deps = []
    for idx, v in enumerate(vectors):
        res, comb = basis.reduce(v)
        if res:
            basis.insert(v)
        else:
            dep = {i: -c for i, c in comb.items()}
            dep[idx] = field.one
            deps.append(dep)
            basis.ninserted += 1  # account for the skipped insertion index
    return deps
