"""Finite-window graded vector spaces over F_p with a nilpotent degree-2 map.

A p-complex here is a graded F_p-vector space U with a homogeneous operator
∂ of degree +2 satisfying ∂^p = 0.  Core computations:

  * slash cohomology  H_{/k}(U) = Ker ∂^{k+1} / (Im ∂^{p−k−1} + Ker ∂^k),
    k = 0..p−2, with explicit representatives;
  * decomposition of ∂ into strings (graded Jordan form of the nilpotent
    operator); strings of length exactly p make up the contractible part,
    the shorter strings carry all slash cohomology: a string of length
    ℓ ≤ p−1 with head degree h contributes one class to H_{/k} at degree
    h + 2(ℓ−1−k) for each k ≤ ℓ−1;
  * tensor products with the Leibniz differential (no signs: all degrees
    are even);
  * string *statistics* and their tensor calculus, which let tensor
    products of large complexes be decomposed exactly without forming the
    product space.

Truncation: a complex may be cut above a degree cap, in which case graded
data is only trusted on degrees d with d + 2(p−1) ≤ cap; builders in this
package never cut from below, so no lower margin is needed.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg

__all__ = [
    "PComplex",
    "SlashCohomology",
    "GradedDims",
    "StringBasis",
    "StringStats",
    "KunnethPreconditionError",
    "validate",
    "slash_cohomology",
    "string_decompose",
    "tensor",
    "kunneth_check",
    "hilbert",
    "tensor_stats",
    "slash_dims_from_stats",
    "tensor_strings",
    "jj_complex",
]

INF = math.inf


class KunnethPreconditionError(ValueError):
    """Raised when the acting factor has slash cohomology outside H_{/0}."""


@dataclass(frozen=True)
class GradedDims:
    """Dimensions per degree, known on [window[0], window[1]] only."""

    dims: dict
    window: tuple

    def __getitem__(self, d):
        if not self.window[0] <= d <= self.window[1]:
            raise KeyError(f"degree {d} outside the known window {self.window}")
        return self.dims.get(d, 0)


@dataclass
class StringBasis:
    """One ∂-string: slots[i] = ∂^i(head), living in degrees head+2i."""

    head_degree: int
    length: int
    slots: list  # sparse vectors {basis index: coeff}


class PComplex:
    """A p-complex on an ordered homogeneous basis with a sparse ∂."""

    def __init__(self, p, labels, degrees, diff, cap=INF):
        self.p = p
        self.labels = list(labels)
        self.degrees = list(degrees)
        # diff[j] = {i: coeff}: ∂(basis_j) = Σ coeff · basis_i
        self.diff = {j: dict(cols) for j, cols in diff.items() if cols}
        self.cap = cap
        self._by_degree: dict[int, list] = {}
        for idx, d in enumerate(self.degrees):
            self._by_degree.setdefault(d, []).append(idx)
        self._matrices: dict[int, np.ndarray] = {}

    # ---------- basic structure ----------

    @property
    def dim(self):
        return len(self.labels)

    def support_degrees(self):
        return sorted(self._by_degree)

    def min_degree(self):
        return min(self._by_degree) if self._by_degree else 0

    def max_degree(self):
        return max(self._by_degree) if self._by_degree else 0

    def indices_at(self, d):
        return self._by_degree.get(d, [])

    def valid_slash_degrees(self):
        """Degrees where slash cohomology of the (possibly truncated)
        complex is trusted: d + 2(p−1) ≤ cap."""
        hi = self.cap - 2 * (self.p - 1)
        return [d for d in self.support_degrees() if d <= hi]

    def matrix(self, d):
        """∂ as a dense matrix from degree d to degree d+2."""
        if d in self._matrices:
            return self._matrices[d]
        src = self.indices_at(d)
        tgt = self.indices_at(d + 2)
        pos = {i: r for r, i in enumerate(tgt)}
        m = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for c, j in enumerate(src):
            for i, coeff in self.diff.get(j, {}).items():
                m[pos[i], c] = coeff % self.p
        self._matrices[d] = m
        return m

    def power_matrix(self, d, j):
        """∂^j as a matrix from degree d to degree d+2j."""
        n = len(self.indices_at(d))
        out = np.eye(n, dtype=np.int64)
        for step in range(j):
            out = linalg.matmul_mod(self.matrix(d + 2 * step), out, self.p)
        return out

    def apply(self, vec: dict) -> dict:
        out: dict[int, int] = {}
        for j, c in vec.items():
            for i, coeff in self.diff.get(j, {}).items():
                val = (out.get(i, 0) + c * coeff) % self.p
                if val:
                    out[i] = val
                elif i in out:
                    del out[i]
        return out

    # ---------- validation ----------

    def validation_error(self):
        """None if homogeneous with windowed ∂^p = 0, else a message naming
        the first violating basis vector."""
        for j in sorted(self.diff):
            dj = self.degrees[j]
            for i in self.diff[j]:
                if self.degrees[i] != dj + 2:
                    return (
                        f"differential not homogeneous of degree 2 at basis "
                        f"vector {self.labels[j]!r}"
                    )
        for j, d in enumerate(self.degrees):
            if d <= self.cap - 2 * self.p:
                vec = {j: 1}
                for _ in range(self.p):
                    vec = self.apply(vec)
                if vec:
                    return f"∂^{self.p} does not vanish on {self.labels[j]!r}"
        return None

    # ---------- slash cohomology ----------

    def slash_cohomology(self) -> "SlashCohomology":
        err = self.validation_error()
        if err:
            raise ValueError(err)
        p = self.p
        dims = {k: {} for k in range(p - 1)}
        reps = {k: {} for k in range(p - 1)}
        for d in self.valid_slash_degrees():
            n = len(self.indices_at(d))
            if n == 0:
                continue
            kers = [np.zeros((n, 0), dtype=np.int64)]
            for j in range(1, p):
                kers.append(linalg.nullspace(self.power_matrix(d, j), p))
            kers.append(np.eye(n, dtype=np.int64))
            for k in range(p - 1):
                j = p - 1 - k
                src = d - 2 * j
                img = self.power_matrix(src, j) if self.indices_at(src) else np.zeros(
                    (n, 0), dtype=np.int64
                )
                span = np.concatenate([img % p, kers[k]], axis=1)
                chosen = linalg.extend_basis(span, kers[k + 1], p)
                if chosen:
                    dims[k][d] = len(chosen)
                    local = self.indices_at(d)
                    vecs = []
                    for c in chosen:
                        col = kers[k + 1][:, c]
                        vecs.append(
                            {local[r]: int(col[r]) for r in range(n) if col[r]}
                        )
                    reps[k][d] = vecs
        return SlashCohomology(
            p=p,
            dims=dims,
            reps=reps,
            valid_window=(self.min_degree(), self.cap - 2 * (p - 1)),
            labels=self.labels,
        )

    # ---------- string decomposition ----------

    def string_decompose(self):
        """Explicit graded Jordan strings for ∂, longest first per degree.

        Heads of length-ℓ strings at degree d span a complement of
        Ker ∂^{ℓ−1} + ∂(Ker ∂^{ℓ+1}) inside Ker ∂^ℓ; taking ∂-orbits of such
        complements, longest ℓ first, yields a basis of the whole complex.
        """
        err = self.validation_error()
        if err:
            raise ValueError(err)
        p = self.p
        strings = []
        for d in self.support_degrees():
            local = self.indices_at(d)
            n = len(local)
            kers = [np.zeros((n, 0), dtype=np.int64)]
            for j in range(1, p):
                kers.append(linalg.nullspace(self.power_matrix(d, j), p))
            kers.append(np.eye(n, dtype=np.int64))  # ∂^p = 0
            prev = self.indices_at(d - 2)
            for length in range(p, 0, -1):
                upper = kers[length + 1] if length + 1 <= p else np.eye(
                    n, dtype=np.int64
                )
                if prev:
                    kprev = (
                        linalg.nullspace(self.power_matrix(d - 2, length + 1), p)
                        if length + 1 < p
                        else np.eye(len(prev), dtype=np.int64)
                    )
                    img = (self.matrix(d - 2) @ kprev) % p
                else:
                    img = np.zeros((n, 0), dtype=np.int64)
                span = np.concatenate([kers[length - 1], img], axis=1)
                for c in linalg.extend_basis(span, kers[length], p):
                    col = kers[length][:, c]
                    head = {local[r]: int(col[r]) for r in range(n) if col[r]}
                    slots = [head]
                    for _ in range(length - 1):
                        slots.append(self.apply(slots[-1]))
                    strings.append(StringBasis(d, length, slots))
        total = sum(s.length for s in strings)
        if total != self.dim:
            raise AssertionError("string decomposition does not fill the space")
        return strings

    def string_stats(self) -> "StringStats":
        """String multiplicities by (head degree, length), from ranks only.

        With r_j(d) = rank(∂^j: U_d → U_{d+2j}) and r_0(d) = dim U_d, the
        number of strings with head exactly at d and length exactly ℓ is
        (r_{ℓ−1}(d) − r_ℓ(d−2)) − (r_ℓ(d) − r_{ℓ+1}(d−2)); this avoids
        building explicit vectors.
        """
        err = self.validation_error()
        if err:
            raise ValueError(err)
        p = self.p
        ranks: dict[int, list] = {}
        for d in self.support_degrees():
            n = len(self.indices_at(d))
            rs = [n]
            power = np.eye(n, dtype=np.int64)
            for j in range(1, p + 2):
                power = linalg.matmul_mod(self.matrix(d + 2 * (j - 1)), power, p)
                rs.append(linalg.rank(power, p) if power.size else 0)
            ranks[d] = rs

        def r(d, j):
            if d not in ranks:
                return 0
            return ranks[d][j] if j < len(ranks[d]) else 0

        counts: dict[tuple, int] = {}
        for d in self.support_degrees():
            for length in range(1, p + 1):
                m = (r(d, length - 1) - r(d - 2, length)) - (
                    r(d, length) - r(d - 2, length + 1)
                )
                if m:
                    counts[(d, length)] = m
        total = sum(l * m for (h, l), m in counts.items())
        if total != self.dim or any(m < 0 for m in counts.values()):
            raise AssertionError("rank bookkeeping failed")
        return StringStats(counts=counts, cap=self.cap, p=self.p)

    # ---------- constructions ----------

    def dual(self) -> "PComplex":
        """Linear dual with ∂*(ξ) = −ξ∘∂; only for complete complexes."""
        if self.cap != INF:
            raise ValueError("dual of a truncated complex is not defined here")
        dual_diff: dict[int, dict[int, int]] = {}
        for j, cols in self.diff.items():
            for i, c in cols.items():
                dual_diff.setdefault(i, {})[j] = (-c) % self.p
        return PComplex(
            self.p,
            [("dual", l) for l in self.labels],
            [-d for d in self.degrees],
            dual_diff,
            cap=INF,
        )

    def hilbert(self) -> GradedDims:
        return GradedDims(
            dims={d: len(ix) for d, ix in self._by_degree.items()},
            window=(self.min_degree(), self.cap),
        )


# ---------- module-level operation surface ----------


def validate(c: PComplex) -> bool:
    return c.validation_error() is None


def slash_cohomology(c: PComplex) -> "SlashCohomology":
    return c.slash_cohomology()


def string_decompose(c: PComplex):
    return c.string_decompose()


def hilbert(obj) -> GradedDims:
    if isinstance(obj, PComplex):
        return obj.hilbert()
    if isinstance(obj, SlashCohomology):
        return obj.hilbert()
    raise TypeError("expected a PComplex or SlashCohomology")


@dataclass
class SlashCohomology:
    """Slash cohomology with chosen homogeneous representatives.

    dims[k][d] and reps[k][d] cover k = 0..p−2 and degrees in the valid
    window; degrees outside the window are unknown, not zero.
    """

    p: int
    dims: dict
    reps: dict
    valid_window: tuple
    labels: list = field(repr=False)

    def total_dims(self) -> dict:
        out: dict[int, int] = {}
        for k in self.dims:
            for d, n in self.dims[k].items():
                out[d] = out.get(d, 0) + n
        return out

    def dim(self, k, d) -> int:
        if not self.valid_window[0] <= d <= self.valid_window[1]:
            raise KeyError(f"degree {d} outside valid window {self.valid_window}")
        return self.dims.get(k, {}).get(d, 0)

    def is_zero(self) -> bool:
        return all(not v for v in self.dims.values())

    def hilbert(self) -> GradedDims:
        return GradedDims(dims=self.total_dims(), window=self.valid_window)


def tensor(a: PComplex, b: PComplex) -> PComplex:
    """Tensor product with ∂(x⊗y) = ∂x⊗y + x⊗∂y (all degrees even)."""
    if a.p != b.p:
        raise ValueError("tensor factors must share p")
    p = a.p
    pairs = [
        (i, j)
        for i in range(a.dim)
        for j in range(b.dim)
    ]
    pairs.sort(key=lambda ij: (a.degrees[ij[0]] + b.degrees[ij[1]], ij))
    pos = {ij: k for k, ij in enumerate(pairs)}
    labels = [(a.labels[i], b.labels[j]) for i, j in pairs]
    degrees = [a.degrees[i] + b.degrees[j] for i, j in pairs]
    diff: dict[int, dict[int, int]] = {}
    for k, (i, j) in enumerate(pairs):
        row: dict[int, int] = {}
        for i2, c in a.diff.get(i, {}).items():
            row[pos[(i2, j)]] = c % p
        for j2, c in b.diff.get(j, {}).items():
            key = pos[(i, j2)]
            row[key] = (row.get(key, 0) + c) % p
        row = {t: c for t, c in row.items() if c}
        if row:
            diff[k] = row
    if a.cap == INF and b.cap == INF:
        cap = INF
    else:
        cap = min(a.cap + b.min_degree(), b.cap + a.min_degree())
    return PComplex(p, labels, degrees, diff, cap=cap)


def kunneth_check(a: PComplex, m: PComplex) -> bool:
    """Whether H_/ of a⊗m has the graded dims of H_/(a) ⊛ H_/(m).

    Requires H_/(a) concentrated in H_{/0} on a's valid window; a violation
    raises KunnethPreconditionError rather than returning False.
    """
    sa = a.slash_cohomology()
    for k in range(1, a.p - 1):
        if sa.dims.get(k):
            raise KunnethPreconditionError(
                f"acting factor has H_/{k} != 0 at degrees {sorted(sa.dims[k])}"
            )
    sm = m.slash_cohomology()
    t = tensor(a, m)
    st = t.slash_cohomology()
    a_dims = sa.total_dims()
    hi = min(
        st.valid_window[1],
        sa.valid_window[1] + m.min_degree(),
        sm.valid_window[1] + a.min_degree(),
    )
    for k in range(a.p - 1):
        conv: dict[int, int] = {}
        for d1, n1 in a_dims.items():
            for d2, n2 in sm.dims.get(k, {}).items():
                conv[d1 + d2] = conv.get(d1 + d2, 0) + n1 * n2
        degrees = set(conv) | set(st.dims.get(k, {}))
        for d in degrees:
            if d > hi:
                continue
            if conv.get(d, 0) != st.dims.get(k, {}).get(d, 0):
                return False
    return True


# ---------- string statistics ----------


@dataclass
class StringStats:
    """Multiset of (head degree, length) with the trusted degree cap."""

    counts: dict
    cap: float
    p: int

    def min_head(self):
        return min((h for h, _ in self.counts), default=0)

    def total_dim_at(self, d):
        n = 0
        for (h, l), m in self.counts.items():
            if h <= d <= h + 2 * (l - 1) and (d - h) % 2 == 0:
                n += m
        return n


@functools.cache
def _string_tensor_table(l1: int, l2: int, p: int):
    """Exact decomposition of J_{l1} ⊗ J_{l2} over F_p[∂]/∂^p: a tuple of
    ((head degree offset, length), multiplicity), heads relative to the sum
    of the two head degrees."""
    c = jj_complex(l1, l2, p)
    table: dict[tuple, int] = {}
    for s in c.string_decompose():
        key = (s.head_degree, s.length)
        table[key] = table.get(key, 0) + 1
    return tuple(sorted(table.items()))


def jj_complex(l1: int, l2: int, p: int) -> PComplex:
    """The tensor of two abstract strings, heads in degree 0."""
    labels = [(s, t) for s in range(l1) for t in range(l2)]
    degrees = [2 * (s + t) for s, t in labels]
    pos = {st: k for k, st in enumerate(labels)}
    diff = {}
    for k, (s, t) in enumerate(labels):
        row = {}
        if s + 1 < l1:
            row[pos[(s + 1, t)]] = 1
        if t + 1 < l2:
            row[pos[(s, t + 1)]] = 1
        if row:
            diff[k] = row
    return PComplex(p, labels, degrees, diff, cap=INF)


def tensor_stats(s1: StringStats, s2: StringStats, p: int) -> StringStats:
    """String statistics of the tensor of two complexes given their own."""
    counts: dict[tuple, int] = {}
    for (h1, l1), m1 in s1.counts.items():
        for (h2, l2), m2 in s2.counts.items():
            for (off, length), mult in _string_tensor_table(l1, l2, p):
                key = (h1 + h2 + off, length)
                counts[key] = counts.get(key, 0) + m1 * m2 * mult
    cap = min(s1.cap + s2.min_head(), s2.cap + s1.min_head())
    return StringStats(counts=counts, cap=cap, p=p)


def slash_dims_from_stats(stats: StringStats, p: int):
    """Graded dims of H_{/k} from string statistics, on the valid window.

    A string of length ℓ ≤ p−1 with head degree h gives one class in
    H_{/k} at degree h + 2(ℓ−1−k) for each k ≤ ℓ−1; length-p strings give
    nothing.
    """
    hi = stats.cap - 2 * (p - 1)
    out = {k: {} for k in range(p - 1)}
    for (h, l), m in stats.counts.items():
        if l >= p:
            continue
        for k in range(l):
            d = h + 2 * (l - 1 - k)
            if d <= hi:
                out[k][d] = out[k].get(d, 0) + m
    return out


def tensor_strings(strings1, strings2, p, index_of):
    """Explicit strings of a tensor complex from explicit factor strings.

    index_of(i1, i2) must give the basis index of basis1_i1 ⊗ basis2_i2 in
    the product complex.  Works pair by pair through the memoized abstract
    decomposition of J_{l1} ⊗ J_{l2}, so no large elimination is needed.
    """
    out = []
    for s1 in strings1:
        for s2 in strings2:
            abstract = _jj_strings(s1.length, s2.length, p)
            for head_off, length, slots in abstract:
                mapped = []
                for slot in slots:
                    vec: dict[int, int] = {}
                    for (a, b), c in slot.items():
                        for i1, c1 in s1.slots[a].items():
                            for i2, c2 in s2.slots[b].items():
                                k = index_of(i1, i2)
                                val = (vec.get(k, 0) + c * c1 * c2) % p
                                if val:
                                    vec[k] = val
                                elif k in vec:
                                    del vec[k]
                    mapped.append(vec)
                out.append(
                    StringBasis(s1.head_degree + s2.head_degree + head_off, length, mapped)
                )
    return out


@functools.cache
def _jj_strings(l1: int, l2: int, p: int):
    """Abstract strings of J_{l1}⊗J_{l2} with slot vectors over (s, t)."""
    c = jj_complex(l1, l2, p)
    out = []
    for s in c.string_decompose():
        slots = [
            {c.labels[i]: v for i, v in slot.items()} for slot in s.slots
        ]
        out.append((s.head_degree, s.length, slots))
    return tuple(out)
