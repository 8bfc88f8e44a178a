"""Symmetric polynomials over F_p in the Schur basis, with the degree-2
differential determined by ∂(x) = x² on power series generators.

On Schur polynomials the differential acts by adding one box with its
content (column minus row) as coefficient:

    ∂(π_λ) = Σ_{μ = λ + box} C(box) · π_μ   (mod p),

which restricts the generator formulas ∂(e_r) = e_1 e_r − (r+1) e_{r+1}
and ∂(h_r) = −h_1 h_r + (r+1) h_{r+1}.  Twisted rank-one modules S_n(a)
use ∂_a(f) = ∂(f) + a·e_1·f.  The involution ω sends π_λ to
(−1)^{|λ|} π_{λᵗ} and intertwines the two generator formulas.

Finite variable counts are handled by row truncation: partitions with
more than n rows are dropped after every product, differential or
transpose.  The degree of π_λ is 2|λ|.

Builders assemble the associated p-complexes: truncated Sym_n and S_n(a),
the finite box complexes V_{a,b} on P(bp, ap) with the plain content
differential, and V_i on P(i, kp−i) with contents shifted by i.
"""

from __future__ import annotations

import functools

from . import partitions as pt
from .pcomplex import INF, PComplex

__all__ = [
    "SchurPoly",
    "schur",
    "elementary",
    "complete",
    "mult",
    "diff",
    "twisted_diff",
    "omega",
    "split_vars",
    "split_blocks",
    "theta0",
    "theta0_gen",
    "lima_partitions",
    "sym_pcomplex",
    "twist_pcomplex",
    "vab_pcomplex",
    "vi_pcomplex",
    "as_pcomplex",
]

lima_partitions = pt.lima_partitions


class SchurPoly:
    """Sparse Schur-basis element of Sym_n over F_p (n = None: unbounded)."""

    __slots__ = ("n", "p", "terms")

    def __init__(self, p, terms=None, n=None):
        self.p = p
        self.n = n
        clean = {}
        for lam, c in (terms or {}).items():
            c %= p
            if c and (n is None or len(lam) <= n):
                clean[tuple(lam)] = c
        self.terms = clean

    # ---- constructors ----

    @classmethod
    def zero(cls, p, n=None):
        return cls(p, {}, n)

    @classmethod
    def one(cls, p, n=None):
        return cls(p, {(): 1}, n)

    # ---- structure ----

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Top degree 2|λ| over the support, or None when zero."""
        if not self.terms:
            return None
        return max(2 * sum(lam) for lam in self.terms)

    def homogeneous_degree(self):
        degs = {2 * sum(lam) for lam in self.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous element")
        return degs.pop() if degs else None

    def _check_compatible(self, other):
        if self.p != other.p or self.n != other.n:
            raise ValueError("mixed variable count or characteristic")

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(): other % self.p} if other % self.p else {})
        if not isinstance(other, SchurPoly):
            return NotImplemented
        return (self.p, self.n, self.terms) == (other.p, other.n, other.terms)

    def __hash__(self):
        return hash((self.p, self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = SchurPoly(self.p, {(): other}, self.n)
        self._check_compatible(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, 0) + c
        return SchurPoly(self.p, out, self.n)

    def __neg__(self):
        return SchurPoly(self.p, {l: -c for l, c in self.terms.items()}, self.n)

    def __sub__(self, other):
        if isinstance(other, int):
            other = SchurPoly(self.p, {(): other}, self.n)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return SchurPoly(
                self.p, {l: c * other for l, c in self.terms.items()}, self.n
            )
        self._check_compatible(other)
        out: dict[tuple, int] = {}
        for lam, c1 in self.terms.items():
            for mu, c2 in other.terms.items():
                for nu, k in pt.lr_expand(lam, mu).items():
                    if self.n is not None and len(nu) > self.n:
                        continue
                    out[nu] = out.get(nu, 0) + c1 * c2 * k
        return SchurPoly(self.p, out, self.n)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = SchurPoly.one(self.p, self.n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # ---- the differential and the involution ----

    def diff(self):
        out: dict[tuple, int] = {}
        for lam, c in self.terms.items():
            for row, content in pt.addable_boxes(lam, max_rows=self.n):
                mu = pt.with_box(lam, row)
                out[mu] = out.get(mu, 0) + c * content
        return SchurPoly(self.p, out, self.n)

    def twisted_diff(self, a):
        """∂(f) + a·e_1·f: box adding with coefficients content + a."""
        out: dict[tuple, int] = {}
        for lam, c in self.terms.items():
            for row, content in pt.addable_boxes(lam, max_rows=self.n):
                mu = pt.with_box(lam, row)
                out[mu] = out.get(mu, 0) + c * (content + a)
        return SchurPoly(self.p, out, self.n)

    def omega(self):
        out: dict[tuple, int] = {}
        for lam, c in self.terms.items():
            lt = pt.transpose(lam)
            if self.n is not None and len(lt) > self.n:
                continue
            sign = -1 if sum(lam) % 2 else 1
            out[lt] = out.get(lt, 0) + sign * c
        return SchurPoly(self.p, out, self.n)

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for lam in sorted(self.terms, key=pt.sort_key):
            c = self.terms[lam]
            parts.append(f"{c}*s[{','.join(map(str, lam))}]")
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"SchurPoly(p={self.p}, n={self.n}, {self.to_text()})"


def schur(p, lam, n=None, c=1) -> SchurPoly:
    if not pt.is_partition(tuple(lam)):
        raise ValueError(f"{lam} is not a partition")
    return SchurPoly(p, {tuple(lam): c}, n)


def elementary(r, p, n=None) -> SchurPoly:
    """e_r = π_{(1^r)}; zero when r exceeds the variable count."""
    if r < 0:
        raise ValueError("negative index")
    if r == 0:
        return SchurPoly.one(p, n)
    if n is not None and r > n:
        return SchurPoly.zero(p, n)
    return SchurPoly(p, {(1,) * r: 1}, n)


def complete(r, p, n=None) -> SchurPoly:
    """h_r = π_{(r)}."""
    if r < 0:
        raise ValueError("negative index")
    if r == 0:
        return SchurPoly.one(p, n)
    return SchurPoly(p, {(r,): 1}, n)


def mult(f: SchurPoly, g: SchurPoly) -> SchurPoly:
    return f * g


def diff(f: SchurPoly) -> SchurPoly:
    return f.diff()


def twisted_diff(f: SchurPoly, a: int) -> SchurPoly:
    return f.twisted_diff(a)


def omega(f: SchurPoly) -> SchurPoly:
    return f.omega()


# ---------- variable splitting ----------


def _subpartitions(lam, max_rows=None):
    """Partitions mu ⊆ lam (mu_i ≤ lam_i), optionally with ≤ max_rows rows."""
    rows = len(lam) if max_rows is None else min(len(lam), max_rows)
    out = []

    def rec(r, prefix):
        if r == rows:
            out.append(tuple(x for x in prefix if x))
            return
        hi = min(lam[r], prefix[r - 1] if r else lam[r])
        for x in range(hi, -1, -1):
            prefix.append(x)
            rec(r + 1, prefix)
            prefix.pop()

    rec(0, [])
    return sorted(set(out), key=pt.sort_key)


def split_vars(f: SchurPoly, a: int, b: int) -> dict:
    """Image of f ∈ Sym_{a+b} under Sym_{a+b} → Sym_a ⊗ Sym_b.

    Returns {(mu, nu): coeff mod p} using the Schur coproduct
    π_λ ↦ Σ c^λ_{μν} π_μ ⊗ π_ν with row truncation on both sides.
    """
    if f.n is not None and f.n != a + b:
        raise ValueError("f must live in Sym_{a+b}")
    out: dict[tuple, int] = {}
    for lam, c in f.terms.items():
        for mu in _subpartitions(lam, max_rows=a):
            for nu, k in pt.lr_restrict(lam, mu).items():
                if len(nu) > b:
                    continue
                key = (mu, nu)
                val = (out.get(key, 0) + c * k) % f.p
                if val:
                    out[key] = val
                elif key in out:
                    del out[key]
    return out


@functools.cache
def _split_blocks_z(lam: tuple, sizes: tuple) -> tuple:
    """Iterated coproduct of π_λ into len(sizes) blocks over Z, with row
    truncation per block; returns ((tuple of partitions, coeff), ...)."""
    if len(sizes) == 1:
        if len(lam) > sizes[0]:
            return ()
        return (((lam,), 1),)
    head = sizes[0]
    rest = sizes[1:]
    out: dict[tuple, int] = {}
    for mu in _subpartitions(lam, max_rows=head):
        for nu, k in pt.lr_restrict(lam, mu).items():
            for tail, k2 in _split_blocks_z(nu, rest):
                key = (mu,) + tail
                out[key] = out.get(key, 0) + k * k2
    return tuple(sorted(out.items()))


def split_blocks(lam, sizes, p) -> dict:
    """Iterated splitting of π_λ into blocks of the given sizes, mod p."""
    out = {}
    for key, k in _split_blocks_z(tuple(lam), tuple(sizes)):
        c = k % p
        if c:
            out[key] = c
    return out


# ---------- the degree-dilating map on generators ----------


@functools.cache
def theta0_gen(i: int, p: int, n=None) -> SchurPoly:
    """The image e_{ip}^p of the i-th dilated generator; degree 2ip²."""
    return elementary(i * p, p, n) ** p


def theta0(monomials: dict, p: int, n=None) -> SchurPoly:
    """Evaluate a polynomial in generators e'_i at e'_i = e_{ip}^p.

    `monomials` maps exponent tuples (c_1, c_2, ...) to integer
    coefficients; the monomial means Π_i (e'_i)^{c_i}.
    """
    out = SchurPoly.zero(p, n)
    for exps, coeff in monomials.items():
        term = SchurPoly.one(p, n) * coeff
        for i, c in enumerate(exps, start=1):
            if c:
                term = term * (theta0_gen(i, p, n) ** c)
        out = out + term
    return out


# ---------- p-complex builders ----------


def _content_complex(p, labels, coeff_of_box, cap, max_rows):
    """Assemble a box-adding complex on the given partition labels.

    Boxes leaving the label set other than through the degree cap must
    carry coefficient 0 mod p; a violation means the label set is not
    ∂-stable and is reported as a bug.
    """
    labels = sorted(labels, key=pt.sort_key)
    pos = {lam: i for i, lam in enumerate(labels)}
    diff: dict[int, dict[int, int]] = {}
    for j, lam in enumerate(labels):
        row: dict[int, int] = {}
        for r, content in pt.addable_boxes(lam, max_rows=max_rows):
            c = coeff_of_box(content) % p
            if not c:
                continue
            mu = pt.with_box(lam, r)
            if mu in pos:
                row[pos[mu]] = c
            elif 2 * sum(mu) <= cap:
                raise AssertionError(
                    f"nonzero coefficient {c} on a box leaving the index set at {mu}"
                )
        if row:
            diff[j] = row
    degrees = [2 * sum(lam) for lam in labels]
    return PComplex(p, labels, degrees, diff, cap=cap)


def sym_pcomplex(n: int, p: int, cap: int) -> PComplex:
    """Sym_n truncated above degree cap, with the content differential."""
    labels = [
        lam
        for m in range(0, cap // 2 + 1)
        for lam in pt.partitions_of(m, max_rows=n)
    ]
    return _content_complex(p, labels, lambda c: c, cap, max_rows=n)


def twist_pcomplex(n: int, a: int, p: int, cap: int) -> PComplex:
    """The rank-one twist S_n(a): contents shifted by a."""
    labels = [
        lam
        for m in range(0, cap // 2 + 1)
        for lam in pt.partitions_of(m, max_rows=n)
    ]
    return _content_complex(p, labels, lambda c: c + a, cap, max_rows=n)


def vab_pcomplex(a: int, b: int, p: int) -> PComplex:
    """The finite box complex on P(bp, ap) with the content differential."""
    labels = pt.partitions_in_box(b * p, a * p)
    return _content_complex(p, labels, lambda c: c, INF, max_rows=b * p)


def vi_pcomplex(i: int, k: int, p: int) -> PComplex:
    """The finite complex on P(i, kp−i) with contents shifted by i."""
    if not 1 <= i <= p:
        raise ValueError("need 1 <= i <= p")
    cols = k * p - i
    if cols < 0:
        raise ValueError("kp - i must be nonnegative")
    labels = pt.partitions_in_box(i, cols)
    return _content_complex(p, labels, lambda c: c + i, INF, max_rows=i)


def as_pcomplex(source: str, p: int, **params) -> PComplex:
    """Dispatcher: source ∈ {"sym", "twist", "vab", "vi"}."""
    if source == "sym":
        return sym_pcomplex(params["n"], p, params["cap"])
    if source == "twist":
        return twist_pcomplex(params["n"], params["a"], p, params["cap"])
    if source == "vab":
        return vab_pcomplex(params["a"], params["b"], p)
    if source == "vi":
        return vi_pcomplex(params["i"], params["k"], p)
    raise ValueError(f"unknown source {source!r}")
