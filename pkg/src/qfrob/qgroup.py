"""The idempotented quantum group for sl2 over Z[v^{±1}], its base changes
to O_p, Lusztig's canonical basis, and the quantum Frobenius map.

Udot is generated by orthogonal idempotents 1_n (n in the weight lattice),
a raiser θ and a lowerer ϑ with θϑ1_n − ϑθ1_n = [n]·1_n, θ1_n = 1_{n+2}θ.
The integral form is spanned by divided powers θ^{(a)}1_n = θ^a 1_n/[a]!.
The canonical basis consists of E^{(a)}F^{(b)}1_n for n ≤ b−a and
F^{(b)}E^{(a)}1_n for n ≥ b−a, the two identified at n = b−a (stored here
in EF shape so equality is syntactic).

Multiplication rewrites words to canonical form using divided-power
merging E^{(a)}E^{(b)} = [a+b, a]·E^{(a+b)} and the commutation

    E^{(A)} F^{(B)} 1_n = Σ_j [A−B+n, j] · F^{(B−j)} E^{(A−j)} 1_n

(and its mirror), where [m, j] is the Gaussian binomial extended to
integer m.  The commutation formula is not an axiom: this module also
contains a brute-force rational-field oracle that expands products of
divided powers over Z[v^{±1}] in the monomial basis θ^i ϑ^j 1_n using only
the defining relations, and the formula is validated against it before
anything else trusts it (see the test suite and the oracle check below).

Coefficient rings are selected by a tag: "generic" keeps Z[v^{±1}]
structure constants, "op" evaluates them in O_p through v ↦ q, and "rho"
through v ↦ q^p (v ↦ 1 for p = 2).  The quantum Frobenius map sends
E^{(a)}F^{(b)}1_n over O_p to E^{(a/p)}F^{(b/p)}1_{n/p} over the rho ring
when p divides a, b and n, and to zero otherwise; its section multiplies
all parameters by p.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb
from typing import NamedTuple

from .cyclotomic import (
    CycElem,
    LaurentPoly,
    qbinom,
    qbinom_int,
    qfact,
    qint,
    rho,
    to_op,
)
from .symfunc import vab_pcomplex

__all__ = [
    "CoeffRing",
    "HalfElem",
    "half_elem",
    "half_mult",
    "half_comult",
    "half_frobenius",
    "CBWord",
    "UdotElem",
    "udot",
    "udot_mult",
    "frobenius",
    "frobenius_section",
    "canonical_words",
    "frobenius_hom_check",
    "kernel_check",
    "k0_symbol_check",
    "oracle_monomials",
    "oracle_word_expansion",
    "oracle_product_agrees",
    "commutation_formula_agrees",
]


@dataclass(frozen=True)
class CoeffRing:
    """Structure-constant evaluation: generic Z[v^{±1}], O_p, or rho-O_p."""

    tag: str
    p: int | None = None

    def __post_init__(self):
        if self.tag not in ("generic", "op", "rho"):
            raise ValueError(f"unknown ring tag {self.tag!r}")
        if self.tag != "generic" and (self.p is None or self.p < 2):
            raise ValueError("op/rho rings need a prime p")

    def of(self, f: LaurentPoly):
        if self.tag == "generic":
            return f
        if self.tag == "op":
            return to_op(f, self.p)
        return rho(f, self.p)

    def one(self):
        return self.of(LaurentPoly.one())

    def binom(self, m: int, k: int):
        return _ring_binom(self.tag, self.p, m, k)


@functools.cache
def _ring_binom(tag, p, m, k):
    return CoeffRing(tag, p).of(qbinom_int(m, k))


# --------------------------------------------------------------------------
# the half quantum group
# --------------------------------------------------------------------------


class HalfElem:
    """Finite combination of divided powers θ^{(a)} with tagged coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoeffRing, terms=None):
        self.ring = ring
        self.terms = {a: c for a, c in (terms or {}).items() if not _is_zero(c)}

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HalfElem):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __add__(self, other):
        if self.ring != other.ring:
            raise ValueError("ring tag mismatch")
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return HalfElem(self.ring, out)


def _is_zero(c):
    return c.is_zero() if hasattr(c, "is_zero") else c == 0


def half_elem(ring: CoeffRing, a: int, coeff=None) -> HalfElem:
    return HalfElem(ring, {a: coeff if coeff is not None else ring.one()})


def half_mult(x: HalfElem, y: HalfElem) -> HalfElem:
    """Bilinear extension of θ^{(a)}θ^{(b)} = [a+b, a]·θ^{(a+b)}."""
    if x.ring != y.ring:
        raise ValueError("ring tag mismatch")
    out: dict[int, object] = {}
    for a, c1 in x.terms.items():
        for b, c2 in y.terms.items():
            c = c1 * c2 * x.ring.binom(a + b, a)
            out[a + b] = out[a + b] + c if a + b in out else c
    return HalfElem(x.ring, out)


def half_comult(x: HalfElem) -> dict:
    """{(k, a−k): coeff · v^{k(k−a)}} from the comultiplication of θ^{(a)}."""
    out: dict[tuple, object] = {}
    for a, c in x.terms.items():
        for k in range(a + 1):
            coeff = c * x.ring.of(LaurentPoly.v_power(k * (k - a)))
            key = (k, a - k)
            out[key] = out[key] + coeff if key in out else coeff
    return {k: c for k, c in out.items() if not _is_zero(c)}


def half_frobenius(x: HalfElem) -> HalfElem:
    """E^{(a)} ↦ 𝖤^{(a/p)} when p | a, else 0; O_p coefficients carry over."""
    if x.ring.tag != "op":
        raise ValueError("half_frobenius expects an O_p element")
    p = x.ring.p
    out = {}
    for a, c in x.terms.items():
        if a % p == 0:
            out[a // p] = c
    return HalfElem(CoeffRing("rho", p), out)


# --------------------------------------------------------------------------
# canonical basis words
# --------------------------------------------------------------------------


class CBWord(NamedTuple):
    """shape "EF" is E^{(a)}F^{(b)}1_n, "FE" is F^{(b)}E^{(a)}1_n."""

    shape: str
    a: int
    b: int
    n: int

    def is_canonical(self):
        if self.shape == "EF":
            return self.n <= self.b - self.a
        return self.n > self.b - self.a

    def left_weight(self):
        return self.n + 2 * (self.a - self.b)

    def __str__(self):
        if self.shape == "EF":
            return f"E({self.a})F({self.b})1[{self.n}]"
        return f"F({self.b})E({self.a})1[{self.n}]"


def _canonical(shape, a, b, n) -> CBWord:
    """Storage form: ties at n = b − a use the EF shape."""
    if n <= b - a:
        return CBWord("EF", a, b, n)
    return CBWord("FE", a, b, n)


class UdotElem:
    """Finite combination of canonical basis words with tagged coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CoeffRing, terms=None):
        self.ring = ring
        clean = {}
        for w, c in (terms or {}).items():
            if _is_zero(c):
                continue
            if not w.is_canonical():
                raise ValueError(f"non-canonical word {w}")
            clean[w] = c
        self.terms = clean

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, UdotElem):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __add__(self, other):
        if self.ring != other.ring:
            raise ValueError("ring tag mismatch")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return UdotElem(self.ring, out)

    def __sub__(self, other):
        neg = UdotElem(other.ring, {w: c * (-1) for w, c in other.terms.items()})
        return self + neg

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda w: (w.shape, w.a, w.b, w.n))
        return " + ".join(f"({self.terms[w]})*{w}" for w in keys)

    __repr__ = __str__


def udot(ring: CoeffRing, shape: str, a: int, b: int, n: int, coeff=None) -> UdotElem:
    """A canonical basis element; the shape is normalized at the tie."""
    w = _canonical(shape, a, b, n)
    if w.shape != shape and shape == "FE" and n < b - a:
        raise ValueError("F E word with n < b−a is not a basis element")
    if shape == "EF" and n > b - a:
        raise ValueError("E F word with n > b−a is not a basis element")
    return UdotElem(ring, {w: coeff if coeff is not None else ring.one()})


def _commute_to_FE(ring, A, B, n):
    """E^{(A)}F^{(B)}1_n as Σ_j [A−B+n, j]·F^{(B−j)}E^{(A−j)}1_n."""
    out = []
    for j in range(min(A, B) + 1):
        c = ring.binom(A - B + n, j)
        if not _is_zero(c):
            out.append((A - j, B - j, c))
    return out


def _commute_to_EF(ring, A, B, n):
    """F^{(B)}E^{(A)}1_n as Σ_j [B−A−n, j]·E^{(A−j)}F^{(B−j)}1_n."""
    out = []
    for j in range(min(A, B) + 1):
        c = ring.binom(B - A - n, j)
        if not _is_zero(c):
            out.append((A - j, B - j, c))
    return out


def _push_canonical(ring, shape, a, b, n, coeff, acc):
    """Normalize one (possibly non-canonical) word into the accumulator."""
    w = CBWord(shape, a, b, n)
    if w.is_canonical() or n == b - a:
        w = _canonical(shape, a, b, n)
        acc[w] = acc[w] + coeff if w in acc else coeff
        return
    if shape == "EF":  # n > b−a: commute to FE words, all canonical
        for a2, b2, c in _commute_to_FE(ring, a, b, n):
            w2 = _canonical("FE", a2, b2, n)
            cc = coeff * c
            acc[w2] = acc[w2] + cc if w2 in acc else cc
    else:  # FE with n < b−a: commute to EF words
        for a2, b2, c in _commute_to_EF(ring, a, b, n):
            w2 = _canonical("EF", a2, b2, n)
            cc = coeff * c
            acc[w2] = acc[w2] + cc if w2 in acc else cc


def _word_mult(ring, w1: CBWord, w2: CBWord, acc, scale):
    """Accumulate w1·w2 into acc (canonical words → coefficients)."""
    if w1.n != w2.left_weight():
        return
    a1, b1, n1 = w1.a, w1.b, w1.n
    a2, b2, n2 = w2.a, w2.b, w2.n
    if w1.shape == "EF" and w2.shape == "EF":
        # middle F^{(b1)} E^{(a2)} at weight n2 − 2 b2
        for ai, bi, c in _commute_to_EF(ring, a2, b1, n2 - 2 * b2):
            coeff = (
                scale
                * c
                * ring.binom(a1 + ai, a1)
                * ring.binom(bi + b2, b2)
            )
            _push_canonical(ring, "EF", a1 + ai, bi + b2, n2, coeff, acc)
    elif w1.shape == "EF" and w2.shape == "FE":
        B = b1 + b2
        merge_f = ring.binom(B, b1)
        for ai, bi, c in _commute_to_EF(ring, a2, B, n2):
            coeff = scale * merge_f * c * ring.binom(a1 + ai, a1)
            _push_canonical(ring, "EF", a1 + ai, bi, n2, coeff, acc)
    elif w1.shape == "FE" and w2.shape == "EF":
        A = a1 + a2
        merge_e = ring.binom(A, a1)
        for ai, bi, c in _commute_to_FE(ring, A, b2, n2):
            coeff = scale * merge_e * c * ring.binom(b1 + bi, b1)
            _push_canonical(ring, "FE", ai, b1 + bi, n2, coeff, acc)
    else:
        # middle E^{(a1)} F^{(b2)} at weight n2 + 2 a2
        for ai, bi, c in _commute_to_FE(ring, a1, b2, n2 + 2 * a2):
            coeff = (
                scale
                * c
                * ring.binom(b1 + bi, b1)
                * ring.binom(ai + a2, a2)
            )
            _push_canonical(ring, "FE", ai + a2, b1 + bi, n2, coeff, acc)


def udot_mult(x: UdotElem, y: UdotElem) -> UdotElem:
    if x.ring != y.ring:
        raise ValueError("ring tag mismatch")
    acc: dict[CBWord, object] = {}
    for w1, c1 in x.terms.items():
        for w2, c2 in y.terms.items():
            _word_mult(x.ring, w1, w2, acc, c1 * c2)
    return UdotElem(x.ring, acc)


# --------------------------------------------------------------------------
# quantum Frobenius and its section
# --------------------------------------------------------------------------


def frobenius(x: UdotElem) -> UdotElem:
    """Fr: the O_p form to the rho form; a word survives iff p divides its
    divided powers and its weight, with all parameters contracted by p."""
    if x.ring.tag != "op":
        raise ValueError("frobenius expects an O_p element")
    p = x.ring.p
    ring = CoeffRing("rho", p)
    out: dict[CBWord, object] = {}
    for w, c in x.terms.items():
        if w.a % p or w.b % p or w.n % p:
            continue
        w2 = _canonical(w.shape, w.a // p, w.b // p, w.n // p)
        out[w2] = out[w2] + c if w2 in out else c
    return UdotElem(ring, out)


def frobenius_section(x: UdotElem) -> UdotElem:
    """Canonical-basis-wise section: all parameters dilated by p."""
    if x.ring.tag != "rho":
        raise ValueError("the section expects a rho-form element")
    p = x.ring.p
    ring = CoeffRing("op", p)
    out: dict[CBWord, object] = {}
    for w, c in x.terms.items():
        w2 = _canonical(w.shape, w.a * p, w.b * p, w.n * p)
        out[w2] = out[w2] + c if w2 in out else c
    return UdotElem(ring, out)


def canonical_words(amax: int, bmax: int, nmin: int, nmax: int):
    out = []
    for a in range(amax + 1):
        for b in range(bmax + 1):
            for n in range(nmin, nmax + 1):
                out.append(_canonical("EF" if n <= b - a else "FE", a, b, n))
    return out


def frobenius_hom_check(p: int, amax: int, nmax: int) -> dict:
    """Fr(x·y) = Fr(x)·Fr(y) over all canonical pairs in the box
    a, b ≤ amax, |n| ≤ nmax; exact in O_p arithmetic."""
    ring = CoeffRing("op", p)
    words = canonical_words(amax, amax, -nmax, nmax)
    by_left: dict[int, list] = {}
    for w in words:
        by_left.setdefault(w.left_weight(), []).append(w)
    pairs = 0
    failures = []
    for w1 in words:
        x = UdotElem(ring, {w1: ring.one()})
        fx = frobenius(x)
        for w2 in by_left.get(w1.n, []):
            y = UdotElem(ring, {w2: ring.one()})
            pairs += 1
            lhs = frobenius(udot_mult(x, y))
            rhs = udot_mult(fx, frobenius(y))
            if lhs != rhs:
                failures.append((str(w1), str(w2), str(lhs), str(rhs)))
    # weight-mismatched pairs multiply to zero on both sides: Fr respects
    # weights, so they are vacuously consistent and not enumerated
    return {
        "p": p,
        "amax": amax,
        "nmax": nmax,
        "pairs": pairs,
        "ok": not failures,
        "failures": failures[:3],
    }


def kernel_check(p: int, amax: int, nmax: int) -> dict:
    """Fr(z·u·z') = 0 for u ∈ {E·1_m, F·1_m} and canonical z, z' in range."""
    ring = CoeffRing("op", p)
    words = canonical_words(amax, amax, -nmax, nmax)
    by_n: dict[int, list] = {}
    for w in words:
        by_n.setdefault(w.n, []).append(w)
    triples = 0
    failures = []
    for w2 in words:
        z2 = UdotElem(ring, {w2: ring.one()})
        m = w2.left_weight()
        for kind in ("E", "F"):
            if kind == "E":
                u = UdotElem(ring, {_canonical("EF", 1, 0, m): ring.one()})
                top = m + 2
            else:
                u = UdotElem(ring, {_canonical("EF", 0, 1, m): ring.one()})
                top = m - 2
            uz = udot_mult(u, z2)
            for w1 in by_n.get(top, []):
                z1 = UdotElem(ring, {w1: ring.one()})
                triples += 1
                img = frobenius(udot_mult(z1, uz))
                if not img.is_zero():
                    failures.append((str(w1), kind, str(w2), str(img)))
    return {
        "p": p,
        "amax": amax,
        "nmax": nmax,
        "triples": triples,
        "ok": not failures,
        "failures": failures[:3],
    }


def k0_symbol_check(a: int, b: int, p: int) -> bool:
    """q^{−abp²} times the graded character of H_/(V_{a,b}) equals the
    ordinary binomial C(a+b, a) in O_p.

    The classes live inside the rank-one block module whose generator sits
    in degree −(ap)(bp), so the character is taken in that grading; the
    composite then decategorifies the product-of-symbols identity with
    coefficient q^{−abp²}·C(a+b, a).  (Since q^{2abp²} = 1, this is also
    the statement that the plainly graded character is the integer
    C(a+b, a).)
    """
    sl = vab_pcomplex(a, b, p).slash_cohomology()
    shift = a * b * p * p
    char = CycElem.zero(p)
    for d, m in sl.hilbert().dims.items():
        char = char + CycElem.q_power(p, d - shift, m)
    result = char * CycElem.q_power(p, -shift)
    return result == CycElem.from_int(p, comb(a + b, a))


# --------------------------------------------------------------------------
# the rational-field oracle
# --------------------------------------------------------------------------


@functools.cache
def _move_v_past_powers(i: int, n: int):
    """ϑ θ^i 1_n = θ^i ϑ 1_n + c·θ^{i−1} 1_n with c ∈ Z[v^{±1}], from the
    defining commutator only."""
    if i == 0:
        return LaurentPoly.zero()
    # ϑθ^i = (θϑ − [n+2(i−1)])θ^{i−1} applied on 1_n
    c_prev = _move_v_past_powers(i - 1, n)
    return c_prev - qint(n + 2 * (i - 1))


@functools.cache
def oracle_monomials(b: int, a: int, n: int):
    """Normal form of ϑ^b θ^a 1_n as {(i, j): LaurentPoly} over the
    monomial basis θ^i ϑ^j 1_n, via the defining relations alone."""
    if b == 0:
        return {(a, 0): LaurentPoly.one()}
    prev = oracle_monomials(b - 1, a, n)
    out: dict[tuple, LaurentPoly] = {}

    def add(key, poly):
        if key in out:
            out[key] = out[key] + poly
        else:
            out[key] = poly
        if out[key].is_zero():
            del out[key]

    for (i, j), c in prev.items():
        # multiply by ϑ on the left: ϑ θ^i ϑ^j 1_n; the idempotent to the
        # right of θ^i is 1_{n − 2j}
        m = n - 2 * j
        add((i, j + 1), c)
        coeff = _move_v_past_powers(i, m)
        if not coeff.is_zero():
            add((i - 1, j), c * coeff)
    return out


def oracle_word_expansion(w: CBWord):
    """(numerator over θ^i ϑ^j 1_n, denominator) of a canonical word, the
    denominator being [a]!·[b]!."""
    den = qfact(w.a) * qfact(w.b)
    if w.shape == "EF":
        num = {(w.a, w.b): LaurentPoly.one()}
    else:
        num = oracle_monomials(w.b, w.a, w.n)
    return num, den


def _monomial_product(num1, n1, num2, n2):
    """Product of two monomial expansions, right factor based at weight n2."""
    out: dict[tuple, LaurentPoly] = {}
    for (i1, j1), c1 in num1.items():
        for (i2, j2), c2 in num2.items():
            mid = oracle_monomials(j1, i2, n2 - 2 * j2)
            for (k, l), c in mid.items():
                key = (i1 + k, l + j2)
                poly = c1 * c2 * c
                if key in out:
                    out[key] = out[key] + poly
                else:
                    out[key] = poly
    return {k: c for k, c in out.items() if not c.is_zero()}


def oracle_product_agrees(w1: CBWord, w2: CBWord) -> bool:
    """Whether udot_mult over the generic ring matches the rational-field
    expansion of w1·w2 (zero when weights mismatch)."""
    ring = CoeffRing("generic")
    prod = udot_mult(
        UdotElem(ring, {w1: ring.one()}), UdotElem(ring, {w2: ring.one()})
    )
    if w1.n != w2.left_weight():
        return prod.is_zero()
    num1, den1 = oracle_word_expansion(w1)
    num2, den2 = oracle_word_expansion(w2)
    lhs_num = _monomial_product(num1, w1.n, num2, w2.n)
    lhs_den = den1 * den2
    # expand the rewritten product the same way and compare fractions
    rhs: dict[tuple, tuple] = {}
    for w, coeff in prod.terms.items():
        numw, denw = oracle_word_expansion(w)
        for key, c in numw.items():
            add_num = coeff * c
            if key in rhs:
                n0, d0 = rhs[key]
                rhs[key] = (n0 * denw + add_num * d0, d0 * denw)
            else:
                rhs[key] = (add_num, denw)
    keys = set(lhs_num) | set(rhs)
    for key in keys:
        ln = lhs_num.get(key, LaurentPoly.zero())
        rn, rd = rhs.get(key, (LaurentPoly.zero(), LaurentPoly.one()))
        if ln * rd != rn * lhs_den:
            return False
    return True


def commutation_formula_agrees(A: int, B: int, n: int) -> bool:
    """Direct oracle validation of the divided-power commutation:
    E^{(A)}F^{(B)}1_n = Σ_j [A−B+n, j]·F^{(B−j)}E^{(A−j)}1_n over Q(v)."""
    lhs_num = {(A, B): LaurentPoly.one()}
    lhs_den = qfact(A) * qfact(B)
    rhs: dict[tuple, tuple] = {}
    for j in range(min(A, B) + 1):
        c = qbinom_int(A - B + n, j)
        if c.is_zero():
            continue
        numw = oracle_monomials(B - j, A - j, n)
        denw = qfact(A - j) * qfact(B - j)
        for key, poly in numw.items():
            add_num = c * poly
            if key in rhs:
                n0, d0 = rhs[key]
                rhs[key] = (n0 * denw + add_num * d0, d0 * denw)
            else:
                rhs[key] = (add_num, denw)
    for key in set(lhs_num) | set(rhs):
        ln = lhs_num.get(key, LaurentPoly.zero())
        rn, rd = rhs.get(key, (LaurentPoly.zero(), LaurentPoly.one()))
        if ln * rd != rn * lhs_den:
            return False
    return True
