"""Acceptance suite: every criterion at its pinned parameters, exact
arithmetic throughout (zero tolerance), one printed line per criterion.

Run with `pytest tests/test_acceptance.py -s` to see the lines.
"""

import time
from math import comb

import numpy as np
import pytest

from qfrob import linalg
from qfrob.cyclotomic import binom_reduction_check
from qfrob.pcomplex import slash_cohomology, string_decompose
from qfrob.pdgmod import (
    end_formality_check,
    nh_acyclicity_check,
    thick_nilhecke_check,
)
from qfrob.qgroup import (
    CoeffRing,
    UdotElem,
    canonical_words,
    frobenius,
    frobenius_hom_check,
    frobenius_section,
    k0_symbol_check,
    kernel_check,
    oracle_product_agrees,
)
from qfrob.symfunc import (
    lima_partitions,
    sym_pcomplex,
    twist_pcomplex,
    vab_pcomplex,
    vi_pcomplex,
)


def announce(num, name, ok, t0, detail=""):
    ms = (time.time() - t0) * 1000
    status = "PASS" if ok else "FAIL"
    print(f"criterion-{num:02d} {status} {name} ({ms:.0f} ms) {detail}")
    assert ok, f"criterion {num}: {name} {detail}"


def test_criterion_01_sym_slash_formality():
    t0 = time.time()
    ok = True
    for p in (2, 3):
        cap = 8 * p * p
        for n in range(1, 7):
            sl = slash_cohomology(sym_pcomplex(n, p, cap))
            hi = sl.valid_window[1]
            gens = [2 * j * p * p for j in range(1, n // p + 1)]
            expect = {0: 1}
            for g in gens:
                nxt = dict(expect)
                for d, m in expect.items():
                    e = d + g
                    while e <= hi:
                        nxt[e] = nxt.get(e, 0) + m
                        e += g
                expect = nxt
            expect = {d: m for d, m in expect.items() if d <= hi}
            if sl.dims[0] != expect:
                ok = False
            if any(sl.dims.get(k) for k in range(1, p - 1)):
                ok = False
    announce(1, "slash formality of Sym_n (p in {2,3}, n <= 6, cap 8p^2)", ok, t0)


def test_criterion_02_twist_acyclicity():
    t0 = time.time()
    ok = True
    for p in (2, 3):
        cap = 8 * p * p
        for n in range(1, 7):
            r = n % p
            for a in range(1, r + 1):
                sl = slash_cohomology(twist_pcomplex(n, a, p, cap))
                if not sl.is_zero():
                    ok = False
    announce(2, "acyclicity of twisted modules S_n(a), 1 <= a <= n mod p", ok, t0)


def test_criterion_03_lima_classes():
    t0 = time.time()
    ok = True
    cases = [(2, a, b) for a, b in ((1, 1), (1, 2), (2, 1), (2, 2))]
    cases += [(3, a, b) for a, b in ((1, 1), (1, 2), (2, 1))]
    for p, a, b in cases:
        c = vab_pcomplex(a, b, p)
        sl = slash_cohomology(c)
        lima = lima_partitions(b, a, p)
        total = sum(sum(v.values()) for v in sl.dims.values())
        if total != comb(a + b, a):
            ok = False
            continue
        pos = {lam: i for i, lam in enumerate(c.labels)}
        by_degree = {}
        for lam in lima:
            by_degree.setdefault(2 * sum(lam), []).append(lam)
        for d, lams in by_degree.items():
            if sl.dims[0].get(d, 0) != len(lams):
                ok = False
            local = c.indices_at(d)
            lpos = {i: r for r, i in enumerate(local)}
            cols = []
            for lam in lams:
                v = np.zeros(len(local), dtype=np.int64)
                v[lpos[pos[lam]]] = 1
                cols.append(v)
                img = c.apply({pos[lam]: 1})
                if img:  # expanded-box classes are honest cocycles
                    ok = False
            im = c.power_matrix(d - 2 * (p - 1), p - 1)
            if len(linalg.extend_basis(im, np.stack(cols, axis=1), p)) != len(lams):
                ok = False
    announce(3, "expanded-box classes span H_/(V_{a,b})", ok, t0)


def test_criterion_04_vi_contractible():
    t0 = time.time()
    ok = True
    for p in (2, 3, 5):
        for i in range(1, p):
            for k in range(1, 4):
                strs = string_decompose(vi_pcomplex(i, k, p))
                if any(s.length != p for s in strs):
                    ok = False
    announce(4, "contractibility of V_i (p in {2,3,5}, i < p, k <= 3)", ok, t0)


def test_criterion_05_binomial_reduction():
    t0 = time.time()
    ok = all(
        binom_reduction_check(a, b, p)
        for p in (2, 3, 5)
        for a in range(5)
        for b in range(5)
    )
    announce(5, "quantum binomial reduction in O_p (a,b <= 4, p in {2,3,5})", ok, t0)


def test_criterion_06_nh_acyclicity():
    t0 = time.time()
    ok = True
    detail = []
    for p in (2, 3):
        good, dims, cap = nh_acyclicity_check(p)
        detail.append(f"p={p} window<= {cap}")
        if not good:
            ok = False
    announce(6, "acyclicity of the END realization of NH_p", ok, t0, "; ".join(detail))


def test_criterion_07_thick_nilhecke():
    t0 = time.time()
    ok = True
    details = []
    for a in (2, 3):
        rep = thick_nilhecke_check(a, 2)
        details.append(f"a={a}: hilbert<= {rep['hilbert_valid_up_to']}")
        if not rep["ok"]:
            ok = False
    announce(7, "thick nilHecke relations and H_/ dims (p=2, a in {2,3})", ok, t0,
             "; ".join(details))


def test_criterion_08_end_formality():
    t0 = time.time()
    ok = True
    details = []
    for p in (2, 3):
        rep = end_formality_check(p)
        details.append(f"p={p}: window<= {rep['valid_up_to']}")
        if not rep["ok"]:
            ok = False
    announce(8, "formality of END(S_{p,p}) (p in {2,3})", ok, t0, "; ".join(details))


def test_criterion_09_frobenius_hom_and_kernel():
    t0 = time.time()
    ok = True
    details = []
    for p in (2, 3):
        hom = frobenius_hom_check(p, 2 * p, 4 * p)
        ker = kernel_check(p, 2 * p, 4 * p)
        details.append(f"p={p}: {hom['pairs']} pairs, {ker['triples']} triples")
        if not (hom["ok"] and ker["ok"]):
            ok = False
    announce(9, "Fr is a homomorphism killing the small-part ideal", ok, t0,
             "; ".join(details))


def test_criterion_10_commutation_oracle():
    t0 = time.time()
    words = canonical_words(4, 4, -8, 8)
    pairs = 0
    nontrivial = 0
    ok = True
    for w1 in words:
        for w2 in words:
            pairs += 1
            if w1.n == w2.left_weight():
                nontrivial += 1
            if not oracle_product_agrees(w1, w2):
                ok = False
    announce(10, "product agrees with the rational-field oracle", ok, t0,
             f"{pairs} pairs ({nontrivial} with matching weights)")


def test_criterion_11_section_property():
    t0 = time.time()
    ok = True
    for p in (2, 3):
        ring = CoeffRing("rho", p)
        for w in canonical_words(3, 3, -6, 6):
            e = UdotElem(ring, {w: ring.one()})
            if frobenius(frobenius_section(e)) != e:
                ok = False
    announce(11, "Fr composed with its section is the identity", ok, t0)


def test_criterion_12_k0_multiplication_shadow():
    t0 = time.time()
    ok = all(
        k0_symbol_check(a, b, p)
        for p in (2, 3)
        for a in range(3)
        for b in range(3)
    )
    announce(12, "K0 symbol identity for the block modules (a,b <= 2)", ok, t0)
