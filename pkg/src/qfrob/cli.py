"""Batch verification harness: one named check per verified statement.

Each subcommand maps to a deterministic check over explicit parameters and
produces a Report with status pass/fail (or skipped-window), the computed
values, the parameters echoed back, and wall time.  `report-all` replays
the pinned default parameter set from the packaged config file (override
with --config or the QFROB_CONFIG environment variable), optionally in
parallel, and writes a machine-readable JSON report with --json.

Exit codes: 0 all pass, 1 any failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from math import comb

from . import pdgmod, qgroup, symfunc
from .cyclotomic import binom_reduction_check, qbinom, to_op, varrho

__all__ = ["main", "run_check", "Report", "CheckSpec"]


@dataclass(frozen=True)
class CheckSpec:
    """A registered check name with its parameter dict."""

    name: str
    params: dict


@dataclass
class Report:
    check: str
    params: dict
    status: str  # pass / fail / skipped-window
    values: dict = field(default_factory=dict)
    ms: float = 0.0

    def row(self):
        ptxt = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.status.upper():4s}  {self.check:17s} {ptxt:34s} {self.ms:9.1f} ms"

    def as_json(self):
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "values": self.values,
            "ms": round(self.ms, 3),
        }


# --------------------------------------------------------------------------
# individual checks
# --------------------------------------------------------------------------


def _sym_formality(p: int, n: int, cap: int) -> tuple[str, dict]:
    c = symfunc.sym_pcomplex(n, p, cap)
    sl = c.slash_cohomology()
    hi = sl.valid_window[1]
    gens = [2 * j * p * p for j in range(1, n // p + 1)]
    expect: dict[int, int] = {0: 1}
    for g in gens:
        upd = dict(expect)
        for d, m in expect.items():
            e = d + g
            while e <= hi:
                upd[e] = upd.get(e, 0) + m
                e += g
        expect = upd
    expect = {d: m for d, m in expect.items() if d <= hi}
    got0 = dict(sl.dims[0])
    higher = {k: v for k, v in sl.dims.items() if k >= 1 and v}
    ok = got0 == expect and not higher
    return (
        "pass" if ok else "fail",
        {
            "H0_dims": _fmt_dims(got0),
            "expected": _fmt_dims(expect),
            "higher_slash": _fmt_dims({k: sum(v.values()) for k, v in higher.items()}),
            "valid_up_to": hi,
        },
    )


def _fmt_dims(d):
    return {str(k): v for k, v in sorted(d.items())}


def check_verify_slash(p: int, n: int, cap: int) -> tuple[str, dict]:
    return _sym_formality(p, n, cap)


def check_verify_twist(p: int, n: int, cap: int) -> tuple[str, dict]:
    r = n % p
    values: dict = {"r": r}
    if r == 0:
        values["note"] = "no twists in range (p divides n)"
        return "pass", values
    bad = {}
    for a in range(1, r + 1):
        sl = symfunc.twist_pcomplex(n, a, p, cap).slash_cohomology()
        if not sl.is_zero():
            bad[a] = _fmt_dims(sl.total_dims())
    values["acyclic_for_a"] = list(range(1, r + 1))
    if bad:
        values["nonzero"] = bad
        return "fail", values
    return "pass", values


def check_verify_lima(p: int, a: int, b: int) -> tuple[str, dict]:
    c = symfunc.vab_pcomplex(a, b, p)
    sl = c.slash_cohomology()
    lima = symfunc.lima_partitions(b, a, p)
    total = sum(sum(v.values()) for v in sl.dims.values())
    values = {"dim": total, "expected_dim": comb(a + b, a)}
    if total != comb(a + b, a):
        return "fail", values
    # representatives must be exactly the expanded-box classes up to
    # coboundary: each is a cocycle, and they are independent in H_{/0}
    pos = {lam: i for i, lam in enumerate(c.labels)}
    import numpy as np

    from . import linalg

    for lam in lima:
        f = symfunc.schur(p, lam)
        img = f.diff()
        img = {m: cf for m, cf in img.terms.items() if m in pos}
        if img:
            values["non_cocycle"] = str(lam)
            return "fail", values
    by_degree: dict[int, list] = {}
    for lam in lima:
        by_degree.setdefault(2 * sum(lam), []).append(lam)
    for d, lams in by_degree.items():
        if sl.dims[0].get(d, 0) != len(lams):
            values["degree_mismatch"] = d
            return "fail", values
        local = c.indices_at(d)
        lpos = {i: r for r, i in enumerate(local)}
        im = c.power_matrix(d - 2 * (p - 1), p - 1)
        cols = []
        for lam in lams:
            v = np.zeros(len(local), dtype=np.int64)
            v[lpos[pos[lam]]] = 1
            cols.append(v)
        cand = np.stack(cols, axis=1)
        if len(linalg.extend_basis(im, cand, p)) != len(lams):
            values["dependent_modulo_coboundary"] = d
            return "fail", values
    values["classes"] = [list(l) for l in lima]
    return "pass", values


def check_verify_vi(p: int, kmax: int) -> tuple[str, dict]:
    bad = []
    for i in range(1, p):
        for k in range(1, kmax + 1):
            c = symfunc.vi_pcomplex(i, k, p)
            lengths = sorted({s.length for s in c.string_decompose()})
            if lengths not in ([], [p]):
                bad.append((i, k, lengths))
    values = {"i_range": list(range(1, p)), "k_range": list(range(1, kmax + 1))}
    if bad:
        values["not_contractible"] = bad
        return "fail", values
    return "pass", values


def check_verify_binom(p: int, maxab: int) -> tuple[str, dict]:
    bad = [
        (a, b)
        for a in range(maxab + 1)
        for b in range(maxab + 1)
        if not binom_reduction_check(a, b, p)
    ]
    values: dict = {"max": maxab}
    # the two further base changes, recorded but not asserted
    sample = to_op(qbinom(2 * p, p), p)
    values["binom_2p_p_in_Op"] = str(sample)
    values["varrho_2p"] = list(varrho(sample, "2p"))
    if p != 2:
        values["varrho_p"] = list(varrho(sample, "p"))
    if bad:
        values["failures"] = bad
        return "fail", values
    return "pass", values


def check_verify_nilhecke(p: int, n: int, cap: int) -> tuple[str, dict]:
    ok_rel, detail = pdgmod.nilhecke_relations_check(n, p, cap)
    ok_acyclic, dims, valid_cap = pdgmod.nh_acyclicity_check(p)
    # contrast: the symmetric subalgebra alone is not acyclic
    sym_sl = symfunc.sym_pcomplex(p, p, 4 * p * p).slash_cohomology()
    values = {
        "relations_window": cap,
        "relations": ok_rel,
        "relation_detail": detail,
        "acyclic": ok_acyclic,
        "acyclic_valid_up_to": valid_cap,
        "sym_subalgebra_nonzero_H": not sym_sl.is_zero(),
    }
    ok = ok_rel and ok_acyclic and not sym_sl.is_zero()
    return ("pass" if ok else "fail"), values


def check_verify_thick(p: int, a: int) -> tuple[str, dict]:
    rep = pdgmod.thick_nilhecke_check(a, p)
    values = dict(rep)
    ok = rep["ok"]
    if a == 2:
        form = pdgmod.end_formality_check(p)
        values["formality"] = form["ok"]
        values["formality_valid_up_to"] = form["valid_up_to"]
        ok = ok and form["ok"]
    values.pop("ok", None)
    return ("pass" if ok else "fail"), values


def check_verify_grass(p: int, maxab: int) -> tuple[str, dict]:
    values: dict = {"max": maxab}
    for a in range(maxab + 1):
        for b in range(maxab + 1):
            gm = pdgmod.grass_module(a, b, p)
            if not pdgmod.grass_rank_ok(gm):
                values["rank_failure"] = (a, b)
                return "fail", values
            dual = pdgmod.grass_module(b, a, p)  # dual twist −b·e_1(x)
            if not pdgmod.grass_rank_ok(dual):
                values["dual_rank_failure"] = (a, b)
                return "fail", values
            if a and b and not qgroup.k0_symbol_check(a, b, p):
                values["k0_failure"] = (a, b)
                return "fail", values
    return "pass", values


def check_verify_frobenius(
    p: int, amax: int, nmax: int, oracle_amax: int, oracle_nmax: int
) -> tuple[str, dict]:
    hom = qgroup.frobenius_hom_check(p, amax, nmax)
    ker = qgroup.kernel_check(p, amax, nmax)
    ring = qgroup.CoeffRing("rho", p)
    section_ok = True
    for w in qgroup.canonical_words(3, 3, -6, 6):
        e = qgroup.UdotElem(ring, {w: ring.one()})
        if qgroup.frobenius(qgroup.frobenius_section(e)) != e:
            section_ok = False
            break
    words = qgroup.canonical_words(oracle_amax, oracle_amax, -oracle_nmax, oracle_nmax)
    oracle_pairs = 0
    oracle_ok = True
    for w1 in words:
        for w2 in words:
            if w1.n != w2.left_weight():
                continue
            oracle_pairs += 1
            if not qgroup.oracle_product_agrees(w1, w2):
                oracle_ok = False
                break
        if not oracle_ok:
            break
    values = {
        "hom_pairs": hom["pairs"],
        "hom_ok": hom["ok"],
        "kernel_triples": ker["triples"],
        "kernel_ok": ker["ok"],
        "section_ok": section_ok,
        "oracle_pairs": oracle_pairs,
        "oracle_ok": oracle_ok,
    }
    if hom["failures"]:
        values["hom_failures"] = hom["failures"]
    if ker["failures"]:
        values["kernel_failures"] = ker["failures"]
    ok = hom["ok"] and ker["ok"] and section_ok and oracle_ok
    return ("pass" if ok else "fail"), values


def check_verify_theta0(p: int, kmax: int) -> tuple[str, dict]:
    values: dict = {"kmax": kmax}
    # images of the dilated generators are cocycles with nonzero class
    for k in range(1, kmax + 1):
        g = symfunc.theta0_gen(k, p)
        if not g.diff().is_zero():
            values["not_cocycle"] = k
            return "fail", values
    # class of the first generator is nonzero: not a (p−1)-fold boundary
    n = p
    cap = 2 * p * p + 4 * p
    c = symfunc.sym_pcomplex(n, p, cap)
    sl = c.slash_cohomology()
    if sl.dims[0].get(2 * p * p, 0) != 1:
        values["class_missing"] = True
        return "fail", values
    # coproduct compatibility modulo coboundaries on either side
    for k in range(1, kmax + 1):
        for a in range(0, k + 1):
            b = k - a
            if a == 0 or b == 0:
                continue
            f = symfunc.theta0_gen(k, p, n=(a + b) * p)
            sv = symfunc.split_vars(f, a * p, b * p)
            expect = {}
            for i in range(max(0, k - b), min(k, a) + 1):
                left = symfunc.theta0_gen(i, p, n=a * p) if i else None
                right = symfunc.theta0_gen(k - i, p, n=b * p) if k - i else None
                lterms = left.terms if left else {(): 1}
                rterms = right.terms if right else {(): 1}
                for lm, cl in lterms.items():
                    for rm, cr in rterms.items():
                        key = (lm, rm)
                        expect[key] = (expect.get(key, 0) + cl * cr) % p
            expect = {k2: v for k2, v in expect.items() if v}
            diffkeys = set(sv) ^ set(expect)
            for mu, nu in diffkeys:
                if sv.get((mu, nu)) == expect.get((mu, nu)):
                    continue
                # leftover terms must die in slash cohomology on one side
                side_ok = _factor_is_coboundary(mu, a * p, p) or _factor_is_coboundary(
                    nu, b * p, p
                )
                if not side_ok:
                    values["noncoboundary_term"] = (k, a, b, mu, nu)
                    return "fail", values
    return "pass", values


def _factor_is_coboundary(lam, nvars, p):
    """Whether the class of π_λ dies in H_{/0}(Sym_nvars) (windowed)."""
    import numpy as np

    from . import linalg

    d = 2 * sum(lam)
    c = symfunc.sym_pcomplex(nvars, p, d + 2 * p)
    local = c.indices_at(d)
    lpos = {c.labels[i]: r for r, i in enumerate(local)}
    v = np.zeros(len(local), dtype=np.int64)
    v[lpos[tuple(lam)]] = 1
    im = c.power_matrix(d - 2 * (p - 1), p - 1)
    return linalg.in_span(im, v, p)


CHECKS = {
    "verify-slash": (check_verify_slash, ("p", "n", "cap")),
    "verify-twist": (check_verify_twist, ("p", "n", "cap")),
    "verify-lima": (check_verify_lima, ("p", "a", "b")),
    "verify-vi": (check_verify_vi, ("p", "kmax")),
    "verify-binom": (check_verify_binom, ("p", "max")),
    "verify-nilhecke": (check_verify_nilhecke, ("p", "n", "cap")),
    "verify-thick": (check_verify_thick, ("p", "a")),
    "verify-grass": (check_verify_grass, ("p", "max")),
    "verify-frobenius": (
        check_verify_frobenius,
        ("p", "amax", "nmax", "oracle_amax", "oracle_nmax"),
    ),
    "verify-theta0": (check_verify_theta0, ("p", "kmax")),
}


_ARG_ALIASES = {"max": "maxab"}  # avoid shadowing the builtin in check bodies


def run_check(spec: CheckSpec) -> Report:
    fn, argnames = CHECKS[spec.name]
    t0 = time.perf_counter()
    try:
        kwargs = {_ARG_ALIASES.get(k, k): spec.params[k] for k in argnames}
        status, values = fn(**kwargs)
    except Exception as exc:  # a crashed check is a failed check
        status, values = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    ms = (time.perf_counter() - t0) * 1000.0
    return Report(spec.name, dict(spec.params), status, values, ms)


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------

_DEFAULTS = {
    "cap": None,
    "kmax": 3,
    "max": 4,
    "amax": None,
    "nmax": None,
    "oracle_amax": 4,
    "oracle_nmax": 8,
}


def _fill_defaults(name, params):
    p = params.get("p")
    out = dict(params)
    if name in ("verify-slash", "verify-twist") and out.get("cap") is None:
        out["cap"] = 8 * p * p
    if name == "verify-nilhecke":
        out.setdefault("n", p)
        if out.get("cap") is None:
            out["cap"] = 4 * max(out["n"], 1)
        out.setdefault("n", p)
    if name == "verify-frobenius":
        if out.get("amax") is None:
            out["amax"] = 2 * p
        if out.get("nmax") is None:
            out["nmax"] = 4 * p
    if name == "verify-grass" and out.get("max") is None:
        out["max"] = 2
    return out


def _parse_check_args(name, tokens):
    parser = argparse.ArgumentParser(prog=name)
    for flag in ("p", "n", "a", "b", "cap", "kmax", "max", "amax", "nmax",
                 "oracle_amax", "oracle_nmax"):
        parser.add_argument(f"--{flag}", type=int, default=None)
    ns = parser.parse_args(tokens)
    params = {k: v for k, v in vars(ns).items() if v is not None}
    for k, v in _DEFAULTS.items():
        if v is not None and k in CHECKS[name][1]:
            params.setdefault(k, v)
    params = _fill_defaults(name, params)
    missing = [k for k in CHECKS[name][1] if k not in params]
    if missing:
        raise SystemExit(f"{name}: missing parameters {missing}")
    return CheckSpec(name, {k: params[k] for k in CHECKS[name][1]})


def default_specs(config_path=None):
    """Parse the pinned parameter file into CheckSpecs."""
    if config_path is None:
        config_path = os.environ.get("QFROB_CONFIG")
    if config_path:
        text = open(config_path).read()
    else:
        text = resources.files("qfrob").joinpath("defaults.cfg").read_text()
    specs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        tokens = shlex.split(line)
        name, rest = tokens[0], tokens[1:]
        if name not in CHECKS:
            raise SystemExit(f"unknown check {name!r} in config")
        specs.append(_parse_check_args(name, rest))
    return specs


def _emit(reports, json_path):
    for rep in reports:
        print(rep.row())
    npass = sum(r.status == "pass" for r in reports)
    print(f"-- {npass}/{len(reports)} checks passed")
    if json_path:
        payload = [r.as_json() for r in reports]
        with open(json_path, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
        print(f"json report written to {json_path}")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = argparse.ArgumentParser(
        prog="qfrob",
        description="exact verification suite for characteristic-p slash "
        "cohomology, nilHecke thickening and the quantum Frobenius map",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in CHECKS:
        sp = sub.add_parser(name)
        for flag in ("p", "n", "a", "b", "cap", "kmax", "max", "amax", "nmax",
                     "oracle_amax", "oracle_nmax"):
            sp.add_argument(f"--{flag}", type=int, default=None)
        sp.add_argument("--json", type=str, default=None)
    allp = sub.add_parser("report-all")
    allp.add_argument("--config", type=str, default=None)
    allp.add_argument("--jobs", type=int, default=1)
    allp.add_argument("--json", type=str, default=None)
    ns = parser.parse_args(argv)

    if ns.command == "report-all":
        specs = default_specs(ns.config)
        if ns.jobs > 1:
            with ThreadPoolExecutor(max_workers=ns.jobs) as pool:
                reports = list(pool.map(run_check, specs))
        else:
            reports = [run_check(s) for s in specs]
        _emit(reports, ns.json)
        return 0 if all(r.status == "pass" for r in reports) else 1

    params = {
        k: v
        for k, v in vars(ns).items()
        if k not in ("command", "json") and v is not None
    }
    if "p" not in params:
        parser.error("--p is required")
    for k, v in _DEFAULTS.items():
        if v is not None and k in CHECKS[ns.command][1]:
            params.setdefault(k, v)
    params = _fill_defaults(ns.command, params)
    missing = [k for k in CHECKS[ns.command][1] if k not in params]
    if missing:
        parser.error(f"missing parameters: {missing}")
    spec = CheckSpec(ns.command, {k: params[k] for k in CHECKS[ns.command][1]})
    rep = run_check(spec)
    _emit([rep], ns.json)
    return 0 if rep.status == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
