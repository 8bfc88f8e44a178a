"""Partition combinatorics: boxes, transposes, rectangle enumeration,
Littlewood-Richardson expansion, and Schur-to-monomial conversion.

Partitions are tuples of weakly decreasing positive integers; () is the
empty partition.  Products and restrictions are computed over Z with the
classical LR rule (horizontal-strip growth plus the reverse-reading-word
ballot condition) and cached, so characteristic-p callers reduce mod p
after lookup.
"""

from __future__ import annotations

import functools

__all__ = [
    "is_partition",
    "transpose",
    "fits_in",
    "partitions_in_box",
    "partitions_of",
    "addable_boxes",
    "expand_p",
    "lima_partitions",
    "complement",
    "lr_expand",
    "lr_restrict",
    "pieri_e",
    "pieri_h",
    "schur_monomials",
    "monomial_to_schur_coords",
    "sort_key",
]

Partition = tuple


def is_partition(lam) -> bool:
    return all(isinstance(x, int) and x > 0 for x in lam) and all(
        lam[i] >= lam[i + 1] for i in range(len(lam) - 1)
    )


def transpose(lam: Partition) -> Partition:
    if not lam:
        return ()
    out = [0] * lam[0]
    for part in lam:
        for i in range(part):
            out[i] += 1
    return tuple(out)


def fits_in(lam: Partition, rows: int, cols: int) -> bool:
    """Membership in P(rows, cols): at most `rows` parts, each ≤ `cols`."""
    return len(lam) <= rows and (not lam or lam[0] <= cols)


def sort_key(lam: Partition):
    """Graded, then lexicographic: the canonical iteration order."""
    return (sum(lam), lam)


@functools.cache
def partitions_in_box(rows: int, cols: int) -> tuple:
    """All partitions with ≤ rows parts and parts ≤ cols, graded-lex sorted."""
    out = []

    def rec(prefix, maxpart, remaining_rows):
        out.append(tuple(prefix))
        if remaining_rows == 0:
            return
        for part in range(1, maxpart + 1):
            prefix.append(part)
            rec(prefix, part, remaining_rows - 1)
            prefix.pop()

    rec([], cols, rows)
    return tuple(sorted(out, key=sort_key))


def partitions_of(n: int, max_rows=None, max_part=None):
    """Partitions of n, optionally bounded, graded-lex order within size n."""
    res = []

    def rec(remaining, maxp, prefix):
        if remaining == 0:
            res.append(tuple(prefix))
            return
        if max_rows is not None and len(prefix) >= max_rows:
            return
        for part in range(min(remaining, maxp), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    top = n if max_part is None else min(n, max_part)
    rec(n, top, [])
    return sorted(res, key=sort_key)


def addable_boxes(lam: Partition, max_rows=None):
    """Positions where a box may be added, as (row, content) pairs.

    Rows are 0-indexed; the content of the box at (r, c) is c − r with
    0-indexed column c.  If max_rows is given, a new row beyond it is not
    offered.
    """
    out = []
    for r in range(len(lam) + 1):
        if max_rows is not None and r >= max_rows:
            break
        here = lam[r] if r < len(lam) else 0
        above = lam[r - 1] if r > 0 else None
        if above is not None and here >= above:
            continue
        out.append((r, here - r))
    return out


def with_box(lam: Partition, row: int) -> Partition:
    parts = list(lam)
    if row == len(parts):
        parts.append(1)
    else:
        parts[row] += 1
    return tuple(parts)


def expand_p(lam: Partition, p: int) -> Partition:
    """Blow each box up to a p×p square: every part is repeated p times and
    multiplied by p."""
    out = []
    for part in lam:
        out.extend([p * part] * p)
    return tuple(out)


def lima_partitions(b: int, a: int, p: int):
    """The p-expansions of the partitions in the b×a box, i.e. the Lima
    subset of P(bp, ap); one for each element of P(b, a)."""
    return tuple(sorted((expand_p(nu, p) for nu in partitions_in_box(b, a)), key=sort_key))


def complement(mu: Partition, rows: int, cols: int) -> Partition:
    """The complement of mu ∈ P(rows, cols): transpose of
    (cols − mu_rows, ..., cols − mu_1); lies in P(cols, rows)."""
    if not fits_in(mu, rows, cols):
        raise ValueError("partition does not fit the box")
    padded = list(mu) + [0] * (rows - len(mu))
    comp_t = tuple(cols - x for x in reversed(padded))
    return transpose(tuple(x for x in comp_t if x > 0))


def _horizontal_strips(lam: Partition, size: int):
    """Partitions mu ⊇ lam with |mu/lam| = size and mu/lam a horizontal
    strip, i.e. lam and mu interlace: lam_r ≤ mu_r and mu_{r+1} ≤ lam_r."""
    rows = len(lam) + 1
    results = []

    def rec(r, remaining, prefix):
        if r == rows:
            if remaining == 0:
                results.append(tuple(x for x in prefix if x > 0))
            return
        lo = lam[r] if r < len(lam) else 0
        hi = lo + remaining if r == 0 else min(lo + remaining, lam[r - 1])
        for new in range(hi, lo - 1, -1):
            prefix.append(new)
            rec(r + 1, remaining - (new - lo), prefix)
            prefix.pop()

    rec(0, size, [])
    return results


def _ballot_ok(fillings) -> bool:
    """Reverse reading word (rows top→bottom, right→left) ballot check."""
    counts: dict[int, int] = {}
    for row in fillings:
        for entry in reversed(row):
            if entry == 0:
                continue
            counts[entry] = counts.get(entry, 0) + 1
            if entry > 1 and counts[entry] > counts.get(entry - 1, 0):
                return False
    return True


@functools.cache
def lr_expand(mu: Partition, nu: Partition) -> dict:
    """Littlewood-Richardson expansion of the product s_mu · s_nu over Z.

    Grows mu by horizontal strips labelled 1..len(nu) of sizes nu_i and
    keeps the fillings whose reverse reading word is a ballot sequence.
    """
    if sum(mu) < sum(nu):
        mu, nu = nu, mu
    out: dict[Partition, int] = {}
    state = [(mu, ())]  # (shape, tuple of previous shapes)
    for i, size in enumerate(nu):
        nxt = []
        for shape, history in state:
            for bigger in _horizontal_strips(shape, size):
                nxt.append((bigger, history + (shape,)))
        state = nxt
    for shape, history in state:
        chain = history + (shape,)
        nrows = len(shape)
        fill = [[0] * shape[r] for r in range(nrows)]
        for step in range(1, len(chain)):
            prev, cur = chain[step - 1], chain[step]
            for r in range(len(cur)):
                lo = prev[r] if r < len(prev) else 0
                for c in range(lo, cur[r]):
                    fill[r][c] = step
        if _ballot_ok(fill):
            out[shape] = out.get(shape, 0) + 1
    return out


@functools.cache
def lr_restrict(lam: Partition, mu: Partition) -> dict:
    """Contents kappa with LR coefficient c^lam_{mu,kappa}, i.e. counts of
    LR skew tableaux of shape lam/mu, as a dict kappa → multiplicity."""
    if not all((mu[i] if i < len(mu) else 0) <= lam[i] for i in range(len(lam))) or len(
        mu
    ) > len(lam):
        return {}
    cells = []
    for r in range(len(lam)):
        lo = mu[r] if r < len(mu) else 0
        for c in range(lo, lam[r]):
            cells.append((r, c))
    # Fill cells row by row, right to left; this order is the reverse
    # reading word, so ballot prefixes prune the search directly.
    order = sorted(cells, key=lambda rc: (rc[0], -rc[1]))
    nmax = len(cells)
    out: dict[Partition, int] = {}
    entry_at: dict[tuple, int] = {}
    counts = [0] * (nmax + 2)

    def rec(idx):
        if idx == len(order):
            top = max(entry_at.values(), default=0)
            content = tuple(counts[1 : top + 1])
            out[content] = out.get(content, 0) + 1
            return
        r, c = order[idx]
        lo = 1
        up = entry_at.get((r - 1, c))
        if up is not None:
            lo = up + 1  # columns strictly increase
        right = entry_at.get((r, c + 1))
        hi = right if right is not None else nmax  # rows weakly increase
        for e in range(lo, hi + 1):
            if e > 1 and counts[e] + 1 > counts[e - 1]:
                continue  # ballot prefix fails
            entry_at[(r, c)] = e
            counts[e] += 1
            rec(idx + 1)
            counts[e] -= 1
            del entry_at[(r, c)]

    rec(0)
    return out


def pieri_e(lam: Partition, r: int, max_rows=None):
    """Partitions obtained by adding a vertical strip of size r (s_lam · e_r)."""
    lam_t = transpose(lam)
    out = []
    for mu_t in _horizontal_strips(lam_t, r):
        mu = transpose(mu_t)
        if max_rows is None or len(mu) <= max_rows:
            out.append(mu)
    return out


def pieri_h(lam: Partition, r: int, max_rows=None):
    """Partitions obtained by adding a horizontal strip of size r (s_lam · h_r)."""
    out = _horizontal_strips(lam, r)
    if max_rows is not None:
        out = [mu for mu in out if len(mu) <= max_rows]
    return out


@functools.cache
def schur_monomials(lam: Partition, nvars: int) -> dict:
    """Monomial expansion of the Schur polynomial in nvars variables.

    Returns {exponent tuple: multiplicity} summed over semistandard
    tableaux of shape lam with entries ≤ nvars.
    """
    if len(lam) > nvars:
        return {}
    if not lam:
        return {(0,) * nvars: 1}
    out: dict[tuple, int] = {}
    rows = len(lam)

    def rec(r, c, fill, prev_row):
        if r == rows:
            weight = [0] * nvars
            for row in fill:
                for e in row:
                    weight[e - 1] += 1
            key = tuple(weight)
            out[key] = out.get(key, 0) + 1
            return
        if c == lam[r]:
            rec(r + 1, 0, fill, fill[r])
            return
        lo = 1
        if c > 0:
            lo = fill[r][c - 1]
        if r > 0 and c < len(prev_row):
            lo = max(lo, prev_row[c] + 1)
        for e in range(lo, nvars + 1):
            fill[r].append(e)
            rec(r, c + 1, fill, prev_row)
            fill[r].pop()

    rec(0, 0, [[] for _ in range(rows)], [])
    return out


@functools.cache
def _kostka_system(n: int, nvars: int):
    """Partitions of n with ≤ nvars rows in lex-descending order, plus the
    unitriangular Kostka matrix rows for back substitution."""
    parts = sorted(partitions_of(n, max_rows=nvars), reverse=True)
    index = {lam: i for i, lam in enumerate(parts)}
    rows = []
    for lam in parts:
        expansion = schur_monomials(lam, nvars)
        row = {}
        for exps, c in expansion.items():
            key = tuple(sorted((e for e in exps if e), reverse=True))
            row[key] = c  # same monomial-orbit weight appears once per orbit rep
        rows.append(row)
    return parts, index, rows


def monomial_to_schur_coords(mcoords: dict, nvars: int, modulus=None) -> dict:
    """Convert {partition: coeff} monomial-symmetric coordinates of a
    symmetric polynomial in nvars variables to Schur coordinates.

    Uses that the Kostka matrix is unitriangular for the lex order
    refining dominance, so a back substitution suffices; exact over Z, or
    mod `modulus` when given.
    """
    red = (lambda x: x % modulus) if modulus else (lambda x: x)
    out: dict[Partition, int] = {}
    by_degree: dict[int, dict] = {}
    for lam, c in mcoords.items():
        by_degree.setdefault(sum(lam), {})[lam] = red(c)
    for n, coords in by_degree.items():
        parts, index, rows = _kostka_system(n, nvars)
        residual = dict(coords)
        for i, lam in enumerate(parts):
            c = red(residual.get(lam, 0))
            if c == 0:
                continue
            out[lam] = red(out.get(lam, 0) + c)
            for mu, k in rows[i].items():
                residual[mu] = red(residual.get(mu, 0) - c * k)
        if any(red(v) for v in residual.values()):
            raise ValueError("input was not symmetric in the monomial basis")
    return {lam: c for lam, c in out.items() if c}
