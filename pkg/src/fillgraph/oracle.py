"""Brute-force census of small connected 4-regular fat graphs.

The census enumerates rotation systems indirectly: the rotation at every
vertex is fixed to a standard 4-cycle and the direction-reversal involution
runs over all perfect matchings of the 4V darts, which reaches every
isomorphism class.  The matching of dart 0 is restricted to {1, 2, 4}
(adjacent loop, opposite loop, least dart of another vertex), a safe symmetry
break; full isomorphism rejection happens via canonical forms afterwards.

Exhaustive mode is limited to V <= 4 (about 2 million matchings).  With
numba available the kernel is compiled; the pure python twin is the
reference implementation and the two are compared in the tests.

The census is the independent side of the bound checks: it never calls the
synthesis builders, and its graphs exercise the operation formulas through
:func:`verify_formula_by_recompute`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .core import FatGraph
from . import families
from .analysis import intersection_graph
from .ops import (connected_sum, join, plumbing, new_join_boundaries,
                  OperationError)

try:
    import numpy as _np
    from numba import njit as _njit
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional accelerator
    _np = None
    _HAVE_NUMBA = False

EXHAUSTIVE_CEILING = 4


class CensusRangeError(ValueError):
    pass


@dataclass(frozen=True)
class CensusRow:
    key: bytes  # canonical form, identical to FatGraph.canonical_form()
    vertex_count: int
    edge_count: int
    genus: int
    boundary_count: int
    standard_cycle_count: int
    boundary_lengths: tuple
    cycle_lengths: tuple
    filling: bool
    omega_max: int | None
    count: int  # matchings hitting this class
    witness: tuple  # one matching, as a partner tuple

    def graph(self):
        return matching_to_graph(self.vertex_count, self.witness)


def iter_matchings(V, connected_only=False, prefix=()):
    """Yield perfect matchings of the 4V darts as partner tuples.

    ``prefix`` forces the stated (dart, partner) pairs, for splitting the
    space across workers.  Deterministic order.
    """
    n = 4 * V
    match = [-1] * n
    for d, c in prefix:
        if match[d] >= 0 or match[c] >= 0:
            return
        match[d] = c
        match[c] = d

    def first_free(lo):
        for k in range(lo, n):
            if match[k] < 0:
                return k
        return -1

    def rec(lo):
        d = first_free(lo)
        if d < 0:
            if not connected_only or _matching_connected(V, match):
                yield tuple(match)
            return
        if d == 0:
            cands = [c for c in (1, 2, 4) if c < n and match[c] < 0]
        else:
            cands = [c for c in range(d + 1, n) if match[c] < 0]
        for c in cands:
            match[d] = c
            match[c] = d
            yield from rec(d + 1)
            match[d] = -1
            match[c] = -1

    yield from rec(0)


def _matching_connected(V, match):
    if V == 1:
        return True
    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(4 * V):
        b = match[a]
        if b > a:
            ra, rb = find(a // 4), find(b // 4)
            if ra != rb:
                parent[ra] = rb
    return len({find(v) for v in range(V)}) == 1


def matching_to_graph(V, match):
    """FatGraph for a matching; edges are labeled m0, m1, ... in the order
    their lower dart appears."""
    name = {}
    idx = 0
    for a in range(4 * V):
        b = match[a]
        if b > a:
            name[a] = (f"m{idx}", 1)
            name[b] = (f"m{idx}", -1)
            idx += 1
    cycles = []
    for v in range(V):
        cycles.append([name[4 * v + j] for j in range(4)])
    return FatGraph.from_vertex_cycles(cycles)


def _leaf_invariants(V, match):
    """(b, s, genus, filling, blengths, clengths) for one connected matching.

    Mirrors the compiled kernel; sigma0 is the standard rotation and the
    boundary successor is d -> sigma0[match[d]].
    """
    n = 4 * V

    def s0(d):
        return (d & ~3) | ((d + 1) & 3)

    seen = [False] * n
    blengths = []
    for st in range(n):
        if seen[st]:
            continue
        d, ln = st, 0
        while not seen[d]:
            seen[d] = True
            d = s0(match[d])
            ln += 1
        blengths.append(ln)
    b = len(blengths)
    genus2 = 2 - b + V  # m = 2V
    assert genus2 % 2 == 0
    seen = [False] * n
    clengths = []
    simple = True
    for st in range(n):
        if seen[st]:
            continue
        d, ln = st, 0
        visits = set()
        while not seen[d]:
            seen[d] = True
            v = d // 4
            if v in visits:
                simple = False
            visits.add(v)
            d = s0(s0(match[d]))
            ln += 1
        clengths.append(ln)
    assert len(clengths) % 2 == 0
    filling = simple and min(blengths) >= 3
    # orbits pair up under reversal; report each curve once
    curve_lengths = sorted(clengths, reverse=True)[::2]
    return (b, len(clengths) // 2, genus2 // 2, filling,
            tuple(sorted(blengths, reverse=True)),
            tuple(curve_lengths))


def _canonical_code_py(V, match):
    """Lexicographically least BFS code; equals FatGraph.canonical_form()."""
    n = 4 * V

    def s0(d):
        return (d & ~3) | ((d + 1) & 3)

    best = None
    for start in range(n):
        newlab = [-1] * n
        order = [start]
        newlab[start] = 0
        code = []
        pos = 0
        worse = False
        tied = best is not None
        while pos < len(order):
            cur = order[pos]
            for img in (s0(cur), match[cur]):
                if newlab[img] < 0:
                    newlab[img] = len(order)
                    order.append(img)
                code.append(newlab[img])
                if tied:
                    c, bb = code[-1], best[len(code) - 1]
                    if c > bb:
                        worse = True
                        break
                    if c < bb:
                        tied = False
            if worse:
                break
            pos += 1
        if worse:
            continue
        if best is None or code < best:
            best = code
    return bytes(best)


def _census_python(V, prefix=()):
    rows = {}
    for match in iter_matchings(V, connected_only=True, prefix=prefix):
        inv = _leaf_invariants(V, match)
        key = _canonical_code_py(V, match)
        if key in rows:
            rows[key][1] += 1
        else:
            rows[key] = [inv, 1, match]
    return rows


# --- compiled kernel -------------------------------------------------------

if _HAVE_NUMBA:

    @_njit(cache=True)
    def _kernel(V, prefix, out_inv, out_code, out_witness):
        n = 4 * V
        match = _np.full(n, -1, _np.int32)
        for k in range(prefix.shape[0]):
            match[prefix[k, 0]] = prefix[k, 1]
            match[prefix[k, 1]] = prefix[k, 0]
        dart_at = _np.full(2 * n + 2, -1, _np.int32)
        cand = _np.full(2 * n + 2, -1, _np.int32)
        seen = _np.zeros(n, _np.uint8)
        visits = _np.zeros(V, _np.int32)
        parent = _np.zeros(V, _np.int32)
        newlab = _np.full(n, -1, _np.int32)
        order = _np.zeros(n, _np.int32)
        code = _np.zeros(2 * n, _np.int32)
        best = _np.zeros(2 * n, _np.int32)
        lens = _np.zeros(n, _np.int32)

        rows = 0
        depth = 0
        d0 = -1
        for k in range(n):
            if match[k] < 0:
                d0 = k
                break
        if d0 < 0:
            return rows  # prefix already complete: degenerate, skip
        dart_at[0] = d0
        cand[0] = -1

        while depth >= 0:
            d = dart_at[depth]
            c = cand[depth]
            if c >= 0:
                match[d] = -1
                match[c] = -1
            # advance candidate
            nxt = -1
            if d == 0:
                if c < 1 and 1 < n and match[1] < 0:
                    nxt = 1
                elif c < 2 and match[2] < 0:
                    nxt = 2
                elif c < 4 and 4 < n and match[4] < 0:
                    nxt = 4
            else:
                k = c + 1 if c > d else d + 1
                while k < n:
                    if match[k] < 0:
                        nxt = k
                        break
                    k += 1
            if nxt < 0:
                depth -= 1
                continue
            cand[depth] = nxt
            match[d] = nxt
            match[nxt] = d
            nd = -1
            for k in range(d + 1, n):
                if match[k] < 0:
                    nd = k
                    break
            if nd >= 0:
                depth += 1
                dart_at[depth] = nd
                cand[depth] = -1
                continue
            # leaf: connectivity
            for v in range(V):
                parent[v] = v
            for a in range(n):
                bb = match[a]
                if bb > a:
                    ra = a // 4
                    while parent[ra] != ra:
                        parent[ra] = parent[parent[ra]]
                        ra = parent[ra]
                    rb = bb // 4
                    while parent[rb] != rb:
                        parent[rb] = parent[parent[rb]]
                        rb = parent[rb]
                    if ra != rb:
                        parent[ra] = rb
            ncomp = 0
            for v in range(V):
                if parent[v] == v:
                    ncomp += 1
            if ncomp != 1:
                continue
            # boundary orbits
            for k in range(n):
                seen[k] = 0
            b = 0
            minblen = n + 1
            nbl = 0
            for st in range(n):
                if seen[st] == 0:
                    b += 1
                    dd = st
                    ln = 0
                    while seen[dd] == 0:
                        seen[dd] = 1
                        mm = match[dd]
                        dd = (mm & ~3) | ((mm + 1) & 3)
                        ln += 1
                    lens[nbl] = ln
                    nbl += 1
                    if ln < minblen:
                        minblen = ln
            blen_sorted = _np.sort(lens[:nbl])[::-1].copy()
            genus = (2 - b + V) // 2
            # standard orbits
            for k in range(n):
                seen[k] = 0
            norb = 0
            simple = 1
            ncl = 0
            for st in range(n):
                if seen[st] == 0:
                    norb += 1
                    for v in range(V):
                        visits[v] = 0
                    dd = st
                    ln = 0
                    while seen[dd] == 0:
                        seen[dd] = 1
                        vv = dd // 4
                        visits[vv] += 1
                        if visits[vv] > 1:
                            simple = 0
                        mm = match[dd]
                        mm = (mm & ~3) | ((mm + 1) & 3)
                        dd = (mm & ~3) | ((mm + 1) & 3)
                        ln += 1
                    lens[ncl] = ln
                    ncl += 1
            filling = 1 if (simple == 1 and minblen >= 3) else 0
            clen_sorted = _np.sort(lens[:ncl])[::-1].copy()
            # canonical code
            have_best = 0
            for st in range(n):
                for k in range(n):
                    newlab[k] = -1
                newlab[st] = 0
                order[0] = st
                cnt = 1
                pos = 0
                ci = 0
                worse = 0
                tied = 1 if have_best == 1 else 0
                while pos < cnt:
                    cur = order[pos]
                    for which in range(2):
                        if which == 0:
                            img = (cur & ~3) | ((cur + 1) & 3)
                        else:
                            img = match[cur]
                        if newlab[img] < 0:
                            newlab[img] = cnt
                            order[cnt] = img
                            cnt += 1
                        code[ci] = newlab[img]
                        ci += 1
                        if tied == 1:
                            if code[ci - 1] > best[ci - 1]:
                                worse = 1
                                break
                            if code[ci - 1] < best[ci - 1]:
                                tied = 0
                    if worse == 1:
                        break
                    pos += 1
                if worse == 1:
                    continue
                if have_best == 0:
                    for k in range(2 * n):
                        best[k] = code[k]
                    have_best = 1
                else:
                    for k in range(2 * n):
                        if code[k] < best[k]:
                            for j in range(2 * n):
                                best[j] = code[j]
                            break
                        elif code[k] > best[k]:
                            break
            # emit row
            out_inv[rows, 0] = b
            out_inv[rows, 1] = norb // 2
            out_inv[rows, 2] = genus
            out_inv[rows, 3] = filling
            for k in range(out_inv.shape[1] - 4):
                out_inv[rows, 4 + k] = 0
            for k in range(nbl):
                out_inv[rows, 4 + k] = blen_sorted[k]
            half = (out_inv.shape[1] - 4) // 2
            ci2 = 0
            for k in range(0, ncl, 2):
                out_inv[rows, 4 + half + ci2] = clen_sorted[k]
                ci2 += 1
            for k in range(2 * n):
                out_code[rows, k] = best[k]
            for k in range(n):
                out_witness[rows, k] = match[k]
            rows += 1
        return rows


def _census_numba(V, prefix=()):
    n = 4 * V
    cap = {1: 8, 2: 300, 3: 30_000, 4: 450_000}[V]
    out_inv = _np.zeros((cap, 4 + 2 * n), _np.int16)
    out_code = _np.zeros((cap, 2 * n), _np.int8)
    out_wit = _np.zeros((cap, n), _np.int8)
    pre = _np.array(list(prefix), _np.int32).reshape(-1, 2)
    nrows = _kernel(V, pre, out_inv, out_code, out_wit)
    assert nrows < cap
    rows = {}
    half = n
    for i in range(nrows):
        key = out_code[i].tobytes()
        if key in rows:
            rows[key][1] += 1
            continue
        inv = out_inv[i]
        b, s, genus, filling = int(inv[0]), int(inv[1]), int(inv[2]), int(inv[3])
        blen = tuple(int(x) for x in inv[4:4 + half] if x > 0)
        clen = tuple(int(x) for x in inv[4 + half:] if x > 0)
        rows[key] = [(b, s, genus, bool(filling), blen, clen), 1,
                     tuple(int(x) for x in out_wit[i])]
    return rows


def _merge(target, extra):
    for key, val in extra.items():
        if key in target:
            target[key][1] += val[1]
        else:
            target[key] = val
    return target


def _census_raw(V):
    threads = int(os.environ.get("FILLGRAPH_THREADS", "1") or "1")
    engine = _census_numba if _HAVE_NUMBA else _census_python
    if threads <= 1 or V < 3:
        return engine(V)
    # fan out over the first-level choices; merge is a plain union
    prefixes = [((0, c),) for c in (1, 2, 4)]
    import concurrent.futures as cf
    out = {}
    with cf.ProcessPoolExecutor(max_workers=min(threads, len(prefixes))) as ex:
        for part in ex.map(_census_part, [(V, p, _HAVE_NUMBA) for p in prefixes]):
            _merge(out, part)
    return out


def _census_part(args):
    V, prefix, use_numba = args
    engine = _census_numba if (use_numba and _HAVE_NUMBA) else _census_python
    return engine(V, prefix=prefix)


@lru_cache(maxsize=None)
def census(V):
    """Complete census of connected 4-regular fat graphs on V vertices up to
    isomorphism, as :class:`CensusRow` list sorted by canonical key."""
    if not 1 <= V <= EXHAUSTIVE_CEILING:
        raise CensusRangeError(
            f"exhaustive census supports 1 <= V <= {EXHAUSTIVE_CEILING}; "
            "use synthesis.search_filling for targeted larger searches")
    raw = _census_raw(V)
    rows = []
    for key in sorted(raw):
        (b, s, genus, filling, blen, clen), count, witness = raw[key]
        omega = None
        if filling:
            omega = intersection_graph(
                matching_to_graph(V, witness)).omega_max()
        rows.append(CensusRow(
            key=key, vertex_count=V, edge_count=2 * V, genus=genus,
            boundary_count=b, standard_cycle_count=s,
            boundary_lengths=blen, cycle_lengths=clen,
            filling=filling, omega_max=omega, count=count, witness=witness))
    return tuple(rows)


def census_filter(V, genus=None, b=None, s=None, filling=None):
    out = []
    for row in census(V):
        if genus is not None and row.genus != genus:
            continue
        if b is not None and row.boundary_count != b:
            continue
        if s is not None and row.standard_cycle_count != s:
            continue
        if filling is not None and row.filling != filling:
            continue
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# operation law verification


@dataclass
class OpAudit:
    op: str
    trials: int = 0
    mismatches: int = 0  # hard predicted-vs-recomputed failures
    case_counts: dict = None
    corollary_violations: int = 0  # join: new boundary of length <= 2
    corollary_skipped: int = 0  # join trials splicing monogon faces
    printed_checked: int = 0
    printed_matched: int = 0
    printed_reliable_misses: int = 0
    unreliable_miss_cases: dict = None
    s_law_checked: int = 0
    s_law_misses: int = 0

    def __post_init__(self):
        if self.case_counts is None:
            self.case_counts = {}
        if self.unreliable_miss_cases is None:
            self.unreliable_miss_cases = {}

    def record_case(self, case):
        self.case_counts[case] = self.case_counts.get(case, 0) + 1


def _operand_pool(max_census_v=3, census_cap=40):
    pool = [
        ("g1", families.build(families.G1)),
        ("torus", families.build(families.TORUS_PAIR)),
        ("sphere", families.build(families.SPHERE_CIRCLE)),
        ("gamma0", families.build(families.GAMMA0)),
        ("g2", families.build(families.G2)),
        ("gamma_g2", families.build(families.GAMMA_G, 2)),
        ("girth3", families.build(families.GIRTH_2GM1, 3)),
        ("quadruple", families.build(families.QUADRUPLE_F3)),
        ("gamma2b2", families.build(families.GAMMA_2_B, 2)),
        ("gamma2b3", families.build(families.GAMMA_2_B, 3)),
        ("example52", families.build(families.EXAMPLE_5_2)),
    ]
    for V in range(2, max_census_v + 1):
        rows = census(V)
        step = max(1, len(rows) // census_cap)
        for i, row in enumerate(rows[::step][:census_cap]):
            pool.append((f"census{V}.{i}", row.graph()))
    return pool


def verify_formula_by_recompute(ops=("join", "consum", "plumb"),
                                max_census_v=3, census_cap=24,
                                max_edge_pairs=9):
    """Exercise the operations across catalog and census operands.

    Every trial rechecks the operation's own prediction (an exception there
    counts as a mismatch).  For the connected sum the four-branch
    indicator-sum table is additionally audited: the two structurally forced branches must
    match the recomputation on every trial; the other two record match
    rates, since their printed values are known to depend on interleaving
    data the indicator sums do not see.
    """
    pool = _operand_pool(max_census_v, census_cap)

    def fresh(gl, gr):
        # operands are disjoint copies; remake the value on the diagonal
        return FatGraph(gr.sigma0, gr.labels) if gl is gr else gr

    audits = {}
    def monogon_splice(gl, gr, x, y):
        # the length > 2 corollary presumes no spliced dart sits on a
        # monogon face (two monogons can merge into a new bigon)
        for g, lab in ((gl, x), (gr, y)):
            comp = g.boundary_component_of
            for d in g.darts_of(lab):
                if len(g.boundary_cycles[comp[d]]) < 2:
                    return True
        return False

    if "join" in ops:
        a = audits["join"] = OpAudit("join")
        for _, gl in pool:
            for _, gr in pool:
                gr = fresh(gl, gr)
                for x in gl.labels[:max_edge_pairs]:
                    for y in gr.labels[:max_edge_pairs]:
                        a.trials += 1
                        try:
                            rep = join(gl, gr, x, y)
                        except AssertionError:
                            a.mismatches += 1
                            continue
                        a.record_case(rep.case)
                        if monogon_splice(gl, gr, x, y):
                            a.corollary_skipped += 1
                            continue
                        for cyc in new_join_boundaries(rep):
                            if len(cyc) <= 2:
                                a.corollary_violations += 1
    if "plumb" in ops:
        a = audits["plumb"] = OpAudit("plumb")
        for _, gl in pool:
            for _, gr in pool:
                gr = fresh(gl, gr)
                for x in gl.labels[:max_edge_pairs]:
                    for y in gr.labels[:max_edge_pairs]:
                        a.trials += 1
                        try:
                            rep = plumbing(gl, gr, x, y)
                        except AssertionError:
                            a.mismatches += 1
                            continue
                        a.record_case(rep.case)
    if "consum" in ops:
        a = audits["consum"] = OpAudit("consum")
        for _, gl in pool:
            for _, gr in pool:
                gr = fresh(gl, gr)
                for w in range(gl.num_vertices):
                    for u in range(gr.num_vertices):
                      for align in range(4):
                        try:
                            rep = connected_sum(gl, gr, w, u, align)
                        except OperationError:
                            continue  # loops or wrong valence: not a trial
                        except AssertionError:
                            a.trials += 1
                            a.mismatches += 1
                            continue
                        a.trials += 1
                        a.record_case(rep.case)
                        chi = rep.chi
                        if chi["printed_b"] is not None:
                            a.printed_checked += 1
                            hit = chi["printed_b"] == \
                                rep.recomputed.boundary_count
                            if hit:
                                a.printed_matched += 1
                            elif chi["reliable"]:
                                a.printed_reliable_misses += 1
                            else:
                                k = rep.case
                                a.unreliable_miss_cases[k] = \
                                    a.unreliable_miss_cases.get(k, 0) + 1
                        if chi["s_law_premise"]:
                            a.s_law_checked += 1
                            ls, rs = rep.left_signature, rep.right_signature
                            want = (ls.standard_cycle_count
                                    + rs.standard_cycle_count - 2)
                            if rep.recomputed.standard_cycle_count != want:
                                a.s_law_misses += 1
    return audits
