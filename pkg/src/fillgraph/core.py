"""Fat graphs as permutation pairs on directed edges.

A fat graph is stored as a rotation permutation ``sigma0`` on a dense set of
directed edges (darts).  Undirected edge ``k`` owns the two darts ``2k`` and
``2k + 1``; direction reversal is the fixed point free involution
``d -> d ^ 1``, which therefore never needs to be stored.

Derived structure:

* vertices are the cycles of ``sigma0``;
* boundary components are the cycles of ``sigma1 * sigma0^-1``, traversed and
  printed here in word order, i.e. by the successor ``d -> sigma0[d ^ 1]``
  (same orbits, and the traversal reproduces boundary words of the source
  constructions literally);
* standard cycles (the curves of a filling system) are the orbits of the
  straight-ahead successor ``d -> sigma0^k(d ^ 1)`` at a degree ``2k`` vertex,
  taken up to orientation reversal.

Graphs are immutable; every operation returns a fresh value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


class FatGraphError(ValueError):
    """Base class for malformed input or unsupported structure."""


class MalformedGraphError(FatGraphError):
    pass


class DegreeError(FatGraphError):
    pass


class NotDecoratedError(FatGraphError):
    """Raised when an odd degree vertex blocks a curve computation."""


class DisconnectedError(FatGraphError):
    pass


def _parse_token(tok):
    """Signed edge label -> (name, sign, occurrence).

    Accepts "x+", "x-", and the loop disambiguated forms "x+#0" / "x+#1"
    (same signed label twice at one vertex).  Unicode minus is tolerated.
    """
    if isinstance(tok, tuple):
        name, sign = tok
        return str(name), (1 if sign > 0 else -1), None
    s = str(tok)
    occ = None
    if "#" in s:
        s, _, tag = s.partition("#")
        if tag not in ("0", "1"):
            raise MalformedGraphError(f"bad occurrence tag in {tok!r}")
        occ = int(tag)
    s = s.replace("−", "-")
    if len(s) < 2 or s[-1] not in "+-":
        raise MalformedGraphError(f"signed edge label expected, got {tok!r}")
    return s[:-1], (1 if s[-1] == "+" else -1), occ


@dataclass(frozen=True)
class SurfaceSignature:
    """Bookkeeping triple of a connected fat graph plus structural flags.

    Satisfies V - m + b = 2 - 2g.  ``s`` is None when the graph is not
    decorated (some vertex of odd degree).
    """

    genus: int
    boundary_count: int
    standard_cycle_count: int | None
    vertex_count: int
    edge_count: int
    is_connected: bool
    is_four_regular: bool
    is_decorated: bool
    is_filling: bool

    @property
    def triple(self):
        return (self.genus, self.boundary_count, self.standard_cycle_count)

    def __str__(self):
        s = "-" if self.standard_cycle_count is None else self.standard_cycle_count
        return f"g={self.genus} b={self.boundary_count} s={s}"


class BoundaryCycle(tuple):
    """Orbit of the boundary permutation, as a dart tuple in word order."""

    def word(self, graph):
        return tuple(graph.dart_name(d) for d in self)

    def length(self):
        return len(self)


class StandardCycle(tuple):
    """One curve: darts along a straight-ahead traversal, one per edge used."""

    def edges(self):
        return tuple(d >> 1 for d in self)

    def word(self, graph):
        return tuple(graph.dart_name(d) for d in self)


class FatGraph:
    """Immutable fat graph; construct via :meth:`from_vertex_cycles`."""

    def __init__(self, sigma0, labels):
        sigma0 = tuple(sigma0)
        n = len(sigma0)
        if n % 2:
            raise MalformedGraphError("odd number of darts")
        if sorted(sigma0) != list(range(n)):
            raise MalformedGraphError("sigma0 is not a permutation of the darts")
        self._sigma0 = sigma0
        self._labels = tuple(labels)
        if len(self._labels) != n // 2:
            raise MalformedGraphError("one label per undirected edge required")
        if len(set(self._labels)) != len(self._labels):
            raise MalformedGraphError("duplicate edge labels")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_vertex_cycles(cls, vertex_cycles, labels=None):
        """Build from cyclic sequences of signed edge labels.

        Each undirected label must appear exactly twice over all cycles; a
        label seen as "x+" pairs with "x-", and a loop written with one sign
        twice needs "#0"/"#1" occurrence tags.  Cycles shorter than 2 are
        rejected.
        """
        edge_ids: dict[str, int] = {}
        used: dict[int, bool] = {}
        dart_cycles = []
        for cyc in vertex_cycles:
            cyc = list(cyc)
            if len(cyc) < 2:
                raise DegreeError(
                    f"vertex cycle {cyc!r} has degree {len(cyc)} < 2")
            darts = []
            for tok in cyc:
                name, sign, occ = _parse_token(tok)
                if name not in edge_ids:
                    edge_ids[name] = len(edge_ids)
                k = edge_ids[name]
                d = 2 * k + (0 if sign > 0 else 1)
                if occ is not None:
                    # tagged loop occurrence: #0 is the forward dart
                    d = 2 * k + occ
                if used.get(d):
                    if occ is None and not used.get(d ^ 1):
                        raise MalformedGraphError(
                            f"edge {name!r} appears twice with the same sign; "
                            "use '#0'/'#1' occurrence tags")
                    raise MalformedGraphError(
                        f"edge {name!r} appears more than twice")
                used[d] = True
                darts.append(d)
            dart_cycles.append(darts)
        n = 2 * len(edge_ids)
        if len(used) != n:
            missing = [nm for nm, k in edge_ids.items()
                       if not (used.get(2 * k) and used.get(2 * k + 1))]
            raise MalformedGraphError(
                f"edges appearing only once: {sorted(missing)}")
        sigma0 = [0] * n
        for darts in dart_cycles:
            for i, d in enumerate(darts):
                sigma0[d] = darts[(i + 1) % len(darts)]
        names = [None] * (n // 2)
        for nm, k in edge_ids.items():
            names[k] = nm
        return cls(sigma0, names)

    # -- basic structure ---------------------------------------------------

    @property
    def sigma0(self):
        return self._sigma0

    @property
    def labels(self):
        return self._labels

    @property
    def num_darts(self):
        return len(self._sigma0)

    @property
    def num_edges(self):
        return len(self._sigma0) // 2

    def edge_id(self, label):
        try:
            return self._labels.index(label)
        except ValueError:
            raise MalformedGraphError(f"no edge named {label!r}") from None

    def has_edge(self, label):
        return label in self._labels

    def darts_of(self, label):
        k = self.edge_id(label)
        return 2 * k, 2 * k + 1

    def dart_name(self, d):
        return self._labels[d >> 1] + ("+" if d % 2 == 0 else "-")

    @cached_property
    def vertex_cycles(self):
        """sigma0 orbits as dart tuples, each starting at its least dart,
        listed in increasing order of that least dart."""
        n = self.num_darts
        seen = [False] * n
        out = []
        for s in range(n):
            if seen[s]:
                continue
            cyc = []
            d = s
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = self._sigma0[d]
            out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def vertex_of(self):
        vo = [0] * self.num_darts
        for i, cyc in enumerate(self.vertex_cycles):
            for d in cyc:
                vo[d] = i
        return tuple(vo)

    @property
    def num_vertices(self):
        return len(self.vertex_cycles)

    def degree(self, v):
        return len(self.vertex_cycles[v])

    @cached_property
    def is_connected(self):
        nv = self.num_vertices
        if nv <= 1:
            return True
        vo = self.vertex_of
        adj = [[] for _ in range(nv)]
        for k in range(self.num_edges):
            a, b = vo[2 * k], vo[2 * k + 1]
            adj[a].append(b)
            adj[b].append(a)
        seen = [False] * nv
        stack = [0]
        seen[0] = True
        cnt = 1
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    cnt += 1
                    stack.append(w)
        return cnt == nv

    @property
    def is_decorated(self):
        return all(len(c) % 2 == 0 for c in self.vertex_cycles)

    @property
    def is_four_regular(self):
        return all(len(c) == 4 for c in self.vertex_cycles)

    def loops_at(self, v):
        darts = self.vertex_cycles[v]
        return [d >> 1 for d in darts if (d ^ 1) in darts and d % 2 == 0]

    # -- derived cycles ----------------------------------------------------

    @cached_property
    def boundary_cycles(self):
        """Cycles of sigma1 * sigma0^-1 in word order (successor
        d -> sigma0[d ^ 1]), each starting at its least dart."""
        n = self.num_darts
        s0 = self._sigma0
        seen = [False] * n
        out = []
        for s in range(n):
            if seen[s]:
                continue
            cyc = []
            d = s
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = s0[d ^ 1]
            out.append(BoundaryCycle(cyc))
        return tuple(out)

    @cached_property
    def boundary_component_of(self):
        """dart -> index into boundary_cycles."""
        out = [0] * self.num_darts
        for i, cyc in enumerate(self.boundary_cycles):
            for d in cyc:
                out[d] = i
        return tuple(out)

    def _standard_successor(self):
        s0 = self._sigma0
        vo = self.vertex_of
        half = [len(c) // 2 for c in self.vertex_cycles]

        def succ(d):
            e = d ^ 1
            for _ in range(half[vo[e]]):
                e = s0[e]
            return e

        return succ

    @cached_property
    def standard_orbits(self):
        """All orbits of the straight-ahead successor (2s of them)."""
        for vi, cyc in enumerate(self.vertex_cycles):
            if len(cyc) % 2:
                raise NotDecoratedError(
                    f"vertex {vi} has odd degree {len(cyc)}")
        succ = self._standard_successor()
        n = self.num_darts
        seen = [False] * n
        out = []
        for s in range(n):
            if seen[s]:
                continue
            cyc = []
            d = s
            while not seen[d]:
                seen[d] = True
                cyc.append(d)
                d = succ(d)
            out.append(tuple(cyc))
        return tuple(out)

    @cached_property
    def standard_cycles(self):
        """Curves: orbits quotiented by orientation reversal.  Each curve is
        reported once, traversed from its least dart."""
        reps = []
        mirrors = set()
        for orb in self.standard_orbits:
            key = frozenset(orb)
            mkey = frozenset(d ^ 1 for d in orb)
            assert key != mkey, "orientation reversal fixes a curve orbit"
            if key in mirrors:
                continue
            mirrors.add(mkey)
            reps.append(StandardCycle(orb))
        return tuple(reps)

    @cached_property
    def curve_of_edge(self):
        """undirected edge -> index into standard_cycles."""
        out = [None] * self.num_edges
        for i, cyc in enumerate(self.standard_cycles):
            for d in cyc:
                out[d >> 1] = i
        return tuple(out)

    # -- signature and validity --------------------------------------------

    def signature(self):
        if not self.is_connected:
            raise DisconnectedError(
                "genus of a disconnected thickening is not defined")
        V = self.num_vertices
        m = self.num_edges
        b = len(self.boundary_cycles)
        twog = 2 - b - V + m
        assert twog % 2 == 0 and twog >= 0, f"bad Euler data V={V} m={m} b={b}"
        s = len(self.standard_cycles) if self.is_decorated else None
        filling, _ = self.is_filling_system()
        return SurfaceSignature(
            genus=twog // 2, boundary_count=b, standard_cycle_count=s,
            vertex_count=V, edge_count=m, is_connected=True,
            is_four_regular=self.is_four_regular,
            is_decorated=self.is_decorated, is_filling=filling)

    def is_filling_system(self):
        """(verdict, diagnostics).  True iff connected, 4-regular, all curves
        simple, and no boundary face of length < 3 (monogon or bigon)."""
        diags = []
        if not self.is_connected:
            diags.append("not connected")
        elif not self.is_four_regular:
            bad = next(i for i, c in enumerate(self.vertex_cycles)
                       if len(c) != 4)
            diags.append(f"not 4-regular: vertex {bad} has degree "
                         f"{self.degree(bad)}")
        else:
            vo = self.vertex_of
            for i, cyc in enumerate(self.standard_cycles):
                visits = [vo[d] for d in cyc]
                if len(set(visits)) != len(visits):
                    rep = next(v for v in visits if visits.count(v) > 1)
                    diags.append(f"curve {i} revisits vertex {rep}")
                    break
            else:
                for i, cyc in enumerate(self.boundary_cycles):
                    if len(cyc) < 3:
                        diags.append(
                            f"boundary face {i} has length {len(cyc)} < 3")
                        break
        return (not diags), diags

    # -- isomorphism --------------------------------------------------------

    def canonical_form(self):
        """Lexicographically least BFS relabeling code over all start darts.

        The code determines (sigma0, sigma1) up to dart relabeling, so equal
        codes mean isomorphic fat graphs.
        """
        n = self.num_darts
        s0 = self._sigma0
        best = None
        for start in range(n):
            newlab = [-1] * n
            order = [start]
            newlab[start] = 0
            code = []
            pos = 0
            worse = False
            tied = True  # equal to best on the prefix emitted so far
            while pos < len(order):
                cur = order[pos]
                for img in (s0[cur], cur ^ 1):
                    if newlab[img] < 0:
                        newlab[img] = len(order)
                        order.append(img)
                    code.append(newlab[img])
                    if best is not None and tied:
                        c, b = code[-1], best[len(code) - 1]
                        if c > b:
                            worse = True
                            break
                        if c < b:
                            tied = False
                if worse:
                    break
                pos += 1
            if worse:
                continue
            if best is None or code < best:
                best = code
        return bytes(best)

    def is_isomorphic(self, other):
        if self.num_darts != other.num_darts:
            return False
        return self.canonical_form() == other.canonical_form()

    # -- transformations ----------------------------------------------------

    def to_vertex_cycle_tokens(self):
        """Vertex cycles as signed label tokens, in a canonical order:
        each cycle starts at its lexicographically least rotation and the
        cycles are sorted.  Reparsing the tokens and serializing again is
        the identity, which makes file round trips byte exact."""
        out = []
        for cyc in self.vertex_cycles:
            toks = [self.dart_name(d) for d in cyc]
            k = min(range(len(toks)), key=lambda i: toks[i:] + toks[:i])
            out.append(toks[k:] + toks[:k])
        out.sort()
        return out

    def relabeled(self, mapping):
        """New graph with edge labels renamed via ``mapping`` (total map)."""
        return FatGraph(self._sigma0, [mapping[nm] for nm in self._labels])

    def shuffled(self, rng):
        """Random dart relabeling preserving the graph, for tests."""
        m = self.num_edges
        edge_perm = list(range(m))
        rng.shuffle(edge_perm)
        flip = [rng.random() < 0.5 for _ in range(m)]

        def img(d):
            k, r = d >> 1, d & 1
            return 2 * edge_perm[k] + (r ^ flip[k])

        n = self.num_darts
        s0 = [0] * n
        for d in range(n):
            s0[img(d)] = img(self._sigma0[d])
        labels = [None] * m
        for k in range(m):
            labels[edge_perm[k]] = self._labels[k]
        return FatGraph(s0, labels)

    def smoothed(self):
        """Suppress all degree 2 vertices by merging their edge pairs.

        Needed after plumbing with the sphere circle, whose vertex is a plain
        curve point rather than a crossing once the graphs merge.
        The merged edge keeps the label of the lower numbered edge.
        """
        cycles = [list(c) for c in self.vertex_cycles]
        while True:
            idx = next((i for i, c in enumerate(cycles) if len(c) == 2), None)
            if idx is None:
                break
            a, b = cycles[idx]
            if a == (b ^ 1):
                raise DegreeError(
                    "cannot smooth a bivalent vertex whose edges coincide")
            # the curve runs rev(a) -> vertex -> b: identify rev(a) with b
            # by replacing darts of edge max(a,b)>>1 with those of the other
            keep, drop = (a ^ 1, b) if (a >> 1) < (b >> 1) else (b ^ 1, a)
            # keep and drop point the same way along the curve
            sub = {drop: keep, drop ^ 1: keep ^ 1}
            del cycles[idx]
            cycles = [[sub.get(d, d) for d in c] for c in cycles]
        kept_edges = sorted({d >> 1 for c in cycles for d in c})
        renum = {k: i for i, k in enumerate(kept_edges)}
        n = 2 * len(kept_edges)
        s0 = [0] * n
        for c in cycles:
            for i, d in enumerate(c):
                nd = 2 * renum[d >> 1] + (d & 1)
                nx = c[(i + 1) % len(c)]
                s0[nd] = 2 * renum[nx >> 1] + (nx & 1)
        labels = [self._labels[k] for k in kept_edges]
        return FatGraph(s0, labels)

    # -- dunder -------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FatGraph)
                and self._sigma0 == other._sigma0
                and self._labels == other._labels)

    def __hash__(self):
        return hash((self._sigma0, self._labels))

    def __repr__(self):
        cyc = ", ".join(
            "(" + " ".join(self.dart_name(d) for d in c) + ")"
            for c in self.vertex_cycles)
        return f"FatGraph[{cyc}]"
