"""Canonical certificates for exact isomorphism testing.

Two graphs receive equal certificates iff they are isomorphic. The
certificate is derived from a canonical vertex ordering found by
individualization-refinement search:

* iterated colour refinement (1-WL) splits vertices into an equitable
  ordered partition whose cell order depends only on label-free signatures;
* while some cell has more than one vertex, the search individualizes each
  member of the first such cell in turn and refines again;
* each discrete leaf yields a vertex ordering and hence a bit-encoding of
  the adjacency matrix; the minimum (refinement-invariant trail, bits) key
  over all leaves is canonical.

Automorphisms discovered when two leaves produce identical keys are used to
skip branches whose subtrees are guaranteed to repeat earlier work, which
keeps highly symmetric inputs (empty graphs, cycles, the Petersen graph)
tractable.
"""

from __future__ import annotations

from .graphs import Graph


def _refine(rows: tuple[int, ...], n: int, colors: list[int]) -> list[int]:
    """Iterate colour refinement to a stable partition.

    Each round recolours vertices by (current colour, sorted multiset of
    neighbour colours) and renumbers colours by sorted signature, which keeps
    the cell order canonical and only ever splits cells.
    """
    ncolors = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            neigh = []
            m = rows[v]
            while m:
                b = m & -m
                neigh.append(colors[b.bit_length() - 1])
                m ^= b
            neigh.sort()
            sigs.append((colors[v], tuple(neigh)))
        order = sorted(set(sigs))
        if len(order) == ncolors:
            return colors
        remap = {s: i for i, s in enumerate(order)}
        colors = [remap[s] for s in sigs]
        ncolors = len(order)


def _individualize(colors: list[int], w: int) -> list[int]:
    """Give w a fresh colour placed just before its former cellmates."""
    return [2 * c + (0 if v == w else 1) for v, c in enumerate(colors)]


def _cells(colors: list[int], n: int) -> list[list[int]]:
    out: dict[int, list[int]] = {}
    for v in range(n):
        out.setdefault(colors[v], []).append(v)
    return [out[c] for c in sorted(out)]


def _invariant(rows: tuple[int, ...], cells: list[list[int]]) -> tuple:
    """Label-free summary of an equitable partition: cell sizes + quotient.

    The partition is equitable, so the number of neighbours a vertex has in
    each cell depends only on its own cell; one representative per cell
    suffices.
    """
    masks = []
    for cell in cells:
        m = 0
        for v in cell:
            m |= 1 << v
        masks.append(m)
    sizes = tuple(len(c) for c in cells)
    quot = tuple(
        (rows[cell[0]] & m).bit_count() for cell in cells for m in masks
    )
    return (sizes, quot)


def _leaf_bits(rows: tuple[int, ...], perm: list[int]) -> tuple[int, ...]:
    """Adjacency bits of the reordered graph, new column before new row.

    Bit order is (0,1), (0,2), (1,2), (0,3), ... so that fixing the first p
    positions fixes an exact prefix of the string.
    """
    out = []
    for j in range(1, len(perm)):
        rj = rows[perm[j]]
        for i in range(j):
            out.append((rj >> perm[i]) & 1)
    return tuple(out)


def _twin_cell(rows: tuple[int, ...], cell: list[int]) -> bool:
    """True when every permutation of the cell extends to an automorphism.

    Holds iff all members have identical neighbourhoods outside the cell and
    the cell induces either no edges or all edges; branching on one member
    then loses nothing. This keeps trivially symmetric inputs (empty and
    complete graphs, padded isolated nodes, duplicate vertices) linear.
    """
    mask = 0
    for v in cell:
        mask |= 1 << v
    first = cell[0]
    ext = rows[first] & ~mask
    inner_first = rows[first] & mask
    complete = inner_first == mask ^ (1 << first)
    empty = inner_first == 0
    if not (complete or empty):
        return False
    for v in cell[1:]:
        if rows[v] & ~mask != ext:
            return False
        inner = rows[v] & mask
        if complete and inner != mask ^ (1 << v):
            return False
        if empty and inner != 0:
            return False
    return True


def _in_known_orbit(
    w: int, explored: list[int], gens: list[tuple[int, ...]], fixed: list[int]
) -> bool:
    """Does a known automorphism fixing the individualized vertices map w
    into the orbit of an already explored sibling?"""
    usable = [g for g in gens if all(g[v] == v for v in fixed)]
    if not usable:
        return False
    seen = {w}
    frontier = [w]
    targets = set(explored)
    while frontier:
        v = frontier.pop()
        for g in usable:
            u = g[v]
            if u in targets:
                return True
            if u not in seen:
                seen.add(u)
                frontier.append(u)
    return False


def _prefix_bits(rows: tuple[int, ...], cells: list[list[int]]) -> tuple[int, ...]:
    """Adjacency bits already forced by the leading run of singleton cells."""
    lead: list[int] = []
    for cell in cells:
        if len(cell) != 1:
            break
        lead.append(cell[0])
    return _leaf_bits(rows, lead)


class _Search:
    """Individualization-refinement search for the minimal (trail, bits) key.

    Two reference leaves are kept: the best (canonical candidate) and the
    first ever found. Branches are pruned against the best, except that any
    branch still tracking the first leaf exactly is followed, because its
    leaves are where automorphisms are discovered; the discovered generators
    then collapse sibling branches orbit by orbit. Without the second
    reference, vertex-transitive inputs (Moore graphs and friends) degrade
    to near-factorial search.
    """

    def __init__(self, rows: tuple[int, ...], n: int):
        self.rows = rows
        self.n = n
        self.best_path: tuple | None = None
        self.best_bits: tuple[int, ...] | None = None
        self.best_perm: list[int] | None = None
        self.first_path: tuple | None = None
        self.first_bits: tuple[int, ...] | None = None
        self.first_perm: list[int] | None = None
        self.gens: list[tuple[int, ...]] = []
        self._gen_set: set[tuple[int, ...]] = set()

    def run(self) -> tuple[int, ...]:
        colors = _refine(self.rows, self.n, [0] * self.n)
        self._node(colors, (), [])
        assert self.best_bits is not None
        return self.best_bits

    def _remember_gen(self, ref_perm: list[int], perm: list[int]) -> None:
        g = [0] * self.n
        for i in range(self.n):
            g[ref_perm[i]] = perm[i]
        gt = tuple(g)
        if gt not in self._gen_set and any(gt[i] != i for i in range(self.n)):
            self._gen_set.add(gt)
            self.gens.append(gt)

    def _node(self, colors: list[int], path: tuple, fixed: list[int]) -> None:
        cells = _cells(colors, self.n)
        path = path + (_invariant(self.rows, cells),)
        d = len(path)
        prefix = _prefix_bits(self.rows, cells)
        on_first = (
            self.first_path is not None
            and path == self.first_path[:d]
            and prefix == self.first_bits[: len(prefix)]
        )
        if self.best_path is not None and not on_first:
            if path > self.best_path[:d]:
                return
            if path == self.best_path[:d] and prefix > self.best_bits[: len(prefix)]:
                return
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            perm = [cell[0] for cell in cells]
            bits = _leaf_bits(self.rows, perm)
            key = (path, bits)
            if self.first_path is None:
                self.first_path, self.first_bits, self.first_perm = path, bits, perm
            elif key == (self.first_path, self.first_bits):
                self._remember_gen(self.first_perm, perm)
            if self.best_path is None or key < (self.best_path, self.best_bits):
                self.best_path, self.best_bits, self.best_perm = path, bits, perm
            elif key == (self.best_path, self.best_bits):
                self._remember_gen(self.best_perm, perm)
            return
        if _twin_cell(self.rows, target):
            candidates = target[:1]
        else:
            candidates = target
        explored: list[int] = []
        for w in candidates:
            if explored and _in_known_orbit(w, explored, self.gens, fixed):
                continue
            explored.append(w)
            refined = _refine(self.rows, self.n, _individualize(colors, w))
            fixed.append(w)
            self._node(refined, path, fixed)
            fixed.pop()


def canonical_certificate(g: Graph) -> bytes:
    """Canonical byte-string: equal for two graphs iff they are isomorphic.

    Layout: two big-endian size bytes, then the canonical adjacency bits
    packed eight per byte (zero-padded at the end).
    """
    bits = _Search(g.rows, g.n).run() if g.n > 1 else ()
    out = bytearray(g.n.to_bytes(2, "big"))
    acc = 0
    nbits = 0
    for b in bits:
        acc = (acc << 1) | b
        nbits += 1
        if nbits == 8:
            out.append(acc)
            acc, nbits = 0, 0
    if nbits:
        out.append(acc << (8 - nbits))
    return bytes(out)


def canonical_relabel(g: Graph) -> Graph:
    """The canonically labelled copy of g (same certificate, sorted labels)."""
    from .graphs import graph_from_edges

    if g.n == 1:
        return g
    search = _Search(g.rows, g.n)
    search.run()
    perm = search.best_perm
    assert perm is not None
    pos = [0] * g.n
    for i, v in enumerate(perm):
        pos[v] = i
    return graph_from_edges(g.n, [(pos[u], pos[v]) for u, v in g.edges()])
