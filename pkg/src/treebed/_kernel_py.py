"""Pure-Python search kernels.

Two hot loops live here: the exhaustive tree-into-graph backtracking search
and the exact minimum-density cut enumeration.  `treebed._kernel_c` is a
compiled twin with identical semantics (same traversal order, same
tie-breaking, same node counts); `treebed.kernel` picks whichever is
importable.  Bitmasks are plain ints, so this backend also covers hosts with
more than 64 vertices.
"""

FOUND = 0
NOT_FOUND = 1
BUDGET = 2


def solve_embed(adj, host_deg, host_order, parent_pos, allowed, tdeg, nchild, symprev, budget):
    """Backtracking search for an injective, edge-preserving tree placement.

    adj:        per-host-vertex neighbour bitmask
    host_deg:   per-host-vertex degree
    host_order: all host ids, candidate iteration order (degree-descending)
    parent_pos: for tree-position i, the earlier position adjacent to it (-1 at 0)
    allowed:    per-position bitmask of admissible host vertices (pins shrink it)
    tdeg:       tree degree per position (candidates must have host degree >= it)
    nchild:     children still to be placed below each position (lookahead prune)
    symprev:    earlier sibling position carrying an identical subtree, else -1;
                the image of i must exceed that sibling's image (symmetry cut,
                sound because swapping the two subtree images is an automorphism)

    Returns (status, images|None, nodes); nodes counts accepted placements.
    A NOT_FOUND status means the constrained search space was exhausted.
    """
    m = len(parent_pos)
    n = len(adj)
    if m == 0:
        return FOUND, [], 0
    img = [-1] * m
    used = 0
    ptr = [0] * m
    nodes = 0
    i = 0
    while True:
        p = parent_pos[i]
        if p < 0:
            mask = allowed[i] & ~used
        else:
            mask = adj[img[p]] & allowed[i] & ~used
        need = tdeg[i]
        kids = nchild[i]
        sp = symprev[i]
        floor = img[sp] if sp >= 0 else -1
        placed = False
        j = ptr[i]
        while j < n:
            h = host_order[j]
            j += 1
            if not (mask >> h) & 1:
                continue
            if host_deg[h] < need:
                continue
            if h <= floor:
                continue
            if ((adj[h] & ~used) & ~(1 << h)).bit_count() < kids:
                continue
            nodes += 1
            if nodes > budget:
                return BUDGET, None, nodes
            img[i] = h
            used |= 1 << h
            ptr[i] = j
            placed = True
            break
        if placed:
            i += 1
            if i == m:
                return FOUND, img, nodes
            ptr[i] = 0
        else:
            if i == 0:
                return NOT_FOUND, None, nodes
            i -= 1
            used &= ~(1 << img[i])
            img[i] = -1


def min_density_cut(adj, n):
    """Exact min of crossing/(|A||B|) over proper bipartitions, Gray-code scan.

    Vertex 0 is anchored on side A; gray code enumerates which of the other
    vertices join it.  Crossing counts are updated incrementally per flip.
    Returns (crossing, a_mask) of the first minimum encountered.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    full = (1 << n) - 1
    amask = 1
    cross = adj[0].bit_count()
    best_cross = cross
    best_den = 1 * (n - 1)
    best_amask = amask
    gray = 0
    for g in range(1, 1 << (n - 1)):
        ng = g ^ (g >> 1)
        flip = gray ^ ng
        gray = ng
        # gray bit b toggles vertex b+1 (vertex 0 is anchored)
        v = flip.bit_length()
        bit = 1 << v
        av = adj[v]
        if amask & bit:
            # v leaves A: its A-edges start crossing, its B-edges stop
            amask ^= bit
            cross += (av & amask).bit_count() - (av & (full & ~amask)).bit_count()
        else:
            # v joins A: its B-edges start crossing, its A-edges stop
            cross += (av & (full & ~amask)).bit_count() - (av & amask).bit_count()
            amask ^= bit
        asz = amask.bit_count()
        if asz == n:
            continue
        den = asz * (n - asz)
        if cross * best_den < best_cross * den:
            best_cross = cross
            best_den = den
            best_amask = amask
    return best_cross, best_amask
