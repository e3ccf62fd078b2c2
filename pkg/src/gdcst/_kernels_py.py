"""Pure-Python hot loops. Behaviour must match ``_ckernels.pyx`` exactly.

Edge subsets are bitmasks (bit ``e`` set means edge ``e`` is chosen). Every
scan returns ``(count, best_mask, best_weight)`` with ``best_mask == -1``
when nothing qualifies. Without ``optimize`` the scan stops at the first
qualifying set.
"""


def _bounds_ok(mask, dep_masks, lower, upper):
    mm = mask
    e = 0
    while mm:
        if mm & 1:
            c = (dep_masks[e] & mask).bit_count()
            if c < lower[e] or c > upper[e]:
                return False
        mm >>= 1
        e += 1
    return True


def _weight(mask, weights):
    if weights is None:
        return 0
    total = 0
    e = 0
    while mask:
        if mask & 1:
            total += weights[e]
        mask >>= 1
        e += 1
    return total


def is_tree_mask(n, eu, ev, mask):
    if mask.bit_count() != n - 1:
        return False
    parent = list(range(n))
    e = 0
    while mask:
        if mask & 1:
            a = eu[e]
            while parent[a] != a:
                a = parent[a]
            b = ev[e]
            while parent[b] != b:
                b = parent[b]
            if a == b:
                return False
            parent[a] = b
        mask >>= 1
        e += 1
    return True


def scan_subsets(n, eu, ev, dep_masks, lower, upper, weights, optimize):
    """Test all ``2**m`` subsets for being a satisfying spanning tree."""
    m = len(eu)
    count = 0
    best_mask, best_w = -1, 0
    for mask in range(1 << m):
        count += 1
        if mask.bit_count() != n - 1:
            continue
        if not is_tree_mask(n, eu, ev, mask):
            continue
        if not _bounds_ok(mask, dep_masks, lower, upper):
            continue
        w = _weight(mask, weights)
        if best_mask < 0 or w < best_w:
            best_mask, best_w = mask, w
        if not optimize:
            break
    return count, best_mask, best_w


class _TreeWalk:
    """Deletion-contraction enumeration of spanning trees in edge-id order."""

    def __init__(self, n, eu, ev, visit):
        self.n = n
        self.eu = eu
        self.ev = ev
        self.m = len(eu)
        self.visit = visit
        self.stop = False

    def _connected_after(self, label, inc, i):
        # components of the included forest, merged by edges after i
        need = self.n - inc - 1
        if need == 0:
            return True
        parent = list(range(self.n))
        eu, ev = self.eu, self.ev
        for j in range(i + 1, self.m):
            a = label[eu[j]]
            while parent[a] != a:
                a = parent[a]
            b = label[ev[j]]
            while parent[b] != b:
                b = parent[b]
            if a != b:
                parent[a] = b
                need -= 1
                if need == 0:
                    return True
        return False

    def run(self):
        if self.n == 1:
            self.visit(0)
            return
        label = list(range(self.n))
        if not self._connected_after(label, 0, -1):
            return
        self._rec(0, 0, 0, label)

    def _rec(self, i, inc, mask, label):
        if inc == self.n - 1:
            if self.visit(mask):
                self.stop = True
            return
        if i == self.m:
            return
        a, b = label[self.eu[i]], label[self.ev[i]]
        if a == b:
            self._rec(i + 1, inc, mask, label)
            return
        merged = [b if x == a else x for x in label]
        self._rec(i + 1, inc + 1, mask | (1 << i), merged)
        if self.stop:
            return
        if self._connected_after(label, inc, i):
            self._rec(i + 1, inc, mask, label)


def spanning_tree_masks(n, eu, ev):
    out = []

    def visit(mask):
        out.append(mask)
        return False

    _TreeWalk(n, eu, ev, visit).run()
    return out


def scan_trees(n, eu, ev, dep_masks, lower, upper, weights, optimize):
    """Enumerate spanning trees and keep the best satisfying one."""
    state = [0, -1, 0]

    def visit(mask):
        state[0] += 1
        if _bounds_ok(mask, dep_masks, lower, upper):
            w = _weight(mask, weights)
            if state[1] < 0 or w < state[2]:
                state[1], state[2] = mask, w
            return not optimize
        return False

    _TreeWalk(n, eu, ev, visit).run()
    return tuple(state)


class _PrunedWalk:
    """Tree walk that also tracks dependency counts of the partial tree.

    After each decision the decided edge and its included out-neighbours
    are checked: included dependencies must not exceed ``upper`` and
    included plus undecided ones must still reach ``lower``.
    """

    def __init__(self, n, eu, ev, deps, lower, upper, weights, optimize):
        self.n, self.eu, self.ev = n, eu, ev
        self.m = len(eu)
        self.dep_masks = []
        self.out = [[] for _ in range(self.m)]
        for h, d in enumerate(deps):
            mask = 0
            for t in d:
                mask |= 1 << t
                self.out[t].append(h)
            self.dep_masks.append(mask)
        self.lower, self.upper, self.weights = lower, upper, weights
        self.optimize = optimize
        self.count = 0
        self.best_mask, self.best_w = -1, 0
        self.stop = False
        self.tw = _TreeWalk(n, eu, ev, None)

    def _ok(self, i, mask):
        cut = ~((1 << (i + 1)) - 1)
        for h in [i] + self.out[i]:
            if h <= i and mask >> h & 1:
                inc = (self.dep_masks[h] & mask).bit_count()
                if inc > self.upper[h] or inc + (self.dep_masks[h] & cut).bit_count() < self.lower[h]:
                    return False
        return True

    def _leaf(self, mask):
        if not _bounds_ok(mask, self.dep_masks, self.lower, self.upper):
            return
        w = _weight(mask, self.weights) if self.weights is not None else 0
        if self.best_mask < 0 or w < self.best_w:
            self.best_mask, self.best_w = mask, w
        if not self.optimize:
            self.stop = True

    def run(self):
        label = list(range(self.n))
        if self.n == 1:
            self.count = 1
            self._leaf(0)
        elif self.tw._connected_after(label, 0, -1):
            self._rec(0, 0, 0, label)

    def _rec(self, i, inc, mask, label):
        self.count += 1
        if inc == self.n - 1:
            self._leaf(mask)
            return
        if i == self.m:
            return
        a, b = label[self.eu[i]], label[self.ev[i]]
        if a == b:
            if self._ok(i, mask):
                self._rec(i + 1, inc, mask, label)
            return
        with_e = mask | (1 << i)
        if self._ok(i, with_e):
            self._rec(i + 1, inc + 1, with_e, [b if x == a else x for x in label])
        if self.stop:
            return
        if self._ok(i, mask) and self.tw._connected_after(label, inc, i):
            self._rec(i + 1, inc, mask, label)


def scan_pruned(n, eu, ev, deps, lower, upper, weights, optimize):
    """Pruned tree walk; ``deps[e]`` lists the dependencies of edge ``e``.

    Returns ``(nodes, best_edges or None, best_weight)``.
    """
    walk = _PrunedWalk(n, eu, ev, deps, lower, upper, weights, optimize)
    walk.run()
    if walk.best_mask < 0:
        return walk.count, None, 0
    best = [e for e in range(walk.m) if walk.best_mask >> e & 1]
    return walk.count, best, walk.best_w
