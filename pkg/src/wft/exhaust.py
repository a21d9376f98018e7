"""Exhaustive enumerators and tree generators.

Everything here is brute force by design: these functions define the
reference semantics that the engine operations are tested against, and
they double as instance generators for the test suites.  All enumeration
orders are deterministic (canonical node order, subsets by size then
lexicographic rank).
"""

import itertools
import random

from .trees import WfTree, comparable, node_key


def _subsets_upto(items, limit):
    """Subsets of a sorted tuple with size at most limit, small first."""
    for size in range(min(limit, len(items)) + 1):
        yield from itertools.combinations(items, size)


def _subsets_atleast(items, lo):
    """Subsets of a sorted tuple with size at least lo, small first."""
    for size in range(lo, len(items) + 1):
        yield from itertools.combinations(items, size)


def antichains(t):
    """All antichains of the tree's node set, empty set included."""

    def per_cone(node):
        cs = t.succ(node)
        options = [frozenset()]
        if cs:
            for combo in itertools.product(*[per_cone(c) for c in cs]):
                merged = frozenset().union(*combo)
                options.append(merged)
            options = _dedupe(options)
        options.append(frozenset([node]))
        return options

    seen = set()
    for a in per_cone(t.root):
        if a not in seen:
            seen.add(a)
            yield a


def _dedupe(sets):
    out = []
    seen = set()
    for s in sets:
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def fronts(t):
    """All fronts: antichains meeting every root-to-maximal branch."""

    def per_cone(node):
        cs = t.succ(node)
        options = [frozenset([node])]
        if cs:
            for combo in itertools.product(*[per_cone(c) for c in cs]):
                options.append(frozenset().union(*combo))
        return _dedupe(options)

    yield from per_cone(t.root)


def almost_fronts(t, budget):
    """All fronts of budgeted exhaustive subtrees of t.

    Every almost front of t contains one of these sets, and membership of
    an antichain in the almost fronts is monotone upward, so this family
    decides every almost-front question about t.
    """

    def per_cone(node):
        cs = t.succ(node)
        options = [frozenset([node])]
        for drop in _subsets_upto(cs, budget):
            kept = [c for c in cs if c not in drop]
            if not kept:
                continue
            for combo in itertools.product(*[per_cone(c) for c in kept]):
                options.append(frozenset().union(*combo))
        return _dedupe(options)

    yield from per_cone(t.root)


def sb_prunings(t, p):
    """All exhaustive subtrees: drop at most budget successors per node."""

    def per_cone(node):
        cs = t.succ(node)
        if not cs:
            yield frozenset([node])
            return
        for drop in _subsets_upto(cs, p.budget):
            kept = [c for c in cs if c not in drop]
            for combo in itertools.product(*[per_cone(c) for c in kept]):
                yield frozenset([node]).union(*combo)

    for nodes in per_cone(t.root):
        yield WfTree(nodes)


def psb_thinnings(t, p):
    """All positive subtrees: keep at least keep_min successors per node.

    A node with successors may not be turned into a leaf; nodes whose cone
    cannot sustain the keep_min requirement are unusable and any choice
    through them is skipped.
    """
    usable = {}
    for node in reversed(t.sorted_nodes()):
        cs = t.succ(node)
        if not cs:
            usable[node] = True
        else:
            good = [c for c in cs if usable[c]]
            usable[node] = len(good) >= p.keep_min

    def per_cone(node):
        cs = t.succ(node)
        if not cs:
            yield frozenset([node])
            return
        good = tuple(c for c in cs if usable[c])
        for kept in _subsets_atleast(good, p.keep_min):
            for combo in itertools.product(*[per_cone(c) for c in kept]):
                yield frozenset([node]).union(*combo)

    if usable[t.root]:
        for nodes in per_cone(t.root):
            yield WfTree(nodes)


def coherent_subtrees(t, nonempty_keep=True):
    """All same-root subtrees whose successor sets agree with the host.

    Per node any subset of the host successors may be kept; with
    nonempty_keep internal nodes must keep at least one.
    """
    lo = 1 if nonempty_keep else 0

    def per_cone(node):
        cs = t.succ(node)
        if not cs:
            yield frozenset([node])
            return
        for kept in _subsets_atleast(cs, min(lo, len(cs))):
            for combo in itertools.product(*[per_cone(c) for c in kept]):
                yield frozenset([node]).union(*combo)

    for nodes in per_cone(t.root):
        yield WfTree(nodes)


# -- tree generators ------------------------------------------------------

def balanced_tree(width, dep, root=()):
    """Uniform tree: every node above the root has directions 0..width-1."""
    nodes = [root]
    frontier = [root]
    for _ in range(dep):
        frontier = [n + (d,) for n in frontier for d in range(width)]
        nodes.extend(frontier)
    return WfTree(nodes)


def all_shapes(width, max_depth, root=()):
    """Every tree with canonical directions 0..width-1 and depth <= max_depth.

    Each internal node has exactly width children; leaves may occur at any
    level.  These all validate at the given width.
    """

    def shapes(node, budget_depth):
        if budget_depth == 0:
            yield frozenset([node])
            return
        yield frozenset([node])
        kids = [node + (d,) for d in range(width)]
        for combo in itertools.product(
                *[shapes(c, budget_depth - 1) for c in kids]):
            yield frozenset([node]).union(*combo)

    for nodes in shapes(root, max_depth):
        yield WfTree(nodes)


def random_tree(p, max_depth, rng, extra_dirs=2, internal_bias=0.6,
                root=()):
    """Random valid tree: internal nodes get p.width children in distinct
    random directions drawn from a slightly larger direction pool."""
    pool = p.width + extra_dirs
    nodes = [root]

    def grow(node, lvl):
        if lvl >= max_depth or (lvl > 0 and rng.random() > internal_bias):
            return
        dirs = rng.sample(range(pool), p.width)
        for d in sorted(dirs):
            child = node + (d,)
            nodes.append(child)
            grow(child, lvl + 1)

    grow(root, 0)
    if len(nodes) == 1 and max_depth > 0:
        for d in range(p.width):
            nodes.append(root + (d,))
    return WfTree(nodes)


def random_antichain(t, rng, allow_empty=False):
    """Random antichain of t, by greedy filtering of a shuffled node list."""
    order = list(t.sorted_nodes())
    rng.shuffle(order)
    picked = []
    want = rng.randrange(1, max(2, len(order) // 2))
    for n in order:
        if all(not comparable(n, q) for q in picked):
            picked.append(n)
            if len(picked) >= want:
                break
    if not picked and not allow_empty:
        picked = [t.root]
    return frozenset(picked)


def random_front(t, rng):
    """Random front, built by the per-cone expansion of the front family."""

    def pick(node):
        cs = t.succ(node)
        if not cs or rng.random() < 0.4:
            return frozenset([node])
        return frozenset().union(*[pick(c) for c in cs])

    got = pick(t.root)
    if got == frozenset([t.root]) and t.succ(t.root) and rng.random() < 0.5:
        got = frozenset().union(*[pick(c) for c in t.succ(t.root)])
    return got


def seeded_rng(seed):
    return random.Random(seed)
