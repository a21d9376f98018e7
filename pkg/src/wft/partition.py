"""Constructive partition procedures on colored trees.

decide_subset settles a two-sided membership question along a front by a
majority induction and returns a positive subtree on which the answer is
uniform.  canonize thins a colored tree until color equality coincides
with sharing an ancestor on a canonical front.  uniformize collapses a
finite coloring of a front to an injective one on a lower front.
check_family probes a set of positive subtrees for the monochromatic and
canonical witnessing properties against sampled or exhaustive colorings.
"""

import itertools
import math
from dataclasses import dataclass

from . import config
from .errors import (NotFront, PreconditionFailed, SizeLimitExceeded,
                     WidthTooSmall)
from .exhaust import seeded_rng
from .subtrees import check_psb, is_front_exact
from .trees import WfTree, below_front, is_prefix, node_key


@dataclass(frozen=True)
class DecisionResult:
    side: str
    subtree: object
    trace: dict


@dataclass(frozen=True)
class CanonicalForm:
    subtree: object
    front: frozenset
    constants: dict


def decide_subset(t, front_set, z, p):
    """Decide a subset question along a front, with a uniform subtree.

    At front members the local side is plain membership; at internal nodes
    the side held by at least half of the successors wins, ties toward
    yes.  The returned subtree keeps, below the front, exactly the cones
    of agreeing successors, and everything above kept front members; the
    front members it retains are all on the winning side.
    """
    y = frozenset(tuple(n) for n in front_set)
    if not is_front_exact(t, y):
        raise NotFront("the node set is not a front of the tree")
    zset = frozenset(tuple(n) for n in z)
    if not zset <= y:
        raise PreconditionFailed("the subset must sit inside the front")
    hull = below_front(t, y)
    trace = {}
    for node in reversed(hull.sorted_nodes()):
        if node in y:
            trace[node] = ("yes" if node in zset else "no",
                           frozenset([node]))
            continue
        cs = hull.succ(node)
        yes_count = sum(1 for c in cs if trace[c][0] == "yes")
        side = "yes" if 2 * yes_count >= len(cs) else "no"
        members = frozenset().union(
            *[trace[c][1] for c in cs if trace[c][0] == side])
        trace[node] = (side, members)
    side, kept_front = trace[hull.root]
    comb = [n for n in t.nodes
            if any(is_prefix(n, m) or is_prefix(m, n) for m in kept_front)]
    return DecisionResult(side, WfTree(comb), dict(trace))


# ---------------------------------------------------------------------------
# canonization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Sol:
    """One admissible thinning of a cone: its propagated label (0 means
    undecided), kept node set, the constants claimed by decided subcones,
    and the topmost decided nodes inside."""
    label: int
    nodes: frozenset
    constants: frozenset
    tops: frozenset


class _Stream:
    """Lazily materialized solution list for one node."""

    def __init__(self, gen):
        self._gen = gen
        self._items = []

    def get(self, idx):
        while len(self._items) <= idx:
            try:
                self._items.append(next(self._gen))
            except StopIteration:
                return None
        return self._items[idx]


class _Canonizer:
    def __init__(self, t, colors, p, cap):
        self.t = t
        self.colors = colors
        self.s = max(2, math.isqrt(p.width))
        self.cap = cap
        self.work = 0
        self.streams = {}

    def _tick(self):
        self.work += 1
        if self.work > self.cap:
            raise SizeLimitExceeded("canonization search exceeded the cap",
                                    cap=self.cap)

    def stream(self, node):
        got = self.streams.get(node)
        if got is None:
            got = _Stream(self.solutions(node))
            self.streams[node] = got
        return got

    def solutions(self, node):
        cs = self.t.succ(node)
        if not cs:
            val = self.colors[node]
            yield _Sol(val, frozenset([node]), frozenset([val]),
                       frozenset([node]))
            return
        for case, kept, want in self.options(node, cs):
            for combo in self.assign(kept, want, 0, ()):
                self._tick()
                nodes = frozenset([node]).union(*[s.nodes for s in combo])
                if case == "equal":
                    label = want[0]
                    yield _Sol(label, nodes, frozenset([label]),
                               frozenset([node]))
                else:
                    constants = frozenset().union(
                        *[s.constants for s in combo])
                    tops = frozenset().union(*[s.tops for s in combo])
                    yield _Sol(0, nodes, constants, tops)

    def options(self, node, cs):
        """Admissible thinning cases, in preference order.

        equal: keep children whose labels all equal one nonzero value;
        zeros: keep children with undecided labels; distinct: keep one
        child per label, labels nonzero and pairwise distinct.  Each case
        needs at least s surviving children.
        """
        first = {}
        values = set()
        zero_possible = 0
        for c in cs:
            head = self.stream(c).get(0)
            if head is None:
                continue
            values.update(s for s in self.head_labels(c))
        labels = sorted(v for v in values if v != 0)
        for lab in labels:
            if self.count_label(cs, lab) >= self.s:
                yield ("equal",
                       tuple(c for c in cs if lab in self.head_labels(c)),
                       (lab,))
        zeros = tuple(c for c in cs if 0 in self.head_labels(c))
        if len(zeros) >= self.s:
            for size in range(len(zeros), self.s - 1, -1):
                for kept in itertools.combinations(zeros, size):
                    yield ("zeros", kept, tuple(0 for _ in kept))
        carriers = []
        for lab in labels:
            for c in cs:
                if lab in self.head_labels(c):
                    carriers.append((lab, c))
                    break
        if len(carriers) >= self.s:
            for size in range(len(carriers), self.s - 1, -1):
                for picked in itertools.combinations(carriers, size):
                    kept = tuple(c for _, c in picked)
                    if len(set(kept)) != len(kept):
                        continue
                    yield ("distinct", kept, tuple(lab for lab, _ in picked))

    def head_labels(self, child):
        """All labels attainable by the child, in stream order."""
        seen = []
        idx = 0
        while True:
            sol = self.stream(child).get(idx)
            if sol is None:
                return seen
            if sol.label not in seen:
                seen.append(sol.label)
            idx += 1

    def count_label(self, cs, lab):
        return sum(1 for c in cs if lab in self.head_labels(c))

    def assign(self, kept, want, i, acc):
        """Backtracking product over child solution streams, keeping the
        claimed constant sets of undecided branches pairwise disjoint."""
        if i == len(kept):
            yield acc
            return
        idx = 0
        while True:
            sol = self.stream(kept[i]).get(idx)
            if sol is None:
                return
            idx += 1
            self._tick()
            if sol.label != want[i]:
                continue
            if want[i] == 0 or len(set(want)) == len(want):
                taken = frozenset().union(*[s.constants for s in acc],
                                          frozenset())
                if want[i] != 0 and want[i] in frozenset().union(
                        *[s.constants for s in acc], frozenset()):
                    continue
                if sol.constants & taken:
                    continue
            yield from self.assign(kept, want, i + 1, acc + (sol,))


def canonize(t, colors, p, cap=None):
    """Thin t so that color equality on the surviving leaves coincides
    with sharing an ancestor on a canonical front.

    Colors are shifted internally so 0 can serve as the undecided label.
    Every internal node keeps at least max(2, isqrt(width)) successors,
    chosen so per-cone labels are all equal, all undecided, or pairwise
    distinct, and so that the constants of distinct decided cones never
    collide anywhere in the tree.  The canonical biconditional is checked
    before returning.  Raises WidthTooSmall when isqrt(width) < 2, and
    PreconditionFailed when no thinning can separate the constants.
    """
    if math.isqrt(p.width) < 2:
        raise WidthTooSmall("canonization needs isqrt(width) >= 2",
                            width=p.width)
    leaves = t.max_nodes()
    missing = [n for n in leaves if n not in colors]
    if missing:
        raise PreconditionFailed("coloring must be total on the maximal "
                                 "nodes", missing=len(missing))
    if cap is None:
        cap = config.get("subtree_enum_cap")
    shifted = {n: colors[n] + 1 for n in leaves}
    engine = _Canonizer(t, shifted, p, cap)
    sol = engine.stream(t.root).get(0)
    if sol is None:
        raise PreconditionFailed(
            "no thinning achieves pairwise distinct cone constants")
    subtree = WfTree(sol.nodes)
    front = sol.tops if sol.label == 0 else frozenset([t.root])
    constants = {}
    for member in front:
        vals = {colors[n] for n in subtree.nodes
                if is_prefix(member, n) and n in leaves}
        assert len(vals) == 1, "front cone must be monochromatic"
        constants[member] = vals.pop()
    _assert_canonical(subtree, front, colors)
    return CanonicalForm(subtree, frozenset(front), constants)


def _assert_canonical(subtree, front, colors):
    assert is_front_exact(subtree, front), "canonical set must be a front"
    anchor = {}
    for leaf in subtree.max_nodes():
        owners = [m for m in front if is_prefix(m, leaf)]
        assert len(owners) == 1
        anchor[leaf] = owners[0]
    leaves = sorted(subtree.max_nodes(), key=node_key)
    for a, b in itertools.combinations(leaves, 2):
        same_color = colors[a] == colors[b]
        same_anchor = anchor[a] == anchor[b]
        assert same_color == same_anchor, (list(a), list(b))


def uniformize(t, front_set, h, p, cap=None):
    """Collapse a coloring of a front to an injective one lower down.

    Canonizes the hull below the front, extends the kept front members by
    their full cones in t, and reads the injective coloring off the cone
    constants.  Returns (subtree, lower front, injective coloring).
    """
    y = frozenset(tuple(n) for n in front_set)
    if not is_front_exact(t, y):
        raise NotFront("the node set is not a front of the tree")
    missing = [n for n in y if n not in h]
    if missing:
        raise PreconditionFailed("coloring must be total on the front",
                                 missing=len(missing))
    hull = below_front(t, y)
    form = canonize(hull, {n: h[n] for n in y}, p, cap=cap)
    kept_front = form.subtree.max_nodes()
    comb = set(form.subtree.nodes)
    for member in kept_front:
        comb.update(n for n in t.nodes if is_prefix(member, n))
    subtree = WfTree(sorted(comb, key=node_key))
    return subtree, form.front, dict(form.constants)


# ---------------------------------------------------------------------------
# family checks
# ---------------------------------------------------------------------------

def constant_cone_front(t, colors):
    """Topmost nodes whose leaf cone is monochromatic, with the constants."""
    const = {}
    for node in reversed(t.sorted_nodes()):
        cs = t.succ(node)
        if not cs:
            const[node] = colors[node]
        else:
            got = {const[c] for c in cs}
            const[node] = got.pop() if len(got) == 1 and None not in got \
                else None
    tops = []
    stack = [t.root]
    while stack:
        node = stack.pop()
        if const[node] is not None:
            tops.append(node)
        else:
            stack.extend(t.succ(node))
    return {n: const[n] for n in tops}


def has_canonical_front(t, colors):
    """True when some front of t realizes the canonical biconditional for
    the coloring: the topmost constant cones must carry pairwise distinct
    constants (no other front can work when branching exceeds one)."""
    tops = constant_cone_front(t, colors)
    vals = list(tops.values())
    return len(vals) == len(set(vals))


def check_family(tset, t, mode, trials, seed, p=None, exhaustive_cap=None):
    """Probe a family of positive subtrees for coloring witnesses.

    mode big: each two-valued coloring of max(t) should be constant on
    max(B') for some member B'.  mode large: each coloring should admit a
    member with a front realizing the canonical biconditional.  The
    coloring space is swept exhaustively when small enough, otherwise
    sampled `trials` times from the given seed.
    """
    if mode not in ("big", "large"):
        raise PreconditionFailed("mode must be big or large", mode=mode)
    if p is not None:
        for member in tset:
            if not check_psb(member, t, p):
                raise PreconditionFailed(
                    "family member is not a positive subtree")
    if exhaustive_cap is None:
        exhaustive_cap = config.get("family_exhaustive_cap")
    leaves = sorted(t.max_nodes(), key=node_key)
    member_leaves = [sorted(b.max_nodes(), key=node_key) for b in tset]
    rng = seeded_rng(seed)

    if mode == "big":
        space = 2 ** len(leaves)
        value_pool = 2
    else:
        space = len(leaves) ** len(leaves)
        value_pool = max(2, len(leaves))

    exhaustive = space <= exhaustive_cap
    if exhaustive:
        pools = itertools.product(range(value_pool), repeat=len(leaves))
        samples = (dict(zip(leaves, vec)) for vec in pools)
        checked = space
    else:
        samples = ({leaf: rng.randrange(value_pool) for leaf in leaves}
                   for _ in range(trials))
        checked = trials

    failures = []
    total_failures = 0
    for coloring in samples:
        if mode == "big":
            ok = any(len({coloring[leaf] for leaf in ml}) <= 1
                     for ml in member_leaves)
        else:
            ok = any(has_canonical_front(b, coloring) for b in tset)
        if not ok:
            total_failures += 1
            if len(failures) < 16:
                failures.append(
                    [{"node": list(n), "v": coloring[n]} for n in leaves])
    return {
        "mode": mode,
        "checked": checked,
        "exhaustive": exhaustive,
        "failures": total_failures,
        "examples": failures,
    }
