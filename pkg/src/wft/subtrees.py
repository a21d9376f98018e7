"""Fronts, almost fronts, subtree witnesses, the pruning order, and the
derived filter and ideal membership tests.

An exhaustive subtree keeps all but at most `budget` successors per node;
a positive subtree keeps at least `keep_min` per node and never turns an
internal node into a leaf.  An antichain is an almost front of t when some
exhaustive subtree B' has antichain.intersection(B') as a front of B'; that
holds iff the downward coverable-induction in af_decide succeeds, and the
property is monotone upward in the antichain.
"""

from dataclasses import dataclass

from . import config
from .errors import (BudgetExceeded, CoherenceViolation, NodeNotInTree,
                     NotAlmostFront, NotAntichain, NotSubtree,
                     PreconditionFailed, RootMismatch, SizeLimitExceeded)
from .exhaust import almost_fronts, sb_prunings
from .trees import (SurrogateParams, WfTree, comparable, is_prefix,
                    node_key)


@dataclass(frozen=True)
class SbWitness:
    """Per-node dropped-successor map for an exhaustive subtree.

    Stored as a sorted tuple of (node, dropped-successors) pairs with
    nonempty drops only.
    """

    pruned: tuple = ()

    @staticmethod
    def from_dict(drops):
        rows = [(node, tuple(sorted(dropped, key=node_key)))
                for node, dropped in drops.items() if dropped]
        return SbWitness(tuple(sorted(rows, key=lambda r: node_key(r[0]))))

    def as_dict(self):
        return {node: dropped for node, dropped in self.pruned}

    def max_drop(self):
        return max((len(d) for _, d in self.pruned), default=0)

    def apply(self, t):
        """Remove the dropped cones from t."""
        drops = self.as_dict()
        kept = []
        stack = [t.root]
        while stack:
            node = stack.pop()
            kept.append(node)
            gone = set(drops.get(node, ()))
            stack.extend(c for c in t.succ(node) if c not in gone)
        return WfTree(kept)

    def to_json(self):
        return {"pruned": [{"at": list(node),
                            "drop": [list(c) for c in dropped]}
                           for node, dropped in self.pruned]}

    @staticmethod
    def from_json(obj):
        drops = {}
        for row in obj.get("pruned", []):
            drops[tuple(row["at"])] = [tuple(c) for c in row["drop"]]
        return SbWitness.from_dict(drops)


@dataclass(frozen=True)
class LeqStarVerdict:
    verdict: bool
    witness: object = None


def _is_antichain(nodes):
    members = sorted(nodes, key=node_key)
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if comparable(members[i], members[j]):
                return False
    return True


def _require_subset(t, nodes):
    for n in nodes:
        if n not in t:
            raise NodeNotInTree("node not in tree", node=list(n))


def af_decide(t, members, budget):
    """Search for an exhaustive subtree whose every branch meets members.

    Downward induction: a node is covered if it is a member, or if it has
    successors of which at most `budget` are uncovered and at least one is
    covered (the uncovered ones are dropped).  Returns (ok, SbWitness or
    None); the witness drops exactly the uncovered successors and keeps
    whole cones below members.
    """
    members = frozenset(members)
    ok = {}
    for node in reversed(t.sorted_nodes()):
        if node in members:
            ok[node] = True
            continue
        cs = t.succ(node)
        if not cs:
            ok[node] = False
            continue
        bad = sum(1 for c in cs if not ok[c])
        ok[node] = bad <= budget and bad < len(cs)
    if not ok[t.root]:
        return False, None
    drops = {}
    stack = [t.root]
    while stack:
        node = stack.pop()
        if node in members:
            continue
        cs = t.succ(node)
        bad = tuple(c for c in cs if not ok[c])
        if bad:
            drops[node] = bad
        stack.extend(c for c in cs if ok[c])
    return True, SbWitness.from_dict(drops)


def is_front_exact(t, members):
    """True when members is an antichain meeting every branch of t."""
    members = frozenset(members)
    if not _is_antichain(members):
        return False
    return all(any(n in members for n in branch) for branch in t.branches())


def is_front(t, members, p=None):
    """Classify a node set of t.

    Returns (kind, witness) with kind one of front, almost_front,
    antichain_only, not_antichain.  A front gets an empty witness; an
    almost front gets the pruning witness found by af_decide.
    """
    p = p or SurrogateParams()
    members = frozenset(tuple(n) for n in members)
    _require_subset(t, members)
    if not _is_antichain(members):
        return "not_antichain", None
    if is_front_exact(t, members):
        return "front", SbWitness()
    ok, wit = af_decide(t, members, p.budget)
    if ok:
        return "almost_front", wit
    return "antichain_only", None


def projection(t, y1, y2):
    """Partial map sending each member of y2 to the unique member of y1
    at or below it; pairs with no such member are omitted."""
    y1 = frozenset(tuple(n) for n in y1)
    y2 = frozenset(tuple(n) for n in y2)
    _require_subset(t, y1)
    _require_subset(t, y2)
    for name, y in (("y1", y1), ("y2", y2)):
        if not _is_antichain(y):
            raise NotAntichain("input %s is not an antichain" % name)
    h = {}
    for eta in sorted(y2, key=node_key):
        below = [nu for nu in y1 if is_prefix(nu, eta)]
        if below:
            assert len(below) == 1, "antichain cannot have two prefixes"
            h[eta] = below[0]
    return h


def check_sb(t2, t1, p):
    """Verify t2 as an exhaustive subtree of t1 and return the witness.

    Requires node subset, equal roots, successor coherence at every kept
    node, and at most `budget` dropped successors per kept node.
    """
    if not t2.nodes <= t1.nodes:
        raise NotSubtree("candidate has nodes outside the host",
                         nodes=[list(n) for n in
                                sorted(t2.nodes - t1.nodes, key=node_key)[:4]])
    if t2.root != t1.root:
        raise RootMismatch("roots differ", host=list(t1.root),
                           candidate=list(t2.root))
    drops = {}
    for node in t2.sorted_nodes():
        host_succ = set(t1.succ(node))
        kept = host_succ & t2.nodes
        if kept != set(t2.succ(node)):
            raise CoherenceViolation(
                "kept successors disagree with host successors", at=list(node))
        dropped = host_succ - t2.nodes
        if len(dropped) > p.budget:
            raise BudgetExceeded("node drops more successors than the budget",
                                 at=list(node), dropped=len(dropped),
                                 budget=p.budget)
        if dropped:
            drops[node] = dropped
    return SbWitness.from_dict(drops)


def check_psb(t2, t1, p):
    """True when t2 is a positive subtree of t1: subset, equal roots,
    successor coherence, and at least keep_min kept successors at every
    node that is internal in the host."""
    if not t2.nodes <= t1.nodes or t2.root != t1.root:
        return False
    for node in t2.sorted_nodes():
        host_succ = set(t1.succ(node))
        kept = host_succ & t2.nodes
        if kept != set(t2.succ(node)):
            return False
        if host_succ and len(kept) < p.keep_min:
            return False
    return True


def check_sb_bool(t2, t1, p):
    """Non-raising probe for exhaustive-subtree membership."""
    try:
        check_sb(t2, t1, p)
        return True
    except (NotSubtree, RootMismatch, CoherenceViolation, BudgetExceeded):
        return False


def leq_star(t1, t2, p, cap=None):
    """The pruning order between two same-root trees.

    Searches for a witness B2' among the exhaustive subtrees of t2 such
    that (a) B2' intersected with t1 is a positive subtree of t1, and
    (b) every almost front of that intersection is an almost front of t2.
    Clause (b) is decided by enumerating the generated almost fronts of
    the intersection, which suffices because almost-front membership is
    monotone upward in the antichain.
    """
    if cap is None:
        cap = config.get("leq_star_cap")
    if t1.root != t2.root:
        return LeqStarVerdict(False, None)
    if t1 == t2 or check_psb(t2, t1, p):
        return LeqStarVerdict(True, t2)
    af_cache = {}
    work = 0
    for cand in sb_prunings(t2, p):
        work += 1
        if work > cap:
            raise SizeLimitExceeded("witness search exceeded the cap",
                                    cap=cap)
        inter = cand.nodes & t1.nodes
        a_tree = WfTree(inter)
        if not check_psb(a_tree, t1, p):
            continue
        good = True
        for z in almost_fronts(a_tree, p.budget):
            work += 1
            if work > cap:
                raise SizeLimitExceeded("almost-front sweep exceeded the cap",
                                        cap=cap)
            hit = af_cache.get(z)
            if hit is None:
                hit = af_decide(t2, z, p.budget)[0]
                af_cache[z] = hit
            if not hit:
                good = False
                break
        if good:
            return LeqStarVerdict(True, cand)
    return LeqStarVerdict(False, None)


def leq_star_by_fronts(t1, t2, p, cap=None):
    """Equivalent characterization: every almost front of t1 is an almost
    front of t2.  Used as cross-validation for leq_star."""
    if cap is None:
        cap = config.get("leq_star_cap")
    if t1.root != t2.root:
        return False
    work = 0
    for z in almost_fronts(t1, p.budget):
        work += 1
        if work > cap:
            raise SizeLimitExceeded("almost-front sweep exceeded the cap",
                                    cap=cap)
        if not af_decide(t2, z, p.budget)[0]:
            return False
    return True


def filter_member(t, front_set, accepted, p):
    """Membership in the filter induced by pruning on an almost front.

    True iff some exhaustive subtree of t meets front_set only inside
    accepted; the witness prunes exactly the rejected cones.
    """
    y = frozenset(tuple(n) for n in front_set)
    x = frozenset(tuple(n) for n in accepted)
    _require_subset(t, y)
    kind, _ = is_front(t, y, p)
    if kind not in ("front", "almost_front"):
        raise NotAlmostFront("the given node set is not an almost front",
                             kind=kind)
    if not x <= y:
        raise PreconditionFailed("accepted set must sit inside the front")
    good = {}
    for node in reversed(t.sorted_nodes()):
        if node in y:
            good[node] = node in x
            continue
        cs = t.succ(node)
        if not cs:
            good[node] = True
            continue
        bad = sum(1 for c in cs if not good[c])
        good[node] = bad <= p.budget
    if not good[t.root]:
        return False, None
    drops = {}
    stack = [t.root]
    while stack:
        node = stack.pop()
        if node in y:
            continue
        cs = t.succ(node)
        bad = tuple(c for c in cs if not good[c])
        if bad:
            drops[node] = bad
        stack.extend(c for c in cs if good[c])
    return True, SbWitness.from_dict(drops)


def ideal_member(t, node, cset, p):
    """True when the successor subset is small: it covers fewer than
    direction_threshold distinct immediate child directions."""
    node = tuple(node)
    if node not in t:
        raise NodeNotInTree("node not in tree", node=list(node))
    cs = set(t.succ(node))
    if not cs:
        raise PreconditionFailed("node must be internal", node=list(node))
    cset = frozenset(tuple(c) for c in cset)
    if not cset <= cs:
        raise PreconditionFailed("set must consist of successors of the node")
    dirs = {c[len(node)] for c in cset}
    return len(dirs) < p.direction_threshold
