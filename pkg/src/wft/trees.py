"""Finite well-founded trees over the prefix order on sequences of naturals.

Nodes are tuples of non-negative ints; the empty tuple is the ground root.
A tree is a finite node set with a unique minimal member; successor sets,
restrictions, depth and downward hulls are derived structurally.  Width and
branching requirements live in SurrogateParams and are enforced by
validate_cwt, not by construction.
"""

import enum
from dataclasses import dataclass

from .errors import MalformedInput, NodeNotInTree


class Ordering(enum.Enum):
    LT = "lt"
    GT = "gt"
    EQ = "eq"
    INCOMPARABLE = "incomparable"


def is_prefix(a, b):
    """True when a is a (not necessarily proper) prefix of b."""
    return len(a) <= len(b) and b[:len(a)] == a


def compare(a, b):
    """Prefix-order comparison of two nodes."""
    if a == b:
        return Ordering.EQ
    if is_prefix(a, b):
        return Ordering.LT
    if is_prefix(b, a):
        return Ordering.GT
    return Ordering.INCOMPARABLE


def comparable(a, b):
    return is_prefix(a, b) or is_prefix(b, a)


def direction(parent, child):
    """Immediate child direction of child as seen from a strict ancestor."""
    if len(child) <= len(parent):
        raise ValueError("child does not extend parent")
    return child[len(parent)]


def node_key(node):
    """Canonical sort key: by length first, then lexicographic."""
    return (len(node), node)


@dataclass(frozen=True)
class SurrogateParams:
    """Finite stand-ins for the infinitary branching requirements.

    width: minimum successor count at internal nodes.
    budget: how many successors a pruning step may drop per node.
    keep_min: how many successors a positive thinning must keep per node.
    direction_threshold: a successor set is small when it covers fewer
    than this many immediate child directions.
    """

    width: int = 4
    budget: int = 1
    keep_min: int = 2
    direction_threshold: int = 2

    def __post_init__(self):
        if self.width < 2:
            raise MalformedInput("width must be at least 2", width=self.width)
        if self.keep_min < 1:
            raise MalformedInput("keep_min must be at least 1",
                                 keep_min=self.keep_min)
        if self.keep_min > self.width:
            raise MalformedInput("keep_min must not exceed width",
                                 keep_min=self.keep_min, width=self.width)
        if not 0 <= self.budget < self.width:
            raise MalformedInput("budget must satisfy 0 <= budget < width",
                                 budget=self.budget, width=self.width)
        if not 0 <= self.direction_threshold <= self.width:
            raise MalformedInput(
                "direction_threshold must satisfy 0 <= t <= width",
                direction_threshold=self.direction_threshold, width=self.width)


def _check_node(path):
    if not isinstance(path, tuple):
        raise MalformedInput("node path must be a tuple", path=repr(path))
    for x in path:
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise MalformedInput("node entries must be non-negative ints",
                                 path=repr(path))
    return path


class WfTree:
    """Immutable finite tree of prefix-order nodes.

    nodes is a frozenset of tuples, internal the frozenset of nodes declared
    internal.  Successor sets (minimal tree nodes strictly above a node) are
    derived once at construction and kept in canonical sorted order.  A node
    with derived successors must be declared internal; a declared-internal
    node with no successors is representable (its successors are elided) and
    is reported by validate_cwt, not rejected here.
    """

    __slots__ = ("nodes", "internal", "root", "_succ", "_parent", "_sorted",
                 "_hash", "_depth", "_max", "_flat")

    def __init__(self, nodes, internal=None):
        node_set = frozenset(_check_node(tuple(n)) for n in nodes)
        if not node_set:
            raise MalformedInput("tree must be nonempty")
        ordered = sorted(node_set, key=node_key)
        root = ordered[0]
        succ = {n: [] for n in node_set}
        parent = {}
        for node in ordered:
            if node == root:
                continue
            for cut in range(len(node) - 1, len(root) - 1, -1):
                anc = node[:cut]
                if anc in node_set:
                    parent[node] = anc
                    succ[anc].append(node)
                    break
            else:
                raise MalformedInput("multiple minimal nodes",
                                     a=list(root), b=list(node))
        self.nodes = node_set
        self.root = root
        self._succ = {n: tuple(sorted(cs, key=node_key))
                      for n, cs in succ.items()}
        self._parent = parent
        self._sorted = ordered
        derived_internal = frozenset(n for n in node_set if self._succ[n])
        if internal is None:
            declared = derived_internal
        else:
            declared = frozenset(_check_node(tuple(n)) for n in internal)
            if not declared <= node_set:
                raise MalformedInput("declared-internal node not in tree",
                                     nodes=[list(n) for n in
                                            sorted(declared - node_set,
                                                   key=node_key)])
            if not derived_internal <= declared:
                bad = sorted(derived_internal - declared, key=node_key)
                raise MalformedInput("node with successors declared leaf",
                                     nodes=[list(n) for n in bad])
        self.internal = declared
        self._hash = hash((self.nodes, self.internal))
        self._depth = None
        self._max = None
        self._flat = None

    # -- basic queries ----------------------------------------------------

    def __contains__(self, node):
        return node in self.nodes

    def __iter__(self):
        return iter(self._sorted)

    def __len__(self):
        return len(self.nodes)

    def __eq__(self, other):
        if not isinstance(other, WfTree):
            return NotImplemented
        return self.nodes == other.nodes and self.internal == other.internal

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "WfTree(root=%r, n=%d)" % (list(self.root), len(self.nodes))

    def succ(self, node):
        """Successors of node: minimal tree nodes strictly above it."""
        got = self._succ.get(node)
        if got is None:
            raise NodeNotInTree("node not in tree", node=list(node))
        return got

    def parent(self, node):
        """Tree predecessor of a non-root node."""
        if node not in self.nodes:
            raise NodeNotInTree("node not in tree", node=list(node))
        return self._parent.get(node)

    def is_internal(self, node):
        if node not in self.nodes:
            raise NodeNotInTree("node not in tree", node=list(node))
        return node in self.internal

    def max_nodes(self):
        """Maximal members: nodes with no successor in the tree."""
        if self._max is None:
            self._max = frozenset(n for n in self.nodes if not self._succ[n])
        return self._max

    def sorted_nodes(self):
        return self._sorted

    def chain_to(self, node):
        """Tree nodes below or equal to node, sorted upward."""
        if node not in self.nodes:
            raise NodeNotInTree("node not in tree", node=list(node))
        chain = [node]
        cur = node
        while cur in self._parent:
            cur = self._parent[cur]
            chain.append(cur)
        chain.reverse()
        return chain

    def branches(self):
        """All root-to-maximal chains."""
        return [self.chain_to(leaf)
                for leaf in sorted(self.max_nodes(), key=node_key)]


# -- structural operations ------------------------------------------------

def depth(t):
    """Rank of the tree: 0 on singletons, else 1 + max successor rank."""
    if t._depth is not None:
        return t._depth
    rank = {}
    for node in reversed(t.sorted_nodes()):
        cs = t._succ[node]
        rank[node] = 1 + max(rank[c] for c in cs) if cs else 0
    t._depth = rank[t.root]
    return t._depth


def restrict(t, node):
    """The subtree of members extending node, rooted at node."""
    if node not in t:
        raise NodeNotInTree("node not in tree", node=list(node))
    kept = [n for n in t.nodes if is_prefix(node, n)]
    return WfTree(kept, internal=[n for n in kept if n in t.internal])


def below_front(t, front_nodes):
    """Downward hull of a node set inside t.

    Hull members that lose every successor become leaves; when the node set
    is a front of t, the hull's maximal nodes are exactly that front.
    """
    wanted = frozenset(tuple(n) for n in front_nodes)
    missing = wanted - t.nodes
    if missing:
        raise NodeNotInTree("node not in tree",
                            node=list(sorted(missing, key=node_key)[0]))
    kept = [n for n in t.nodes if any(is_prefix(n, y) for y in wanted)]
    return WfTree(kept)


def clears_obstructions(t, obstacles, p):
    """Exact branching check against a finite obstruction set.

    At each declared-internal node, members of the obstruction set lying at
    or below the node are discounted; at least keep_min successors must be
    incomparable with every remaining member.
    """
    obs = [tuple(o) for o in obstacles]
    for node in t.internal:
        live = [o for o in obs if not is_prefix(o, node)]
        count = 0
        for s in t.succ(node):
            if all(not comparable(s, o) for o in live):
                count += 1
                if count >= p.keep_min:
                    break
        if count < p.keep_min:
            return False
    return True


def validate_cwt(t, p):
    """Structural and width validation report.

    Clauses: (a) finiteness, (b) unique minimal root, (c) tree shape,
    (d) declared-internal nodes have at least width successors,
    (e) incomparable members are incompatible, (f) successors of an
    internal node sit in pairwise distinct immediate child directions.
    (a), (b), (c) and (e) hold by construction and are re-asserted.
    """
    violations = []
    minimal = {n for n in t.nodes
               if not any(m != n and is_prefix(m, n) for m in t.chain_to(n))}
    assert minimal == {t.root}, "construction must force a unique root"
    for node in sorted(t.internal, key=node_key):
        cs = t.succ(node)
        for c in cs:
            assert is_prefix(node, c) and c != node
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                assert not comparable(cs[i], cs[j])
        if len(cs) < p.width:
            violations.append(("d", [node]))
        dirs = [direction(node, c) for c in cs]
        if len(set(dirs)) != len(dirs):
            violations.append(("f", [node]))
    verdict = "valid" if not violations else "invalid"
    return {"verdict": verdict,
            "violations": [[clause, [list(n) for n in nodes]]
                           for clause, nodes in violations]}


# -- serialization --------------------------------------------------------

def tree_to_json(t):
    """Canonical JSON object for a tree."""
    return {
        "root": list(t.root),
        "nodes": [{"path": list(n),
                   "internal": n in t.internal,
                   "succ": [list(c) for c in t.succ(n)]}
                  for n in t.sorted_nodes()],
    }


def tree_from_json(obj):
    """Parse the canonical tree format, rejecting structural violations."""
    if not isinstance(obj, dict) or "nodes" not in obj:
        raise MalformedInput("tree object must have a nodes list")
    rows = obj["nodes"]
    if not isinstance(rows, list) or not rows:
        raise MalformedInput("tree object must have a nonempty nodes list")
    paths = []
    internal = []
    declared_succ = {}
    for row in rows:
        if not isinstance(row, dict) or "path" not in row:
            raise MalformedInput("node row must be an object with a path")
        path = _parse_path(row["path"])
        paths.append(path)
        if row.get("internal", False):
            internal.append(path)
        declared_succ[path] = [_parse_path(s) for s in row.get("succ", [])]
    if len(set(paths)) != len(paths):
        raise MalformedInput("duplicate node paths")
    t = WfTree(paths, internal=internal)
    if "root" in obj:
        declared_root = _parse_path(obj["root"])
        if declared_root != t.root:
            raise MalformedInput("declared root is not the minimal node",
                                 declared=list(declared_root),
                                 actual=list(t.root))
    for path, declared in declared_succ.items():
        derived = [list(c) for c in t.succ(path)]
        got = sorted(declared, key=node_key)
        if [tuple(x) for x in derived] != got:
            raise MalformedInput("declared successor list does not match "
                                 "derived successors", node=list(path))
    return t


def _parse_path(raw):
    if not isinstance(raw, list):
        raise MalformedInput("path must be an array of ints", path=repr(raw))
    for x in raw:
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise MalformedInput("path entries must be non-negative ints",
                                 path=repr(raw))
    return tuple(raw)
