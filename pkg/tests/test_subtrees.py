"""Tests for fronts, almost fronts, subtree checks, the pruning order,
and the derived filter and ideal membership."""

import itertools

import pytest

from wft.errors import (BudgetExceeded, CoherenceViolation, NodeNotInTree,
                        NotAlmostFront, NotAntichain, NotSubtree,
                        PreconditionFailed, RootMismatch, SizeLimitExceeded)
from wft.exhaust import (all_shapes, almost_fronts, antichains,
                         balanced_tree, coherent_subtrees, fronts,
                         psb_thinnings, random_front, random_tree,
                         sb_prunings, seeded_rng)
from wft.subtrees import (LeqStarVerdict, SbWitness, af_decide, check_psb,
                          check_sb, check_sb_bool, filter_member, ideal_member,
                          is_front, is_front_exact, leq_star,
                          leq_star_by_fronts, projection)
from wft.trees import SurrogateParams, WfTree, node_key

P = SurrogateParams()
P3 = SurrogateParams(width=3, budget=1, keep_min=2, direction_threshold=2)
T44 = balanced_tree(4, 2)


def brute_almost_front(t, members, p):
    """Reference semantics: some exhaustive subtree meets members in a front."""
    members = frozenset(members)
    for b in sb_prunings(t, p):
        if is_front_exact(b, members & b.nodes):
            return True
    return False


# ---------------------------------------------------------------------------
# front classification
# ---------------------------------------------------------------------------

def test_max_and_root_are_fronts():
    for t in [T44, balanced_tree(3, 2), WfTree([()])]:
        kind, wit = is_front(t, t.max_nodes(), P)
        assert kind == "front" and wit.pruned == ()
        kind, wit = is_front(t, [t.root], P)
        assert kind == "front" and wit.pruned == ()


def test_root_successors_are_a_front():
    kind, _ = is_front(T44, T44.succ(()), P)
    assert kind == "front"


def test_mixed_front():
    y = [(0, 0), (0, 1), (0, 2), (0, 3), (1,), (2,), (3,)]
    kind, _ = is_front(T44, y, P)
    assert kind == "front"
    for branch in T44.branches():
        assert sum(1 for n in branch if tuple(n) in set(y)) == 1


def test_not_antichain():
    kind, wit = is_front(T44, [(0,), (0, 1)], P)
    assert kind == "not_antichain" and wit is None


def test_single_leaf_is_antichain_only_at_budget_one():
    kind, wit = is_front(T44, [(0, 0)], P)
    assert kind == "antichain_only" and wit is None


def test_almost_front_with_witness():
    y = [(0, 0), (1,), (2,), (3,)]
    kind, wit = is_front(T44, y, P)
    assert kind == "almost_front"
    pruned = wit.apply(T44)
    assert is_front_exact(pruned, frozenset(y) & pruned.nodes)
    assert wit.max_drop() <= P.budget


def test_front_requires_membership_in_tree():
    with pytest.raises(NodeNotInTree):
        is_front(T44, [(9, 9)], P)


def test_classification_against_brute_force_small():
    # every antichain of every canonical width-3 shape, versus the
    # enumerate-all-prunings reference
    for t in all_shapes(3, 2):
        for z in antichains(t):
            if not z:
                continue
            kind, wit = is_front(t, z, P3)
            expected_front = is_front_exact(t, z)
            expected_af = brute_almost_front(t, z, P3)
            if expected_front:
                assert kind == "front"
            elif expected_af:
                assert kind == "almost_front"
                pruned = wit.apply(t)
                assert is_front_exact(pruned, z & pruned.nodes)
            else:
                assert kind == "antichain_only"


def test_almost_front_monotone_upward():
    t = balanced_tree(3, 2)
    achains = [z for z in antichains(t) if z]
    afs = {z: af_decide(t, z, 1)[0] for z in achains}
    for z1 in achains:
        if not afs[z1]:
            continue
        for z2 in achains:
            if z1 <= z2:
                assert afs[z2]


def test_generated_almost_fronts_match_prunings():
    got = set(almost_fronts(T44, 1))
    expected = set()
    for b in sb_prunings(T44, P):
        expected.update(fronts(b))
    assert got == expected
    assert len(got) == 2161


def test_front_counts_forced_by_shape():
    # per cone: the node itself or its leaf set; sizes multiply
    assert sum(1 for _ in fronts(T44)) == 1 + 2 ** 4
    assert sum(1 for _ in antichains(T44)) == 1 + (1 + 2 ** 4) ** 4


# ---------------------------------------------------------------------------
# projections
# ---------------------------------------------------------------------------

def test_projection_to_root_front():
    h = projection(T44, [()], T44.max_nodes())
    assert set(h.values()) == {()}
    assert set(h) == set(T44.max_nodes())


def test_projection_leaves_to_level_one():
    h = projection(T44, T44.succ(()), T44.max_nodes())
    for i in range(4):
        for j in range(4):
            assert h[(i, j)] == (i,)


def test_projection_partial_domain():
    h = projection(T44, [(0,)], T44.max_nodes())
    assert set(h) == {(0, j) for j in range(4)}
    assert set(h.values()) == {(0,)}


def test_projection_rejects_non_antichain():
    with pytest.raises(NotAntichain):
        projection(T44, [(), (0,)], T44.max_nodes())


def test_projection_total_when_above():
    rng = seeded_rng(3)
    for _ in range(25):
        t = random_tree(P, 2, rng)
        y2 = frozenset(t.max_nodes())
        y1 = random_front(t, rng)
        h = projection(t, y1, y2)
        # max(t) is above any front, so h must be total
        assert set(h) == set(y2)


# ---------------------------------------------------------------------------
# exhaustive subtree check
# ---------------------------------------------------------------------------

def test_check_sb_identity():
    wit = check_sb(T44, T44, P)
    assert wit.pruned == ()


def test_check_sb_drop_one_leaf_per_cone():
    nodes = [n for n in T44.nodes if n not in {(i, 3) for i in range(4)}]
    t2 = WfTree(nodes)
    wit = check_sb(t2, T44, SurrogateParams(budget=2))
    assert wit.max_drop() == 1
    assert wit.apply(T44) == t2
    # also fine at budget 1
    check_sb(t2, T44, P)


def test_check_sb_errors():
    with pytest.raises(RootMismatch):
        check_sb(WfTree([(0,), (0, 0), (0, 1)]), T44, P)
    with pytest.raises(NotSubtree):
        check_sb(WfTree([(), (7,)]), T44, P)
    # level skipping inside the host breaks successor coherence
    skip = WfTree([(), (0, 0), (0, 1)])
    with pytest.raises(CoherenceViolation) as info:
        check_sb(skip, T44, P)
    assert info.value.data["at"] == []
    # dropping two successors of one node exceeds budget 1
    nodes = [n for n in T44.nodes if n not in {(0, 2), (0, 3)}]
    with pytest.raises(BudgetExceeded):
        check_sb(WfTree(nodes), T44, P)


def test_check_sb_matches_enumerator():
    t = balanced_tree(3, 2)
    listed = set(sb_prunings(t, P3))
    # direct per-node count: root keeps 2 or 3 cones, each kept child
    # keeps 2 or 3 leaves; drop at most one per node
    per_child = 1 + 3
    expected = per_child ** 3 + 3 * per_child ** 2
    assert len(listed) == expected
    for b in listed:
        assert check_sb_bool(b, t, P3)
    # a coherent subtree that drops two successors at a node is not in sb
    nodes = [n for n in t.nodes if n not in {(0, 1), (0, 2)}]
    assert not check_sb_bool(WfTree(nodes), t, P3)
    assert WfTree(nodes) not in listed


def test_sb_witness_round_trip():
    wit = SbWitness.from_dict({(): ((3,),), (0,): ((0, 1),)})
    doc = wit.to_json()
    assert SbWitness.from_json(doc) == wit
    assert doc["pruned"][0] == {"at": [], "drop": [[3]]}


# ---------------------------------------------------------------------------
# positive subtree check
# ---------------------------------------------------------------------------

def test_check_psb_examples():
    assert check_psb(T44, T44, P)
    # an sb success with width - budget >= keep_min is a psb
    nodes = [n for n in T44.nodes if n not in {(i, 3) for i in range(4)}]
    assert check_psb(WfTree(nodes), T44, P)
    # keeping keep_min - 1 successors at a node fails
    nodes = [n for n in T44.nodes if n not in {(0, 1), (0, 2), (0, 3)}]
    assert not check_psb(WfTree(nodes), T44, P)


def test_check_psb_rejects_leafing_internal_nodes():
    nodes = [(), (0,), (1,)] + [(0, j) for j in range(4)]
    assert not check_psb(WfTree(nodes), T44, P)


def test_psb_enumerator_count_and_validity():
    per_cone = sum(1 for s in range(2, 5)
                   for _ in itertools.combinations(range(4), s))
    assert per_cone == 11
    total = sum(len(list(itertools.combinations(range(4), s)))
                * per_cone ** s for s in range(2, 5))
    listed = list(psb_thinnings(T44, P))
    assert len(listed) == total == 20691
    for b in listed[::997] + listed[:3]:
        assert check_psb(b, T44, P)


def test_every_sb_is_a_psb_at_default_params():
    # width 4, budget 1, keep_min 2: drop one of four keeps three
    t = balanced_tree(4, 1)
    sbs = set(sb_prunings(t, P))
    psbs = set(psb_thinnings(t, P))
    assert sbs <= psbs


def test_psb_unsustainable_cone_is_skipped():
    # the narrow child cannot keep two successors, so no thinning keeps it
    t = WfTree([(), (0,), (1,), (2,), (0, 0), (0, 1), (1, 0),
                (2, 0), (2, 1)])
    got = list(psb_thinnings(t, SurrogateParams(width=3, keep_min=2)))
    for b in got:
        assert (1,) not in b.nodes
    assert got  # the other two cones can carry it


# ---------------------------------------------------------------------------
# the pruning order
# ---------------------------------------------------------------------------

def test_leq_star_reflexive():
    for t in [WfTree([()]), balanced_tree(4, 1), T44]:
        v = leq_star(t, t, P)
        assert v.verdict and v.witness == t


def test_leq_star_roots_differ():
    v = leq_star(WfTree([(0,)]), WfTree([(1,)]), P)
    assert not v.verdict and v.witness is None


def test_leq_star_psb_implies_true():
    rng = seeded_rng(5)
    thinnings = list(psb_thinnings(T44, P))
    for _ in range(12):
        t2 = thinnings[rng.randrange(len(thinnings))]
        v = leq_star(T44, t2, P)
        assert v.verdict


def test_leq_star_witness_contract():
    # witness must be an exhaustive subtree of t2 whose intersection with
    # t1 is a positive subtree of t1 with transferring almost fronts
    t1 = T44
    t2 = WfTree([n for n in T44.nodes if n[:1] != (3,)] + [(3,)])
    v = leq_star(t1, t2, P)
    if v.verdict:
        wit = v.witness
        assert check_sb_bool(wit, t2, P)
        inter = WfTree(wit.nodes & t1.nodes)
        assert check_psb(inter, t1, P)
        for z in almost_fronts(inter, P.budget):
            assert af_decide(t2, z, P.budget)[0]


def test_leq_star_agrees_with_front_characterization():
    # pairs of canonical width-3 shapes with a shared root
    shapes = list(all_shapes(3, 2))
    for t1, t2 in itertools.product(shapes[:6], repeat=2):
        got = leq_star(t1, t2, P3).verdict
        expected = leq_star_by_fronts(t1, t2, P3)
        assert got == expected, (sorted(t1.nodes), sorted(t2.nodes))


def test_leq_star_strict_example():
    sub = WfTree([(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)])
    assert leq_star(T44, sub, P).verdict
    assert not leq_star(sub, T44, P).verdict


def test_leq_star_cap():
    with pytest.raises(SizeLimitExceeded):
        leq_star(WfTree([n for n in T44.nodes if n != (0, 0)]), T44, P, cap=3)


# ---------------------------------------------------------------------------
# filter membership
# ---------------------------------------------------------------------------

def test_filter_full_front_always_member():
    y = T44.max_nodes()
    ok, wit = filter_member(T44, y, y, P)
    assert ok and wit.pruned == ()


def test_filter_on_root_front_is_trivial():
    ok, _ = filter_member(T44, [()], [()], P)
    assert ok
    ok, wit = filter_member(T44, [()], [], P)
    assert not ok and wit is None


def test_filter_missing_leaves():
    y = T44.max_nodes()
    # two missing leaves under two different cones cannot be pruned at
    # budget one
    x = y - {(0, 0), (0, 1), (1, 0), (1, 1)}
    ok, _ = filter_member(T44, y, x, P)
    assert not ok
    # two missing leaves under one cone: drop that cone at the root
    x = y - {(0, 0), (0, 1)}
    ok, wit = filter_member(T44, y, x, P)
    assert ok
    pruned = wit.apply(T44)
    assert pruned.nodes & y <= x


def test_filter_requires_almost_front():
    with pytest.raises(NotAlmostFront):
        filter_member(T44, [(0, 0)], [], P)
    with pytest.raises(PreconditionFailed):
        filter_member(T44, [()], [(0,)], P)


def test_filter_against_brute_force():
    rng = seeded_rng(13)
    y = frozenset(T44.max_nodes())
    sbs = list(sb_prunings(T44, P))
    for _ in range(10):
        x = frozenset(n for n in y if rng.random() < 0.8)
        got, wit = filter_member(T44, y, x, P)
        expected = any(b.nodes & y <= x for b in sbs)
        assert got == expected
        if got:
            assert wit.apply(T44).nodes & y <= x


def test_filter_monotone_in_accepted_set():
    rng = seeded_rng(17)
    y = frozenset(T44.max_nodes())
    for _ in range(20):
        x1 = frozenset(n for n in y if rng.random() < 0.7)
        ok1, _ = filter_member(T44, y, x1, P)
        if not ok1:
            continue
        extra = [n for n in y - x1 if rng.random() < 0.5]
        ok2, _ = filter_member(T44, y, x1 | frozenset(extra), P)
        assert ok2


def test_filter_budgets_add_under_intersection():
    y = frozenset(T44.max_nodes())
    x1 = y - {(0, 0), (0, 1)}
    x2 = y - {(1, 0), (1, 1)}
    k1 = SurrogateParams(budget=1)
    ok1, _ = filter_member(T44, y, x1, k1)
    ok2, _ = filter_member(T44, y, x2, k1)
    assert ok1 and ok2
    both = x1 & x2
    ok_narrow, _ = filter_member(T44, y, both, k1)
    assert not ok_narrow
    ok_wide, _ = filter_member(T44, y, both, SurrogateParams(budget=2))
    assert ok_wide


# ---------------------------------------------------------------------------
# ideal membership
# ---------------------------------------------------------------------------

def test_ideal_examples():
    assert ideal_member(T44, (), [], P)
    full = T44.succ(())
    assert not ideal_member(T44, (), full, P)
    assert ideal_member(T44, (), [(0,)], P)  # one direction < threshold 2
    assert not ideal_member(T44, (), [(0,), (1,)], P)


def test_ideal_direction_counting_on_skip_level_tree():
    t = WfTree([()] + [(i, j) for i in range(4) for j in range(4)])
    csub = [(0, 0), (0, 1), (0, 3)]
    assert ideal_member(t, (), csub, P)  # all in direction 0
    assert not ideal_member(t, (), [(0, 0), (1, 1)], P)


def test_ideal_errors():
    with pytest.raises(NodeNotInTree):
        ideal_member(T44, (9,), [], P)
    with pytest.raises(PreconditionFailed):
        ideal_member(T44, (0, 0), [], P)
    with pytest.raises(PreconditionFailed):
        ideal_member(T44, (), [(0, 0)], P)


# ---------------------------------------------------------------------------
# coherence remark
# ---------------------------------------------------------------------------

def test_front_survives_coherent_thinning():
    # for every coherent subtree keeping at least one successor per node,
    # each front of the host traces to a front of the subtree
    t = balanced_tree(3, 2)
    front_list = list(fronts(t))
    for sub in coherent_subtrees(t, nonempty_keep=True):
        for y in front_list:
            assert is_front_exact(sub, y & sub.nodes)


def test_leafing_coherent_subtree_can_break_fronts():
    sub = WfTree([(), (0,), (1,), (2,), (3,)])  # leafs every level-1 node
    y = frozenset(T44.max_nodes())
    assert not is_front_exact(sub, y & sub.nodes)
