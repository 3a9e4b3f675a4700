
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from typetree.trie import SolutionTrie
from typetree.typevec import dominates

FIGURE_V = [(0, 0, 1), (0, 2, 3), (1, 1, 0), (1, 1, 3), (3, 0, 2)]


@pytest.fixture
def figure_trie():
    t = SolutionTrie(3)
    for v in FIGURE_V:
        t.insert(v)
    return t


def test_figure_trie_structure(figure_trie):
    assert len(figure_trie) == 5
    assert sorted(figure_trie) == FIGURE_V
    # Shared prefixes (0,.) and (1,1,.): root + 3 first-level + 4 second-level + 5 leaves.
    assert figure_trie.node_count == 13
    root = figure_trie.root.children
    assert root[0] is not None and root[1] is not None and root[3] is not None and root[2] is None
    assert root[1].children[1] is not None


def test_insert_idempotent_and_single(figure_trie):
    assert not figure_trie.insert((1, 1, 3))
    assert len(figure_trie) == 5
    t = SolutionTrie(4)
    t.insert((2, 0, 1, 3))
    assert len(t) == 1 and t.node_count == 5


def test_dominates_any_examples(figure_trie):
    assert figure_trie.dominates_any((1, 1, 3))
    # Linear scan: nothing in V has entries drawn from {0, 2} only.
    assert not any(dominates((2, 2, 2), s) for s in FIGURE_V)
    assert not figure_trie.dominates_any((2, 2, 2))
    small = SolutionTrie(3)
    small.insert((1, 1, 0))
    assert small.dominates_any((1, 1, 3))
    assert not small.dominates_any((1, 2, 3))


def test_empty_trie():
    t = SolutionTrie(3)
    assert t.walk((1, 2, 3)) == (False, 1)


@settings(max_examples=300)
@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(0, 3), min_size=n, max_size=n).map(tuple), max_size=60),
    st.lists(st.integers(0, 3), min_size=n, max_size=n).map(tuple))))
def test_trie_matches_naive_scan(data):
    vs, tau = data
    n = len(tau)
    t = SolutionTrie(n)
    for v in vs:
        t.insert(v)
    found, walked = t.walk(tau)
    assert found == any(dominates(tau, s) for s in vs)
    k = sum(1 for x in tau if x)
    assert walked <= min(n * len(set(vs)) + 1, (n + 1) * 2**k)
    assert t.node_count <= n * len(t) + 1
    for v in vs:
        assert t.dominates_any(v)
