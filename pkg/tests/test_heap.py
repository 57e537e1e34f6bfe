import bisect
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwmatch.heap import PairingHeap


def test_insert_peek():
    h = PairingHeap()
    for i, p in enumerate([3, 1, 2]):
        h.insert(i, p)
    assert h.peek_min() == (1, 1)
    assert len(h) == 3


def test_insert_into_empty():
    h = PairingHeap()
    h.insert("a", 7)
    assert len(h) == 1 and h


def test_extract_order():
    h = PairingHeap()
    for i, p in enumerate([4, 2, 7]):
        h.insert(i, p)
    assert h.extract_min() == (1, 2)
    assert sorted(p for _, p in h) == [4, 7]


def test_extract_singleton():
    h = PairingHeap()
    h.insert(0, 9)
    assert h.extract_min() == (0, 9)
    assert not h and len(h) == 0


def test_extract_equal_keys():
    h = PairingHeap()
    h.insert(0, 3)
    h.insert(1, 3)
    item, p = h.extract_min()
    assert p == 3 and item in (0, 1)


def test_extract_empty_raises():
    with pytest.raises(IndexError):
        PairingHeap().extract_min()
    with pytest.raises(IndexError):
        PairingHeap().peek_min()


def test_decrease_key():
    h = PairingHeap()
    a = h.insert("a", 5)
    h.decrease_key(a, 0)
    assert h.peek_min() == ("a", 0)


def test_decrease_min_further():
    h = PairingHeap()
    a = h.insert("a", 1)
    h.insert("b", 2)
    h.decrease_key(a, -3)
    assert h.peek_min() == ("a", -3)


def test_decrease_non_min_below_min():
    h = PairingHeap()
    h.insert("a", 1)
    b = h.insert("b", 5)
    h.insert("c", 3)
    h.decrease_key(b, 0)
    assert h.peek_min() == ("b", 0)


def test_increase_rejected():
    h = PairingHeap()
    a = h.insert("a", 1)
    with pytest.raises(ValueError, match="increase"):
        h.decrease_key(a, 2)


def test_delete_sole():
    h = PairingHeap()
    a = h.insert("a", 1)
    h.delete(a)
    assert len(h) == 0


def test_delete_min():
    h = PairingHeap()
    a = h.insert("a", 1)
    h.insert("b", 2)
    h.delete(a)
    assert h.peek_min() == ("b", 2)


def test_delete_non_min():
    h = PairingHeap()
    h.insert("a", 1)
    b = h.insert("b", 2)
    h.delete(b)
    assert h.peek_min() == ("a", 1)
    assert len(h) == 1


def test_stale_handle_rejected():
    h = PairingHeap()
    a = h.insert("a", 1)
    h.extract_min()
    with pytest.raises(ValueError, match="stale"):
        h.delete(a)
    with pytest.raises(ValueError, match="stale"):
        h.decrease_key(a, 0)


def test_ties_broken_by_item():
    h = PairingHeap()
    for item in [5, 2, 9, 1]:
        h.insert(item, 0)
    assert [h.extract_min()[0] for _ in range(4)] == [1, 2, 5, 9]


def run_against_sorted_list(rng: random.Random, length: int) -> None:
    heap = PairingHeap()
    ref: list[tuple[int, int]] = []  # sorted (priority, item)
    handles = {}
    next_item = 0
    for _ in range(length):
        op = rng.random()
        if op < 0.4 or not ref:
            p = rng.randint(-50, 50)
            handles[next_item] = heap.insert(next_item, p)
            bisect.insort(ref, (p, next_item))
            next_item += 1
        elif op < 0.6:
            got = heap.extract_min()
            p, item = ref.pop(0)
            assert got == (item, p)
            del handles[item]
        elif op < 0.8:
            p, item = rng.choice(ref)
            newp = p - rng.randint(0, 20)
            heap.decrease_key(handles[item], newp)
            ref.remove((p, item))
            bisect.insort(ref, (newp, item))
        else:
            p, item = rng.choice(ref)
            heap.delete(handles.pop(item))
            ref.remove((p, item))
        assert len(heap) == len(ref)
        if ref:
            p, item = ref[0]
            assert heap.peek_min() == (item, p)
    while ref:
        p, item = ref.pop(0)
        assert heap.extract_min() == (item, p)


def test_sequence_equivalence_10k():
    rng = random.Random(2024)
    for _ in range(10_000):
        run_against_sorted_list(rng, rng.randint(1, 200))


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(-1000, 1000), max_size=60))
def test_heap_sort(values):
    h = PairingHeap()
    for i, v in enumerate(values):
        h.insert(i, v)
    out = [h.extract_min() for _ in values]
    assert out == sorted(((i, v) for i, v in enumerate(values)), key=lambda t: (t[1], t[0]))
