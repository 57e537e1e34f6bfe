"""Addressable min-priority queue (pairing heap).

Insert and decrease-key are O(1); extract-min and delete are O(log n)
amortized.  Ties on priority are broken by comparing items, so items must be
mutually orderable (the solvers use vertex indices).
"""

from __future__ import annotations

from typing import Any, Generic, Iterator, TypeVar

T = TypeVar("T")


class HeapHandle(Generic[T]):
    """Node of the heap; returned by :meth:`PairingHeap.insert`."""

    __slots__ = ("item", "priority", "child", "next", "prev", "alive")

    def __init__(self, item: T, priority: Any):
        self.item = item
        self.priority = priority
        self.child: HeapHandle[T] | None = None
        self.next: HeapHandle[T] | None = None
        # parent if this is the leftmost child, else the previous sibling
        self.prev: HeapHandle[T] | None = None
        self.alive = True

    def __repr__(self) -> str:
        state = "" if self.alive else ", removed"
        return f"HeapHandle({self.item!r}, {self.priority!r}{state})"


def _link(a: HeapHandle, b: HeapHandle) -> HeapHandle:
    """Meld two roots; the loser becomes the leftmost child of the winner."""
    bp, ap = b.priority, a.priority
    if bp < ap or (bp == ap and b.item < a.item):
        a, b = b, a
    b.prev = a
    b.next = a.child
    if a.child is not None:
        a.child.prev = b
    a.child = b
    a.next = None
    a.prev = None
    return a


def _merge_pairs(first: HeapHandle | None) -> HeapHandle | None:
    """Standard two-pass pairing of a sibling list."""
    if first is None:
        return None
    pairs = []
    append = pairs.append
    node = first
    while node is not None:
        a = node
        b = a.next
        if b is None:
            a.next = a.prev = None
            append(a)
            break
        node = b.next
        a.next = a.prev = b.next = b.prev = None
        append(_link(a, b))
    root = pairs.pop()
    while pairs:
        root = _link(pairs.pop(), root)
    return root


class PairingHeap(Generic[T]):
    def __init__(self) -> None:
        self._root: HeapHandle[T] | None = None
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def __bool__(self) -> bool:
        return self._size > 0

    def insert(self, item: T, priority: Any) -> HeapHandle[T]:
        node = HeapHandle(item, priority)
        self._root = node if self._root is None else _link(self._root, node)
        self._size += 1
        return node

    def peek_min(self) -> tuple[T, Any]:
        if self._root is None:
            raise IndexError("peek at empty heap")
        return self._root.item, self._root.priority

    def min_priority(self) -> Any:
        if self._root is None:
            raise IndexError("peek at empty heap")
        return self._root.priority

    def extract_min(self) -> tuple[T, Any]:
        root = self._root
        if root is None:
            raise IndexError("extract from empty heap")
        self._root = _merge_pairs(root.child)
        self._size -= 1
        root.alive = False
        root.child = None
        return root.item, root.priority

    def _cut(self, node: HeapHandle[T]) -> None:
        """Detach the subtree rooted at non-root ``node`` from its parent."""
        prev = node.prev
        if prev.child is node:
            prev.child = node.next
        else:
            prev.next = node.next
        if node.next is not None:
            node.next.prev = prev
        node.next = node.prev = None

    def _check(self, handle: HeapHandle[T]) -> None:
        if not handle.alive:
            raise ValueError(f"stale heap handle {handle!r}")

    def decrease_key(self, handle: HeapHandle[T], priority: Any) -> None:
        self._check(handle)
        if priority > handle.priority:
            raise ValueError(
                f"decrease_key would increase priority {handle.priority!r} -> {priority!r}"
            )
        handle.priority = priority
        if handle is self._root:
            return
        self._cut(handle)
        self._root = _link(self._root, handle)

    def delete(self, handle: HeapHandle[T]) -> None:
        self._check(handle)
        if handle is self._root:
            self.extract_min()
            return
        self._cut(handle)
        sub = _merge_pairs(handle.child)
        handle.child = None
        handle.alive = False
        self._size -= 1
        if sub is not None:
            self._root = _link(self._root, sub)

    def __iter__(self) -> Iterator[tuple[T, Any]]:
        """Unordered traversal of (item, priority)."""
        stack = [self._root] if self._root is not None else []
        while stack:
            node = stack.pop()
            yield node.item, node.priority
            if node.child is not None:
                stack.append(node.child)
            if node.next is not None:
                stack.append(node.next)
