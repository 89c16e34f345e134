"""Comparison-only k-selection (introselect with a median-of-medians fallback)."""
from __future__ import annotations

from typing import Callable, Sequence, TypeVar

import numpy as np

from .errors import RankError

T = TypeVar("T")

_SMALL = 12


def _insertion_sort(a: list, less: Callable) -> list:
    for i in range(1, len(a)):
        x = a[i]
        j = i - 1
        while j >= 0 and less(x, a[j]):
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x
    return a


def _median3(a, b, c, less):
    if less(a, b):
        if less(b, c):
            return b
        return c if less(a, c) else a
    if less(a, c):
        return a
    return c if less(b, c) else b


def _median_of_medians(a: list, less: Callable):
    medians = [_insertion_sort(a[i:i + 5], less)[(min(5, len(a) - i) - 1) // 2] for i in range(0, len(a), 5)]
    return _select(medians, less, (len(medians) + 1) // 2 - 1, use_mom=True)


def _select(a: list, less: Callable, target: int, use_mom: bool = False):
    budget = 0 if use_mom else 2 * max(1, len(a).bit_length())
    while True:
        if len(a) <= _SMALL:
            return _insertion_sort(a, less)[target]
        if budget > 0:
            budget -= 1
            pivot = _median3(a[0], a[len(a) // 2], a[-1], less)
        else:
            pivot = _median_of_medians(a, less)
        lows, highs, n_eq = [], [], 0
        for x in a:
            if less(x, pivot):
                lows.append(x)
            elif less(pivot, x):
                highs.append(x)
            else:
                n_eq += 1
        if target < len(lows):
            a = lows
        elif target < len(lows) + n_eq:
            return pivot
        else:
            target -= len(lows) + n_eq
            a = highs


def select_kth(items: Sequence[T], less: Callable[[T, T], bool], k: int) -> T:
    """Element of rank ``k`` (1-based) in non-decreasing order under ``less``.

    Only ``less`` is ever applied to the items. Median-of-three pivots are
    used for a bounded number of rounds, after which pivots come from the
    median of medians, so the worst case stays linear.
    """
    n = len(items)
    if n == 0:
        raise RankError("selection from an empty sequence")
    if not 1 <= k <= n:
        raise RankError(f"rank {k} out of range 1..{n}")
    return _select(list(items), less, k - 1)


def select_kth_keyed(items: Sequence[T], keys, less: Callable[[T, T], bool], k: int) -> T:
    """``select_kth`` helped by float keys that never contradict ``less``.

    ``keys[i]`` must be a non-decreasing function of the rank of
    ``items[i]`` (so ``less(a, b)`` implies ``key(a) <= key(b)``). A linear
    ``np.partition`` finds the k-th key; only the items sharing it, usually
    one, are ranked with ``less``.
    """
    n = len(items)
    if n == 0:
        raise RankError("selection from an empty sequence")
    if not 1 <= k <= n:
        raise RankError(f"rank {k} out of range 1..{n}")
    keys = np.asarray(keys, dtype=float)
    if len(keys) != n:
        raise RankError("one key per item required")
    kth_key = np.partition(keys, k - 1)[k - 1]
    below = int(np.count_nonzero(keys < kth_key))
    tied = np.flatnonzero(keys == kth_key).tolist()
    return select_kth([items[i] for i in tied], less, k - below)
