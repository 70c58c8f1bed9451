"""Backtracking over labelings of graph items (edges or vertices).

Labels are tried in first-use order: label ``j`` may appear only after
labels ``1..j-1`` already have, which quotients out relabelings (both
properness and distinguishing-ness are invariant under them).

Distinguishing is handled one of two ways:

* survivor mode: the nonidentity automorphisms are enumerated up front as
  item permutations; each carries an alive flag that dies the moment the
  partial labeling disagrees with it.  A live permutation whose moved items
  are all labeled can never die, so the branch is cut.  Once nothing is
  alive the rest is a pure completion problem.
* direct mode (group too large to enumerate): the same cut is detected by
  asking for an automorphism that preserves the labeled items while fixing
  every unlabeled item, and completed labelings are tested directly.
"""

from __future__ import annotations

import time
from typing import Optional, Sequence

import numpy as np

from .graph import Graph
from .symmetry import (GroupTooLarge, automorphism_array, edge_action_array,
                       preserving_automorphism_raw)


class SearchTimeout(RuntimeError):
    pass


def edge_order(g: Graph) -> list[int]:
    """Descending degree sum, ties by canonical edge index."""
    deg = g.degrees
    return sorted(range(g.m), key=lambda i: (-(deg[g.edges[i][0]] + deg[g.edges[i][1]]), i))


def vertex_order(g: Graph) -> list[int]:
    """Depth-first preorder from a maximum-degree vertex, per component."""
    deg = g.degrees
    seen, order = set(), []
    for root in sorted(range(g.n), key=lambda v: (-deg[v], v)):
        if root in seen:
            continue
        stack = [root]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            order.append(v)
            stack.extend(sorted(g.adj[v] - seen, key=lambda u: (deg[u], u), reverse=True))
    return order


def item_conflicts(g: Graph, kind: str) -> list[list[int]]:
    if kind == "vertex":
        return [sorted(g.adj[v]) for v in range(g.n)]
    out = []
    for u, v in g.edges:
        i = g.eid(u, v)
        out.append(sorted(set(g.incident_edges(u) + g.incident_edges(v)) - {i}))
    return out


def item_automorphisms(g: Graph, kind: str, limit: int) -> Optional[np.ndarray]:
    """Nonidentity automorphisms acting on items, or None when there are too many."""
    try:
        perms = automorphism_array(g, limit)
    except GroupTooLarge:
        return None
    perms = perms[1:]
    if kind == "edge":
        perms = edge_action_array(perms, g) if len(perms) else np.zeros((0, g.m), dtype=np.int64)
    return perms


class LabelSearch:
    """One (graph, kind, k) search; call :meth:`run` for the first hit."""

    def __init__(self, g: Graph, kind: str, k: int, *, proper: bool, distinguishing: bool,
                 perms: Optional[np.ndarray] = None, aut_limit: int = 50_000,
                 order: Optional[Sequence[int]] = None, deadline: Optional[float] = None):
        self.g, self.kind, self.k = g, kind, k
        self.proper, self.distinguishing = proper, distinguishing
        self.size = g.m if kind == "edge" else g.n
        self.order = list(order) if order is not None else (
            edge_order(g) if kind == "edge" else vertex_order(g))
        self.conflicts = item_conflicts(g, kind) if proper else None
        self.deadline = deadline
        self.nodes = 0
        self.labels = np.zeros(self.size, dtype=np.int64)
        self.direct = False
        if distinguishing:
            if perms is None:
                perms = item_automorphisms(g, kind, aut_limit)
            if perms is None:
                self.direct = True
            else:
                pos = np.empty(self.size, dtype=np.int64)
                pos[self.order] = np.arange(self.size)
                moved = perms != np.arange(self.size)[None, :]
                self.lock = np.where(moved, pos[None, :], -1).max(axis=1) if len(perms) else \
                    np.zeros(0, dtype=np.int64)
                self.img = np.ascontiguousarray(perms.T)
                inv = np.empty_like(perms)
                rows = np.arange(len(perms))[:, None]
                inv[rows, perms] = np.arange(self.size)[None, :]
                self.pre = np.ascontiguousarray(inv.T)
                self.n_perms = len(perms)
        else:
            self.n_perms = 0

    # ------------------------------------------------------------ helpers

    def _forbidden(self, i: int) -> set:
        lab = self.labels
        return {int(lab[j]) for j in self.conflicts[i] if lab[j]}

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and (self.nodes & 255) == 0 and time.monotonic() > self.deadline:
            raise SearchTimeout(f"{self.kind} search at k={self.k} exceeded its budget")

    def _locked_direct(self, depth: int) -> bool:
        """Is some nonidentity automorphism certain to survive any completion?"""
        fresh = self.k + 1
        lab = self.labels.tolist()
        for j in self.order[depth + 1:]:
            lab[j] = fresh
            fresh += 1
        if self.kind == "edge":
            return preserving_automorphism_raw(self.g, edge_labels=lab) is not None
        return preserving_automorphism_raw(self.g, vertex_colors=lab) is not None

    def _complete_ok(self) -> bool:
        lab = self.labels.tolist()
        if self.kind == "edge":
            return preserving_automorphism_raw(self.g, edge_labels=lab) is None
        return preserving_automorphism_raw(self.g, vertex_colors=lab) is None

    # ------------------------------------------------------------ search

    def run(self) -> Optional[tuple[int, ...]]:
        if self.size == 0:
            return ()
        alive = np.arange(self.n_perms) if self.distinguishing and not self.direct else None
        if self._dfs(0, 0, alive):
            return tuple(int(x) for x in self.labels)
        return None

    def _dfs(self, d: int, used: int, alive) -> bool:
        self._tick()
        if d == self.size:
            return self._complete_ok() if self.direct else True
        if alive is not None and len(alive) == 0 and not self.proper:
            for j in self.order[d:]:
                self.labels[j] = 1
            return True
        i = self.order[d]
        forbidden = self._forbidden(i) if self.proper else ()
        for c in range(1, min(self.k, used + 1) + 1):
            if c in forbidden:
                continue
            self.labels[i] = c
            if self.proper and not self._forward_ok(i):
                continue
            nxt = alive
            if alive is not None and len(alive):
                img = self.labels[self.img[i, alive]]
                pre = self.labels[self.pre[i, alive]]
                keep = ((img == 0) | (img == c)) & ((pre == 0) | (pre == c))
                nxt = alive[keep]
                if len(nxt) and (self.lock[nxt] <= d).any():
                    continue
            elif self.direct and d + 1 < self.size and self._locked_direct(d):
                continue
            if self._dfs(d + 1, max(used, c), nxt):
                return True
        self.labels[i] = 0
        return False

    def _forward_ok(self, i: int) -> bool:
        lab = self.labels
        for j in self.conflicts[i]:
            if lab[j] == 0 and len(self._forbidden(j)) >= self.k:
                return False
        return True


def find_labeling(g: Graph, kind: str, k: int, *, proper: bool, distinguishing: bool,
                  perms: Optional[np.ndarray] = None, aut_limit: int = 50_000,
                  budget: Optional[float] = None) -> Optional[tuple[int, ...]]:
    """Labels (1..k, item-indexed) meeting the requested properties, or None.

    Raises :class:`SearchTimeout` if ``budget`` seconds elapse first.
    """
    deadline = None if budget is None else time.monotonic() + budget
    search = LabelSearch(g, kind, k, proper=proper, distinguishing=distinguishing,
                         perms=perms, aut_limit=aut_limit, deadline=deadline)
    return search.run()
