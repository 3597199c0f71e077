"""Exact constrained search for hamiltonian cycles in graph squares.

The kernel is the trust anchor for the whole package: it backtracks over
the square of the input graph with per-vertex requirements on how many
incident cycle edges must be real edges of the input, plus required and
forbidden edge sets.  A completed exhaustive run is a proof of
non-existence; hitting the node-expansion budget raises instead of
returning, so callers can never mistake a timeout for a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .graph import Graph, HamCycle, HamSquareError, square, vkey


class TooSmall(HamSquareError):
    pass


class ConstraintOnMissingVertex(HamSquareError):
    pass


class BudgetExceeded(HamSquareError):
    def __init__(self, expansions):
        super().__init__(f"search budget exhausted after {expansions} expansions")
        self.expansions = expansions


class Rule(Enum):
    """Per-vertex requirement on the two incident cycle edges."""

    BOTH_IN_G = "both-in-g"
    ONE_IN_G = "exactly-one-in-g"
    NONE_IN_G = "none-in-g"
    NEIGHBOR_EDGE = "neighbor-edge"


@dataclass
class CycleConstraint:
    """Side conditions for the cycle search.

    vertex_rules maps vertices to a Rule.  required_edges must all appear in
    the cycle; forbidden_edges must not.  NEIGHBOR_EDGE at x asks for some
    cycle edge joining two neighbors of x in the input graph.
    """

    vertex_rules: dict = field(default_factory=dict)
    required_edges: frozenset = frozenset()
    forbidden_edges: frozenset = frozenset()

    def validate(self, g: Graph) -> None:
        for v in self.vertex_rules:
            if not g.has_vertex(v):
                raise ConstraintOnMissingVertex(f"rule on unknown vertex {v!r}")
        for u, v in self.required_edges | self.forbidden_edges:
            if not g.has_vertex(u) or not g.has_vertex(v):
                raise ConstraintOnMissingVertex(f"edge constraint on unknown vertex")
        if self.required_edges & self.forbidden_edges:
            raise HamSquareError("an edge is both required and forbidden")

    def is_free(self) -> bool:
        return not self.vertex_rules and not self.required_edges and not self.forbidden_edges


class _Kernel:
    """Index-mapped search state for one input graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.labels = g.vertices  # already sorted by vkey
        self.index = {v: i for i, v in enumerate(self.labels)}
        n = g.n
        self.n = n
        self.g_adj = [0] * n
        for u, v in g.edges:
            iu, iv = self.index[u], self.index[v]
            self.g_adj[iu] |= 1 << iv
            self.g_adj[iv] |= 1 << iu
        sq = square(g)
        self.sq_adj = [0] * n
        for u, v in sq.edges:
            iu, iv = self.index[u], self.index[v]
            self.sq_adj[iu] |= 1 << iv
            self.sq_adj[iv] |= 1 << iu

    def solve(self, constraint: CycleConstraint | None, budget=None,
              min_in_g: int = 0, enumerate_all: bool = False):
        """Return the first cycle order found (list of indices), None when
        exhaustion proves absence, or a generator of orders when
        enumerate_all is set."""
        n = self.n
        if n < 3:
            raise TooSmall("hamiltonian cycles need at least three vertices")
        cc = constraint or CycleConstraint()
        cc.validate(self.g)

        sq = list(self.sq_adj)
        for u, v in cc.forbidden_edges:
            iu, iv = self.index[u], self.index[v]
            sq[iu] &= ~(1 << iv)
            sq[iv] &= ~(1 << iu)

        rules = [None] * n
        nbr_masks = []
        for v, rule in cc.vertex_rules.items():
            i = self.index[v]
            if rule is Rule.NEIGHBOR_EDGE:
                mask = 0
                for w in self.g.neighbors(v):
                    mask |= 1 << self.index[w]
                nbr_masks.append(mask)
            else:
                rules[i] = rule

        required = set()
        req_at = [0] * n
        for u, v in cc.required_edges:
            iu, iv = self.index[u], self.index[v]
            if not (sq[iu] >> iv) & 1:
                # A required pair farther apart than distance two (or also
                # forbidden) can never appear; exhaustion is immediate.
                return iter(()) if enumerate_all else None
            required.add(frozenset((iu, iv)))
            req_at[iu] |= 1 << iv
            req_at[iv] |= 1 << iu

        # Feasibility prechecks on rules.
        for i in range(n):
            if rules[i] is Rule.BOTH_IN_G and bin(self.g_adj[i]).count("1") < 2:
                return iter(()) if enumerate_all else None
            if rules[i] is Rule.ONE_IN_G and self.g_adj[i] == 0:
                return iter(()) if enumerate_all else None

        memoize = (
            cc.is_free() and not nbr_masks and min_in_g == 0 and not enumerate_all
        )
        # Rules as small ints for the hot loop: 0 free, 1 both, 2 one, 3 none.
        codes = [0] * n
        for i, r in enumerate(rules):
            if r is Rule.BOTH_IN_G:
                codes[i] = 1
            elif r is Rule.ONE_IN_G:
                codes[i] = 2
            elif r is Rule.NONE_IN_G:
                codes[i] = 3
        # Rooting the search at the most constrained vertex prunes failing
        # searches by orders of magnitude; the result is canonicalized later
        # so the root choice only affects speed and tie-breaking.
        start = 0
        for want in (1, 3, 2):
            hits = [i for i in range(n) if codes[i] == want]
            if hits:
                start = hits[0]
                break
        if enumerate_all:
            return self._enumerate(sq, codes, nbr_masks, required, req_at,
                                   budget, min_in_g, start)
        return self._first(sq, codes, nbr_masks, required, req_at, budget,
                           min_in_g, memoize, start)

    def _first(self, sq, codes, nbr_masks, required, req_at, budget,
               min_in_g, memoize, start=0):
        n = self.n
        g_adj = self.g_adj
        full = (1 << n) - 1
        sq_start = sq[start]
        path = [start]
        partners = [0] * n
        dead = set() if memoize else None
        state = [0]  # expansions
        req_total = len(required)
        has_req = req_total > 0
        both_rule = [c == 1 for c in codes]

        def check_final(i, cnt):
            c = codes[i]
            if c == 1:
                return cnt == 2
            if c == 2:
                return cnt == 1
            if c == 3:
                return cnt == 0
            return True

        def reachable_ok(wbit, w, visited):
            rem = full & ~visited
            if not rem:
                return True
            if not (sq_start & rem):
                return False
            reached = sq[w] & rem
            frontier = reached
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    b = f & -f
                    nxt |= sq[b.bit_length() - 1]
                    f ^= b
                frontier = nxt & rem & ~reached
                reached |= frontier
            if (reached & rem) != rem:
                return False
            allowed = rem | wbit | (1 << start)
            r = rem
            while r:
                b = r & -r
                i = b.bit_length() - 1
                r ^= b
                av = sq[i] & allowed & ~b
                if not av or not (av & (av - 1)):
                    return False
                if both_rule[i]:
                    gv = g_adj[i] & allowed & ~b
                    if not gv or not (gv & (gv - 1)):
                        return False
            return True

        def finish(u, ing_total, cnt_u, req_used):
            if not (sq[u] >> start) & 1:
                return None
            e = (g_adj[u] >> start) & 1
            if has_req and frozenset((u, start)) in required:
                req_used += 1
            if req_used != req_total:
                return None
            if not check_final(u, cnt_u + e):
                return None
            first_e = (g_adj[start] >> path[1]) & 1
            if not check_final(start, first_e + e):
                return None
            if has_req and req_at[start] and req_at[start] & ~(partners[start] | (1 << u)):
                return None
            if ing_total + e < min_in_g:
                return None
            for mask in nbr_masks:
                ok = False
                for i in range(n):
                    a, b = path[i], path[(i + 1) % n]
                    if (mask >> a) & 1 and (mask >> b) & 1:
                        ok = True
                        break
                if not ok:
                    return None
            return list(path)

        def extend(u, visited, depth, ing_total, cnt_u, req_used):
            if depth == n:
                return finish(u, ing_total, cnt_u, req_used)
            if dead is not None and (u, visited) in dead:
                return None
            cand = sq[u] & ~visited
            if min_in_g and ing_total + (n - depth + 1) < min_in_g:
                cand = 0
            cu = codes[u]
            at_start = u == start
            while cand:
                b = cand & -cand
                w = b.bit_length() - 1
                cand ^= b
                state[0] += 1
                if budget is not None and state[0] > budget:
                    raise BudgetExceeded(state[0])
                e = (g_adj[u] >> w) & 1
                if at_start:
                    if cu == 1:
                        if not e:
                            continue
                    elif cu == 3 and e:
                        continue
                else:
                    t = cnt_u + e
                    if cu == 1:
                        if t != 2:
                            continue
                    elif cu == 2:
                        if t != 1:
                            continue
                    elif cu == 3 and t:
                        continue
                    if has_req and req_at[u] and req_at[u] & ~(partners[u] | b):
                        continue
                cw = codes[w]
                if cw == 1:
                    if not e:
                        continue
                elif cw == 3 and e:
                    continue
                nv = visited | b
                if not reachable_ok(b, w, nv):
                    continue
                path.append(w)
                if has_req:
                    partners[u] |= b
                    partners[w] |= 1 << u
                    used = req_used + (frozenset((u, w)) in required)
                else:
                    used = req_used
                res = extend(w, nv, depth + 1, ing_total + e, e, used)
                if res is not None:
                    return res
                path.pop()
                if has_req:
                    partners[u] &= ~b
                    partners[w] &= ~(1 << u)
            if dead is not None:
                dead.add((u, visited))
            return None

        return extend(start, 1 << start, 1, 0, 0, 0)

    def _enumerate(self, sq, codes, nbr_masks, required, req_at, budget,
                   min_in_g, start=0):
        """Generator twin of _first, yielding every satisfying cycle order
        once (direction deduplicated)."""
        n = self.n
        g_adj = self.g_adj
        full = (1 << n) - 1
        path = [start]
        partners = [0] * n
        state = [0]
        req_total = len(required)

        def check_final(i, cnt):
            c = codes[i]
            if c == 1:
                return cnt == 2
            if c == 2:
                return cnt == 1
            if c == 3:
                return cnt == 0
            return True

        def finish(u, ing_total, cnt_u, req_used):
            if not (sq[u] >> start) & 1:
                return None
            e = (g_adj[u] >> start) & 1
            if frozenset((u, start)) in required:
                req_used += 1
            if req_used != req_total:
                return None
            if not check_final(u, cnt_u + e):
                return None
            first_e = (g_adj[start] >> path[1]) & 1
            if not check_final(start, first_e + e):
                return None
            if req_at[start] and req_at[start] & ~(partners[start] | (1 << u)):
                return None
            if ing_total + e < min_in_g:
                return None
            for mask in nbr_masks:
                ok = False
                for i in range(n):
                    a, b = path[i], path[(i + 1) % n]
                    if (mask >> a) & 1 and (mask >> b) & 1:
                        ok = True
                        break
                if not ok:
                    return None
            return list(path)

        def extend(u, visited, depth, ing_total, cnt_u, req_used):
            if depth == n:
                if path[1] < path[-1]:
                    res = finish(u, ing_total, cnt_u, req_used)
                    if res is not None:
                        yield res
                return
            cand = sq[u] & ~visited
            while cand:
                b = cand & -cand
                w = b.bit_length() - 1
                cand ^= b
                state[0] += 1
                if budget is not None and state[0] > budget:
                    raise BudgetExceeded(state[0])
                e = (g_adj[u] >> w) & 1
                if u != start and not check_final(u, cnt_u + e):
                    continue
                if u != start and req_at[u] and req_at[u] & ~(partners[u] | b):
                    continue
                cw = codes[w]
                if cw == 1 and not e:
                    continue
                if cw == 3 and e:
                    continue
                path.append(w)
                partners[u] |= b
                partners[w] |= 1 << u
                used = req_used + (frozenset((u, w)) in required)
                yield from extend(w, visited | b, depth + 1, ing_total + e, e, used)
                path.pop()
                partners[u] &= ~b
                partners[w] &= ~(1 << u)

        yield from extend(start, 1 << start, 1, 0, 0, 0)


@lru_cache(maxsize=8192)
def _kernel_for(g: Graph) -> _Kernel:
    return _Kernel(g)


def find_ham_cycle_constrained(g: Graph, constraint: CycleConstraint | None = None,
                               budget: int | None = None) -> HamCycle | None:
    """Search square(g) for a hamiltonian cycle satisfying the constraint.

    Returns a canonical cycle, or None once exhaustive search has proved
    that no satisfying cycle exists.  Raises BudgetExceeded when the
    node-expansion cap is hit first.
    """
    kern = _kernel_for(g)
    order = kern.solve(constraint, budget=budget)
    if order is None:
        return None
    return HamCycle.in_square(g, [kern.labels[i] for i in order])


def find_cycle_with_min_in_g(g: Graph, min_in_g: int,
                             budget: int | None = None) -> HamCycle | None:
    """First hamiltonian cycle of square(g) using at least min_in_g real edges."""
    kern = _kernel_for(g)
    order = kern.solve(None, budget=budget, min_in_g=min_in_g)
    if order is None:
        return None
    return HamCycle.in_square(g, [kern.labels[i] for i in order])


def enumerate_ham_cycles(g: Graph, budget: int | None = None):
    """Yield every hamiltonian cycle of square(g) exactly once, in the
    deterministic order induced by ascending-label backtracking."""
    kern = _kernel_for(g)
    for order in kern.solve(None, budget=budget, enumerate_all=True):
        yield HamCycle.in_square(g, [kern.labels[i] for i in order])
