"""Exhaustive isomorph-free generation of small normal 2- and 3-pseudomanifolds.

The search starts from the facet {1..d+1} and repeatedly closes one open
ridge (a ridge in a single facet) by a facet through an existing vertex or
the next unused label.  Every strongly connected closed pseudomanifold is
reached this way.  A new facet may not touch a vertex (or, for d = 3, an
edge) whose link is already closed, since that would disconnect the link.
Isomorphic duplicates are removed by canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional

from .canonical import canonical_form
from .complex import SimplicialComplex
from .errors import ResourceBound
from .verify import Field, is_homology_manifold, is_homology_sphere, normality

LIMITS = {2: 9, 3: 8}


@dataclass(frozen=True)
class Constraints:
    g2: Optional[int] = None
    prime: Optional[bool] = None
    homology_manifold: Optional[bool] = None
    sphere: Optional[bool] = None

    def accepts(self, k: SimplicialComplex) -> bool:
        if self.g2 is not None and k.g2 != self.g2:
            return False
        if self.prime is not None and k.is_prime != self.prime:
            return False
        if self.homology_manifold is not None and is_homology_manifold(k, Field.GF2) != self.homology_manifold:
            return False
        if self.sphere is not None:
            sphere = is_homology_sphere(k, Field.GF2) and is_homology_sphere(k, Field.Q)
            if sphere != self.sphere:
                return False
        return True


def parse_constraints(text: str) -> Constraints:
    """Parse ``"g2=3,prime,manifold,!sphere"`` style filters."""
    kw: dict = {}
    names = {"prime": "prime", "manifold": "homology_manifold", "homology_manifold": "homology_manifold",
             "sphere": "sphere"}
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if "=" in tok:
            key, val = tok.split("=", 1)
            key = key.strip()
            if key == "g2":
                kw["g2"] = int(val)
            elif key in names:
                kw[names[key]] = val.strip().lower() in ("1", "true", "yes")
            else:
                raise ValueError(f"unknown filter {key!r}")
        else:
            neg = tok.startswith("!")
            key = tok.lstrip("!")
            if key not in names:
                raise ValueError(f"unknown filter {key!r}")
            kw[names[key]] = not neg
    return Constraints(**kw)


class _Search:
    def __init__(self, d: int, n: int, order: str):
        self.d = d
        self.n = n
        self.largest = order == "largest"
        self.facets: set[tuple] = set()
        self.ridge_count: dict[tuple, int] = {}
        self.open: set[tuple] = set()
        # faces whose links may close: vertices, and edges when d = 3
        self.watch_sizes = (1, 2) if d == 3 else (1,)
        self.found: dict[tuple, SimplicialComplex] = {}

    def _ridges(self, f):
        return [f[:i] + f[i + 1:] for i in range(len(f))]

    def _closed(self, face) -> bool:
        """True if ``face`` is in the complex and all ridges through it are full."""
        seen = False
        fs = set(face)
        for r, c in self.ridge_count.items():
            if fs.issubset(r):
                seen = True
                if c < 2:
                    return False
        return seen

    def _allowed(self, f) -> bool:
        if f in self.facets:
            return False
        for r in self._ridges(f):
            if self.ridge_count.get(r, 0) >= 2:
                return False
        for size in self.watch_sizes:
            for face in combinations(f, size):
                if self._closed(face):
                    return False
        return True

    def _add(self, f):
        self.facets.add(f)
        for r in self._ridges(f):
            c = self.ridge_count.get(r, 0) + 1
            self.ridge_count[r] = c
            if c == 1:
                self.open.add(r)
            else:
                self.open.discard(r)

    def _remove(self, f):
        self.facets.discard(f)
        for r in self._ridges(f):
            c = self.ridge_count[r] - 1
            if c == 0:
                del self.ridge_count[r]
                self.open.discard(r)
            else:
                self.ridge_count[r] = c
                self.open.add(r)

    def run(self):
        start = tuple(range(1, self.d + 2))
        self._add(start)
        self._extend(self.d + 1)

    def _extend(self, used: int):
        if not self.open:
            self._finish(used)
            return
        ridge = max(self.open) if self.largest else min(self.open)
        candidates = [w for w in range(1, used + 1) if w not in ridge]
        if used < self.n:
            candidates.append(used + 1)
        for w in candidates:
            f = tuple(sorted(ridge + (w,)))
            if not self._allowed(f):
                continue
            self._add(f)
            self._extend(max(used, w))
            self._remove(f)

    def _finish(self, used: int):
        if used != self.n:
            return
        k = SimplicialComplex(self.facets)
        if not normality(k).is_normal:
            return
        form, _ = canonical_form(k)
        if form not in self.found:
            self.found[form] = SimplicialComplex(tuple(v + 1 for v in f) for f in form)


def enumerate_small(d: int, max_vertices: int, constraints: Optional[Constraints] = None,
                    order: str = "smallest", min_vertices: Optional[int] = None) -> Iterator[SimplicialComplex]:
    """Yield each normal d-pseudomanifold with at most ``max_vertices`` vertices once.

    Output is sorted by vertex count, then canonical facet list; labels are 1..n.
    ``order`` picks which open ridge is closed next ("smallest" or "largest"),
    giving two independent traversals of the search space.
    """
    if d not in LIMITS:
        raise ResourceBound(f"enumeration supports d in {sorted(LIMITS)}, got {d}")
    if max_vertices > LIMITS[d]:
        raise ResourceBound(f"d={d} enumeration is limited to {LIMITS[d]} vertices")
    if order not in ("smallest", "largest"):
        raise ValueError(f"unknown order {order!r}")
    lo = max(d + 2, min_vertices or 0)
    for n in range(lo, max_vertices + 1):
        search = _Search(d, n, order)
        search.run()
        for form in sorted(search.found):
            k = search.found[form]
            if constraints is None or constraints.accepts(k):
                yield k
