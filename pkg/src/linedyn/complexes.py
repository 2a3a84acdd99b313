"""Simplicial complexes, the order-complex and face-poset functors, and
simplicial maps.

Simplices are tuples of vertices sorted by a global vertex order fixed per
complex; for an order complex that order is a linear extension of the poset,
so chains are already sorted.  The deterministic ordering pins boundary
matrix signs and all derived bases.
"""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import InvalidMapError, NotFoundError
from .posets import Poset

Vertex = Hashable
SimplexT = tuple   # sorted tuple of vertices


class SimplicialComplex:
    """Finite abstract simplicial complex, closed under non-empty faces."""

    __slots__ = ("_vertex_order", "_vpos", "_by_dim", "_simplex_set")

    def __init__(self, vertices: Sequence[Vertex], simplices: Iterable[Iterable[Vertex]]):
        self._vertex_order = tuple(vertices)
        if len(set(self._vertex_order)) != len(self._vertex_order):
            raise InvalidMapError("duplicate vertices")
        self._vpos = {v: i for i, v in enumerate(self._vertex_order)}
        seen: set[SimplexT] = set()
        for raw in simplices:
            vs = set(raw)
            if not vs:
                continue
            for v in vs:
                if v not in self._vpos:
                    raise NotFoundError(f"simplex vertex {v!r} not in vertex list")
            top = tuple(sorted(vs, key=self._vpos.__getitem__))
            # closure: every non-empty subset is a face
            for r in range(1, len(top) + 1):
                seen.update(combinations(top, r))
        by_dim: dict[int, list[SimplexT]] = {}
        for s in seen:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._by_dim = {
            k: tuple(sorted(faces, key=lambda s: tuple(self._vpos[v] for v in s)))
            for k, faces in sorted(by_dim.items())
        }
        self._simplex_set = seen

    @property
    def vertex_order(self) -> tuple:
        return self._vertex_order

    def vertex_position(self, v: Vertex) -> int:
        return self._vpos[v]

    @property
    def dimension(self) -> int:
        """Dimension of the complex; -1 when empty."""
        return max(self._by_dim, default=-1)

    def simplices_of_dim(self, k: int) -> tuple[SimplexT, ...]:
        return self._by_dim.get(k, ())

    def simplices(self) -> Iterator[SimplexT]:
        for k in sorted(self._by_dim):
            yield from self._by_dim[k]

    @property
    def num_simplices(self) -> int:
        return len(self._simplex_set)

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self._by_dim.get(k, ())) for k in range(self.dimension + 1))

    def __contains__(self, simplex: Iterable[Vertex]) -> bool:
        vs = set(simplex)
        return tuple(sorted(vs, key=self._vpos.__getitem__)) in self._simplex_set

    def __len__(self) -> int:
        return len(self._simplex_set)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._simplex_set == other._simplex_set

    def __hash__(self) -> int:
        return hash(frozenset(self._simplex_set))

    def __repr__(self) -> str:
        return f"SimplicialComplex(f={self.f_vector()})"


def order_complex(p: Poset) -> SimplicialComplex:
    """Complex whose simplices are the non-empty chains of the poset."""
    return SimplicialComplex(p.linear_extension(), p.chains())


def face_poset(k: SimplicialComplex) -> Poset:
    """Poset of the simplices of a complex, ordered by inclusion."""
    elements = list(k.simplices())
    down = {}
    for s in elements:
        faces = []
        for r in range(1, len(s) + 1):
            faces.extend(combinations(s, r))
        down[s] = frozenset(faces)
    return Poset(elements, down)


def barycentric_subdivision(k: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the face poset: one vertex per original simplex."""
    return order_complex(face_poset(k))


def interval_triangulation(n_edges: int) -> SimplicialComplex:
    """Triangulated interval: vertices 0..n, edges {i, i+1}."""
    if n_edges < 0:
        raise InvalidMapError("edge count must be non-negative")
    vertices = range(n_edges + 1)
    if n_edges == 0:
        return SimplicialComplex(vertices, [(0,)])
    return SimplicialComplex(vertices, [(i, i + 1) for i in range(n_edges)])


class SimplicialMap:
    """Vertex map between complexes sending simplices to simplices."""

    __slots__ = ("domain", "codomain", "vertex_map")

    def __init__(
        self,
        domain: SimplicialComplex,
        codomain: SimplicialComplex,
        vertex_map: Mapping[Vertex, Vertex],
    ):
        self.domain = domain
        self.codomain = codomain
        self.vertex_map = dict(vertex_map)
        for v in domain.vertex_order:
            if v not in self.vertex_map:
                raise InvalidMapError(f"vertex {v!r} has no image")
            if self.vertex_map[v] not in codomain._vpos:
                raise InvalidMapError(f"image {self.vertex_map[v]!r} not a codomain vertex")
        for s in domain.simplices():
            if self.apply(s) not in codomain:
                raise InvalidMapError(f"image of simplex {s!r} is not a simplex")

    def apply(self, simplex: SimplexT) -> SimplexT:
        """Image simplex (duplicates collapsed, sorted by codomain order)."""
        image = {self.vertex_map[v] for v in simplex}
        return tuple(sorted(image, key=self.codomain._vpos.__getitem__))

    def apply_with_sign(self, simplex: SimplexT) -> tuple[SimplexT, int]:
        """Image simplex plus orientation sign; 0 when the dimension drops."""
        image = [self.vertex_map[v] for v in simplex]
        if len(set(image)) < len(image):
            return self.apply(simplex), 0
        keyed = sorted(range(len(image)), key=lambda i: self.codomain._vpos[image[i]])
        # parity of the sorting permutation
        sign = 1
        seen = [False] * len(keyed)
        for i in range(len(keyed)):
            if seen[i]:
                continue
            j = i
            cycle = 0
            while not seen[j]:
                seen[j] = True
                j = keyed[j]
                cycle += 1
            if cycle % 2 == 0:
                sign = -sign
        return tuple(image[i] for i in keyed), sign

    @classmethod
    def identity(cls, k: SimplicialComplex) -> "SimplicialMap":
        return cls(k, k, {v: v for v in k.vertex_order})

    def compose(self, inner: "SimplicialMap") -> "SimplicialMap":
        """self after inner."""
        if inner.codomain != self.domain:
            raise InvalidMapError("composition domains do not match")
        return SimplicialMap(
            inner.domain,
            self.codomain,
            {v: self.vertex_map[inner.vertex_map[v]] for v in inner.domain.vertex_order},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.vertex_map == other.vertex_map
        )

    def __repr__(self) -> str:
        return f"SimplicialMap({len(self.vertex_map)} vertices)"


def _as_mapping(f, elements) -> dict:
    if isinstance(f, Mapping):
        return {x: f[x] for x in elements}
    return {x: f(x) for x in elements}


def induced_simplicial_map(
    f: Mapping | Callable, domain: Poset, codomain: Poset
) -> SimplicialMap:
    """Order complex functor on maps: chains go to image chains."""
    mapping = _as_mapping(f, domain.elements)
    ok, witness = domain.is_order_preserving(mapping, codomain)
    if not ok:
        raise InvalidMapError(f"map is not order-preserving at pair {witness!r}")
    return SimplicialMap(order_complex(domain), order_complex(codomain), mapping)


def induced_poset_map(g: SimplicialMap) -> dict[SimplexT, SimplexT]:
    """Face poset functor on maps: each simplex of the domain face poset goes
    to its image simplex.  The result is order-preserving for inclusion."""
    return {s: g.apply(s) for s in g.domain.simplices()}
