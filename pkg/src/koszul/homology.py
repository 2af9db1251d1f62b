"""The Koszul complex of a graded quotient ring and its homology algebra.

The complex is the exterior algebra over R on one generator per ring variable,
with the differential sending the generator t_i to x_i and extending by the
Leibniz rule.  Basis elements are pairs ``(v, w)``: a standard monomial v of R
and an ascending tuple w of exterior indices.  Bidegrees are (|w|, deg v + |w|).

For monomial ideals everything additionally splits by multidegree, and the
homology is assembled from the (tiny) multidegree slices; nonzero homology
only occurs in squarefree multidegrees, which the property suite cross-checks
against the bigraded computation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .fields import Field
from .graded import GradedAlgebraData
from .polyring import QuotientRing, grevlex_key, mono_divides
from .sparse import FieldEchelon, kernel_of_columns


def koszul_basis(ring: QuotientRing, i: int, j: int) -> tuple:
    """Basis of the (i, j) component: standard v of degree j - i, |w| = i."""
    if i < 0 or i > ring.n or j < i:
        return ()
    ring_part = ring.std_monomials(j - i)
    out = []
    for w in itertools.combinations(range(ring.n), i):
        for v in ring_part:
            out.append((v, w))
    out.sort(key=lambda bw: (bw[1], grevlex_key(bw[0])))
    return tuple(out)


def _multidegree(basis_elt) -> tuple:
    v, w = basis_elt
    return tuple(e + (k in w) for k, e in enumerate(v))


def koszul_basis_multigraded(ring: QuotientRing, i: int, u: tuple) -> tuple:
    """Basis of the multidegree-u slice in homological degree i (monomial rings)."""
    if i < 0 or i > ring.n or any(e < 0 for e in u):
        return ()
    support = [k for k, e in enumerate(u) if e]
    if i > len(support):
        return ()
    lms = ring.leading_monomials(sum(u))
    out = []
    for w in itertools.combinations(support, i):
        v = tuple(e - (k in w) for k, e in enumerate(u))
        if not any(mono_divides(lm, v) for lm in lms):
            out.append((v, w))
    out.sort(key=lambda bw: (bw[1], grevlex_key(bw[0])))
    return tuple(out)


def differential_of_basis(ring: QuotientRing, v: tuple, w: tuple) -> dict:
    """Image of x^v t_w under the differential, as a dict over (i-1)-basis pairs."""
    out: dict = {}
    for p, wp in enumerate(w):
        sign = 1 if p % 2 == 0 else -1
        unit = tuple(1 if k == wp else 0 for k in range(ring.n))
        prod = ring.mono_product(v, unit)
        rest = w[:p] + w[p + 1:]
        for m, c in prod.items():
            key = (m, rest)
            acc = out.get(key, ring.field.zero) + sign * c
            if acc:
                out[key] = acc
            else:
                del out[key]
    return out


def differential(ring: QuotientRing, element: dict) -> dict:
    """Differential of a Koszul element given as dict (v, w) -> coefficient."""
    out: dict = {}
    for (v, w), c in element.items():
        if not c:
            continue
        for key, d in differential_of_basis(ring, v, w).items():
            acc = out.get(key, ring.field.zero) + c * d
            if acc:
                out[key] = acc
            else:
                del out[key]
    return out


@dataclass(frozen=True)
class HomologyClass:
    """A homology class with its reduced cycle representative."""

    i: int
    j: int
    index: int
    representative: dict = dc_field(compare=False, hash=False)
    multidegree: tuple | None = dc_field(default=None, compare=True)

    @property
    def strand(self) -> int:
        return self.j - self.i


class _Slice:
    """Homology of one (co)homological slice: cycle reps modulo boundaries."""

    __slots__ = ("basis", "index", "reps", "ech")

    def __init__(self, field: Field, basis, d_in_columns, boundary_columns):
        self.basis = basis
        self.index = {b: k for k, b in enumerate(basis)}
        _, kernel = kernel_of_columns(d_in_columns, field)
        self.ech = FieldEchelon(field, track="stored")
        for col in boundary_columns:
            self.ech.insert(col, tag=None)
        self.reps = []
        for kv in kernel:
            residual, _ = self.ech.insert(kv, tag=len(self.reps))
            if residual:
                pos = min(residual)
                self.reps.append(self.ech.pivots[pos][0])

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, cycle_coords: dict) -> dict:
        """Coordinates of a cycle (given over the slice basis) in the rep basis."""
        residual, combo = self.ech.reduce(cycle_coords)
        if residual:
            raise ValueError("vector is not a cycle in this slice")
        return combo


def _slice_from_bases(ring, field, basis_here, basis_below, basis_above):
    index_below = {b: k for k, b in enumerate(basis_below)}
    d_in = []
    for v, w in basis_here:
        col = {}
        for key, c in differential_of_basis(ring, v, w).items():
            col[index_below[key]] = c
        d_in.append(col)
    index_here = {b: k for k, b in enumerate(basis_here)}
    bd = []
    for v, w in basis_above:
        col = {}
        for key, c in differential_of_basis(ring, v, w).items():
            col[index_here[key]] = c
        if col:
            bd.append(col)
    return _Slice(field, basis_here, d_in, bd)


def _squarefree(u: tuple) -> bool:
    return all(e <= 1 for e in u)


class KoszulHomologyAlgebra:
    """Bigraded homology algebra of the Koszul complex, up to (i_max, j_max).

    Slices are computed lazily and cached; for monomial ideals the per-
    multidegree decomposition is used throughout.  Products of classes are
    computed in the complex and reduced to coordinates in the stored bases.
    """

    def __init__(self, ring: QuotientRing, i_max: int, j_max: int):
        if i_max < 0 or j_max < 0:
            raise ValueError("bounds must be nonnegative")
        self.ring = ring
        self.field = ring.field
        self.i_max = min(i_max, ring.n)
        self.j_max = j_max
        # squarefree monomial ideals: homology is concentrated in squarefree
        # multidegrees, so slices can be assembled per multidegree
        self.multigraded = ring.is_squarefree_monomial
        self._slices: dict = {}
        self._mg_slices: dict = {}
        self._bases: dict = {}
        self._product_cache: dict = {}

    # -- slice plumbing -----------------------------------------------------

    def _bigraded_slice(self, i: int, j: int) -> _Slice:
        key = (i, j)
        if key not in self._slices:
            self._slices[key] = _slice_from_bases(
                self.ring, self.field,
                koszul_basis(self.ring, i, j),
                koszul_basis(self.ring, i - 1, j),
                koszul_basis(self.ring, i + 1, j))
        return self._slices[key]

    def _multigraded_slice(self, i: int, u: tuple) -> _Slice:
        key = (i, u)
        if key not in self._mg_slices:
            self._mg_slices[key] = _slice_from_bases(
                self.ring, self.field,
                koszul_basis_multigraded(self.ring, i, u),
                koszul_basis_multigraded(self.ring, i - 1, u),
                koszul_basis_multigraded(self.ring, i + 1, u))
        return self._mg_slices[key]

    def _squarefree_multidegrees(self, j: int):
        for support in itertools.combinations(range(self.ring.n), j):
            yield tuple(1 if k in support else 0 for k in range(self.ring.n))

    def _check_bounds(self, i: int, j: int):
        if not (0 <= i <= self.i_max and 0 <= j <= self.j_max):
            raise ValueError(f"bidegree ({i}, {j}) outside computed bounds "
                             f"({self.i_max}, {self.j_max})")

    # -- public views --------------------------------------------------------

    def basis(self, i: int, j: int) -> list[HomologyClass]:
        self._check_bounds(i, j)
        key = (i, j)
        if key in self._bases:
            return self._bases[key]
        classes = []
        if i == 0 and j == 0:
            unit = HomologyClass(0, 0, 0, {((0,) * self.ring.n, ()): self.field.one},
                                 (0,) * self.ring.n if self.multigraded else None)
            classes.append(unit)
        elif j > 0 and 0 < i <= min(j, self.ring.n):
            if self.multigraded:
                for u in self._squarefree_multidegrees(j):
                    sl = self._multigraded_slice(i, u)
                    for k, rep in enumerate(sl.reps):
                        classes.append(HomologyClass(
                            i, j, len(classes),
                            {sl.basis[pos]: c for pos, c in sorted(rep.items())}, u))
            else:
                sl = self._bigraded_slice(i, j)
                for k, rep in enumerate(sl.reps):
                    classes.append(HomologyClass(
                        i, j, len(classes),
                        {sl.basis[pos]: c for pos, c in sorted(rep.items())}, None))
        self._bases[key] = classes
        return classes

    def dim(self, i: int, j: int) -> int:
        if i == 0:
            return 1 if j == 0 else 0
        if j <= 0 or i > min(j, self.ring.n):
            return 0
        return len(self.basis(i, j))

    def dims(self) -> dict:
        """All nonzero dimensions within bounds, keyed by bidegree."""
        out = {}
        for j in range(self.j_max + 1):
            for i in range(min(j, self.i_max) + 1):
                d = self.dim(i, j)
                if d:
                    out[(i, j)] = d
        return out

    def multigraded_dim(self, i: int, u: tuple):
        if not self.multigraded:
            raise ValueError("multigraded data needs a monomial defining ideal")
        if i == 0:
            return 1 if not any(u) else 0
        if not _squarefree(u):
            return 0
        return self._multigraded_slice(i, u).dim

    # -- algebra structure ----------------------------------------------------

    def coords_of_cycle(self, i: int, j: int, element: dict) -> dict:
        """Coordinates of a cycle (dict over (v, w) pairs) in the basis of H_{i,j}."""
        self._check_bounds(i, j)
        if not element:
            return {}
        if self.multigraded:
            by_u: dict = {}
            for bw, c in element.items():
                by_u.setdefault(_multidegree(bw), {})[bw] = c
            offset = 0
            coords = {}
            for u in self._squarefree_multidegrees(j):
                sl = self._multigraded_slice(i, u)
                part = by_u.pop(u, None)
                if part:
                    for r, c in sl.coords({sl.index[bw]: c for bw, c in part.items()}).items():
                        if c:
                            coords[offset + r] = c
                offset += sl.dim
            for u, part in by_u.items():
                # cycles over non-squarefree multidegrees are boundaries
                if _squarefree(u):
                    raise ValueError(f"unexpected squarefree leftover {u}")
            return coords
        sl = self._bigraded_slice(i, j)
        return {r: c for r, c in
                sl.coords({sl.index[bw]: c for bw, c in element.items()}).items() if c}

    def multiply_elements(self, e1: dict, e2: dict) -> dict:
        """Product in the Koszul complex with exterior signs, ring parts reduced."""
        out: dict = {}
        for (v1, w1), c1 in e1.items():
            s1 = set(w1)
            for (v2, w2), c2 in e2.items():
                if s1 & set(w2):
                    continue
                inversions = sum(1 for a in w1 for b in w2 if a > b)
                sign = -1 if inversions % 2 else 1
                merged = tuple(sorted(w1 + w2))
                for m, cm in self.ring.mono_product(v1, v2).items():
                    key = (m, merged)
                    acc = out.get(key, self.field.zero) + sign * c1 * c2 * cm
                    if acc:
                        out[key] = acc
                    else:
                        del out[key]
        return out

    def product_coords(self, h1: HomologyClass, h2: HomologyClass) -> dict:
        """Coordinates of [h1][h2] in the basis of its target bidegree."""
        i, j = h1.i + h2.i, h1.j + h2.j
        if i > self.ring.n:
            return {}
        key = (h1.i, h1.j, h1.index, h2.i, h2.j, h2.index)
        hit = self._product_cache.get(key)
        if hit is not None:
            return hit
        if self.multigraded:
            u = tuple(a + b for a, b in zip(h1.multidegree, h2.multidegree))
            if not _squarefree(u):
                self._product_cache[key] = {}
                return {}
        self._check_bounds(i, j)
        z = self.multiply_elements(h1.representative, h2.representative)
        coords = self.coords_of_cycle(i, j, z)
        self._product_cache[key] = coords
        return coords

    # -- exports to the graded-algebra machinery -------------------------------

    def positive_strands(self) -> bool:
        for (i, j), d in self.dims().items():
            if d and not (i == j == 0) and j - i <= 0:
                return False
        return True

    def algebra_data(self, mode: str = "bigraded") -> GradedAlgebraData:
        """Structure-constant view of H for the Tor engines.

        mode 'bigraded': grades (i, j); 'multigraded': grades (i, *u)
        (monomial rings only); 'strand': single grade j - i.
        """
        if not self.positive_strands():
            raise ValueError("homology does not live in positive strands")
        if mode == "multigraded" and not self.multigraded:
            raise ValueError("multigraded data needs a monomial defining ideal")
        components: dict = {}
        keys: dict = {}
        for j in range(1, self.j_max + 1):
            for i in range(1, min(j, self.i_max) + 1):
                classes = self.basis(i, j)
                if not classes:
                    continue
                if mode == "bigraded":
                    components[(i, j)] = len(classes)
                    keys.setdefault((i, j), []).extend(classes)
                elif mode == "strand":
                    keys.setdefault(j - i, []).extend(classes)
                elif mode == "multigraded":
                    for h in classes:
                        keys.setdefault((i,) + h.multidegree, []).append(h)
                else:
                    raise ValueError(f"unknown mode {mode!r}")
        if mode == "strand":
            # deterministic: classes ordered by (i, j, index) within a strand
            for q in keys:
                keys[q].sort(key=lambda h: (h.i, h.j, h.index))
            components = {(q,): len(v) for q, v in keys.items()}
            keys = {(q,): v for q, v in keys.items()}
        elif mode == "multigraded":
            components = {g: len(v) for g, v in keys.items()}

        def weight(grade):
            if mode == "bigraded":
                return grade[1]
            if mode == "strand":
                return grade[0]
            return sum(grade[1:])

        if mode == "strand":
            # squarefree monomial rings are complete once j_max covers n:
            # nothing lives beyond internal degree n
            if self.multigraded and self.j_max >= self.ring.n:
                bound = self.j_max
            else:
                bound = self.j_max - self.i_max
        else:
            bound = self.j_max

        classes_of = keys

        def mult(g1, a, g2, b):
            h1 = classes_of[g1][a]
            h2 = classes_of[g2][b]
            coords = self.product_coords(h1, h2)
            if not coords:
                return {}
            target = tuple(x + y for x, y in zip(g1, g2))
            targets = classes_of.get(target, [])
            # map bigraded coordinates onto the component's class ordering
            if mode == "bigraded":
                return dict(coords)
            remap = {}
            for pos, h in enumerate(targets):
                remap[(h.i, h.j, h.index)] = pos
            out = {}
            ti, tj = h1.i + h2.i, h1.j + h2.j
            for idx, c in coords.items():
                out[remap[(ti, tj, idx)]] = c
            return out

        labels = {g: [f"h[{h.i},{h.j}]_{h.index}" for h in v]
                  for g, v in classes_of.items()}
        return GradedAlgebraData(self.field, components, mult, weight,
                                 bound=bound, labels=labels)


def homology(ring: QuotientRing, i_max: int, j_max: int) -> KoszulHomologyAlgebra:
    """Koszul homology algebra of the ring, trusted up to (i_max, j_max)."""
    return KoszulHomologyAlgebra(ring, i_max, j_max)


def multigraded_homology(ring: QuotientRing, u: tuple):
    """Dimensions (by homological degree) and bases of the multidegree-u slices.

    Computed directly from the u-slice of the complex; requires a monomial
    defining ideal.  Returns (dims, bases) with dims a dict i -> dim.
    """
    if not ring.is_monomial:
        raise ValueError("multigraded homology needs a monomial defining ideal")
    u = tuple(u)
    if len(u) != ring.n or any(e < 0 for e in u):
        raise ValueError("multidegree length does not match the ring")
    dims = {}
    bases = {}
    if not any(u):
        return {0: 1}, {0: [{((0,) * ring.n, ()): ring.field.one}]}
    top = min(ring.n, sum(u))
    for i in range(0, top + 1):
        basis_here = koszul_basis_multigraded(ring, i, u)
        if not basis_here:
            continue
        sl = _slice_from_bases(ring, ring.field, basis_here,
                               koszul_basis_multigraded(ring, i - 1, u),
                               koszul_basis_multigraded(ring, i + 1, u))
        if sl.dim:
            dims[i] = sl.dim
            bases[i] = [{basis_here[pos]: c for pos, c in sorted(rep.items())}
                        for rep in sl.reps]
    return dims, bases
