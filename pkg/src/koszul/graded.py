"""Connected graded algebras as dims + structure constants.

This is the exchange format between the homology machinery and the Tor
engines: a graded algebra is its augmentation-ideal components (keyed by a
tuple grade), a multiplication callback on basis elements, and a trusted
weight bound.  Strand totalization, minimal generators, and minimal
presentations by generators and relations live here too.
"""

from __future__ import annotations

from .fields import Field
from .freealg import FreeAlgebra, NCPresentation
from .sparse import FieldEchelon


def add_grades(g1: tuple, g2: tuple) -> tuple:
    return tuple(a + b for a, b in zip(g1, g2))


class GradedAlgebraData:
    """A connected graded algebra given degreewise.

    ``components`` maps a tuple grade to the dimension of that piece of the
    augmentation ideal; ``mult(g1, a, g2, b)`` returns the product of basis
    elements as a dict ``index -> coefficient`` in grade g1 + g2.  ``weight``
    maps grades to positive ints and bounds the trusted range.
    """

    def __init__(self, field: Field, components: dict, mult, weight,
                 bound, labels=None):
        self.field = field
        self.components = {g: d for g, d in components.items() if d}
        self._mult = mult
        self._weight = weight
        self.bound = bound
        self.labels = labels
        self._memo: dict = {}
        for g, d in self.components.items():
            if weight(g) <= 0:
                raise ValueError(f"grade {g} has nonpositive weight")
            if d < 0:
                raise ValueError(f"negative dimension at grade {g}")

    def weight(self, grade: tuple) -> int:
        return self._weight(grade)

    def grades(self) -> list:
        return sorted(self.components)

    def dim(self, grade: tuple) -> int:
        return self.components.get(grade, 0)

    def weight_dims(self) -> dict:
        """Total dimension per weight (the Hilbert function of the ideal)."""
        out: dict = {}
        for g, d in self.components.items():
            w = self.weight(g)
            out[w] = out.get(w, 0) + d
        return out

    def mult(self, g1: tuple, a: int, g2: tuple, b: int) -> dict:
        key = (g1, a, g2, b)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._mult(g1, a, g2, b)
            self._memo[key] = hit
        return hit

    def mult_vec(self, g1: tuple, vec1: dict, g2: tuple, vec2: dict) -> dict:
        out: dict = {}
        for a, c1 in vec1.items():
            for b, c2 in vec2.items():
                for x, c in self.mult(g1, a, g2, b).items():
                    acc = out.get(x, self.field.zero) + c1 * c2 * c
                    if acc:
                        out[x] = acc
                    else:
                        del out[x]
        return out

    def label(self, grade: tuple, index: int) -> str:
        if self.labels and grade in self.labels:
            return self.labels[grade][index]
        return f"a{self.weight(grade)}_{index}"


def ring_algebra_data(ring, weight_max: int) -> GradedAlgebraData:
    """The quotient ring itself as graded-algebra data on grades (d,)."""
    components = {}
    for d in range(1, weight_max + 1):
        dim = ring.dim(d)
        if dim:
            components[(d,)] = dim

    def mult(g1, a, g2, b):
        d1, d2 = g1[0], g2[0]
        m1 = ring.std_monomials(d1)[a]
        m2 = ring.std_monomials(d2)[b]
        index = ring.basis_index(d1 + d2)
        return {index[m]: c for m, c in ring.mono_product(m1, m2).items()}

    from .polyring import poly_to_string
    labels = {g: [poly_to_string({m: 1}, ring.names) for m in ring.std_monomials(g[0])]
              for g in components}
    return GradedAlgebraData(ring.field, components, mult, lambda g: g[0],
                             bound=weight_max, labels=labels)


def strand_totalize(H) -> GradedAlgebraData:
    """Regrade a Koszul homology algebra by strand degree j - i."""
    return H.algebra_data("strand")


def minimal_generators(A: GradedAlgebraData, d_max: int) -> dict:
    """Bases of (ideal)/(ideal^2) per weight, as coordinate vectors per grade.

    Only meaningful for algebras on 1-tuple grades (one component per weight).
    Returns ``{weight: [(grade, vector)]}``; an empty list means generated
    below that weight.
    """
    if d_max > A.bound:
        raise ValueError(f"requested weight {d_max} beyond trusted bound {A.bound}")
    out: dict = {}
    for g in A.grades():
        if len(g) != 1:
            raise ValueError("minimal generators need single-degree grades")
    for d in range(1, d_max + 1):
        g = (d,)
        dim = A.dim(g)
        if not dim:
            out[d] = []
            continue
        ech = FieldEchelon(A.field)
        for d1 in range(1, d):
            g1, g2 = (d1,), (d - d1,)
            for a in range(A.dim(g1)):
                for b in range(A.dim(g2)):
                    ech.insert(A.mult(g1, a, g2, b))
        gens = []
        for k in range(dim):
            residual, _ = ech.insert({k: A.field.one})
            if residual:
                gens.append((g, {k: A.field.one}))
        out[d] = gens
    return out


def present(A: GradedAlgebraData, d_max: int, gen_names=None) -> NCPresentation:
    """Minimal generators and all relations among them up to weight d_max.

    Relations are monic noncommutative polynomials, leading word largest in
    deg-lex, tails supported on evaluation-independent (standard) words; the
    set per degree is a reduced row-echelon kernel basis of the evaluation map
    onto A.
    """
    gens_by_degree = minimal_generators(A, d_max)
    gens = []
    for d in sorted(gens_by_degree):
        for g, vec in gens_by_degree[d]:
            gens.append((d, g, vec))
    if gen_names is None:
        counters: dict = {}
        gen_names = []
        for d, g, vec in gens:
            counters[d] = counters.get(d, 0) + 1
            gen_names.append(f"g{d}_{counters[d]}")
    algebra = FreeAlgebra(gen_names, [d for d, _, _ in gens], A.field)

    def evaluate(word):
        vec = None
        grade = None
        for idx in word:
            _, gg, gvec = gens[idx]
            if vec is None:
                vec, grade = dict(gvec), gg
            else:
                vec = A.mult_vec(grade, vec, gg, gvec)
                grade = add_grades(grade, gg)
        return vec or {}

    relations = []
    for d in range(1, d_max + 1):
        ech = FieldEchelon(A.field, track="origin")
        for w in sorted(algebra.words_of_degree(d), key=algebra.deglex_key):
            residual, combo = ech.insert(evaluate(w), tag=w)
            if not residual:
                # w evaluates into the span of smaller words: a monic relation
                rel = {w: A.field.one}
                for t, c in combo.items():
                    if c:
                        rel[t] = A.field.neg(c)
                relations.append(rel)
    return NCPresentation(algebra, list(range(len(gens))), relations)
