"""Complexified differential forms on a chart: scalar, tangent-valued, bundle-valued.

Components are stored against the real coordinate coframe with Gaussian-rational
polynomial coefficients; bidegree is a derived property obtained through the
chart's projectors, never a storage format (no closed (p,q)-coframe exists on a
non-integrable chart).
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import TYPE_CHECKING, Mapping, NamedTuple, Sequence

from .algebra import GaussRational, PolyScalar

if TYPE_CHECKING:
    from .chart import Chart


class Bidegree(NamedTuple):
    p: int
    q: int


def _merge_sign(left: tuple, right: tuple):
    """Merge two strictly increasing index tuples; None if they intersect."""
    inversions = 0
    merged = []
    i = j = 0
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        if a == b:
            return None, 0
        if a < b:
            merged.append(a)
            i += 1
        else:
            merged.append(b)
            inversions += len(left) - i
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return tuple(merged), (1 if inversions % 2 == 0 else -1)


class ScalarForm:
    """A complexified form: map from strictly increasing index tuples to PolyScalar.

    Mixed degrees are allowed in one container; most operations preserve
    homogeneity and the bidegree machinery insists on it.
    """

    __slots__ = ("chart", "terms")

    def __init__(self, chart: "Chart", terms: Mapping[tuple, PolyScalar] | None = None):
        self.chart = chart
        self.terms = dict(terms) if terms else {}

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(chart: "Chart") -> "ScalarForm":
        return ScalarForm(chart)

    @staticmethod
    def function(chart: "Chart", value: PolyScalar) -> "ScalarForm":
        if value.is_zero():
            return ScalarForm(chart)
        return ScalarForm(chart, {(): value})

    @staticmethod
    def constant(chart: "Chart", value) -> "ScalarForm":
        return ScalarForm.function(chart, PolyScalar.constant(value, chart.dim))

    @staticmethod
    def coordinate_function(chart: "Chart", axis: int) -> "ScalarForm":
        return ScalarForm.function(chart, PolyScalar.variable(axis, chart.dim))

    @staticmethod
    def basis_covector(chart: "Chart", axis: int) -> "ScalarForm":
        if not 0 <= axis < chart.dim:
            raise IndexError(f"covector axis {axis} out of range")
        return ScalarForm(chart, {(axis,): PolyScalar.one(chart.dim)})

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self) -> set:
        return {len(key) for key in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a homogeneous form; 0 for the zero form."""
        degs = self.degrees()
        if not degs:
            return 0
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop()

    def degree_part(self, k: int) -> "ScalarForm":
        return ScalarForm(
            self.chart, {key: f for key, f in self.terms.items() if len(key) == k}
        )

    def _check_chart(self, other: "ScalarForm"):
        if self.chart is not other.chart:
            raise ValueError("forms live on different charts")

    # -- linear operations ------------------------------------------------

    def __add__(self, other: "ScalarForm") -> "ScalarForm":
        self._check_chart(other)
        out = dict(self.terms)
        for key, f in other.terms.items():
            acc = out.get(key)
            if acc is None:
                out[key] = f
            else:
                acc = acc + f
                if acc:
                    out[key] = acc
                else:
                    del out[key]
        return ScalarForm(self.chart, out)

    def __neg__(self):
        return ScalarForm(self.chart, {k: -f for k, f in self.terms.items()})

    def __sub__(self, other: "ScalarForm") -> "ScalarForm":
        return self + (-other)

    def scale(self, value) -> "ScalarForm":
        value = GaussRational.coerce(value)
        if not value:
            return ScalarForm(self.chart)
        return ScalarForm(self.chart, {k: f.scale(value) for k, f in self.terms.items()})

    def mul_poly(self, poly: PolyScalar) -> "ScalarForm":
        if poly.is_zero():
            return ScalarForm(self.chart)
        out = {}
        for key, f in self.terms.items():
            g = f * poly
            if g:
                out[key] = g
        return ScalarForm(self.chart, out)

    def conjugate(self) -> "ScalarForm":
        return ScalarForm(self.chart, {k: f.conjugate() for k, f in self.terms.items()})

    # -- graded operations -------------------------------------------------

    def wedge(self, other: "ScalarForm") -> "ScalarForm":
        self._check_chart(other)
        out: dict = {}
        for key_a, fa in self.terms.items():
            for key_b, fb in other.terms.items():
                key, sign = _merge_sign(key_a, key_b)
                if key is None:
                    continue
                coeff = fa * fb
                if sign < 0:
                    coeff = -coeff
                if not coeff:
                    continue
                acc = out.get(key)
                if acc is None:
                    out[key] = coeff
                else:
                    acc = acc + coeff
                    if acc:
                        out[key] = acc
                    else:
                        del out[key]
        return ScalarForm(self.chart, out)

    def interior_basis(self, axis: int) -> "ScalarForm":
        """Contraction with the coordinate frame field of the given axis."""
        out: dict = {}
        for key, f in self.terms.items():
            try:
                pos = key.index(axis)
            except ValueError:
                continue
            reduced = key[:pos] + key[pos + 1 :]
            coeff = f if pos % 2 == 0 else -f
            acc = out.get(reduced)
            if acc is None:
                out[reduced] = coeff
            else:
                acc = acc + coeff
                if acc:
                    out[reduced] = acc
                else:
                    del out[reduced]
        return ScalarForm(self.chart, out)

    def exterior_d(self) -> "ScalarForm":
        out: dict = {}
        for key, f in self.terms.items():
            for axis in range(self.chart.dim):
                if axis in key:
                    continue
                df = f.partial_derivative(axis)
                if df.is_zero():
                    continue
                new_key, sign = _merge_sign((axis,), key)
                coeff = df if sign > 0 else -df
                acc = out.get(new_key)
                if acc is None:
                    out[new_key] = coeff
                else:
                    acc = acc + coeff
                    if acc:
                        out[new_key] = acc
                    else:
                        del out[new_key]
        return ScalarForm(self.chart, out)

    # -- comparison and display ---------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ScalarForm):
            return NotImplemented
        return self.chart is other.chart and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, hash(f)) for k, f in self.terms.items()))

    def __repr__(self):
        return f"ScalarForm({self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda k: (len(k), k)):
            body = "^".join(f"dx{i + 1}" for i in key)
            coeff = str(self.terms[key])
            parts.append(f"({coeff})" + (f" {body}" if body else ""))
        return " + ".join(parts)


class VectorForm:
    """Tangent-valued form K = sum_a kappa^a (x) d/dx_a, all components one degree."""

    __slots__ = ("chart", "degree", "comps")

    def __init__(self, chart: "Chart", degree: int, comps: Sequence[ScalarForm]):
        if len(comps) != chart.dim:
            raise ValueError("need one scalar component per tangent axis")
        for comp in comps:
            if comp.terms and comp.degrees() != {degree}:
                raise ValueError(f"component degree mismatch (expected {degree})")
        self.chart = chart
        self.degree = degree
        self.comps = tuple(comps)

    @staticmethod
    def zero(chart: "Chart", degree: int) -> "VectorForm":
        z = ScalarForm.zero(chart)
        return VectorForm(chart, degree, [z] * chart.dim)

    @staticmethod
    def basis_field(chart: "Chart", axis: int) -> "VectorForm":
        comps = [ScalarForm.zero(chart) for _ in range(chart.dim)]
        comps[axis] = ScalarForm.constant(chart, 1)
        return VectorForm(chart, 0, comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def _check_compatible(self, other: "VectorForm"):
        if self.chart is not other.chart:
            raise ValueError("forms live on different charts")
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise ValueError("vector form degrees differ")

    def __add__(self, other: "VectorForm") -> "VectorForm":
        self._check_compatible(other)
        degree = other.degree if self.is_zero() else self.degree
        return VectorForm(
            self.chart, degree, [a + b for a, b in zip(self.comps, other.comps)]
        )

    def __neg__(self):
        return VectorForm(self.chart, self.degree, [-c for c in self.comps])

    def __sub__(self, other: "VectorForm") -> "VectorForm":
        return self + (-other)

    def scale(self, value) -> "VectorForm":
        return VectorForm(self.chart, self.degree, [c.scale(value) for c in self.comps])

    def conjugate(self) -> "VectorForm":
        return VectorForm(self.chart, self.degree, [c.conjugate() for c in self.comps])

    def value_projected(self, side: str) -> "VectorForm":
        """Project the tangent value onto T^{1,0} (side "1,0") or T^{0,1} ("0,1")."""
        proj = self.chart.projectors()
        mat = proj.P10 if side == "1,0" else proj.P01
        dim = self.chart.dim
        comps = []
        for b in range(dim):
            acc = ScalarForm.zero(self.chart)
            for a in range(dim):
                if self.comps[a].terms and mat[b][a]:
                    acc = acc + self.comps[a].mul_poly(mat[b][a])
            comps.append(acc)
        return VectorForm(self.chart, self.degree, comps)

    def __eq__(self, other):
        if not isinstance(other, VectorForm):
            return NotImplemented
        if self.chart is not other.chart:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.comps == other.comps

    def __repr__(self):
        return f"VectorForm(degree={self.degree}, comps={[str(c) for c in self.comps]})"

    def __str__(self):
        parts = [
            f"[{str(c)}] (x) e{a + 1}" for a, c in enumerate(self.comps) if not c.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


class BundleForm:
    """E-valued form over the trivial rank-r bundle: one scalar form per frame section."""

    __slots__ = ("chart", "rank", "comps")

    def __init__(self, chart: "Chart", comps: Sequence[ScalarForm]):
        self.chart = chart
        self.rank = len(comps)
        self.comps = tuple(comps)

    @staticmethod
    def zero(chart: "Chart", rank: int) -> "BundleForm":
        return BundleForm(chart, [ScalarForm.zero(chart)] * rank)

    @staticmethod
    def section(chart: "Chart", rank: int, index: int) -> "BundleForm":
        comps = [ScalarForm.zero(chart) for _ in range(rank)]
        comps[index] = ScalarForm.constant(chart, 1)
        return BundleForm(chart, comps)

    @staticmethod
    def from_scalar(scalar: ScalarForm, rank: int, index: int = 0) -> "BundleForm":
        comps = [ScalarForm.zero(scalar.chart) for _ in range(rank)]
        comps[index] = scalar
        return BundleForm(scalar.chart, comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def _check_compatible(self, other: "BundleForm"):
        if self.chart is not other.chart or self.rank != other.rank:
            raise ValueError("bundle forms not compatible")

    def __add__(self, other: "BundleForm") -> "BundleForm":
        self._check_compatible(other)
        return BundleForm(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return BundleForm(self.chart, [-c for c in self.comps])

    def __sub__(self, other: "BundleForm") -> "BundleForm":
        return self + (-other)

    def scale(self, value) -> "BundleForm":
        return BundleForm(self.chart, [c.scale(value) for c in self.comps])

    def conjugate(self) -> "BundleForm":
        return BundleForm(self.chart, [c.conjugate() for c in self.comps])

    def __eq__(self, other):
        if not isinstance(other, BundleForm):
            return NotImplemented
        return (
            self.chart is other.chart
            and self.rank == other.rank
            and self.comps == other.comps
        )

    def __str__(self):
        parts = [
            f"[{str(c)}] (x) s{j + 1}" for j, c in enumerate(self.comps) if not c.is_zero()
        ]
        return " + ".join(parts) if parts else "0"


# -- wedge / contraction ------------------------------------------------------


def wedge(alpha: ScalarForm, beta: ScalarForm) -> ScalarForm:
    return alpha.wedge(beta)


def interior(K: VectorForm, target):
    """Interior derivative i_K: kappa^a wedge (contraction along axis a), per axis.

    Acts componentwise on BundleForm.  For K of form degree k+1 this is the
    algebraic derivation of degree k; it kills all degree-0 forms.
    """
    if isinstance(target, BundleForm):
        return BundleForm(target.chart, [interior(K, c) for c in target.comps])
    if K.chart is not target.chart:
        raise ValueError("forms live on different charts")
    out = ScalarForm.zero(target.chart)
    for axis, comp in enumerate(K.comps):
        if comp.is_zero():
            continue
        contracted = target.interior_basis(axis)
        if contracted.terms:
            out = out + comp.wedge(contracted)
    return out


def contract(K: VectorForm, L: VectorForm) -> VectorForm:
    """i_K L: interior of K into each scalar component of L, keeping L's values.

    Degree-0 L has nothing to contract and yields the zero form (the
    convention the bracket machinery relies on).
    """
    if K.chart is not L.chart:
        raise ValueError("forms live on different charts")
    degree = K.degree - 1 + L.degree
    if L.degree == 0 or degree < 0:
        return VectorForm.zero(K.chart, max(degree, 0))
    return VectorForm(K.chart, degree, [interior(K, comp) for comp in L.comps])


def exterior_d(alpha: ScalarForm) -> ScalarForm:
    return alpha.exterior_d()


# -- brackets -----------------------------------------------------------------


def nr_bracket(K: VectorForm, L: VectorForm) -> VectorForm:
    """Nijenhuis-Richardson bracket: i_K L - (-1)^{kl} i_L K.

    Here k = deg K - 1 and l = deg L - 1 are the derivation degrees; the
    result represents the graded commutator [i_K, i_L] of algebraic
    derivations.
    """
    k = K.degree - 1
    l = L.degree - 1
    first = contract(K, L)
    second = contract(L, K)
    if (k * l) % 2 == 0:
        return first - second
    return first + second


def iterated_nr_bracket(K: VectorForm, L: VectorForm, count: int) -> VectorForm:
    """count-fold [..[K, L]^, L]^..; count = 0 returns K unchanged."""
    if count < 0:
        raise ValueError("count must be >= 0")
    out = K
    for _ in range(count):
        out = nr_bracket(out, L)
    return out


def _lie_scalar(K: VectorForm, alpha: ScalarForm) -> ScalarForm:
    """Scalar Lie derivative [i_K, d] alpha, used for bracket extraction."""
    k = K.degree - 1
    first = interior(K, exterior_d(alpha))
    second = exterior_d(interior(K, alpha))
    if k % 2 == 0:
        return first - second
    return first + second


def fn_bracket(K: VectorForm, L: VectorForm) -> VectorForm:
    """Froelicher-Nijenhuis bracket, extracted from the commutator of Lie derivatives.

    [L_K, L_L] is again a Lie-type derivation, hence equals L_M for a unique
    vector form M; applying it to the coordinate functions reads off the
    components of M directly (L_M x^a = M^a).  For vector fields this is the
    classical Lie bracket.
    """
    if K.chart is not L.chart:
        raise ValueError("forms live on different charts")
    chart = K.chart
    sign = 1 if (K.degree * L.degree) % 2 == 0 else -1
    comps = []
    for axis in range(chart.dim):
        xa = ScalarForm.coordinate_function(chart, axis)
        first = _lie_scalar(K, _lie_scalar(L, xa))
        second = _lie_scalar(L, _lie_scalar(K, xa))
        comps.append(first - second.scale(sign))
    return VectorForm(chart, K.degree + L.degree, comps)


# -- bidegree machinery ---------------------------------------------------------


def _projected_coframe(chart: "Chart", axis: int, side: str) -> ScalarForm:
    """The (1,0) or (0,1) part of dx^axis: row `axis` of P10/P01 as a 1-form."""
    key = ("coframe", axis, side)
    cached = chart._coframe_cache.get(key)
    if cached is not None:
        return cached
    proj = chart.projectors()
    mat = proj.P10 if side == "1,0" else proj.P01
    terms = {}
    for c in range(chart.dim):
        if mat[axis][c]:
            terms[(c,)] = mat[axis][c]
    form = ScalarForm(chart, terms)
    chart._coframe_cache[key] = form
    return form


def _projected_basis_form(chart: "Chart", key: tuple, p: int) -> ScalarForm:
    """Pi^{p,q}(dx^key): substitute each slot by its (1,0)/(0,1) part and collect."""
    cache_key = ("piq", key, p)
    cached = chart._coframe_cache.get(cache_key)
    if cached is not None:
        return cached
    k = len(key)
    out = ScalarForm.zero(chart)
    for holo_slots in combinations(range(k), p):
        holo = set(holo_slots)
        factor = ScalarForm.constant(chart, 1)
        for pos, axis in enumerate(key):
            side = "1,0" if pos in holo else "0,1"
            factor = factor.wedge(_projected_coframe(chart, axis, side))
            if factor.is_zero():
                break
        out = out + factor
    chart._coframe_cache[cache_key] = out
    return out


def bidegree_split_scalar(alpha: ScalarForm, p: int, q: int) -> ScalarForm:
    """Pi^{p,q} projection of a homogeneous scalar form."""
    if p < 0 or q < 0:
        raise ValueError("form bidegrees must be non-negative")
    if alpha.is_zero():
        return alpha
    if not alpha.is_homogeneous():
        raise ValueError("bidegree projection needs a homogeneous form")
    if alpha.degree() != p + q:
        raise ValueError(f"(p, q) = ({p}, {q}) does not match form degree {alpha.degree()}")
    chart = alpha.chart
    out = ScalarForm.zero(chart)
    for key, coeff in alpha.terms.items():
        out = out + _projected_basis_form(chart, key, p).mul_poly(coeff)
    return out


def bidegree_split(form, p: int, q: int, value_side: str | None = None):
    """Project onto bidegree (p, q); vector forms additionally select the value side.

    The pieces over all p+q = k sum back to the input, and the projection is
    idempotent, both identically in the polynomial coefficients.
    """
    if isinstance(form, ScalarForm):
        if value_side is not None:
            raise ValueError("scalar forms have no tangent value to project")
        return bidegree_split_scalar(form, p, q)
    if isinstance(form, VectorForm):
        if value_side not in ("1,0", "0,1"):
            raise ValueError('value_side must be "1,0" or "0,1" for vector forms')
        slots = VectorForm(
            form.chart,
            form.degree,
            [bidegree_split_scalar(c, p, q) for c in form.comps],
        )
        return slots.value_projected(value_side)
    raise TypeError(f"cannot bidegree-split {type(form).__name__}")


def conjugate_form(form):
    """Coefficientwise conjugation; swaps (p,q) <-> (q,p) and the value sides."""
    return form.conjugate()


# -- convenience builders -----------------------------------------------------


def vector_one_form_from_matrix(chart: "Chart", mat) -> VectorForm:
    """The vector 1-form sum_{a,b} M[b][a] dx^a (x) e_b of an endomorphism field."""
    comps = []
    for b in range(chart.dim):
        terms = {}
        for a in range(chart.dim):
            if mat[b][a]:
                terms[(a,)] = mat[b][a]
        comps.append(ScalarForm(chart, terms))
    return VectorForm(chart, 1, comps)


def identity_vector_form(chart: "Chart") -> VectorForm:
    """I = sum_a dx^a (x) e_a; satisfies L_I = d and i_I = degree counting."""
    comps = []
    for a in range(chart.dim):
        comps.append(ScalarForm(chart, {(a,): PolyScalar.one(chart.dim)}))
    return VectorForm(chart, 1, comps)


# -- seeded random generators ---------------------------------------------------


def _random_poly(rng: random.Random, num_vars: int, max_degree: int) -> PolyScalar:
    out = PolyScalar.zero(num_vars)
    for _ in range(rng.randint(1, 2)):
        exps = [0] * num_vars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(num_vars)] += 1
        coeff = GaussRational(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3)))
        out = out + PolyScalar.monomial(coeff, exps, num_vars)
    return out


def random_scalar_form(chart: "Chart", degree: int, max_degree: int, rng: random.Random) -> ScalarForm:
    terms = {}
    for key in combinations(range(chart.dim), degree):
        poly = _random_poly(rng, chart.dim, max_degree)
        if poly:
            terms[key] = poly
    return ScalarForm(chart, terms)


def random_vector_form(chart: "Chart", degree: int, max_degree: int, seed) -> VectorForm:
    """Raw random tangent-valued form, no bidegree structure imposed."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    comps = [random_scalar_form(chart, degree, max_degree, rng) for _ in range(chart.dim)]
    return VectorForm(chart, degree, comps)


def random_form(
    chart: "Chart",
    bidegree: tuple,
    value_side: str,
    max_degree: int,
    seed,
) -> VectorForm:
    """Seeded random vector form of exact bidegree, produced by projection.

    A raw random form is generated first and then forced into the requested
    slot bidegree and value side through the chart projectors, so the result
    is exactly of type A^{p,q}(T^{side}) whatever the chart.
    """
    p, q = bidegree
    raw = random_vector_form(chart, p + q, max_degree, seed)
    return bidegree_split(raw, p, q, value_side)


def random_bundle_form(
    chart: "Chart", rank: int, degree: int, max_degree: int, seed
) -> BundleForm:
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return BundleForm(
        chart, [random_scalar_form(chart, degree, max_degree, rng) for _ in range(rank)]
    )
