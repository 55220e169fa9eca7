"""Truncated completions of graded algebras.

Concrete kinds: R[[T]]/T^{N+1} (homogeneous pieces R*T^i), the truncated
differential algebra, and the trivial cga concentrated in degree 0.
Positive continuous maps are stored by their degree-raising components
acting R-linearly on each homogeneous piece; the semilinear algebra-map
kinds (higher derivations, d_Dif, connections) live in their own modules
where the extension rules are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DescriptorMismatch
from .hdiff import DifDescriptor, DifElement, DifRing
from .series import TSeries

POWER_SERIES = "power_series"
DIF_ALGEBRA = "dif_algebra"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class CgaDescriptor:
    kind: str
    ring: object  # coefficient ring adapter (or DifDescriptor for dif kind)
    order: int

    @staticmethod
    def power_series(ring, order: int) -> "CgaDescriptor":
        return CgaDescriptor(POWER_SERIES, ring, order)

    @staticmethod
    def dif(desc: DifDescriptor) -> "CgaDescriptor":
        return CgaDescriptor(DIF_ALGEBRA, desc, desc.order)

    @staticmethod
    def trivial(ring) -> "CgaDescriptor":
        return CgaDescriptor(TRIVIAL, ring, 0)


class CgaElement:
    """An element sum_i b_i with homogeneous components b_i, i <= N."""

    __slots__ = ("desc", "data")

    def __init__(self, desc: CgaDescriptor, data):
        self.desc = desc
        self.data = data  # TSeries | DifElement | ring element

    @staticmethod
    def from_series(desc: CgaDescriptor, series: TSeries) -> "CgaElement":
        return CgaElement(desc, series)

    @staticmethod
    def one(desc: CgaDescriptor) -> "CgaElement":
        if desc.kind == POWER_SERIES:
            return CgaElement(desc, TSeries.one(desc.ring, desc.order))
        if desc.kind == DIF_ALGEBRA:
            return CgaElement(desc, DifElement.one(desc.ring))
        return CgaElement(desc, desc.ring.one)

    def component(self, i: int):
        """pr_i: the degree-i homogeneous part."""
        if self.desc.kind == POWER_SERIES:
            return self.data[i]
        if self.desc.kind == DIF_ALGEBRA:
            return self.data.degree_component(i)
        return self.data if i == 0 else None

    def augmentation(self):
        return self.component(0)

    def _check(self, other: "CgaElement"):
        if self.desc != other.desc:
            raise DescriptorMismatch("cga descriptors differ")

    def __add__(self, other):
        self._check(other)
        if self.desc.kind == TRIVIAL:
            return CgaElement(self.desc, self.desc.ring.add(self.data, other.data))
        return CgaElement(self.desc, self.data + other.data)

    def __mul__(self, other):
        self._check(other)
        if self.desc.kind == TRIVIAL:
            return CgaElement(self.desc, self.desc.ring.mul(self.data, other.data))
        return CgaElement(self.desc, self.data * other.data)

    def __eq__(self, other):
        return isinstance(other, CgaElement) and self.desc == other.desc and self.data == other.data

    def __repr__(self):
        return f"CgaElement({self.data!r})"


def multiply(x: CgaElement, y: CgaElement) -> CgaElement:
    """Graded product truncated at N: (xy)_k = sum_{i+j=k} x_i y_j."""
    return x * y


class TensorElement:
    """Element of B (x) B~ for two power-series cgas over the same ring:
    finitely many coefficients on the pure tensors T^i (x) T^j."""

    def __init__(self, left: CgaDescriptor, right: CgaDescriptor, terms: dict):
        if left.ring != right.ring:
            raise DescriptorMismatch("tensor factors over different base rings")
        self.left = left
        self.right = right
        self.order = max(left.order, right.order)
        ring = left.ring
        self.terms = {
            ij: c for ij, c in terms.items() if not ring.is_zero(c) and sum(ij) <= self.order
        }

    def __add__(self, other):
        ring = self.left.ring
        out = dict(self.terms)
        for ij, c in other.terms.items():
            s = ring.add(out.get(ij, ring.zero), c)
            if ring.is_zero(s):
                out.pop(ij, None)
            else:
                out[ij] = s
        return TensorElement(self.left, self.right, out)

    def __mul__(self, other):
        ring = self.left.ring
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                ij = (i1 + i2, j1 + j2)
                if sum(ij) > self.order:
                    continue
                s = ring.add(out.get(ij, ring.zero), ring.mul(c1, c2))
                out[ij] = s
        return TensorElement(self.left, self.right, out)

    def component(self, k: int) -> dict:
        """Degree-k part: (B (x) B~)_k = sum_{i+j=k} B_i (x) B~_j."""
        return {ij: c for ij, c in self.terms.items() if sum(ij) == k}

    def component_rank(self, k: int) -> int:
        """Number of independent pure tensors supporting the degree-k part."""
        return len(self.component(k))

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __repr__(self):
        return f"TensorElement({self.terms!r})"


def tensor(x: CgaElement, y: CgaElement) -> TensorElement:
    if x.desc.kind != POWER_SERIES or y.desc.kind != POWER_SERIES:
        raise DescriptorMismatch("tensor is implemented for power-series cgas")
    ring = x.desc.ring
    terms: dict = {}
    for i, a in enumerate(x.data.coeffs):
        if ring.is_zero(a):
            continue
        for j, b in enumerate(y.data.coeffs):
            if not ring.is_zero(b):
                terms[(i, j)] = ring.mul(a, b)
    return TensorElement(x.desc, y.desc, terms)


class PositiveMap:
    """A positive continuous K-module map between power-series cgas.

    components[i][j] is the element of R through which g^{(i)} acts on the
    degree-j piece (R-linearly); absent entries are zero. Positivity is
    built in: there are no components for i < 0.
    """

    def __init__(self, source: CgaDescriptor, target: CgaDescriptor, components: dict):
        self.source = source
        self.target = target
        ring = target.ring
        comps = {}
        for i, row in components.items():
            if not 0 <= i <= target.order:
                continue
            filtered = {j: c for j, c in row.items() if not ring.is_zero(c)}
            if filtered:
                comps[i] = filtered
        self.components = comps

    @staticmethod
    def identity(desc: CgaDescriptor) -> "PositiveMap":
        return PositiveMap(desc, desc, {0: {j: desc.ring.one for j in range(desc.order + 1)}})

    def component(self, i: int, j: int):
        return self.components.get(i, {}).get(j, self.target.ring.zero)

    def apply(self, x: CgaElement) -> CgaElement:
        ring = self.target.ring
        out = [ring.zero] * (self.target.order + 1)
        for i, row in self.components.items():
            for j, c in row.items():
                if i + j <= self.target.order and j <= x.desc.order:
                    xj = x.data[j]
                    if not ring.is_zero(xj):
                        out[i + j] = ring.add(out[i + j], ring.mul(c, xj))
        return CgaElement(self.target, TSeries(ring, out, self.target.order))

    def min_support(self) -> int:
        """Smallest i with a nonzero component (for degree bookkeeping)."""
        live = [i for i, row in self.components.items() if row]
        return min(live) if live else self.target.order + 1

    def __eq__(self, other):
        return (
            isinstance(other, PositiveMap)
            and self.source == other.source
            and self.target == other.target
            and self.components == other.components
        )

    def __repr__(self):
        return f"PositiveMap({self.components!r})"


def scale_action(a: int, g: PositiveMap) -> PositiveMap:
    """The K-action (a.g)^{(i)} = a^i g^{(i)}."""
    ring = g.target.ring
    out = {}
    for i, row in g.components.items():
        out[i] = {j: ring.mul_int(c, _int_pow(a, i)) for j, c in row.items()}
    return PositiveMap(g.source, g.target, out)


def _int_pow(a: int, i: int) -> int:
    return 1 if i == 0 else a**i


def compose(h: PositiveMap, g: PositiveMap) -> PositiveMap:
    """(h o g)^{(k)} = sum_{i+j=k} h^{(i)} o g^{(j)}, truncated at N."""
    if g.target != h.source:
        raise DescriptorMismatch("maps are not composable")
    ring = h.target.ring
    order = h.target.order
    out: dict = {}
    for jg, row_g in g.components.items():
        for src, cg in row_g.items():
            # g sends degree src to degree src + jg through cg
            for ih, row_h in h.components.items():
                ch = row_h.get(src + jg)
                if ch is None:
                    continue
                k = ih + jg
                if k > order or src + k > order:
                    continue
                dest = out.setdefault(k, {})
                prev = dest.get(src, ring.zero)
                dest[src] = ring.add(prev, ring.mul(ch, cg))
    return PositiveMap(g.source, h.target, out)
