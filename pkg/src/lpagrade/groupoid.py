"""The boundary path groupoid of a row-finite graph without sources, on
eventually periodic (lasso) points, or spine-tailed points of a ladder.

Elements are triples (x, k, y) with sigma^m x = sigma^n y and k = m - n.
The cylinder Z(alpha, beta) = {(alpha z, |alpha| - |beta|, beta z)} is a compact
open bisection, and 1_{Z(alpha,beta)} corresponds to alpha beta^* in L(E).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .algebra import LpaElement, Monomial, mono_mul
from .errors import InvalidInput, NotComposableTails, UnsupportedGraph
from .graph import Graph, LadderGraph, Path, structural_report
from .lasso import (
    InfinitePath,
    LassoPath,
    SpinePath,
    canonical_lasso,
    infinite_path_from,
    prepend,
    shift,
)
from .lengths import ExhaustedProof, property_y_witness

AnyGraph = Union[Graph, LadderGraph]


def require_groupoid_graph(g: AnyGraph) -> None:
    if isinstance(g, LadderGraph):
        return
    rep = structural_report(g)
    if not rep.row_finite or rep.sources:
        raise UnsupportedGraph("boundary-path constructions need a row-finite graph without sources")


# ---------------------------------------------------------------------------
# tail equivalence
# ---------------------------------------------------------------------------


def tail_lag(x: InfinitePath, y: InfinitePath) -> Optional[tuple[int, int]]:
    """Lags k with sigma^m x = sigma^n y, m - n = k, as (k0, modulus):
    all k = k0 (mod modulus), or exactly k0 when modulus is 0. None if the
    tails never meet."""
    if isinstance(x, SpinePath) and isinstance(y, SpinePath):
        return (len(x.head) - x.stage) - (len(y.head) - y.stage), 0
    if not (isinstance(x, LassoPath) and isinstance(y, LassoPath)):
        return None
    c = len(x.cycle)
    if len(y.cycle) != c:
        return None
    for b in range(c):
        if y.cycle[b:] + y.cycle[:b] == x.cycle:
            return (len(x.prefix) - (len(y.prefix) + b)) % c, c
    return None


def _lag_ok(lag: Optional[tuple[int, int]], k: int) -> bool:
    if lag is None:
        return False
    k0, mod = lag
    return k == k0 if mod == 0 else (k - k0) % mod == 0


@dataclass(frozen=True)
class GroupoidElement:
    x: InfinitePath
    k: int
    y: InfinitePath
    m: int  # |mu| for the minimal decomposition x = mu w, y = nu w
    n: int

    @property
    def degree(self) -> int:
        return self.k

    def to_json(self) -> dict:
        return {"x": self.x.to_text(), "k": self.k, "y": self.y.to_text()}


def element_validate(g: AnyGraph, x: InfinitePath, k: int, y: InfinitePath) -> GroupoidElement:
    if not _lag_ok(tail_lag(x, y), k):
        raise NotComposableTails(f"({x.to_text()}, {k}, {y.to_text()}) is not a groupoid element")
    if isinstance(x, SpinePath):
        top = max(len(x.head), len(y.head) + k, k, 0) + 1
    else:
        top = max(len(x.prefix), len(y.prefix) + k, k, 0) + len(x.cycle)
    for m in range(max(0, k), top + 1):
        if shift(g, x, m) == shift(g, y, m - k):
            return GroupoidElement(x, k, y, m, m - k)
    raise AssertionError("lag admitted but no decomposition found")  # pragma: no cover


def unit(g: AnyGraph, x: InfinitePath) -> GroupoidElement:
    return GroupoidElement(x, 0, x, 0, 0)


def compose(g: AnyGraph, h1: GroupoidElement, h2: GroupoidElement) -> GroupoidElement:
    if h1.y != h2.x:
        raise NotComposableTails("s(h1) != r(h2)")
    return element_validate(g, h1.x, h1.k + h2.k, h2.y)


def inverse(g: AnyGraph, h: GroupoidElement) -> GroupoidElement:
    return GroupoidElement(h.y, -h.k, h.x, h.n, h.m)


# ---------------------------------------------------------------------------
# cylinder bisections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CylinderBisection:
    alpha: Path
    beta: Path

    @property
    def degree(self) -> int:
        return len(self.alpha.edges) - len(self.beta.edges)

    def to_json(self) -> dict:
        from .syntax import format_leg

        return {"alpha": format_leg(self.alpha), "beta": format_leg(self.beta)}


def bisection(alpha: Path, beta: Path) -> CylinderBisection:
    if alpha.src != beta.src:
        raise InvalidInput("Z(alpha, beta) needs s(alpha) = s(beta)")
    return CylinderBisection(alpha, beta)


def _starts_with(p: Path, q: Path) -> Optional[tuple[str, ...]]:
    """The remainder of p after q, when q is an initial segment of p."""
    if p.rng != q.rng or len(p.edges) < len(q.edges):
        return None
    n = len(q.edges)
    return p.edges[n:] if p.edges[:n] == q.edges else None


def bisection_product(B: CylinderBisection, D: CylinderBisection) -> Optional[CylinderBisection]:
    """Z(a,b) Z(c,d): the arrows (a z, b z)(c w, d w) compose exactly when
    b z = c w, i.e. one of b, c extends the other."""
    a, b = B.alpha, B.beta
    c, d = D.alpha, D.beta
    rest = _starts_with(c, b)
    if rest is not None:
        # c = b c'; points z = c' w
        return CylinderBisection(Path(a.rng, c.src, a.edges + rest), d)
    rest = _starts_with(b, c)
    if rest is not None:
        # b = c b'; points w = b' z
        return CylinderBisection(a, Path(d.rng, b.src, d.edges + rest))
    return None


def _has_prefix(x: InfinitePath, p: Path) -> bool:
    return x.rng == p.rng and x.first_edges(len(p.edges)) == p.edges


def element_in_bisection(g: AnyGraph, h: GroupoidElement, B: CylinderBisection) -> bool:
    if h.k != B.degree:
        return False
    if not (_has_prefix(h.x, B.alpha) and _has_prefix(h.y, B.beta)):
        return False
    return shift(g, h.x, len(B.alpha.edges)) == shift(g, h.y, len(B.beta.edges))


def point_in_bisection(g: AnyGraph, B: CylinderBisection, z: InfinitePath) -> GroupoidElement:
    """The arrow (alpha z, |alpha| - |beta|, beta z)."""
    return element_validate(g, prepend(g, B.alpha, z), B.degree, prepend(g, B.beta, z))


def steinberg_product_check(g: Graph, m1: Monomial, m2: Monomial) -> bool:
    """[a|b] <-> Z(a,b) turns monomial products into bisection products."""
    alg = mono_mul(g, m1, m2)
    geo = bisection_product(CylinderBisection(*m1), CylinderBisection(*m2))
    if alg is None or geo is None:
        return alg is None and geo is None
    if (geo.alpha, geo.beta) != alg:
        return False
    return geo.degree == CylinderBisection(*m1).degree + CylinderBisection(*m2).degree


# ---------------------------------------------------------------------------
# strong grading of the groupoid
# ---------------------------------------------------------------------------


@dataclass
class GroupoidFactorization:
    element: GroupoidElement
    k: int
    pos_neg: tuple[GroupoidElement, GroupoidElement]
    neg_pos: Union[tuple[GroupoidElement, GroupoidElement], ExhaustedProof]

    def to_json(self) -> dict:
        out = {
            "element": self.element.to_json(),
            "k": self.k,
            "pos_neg": [h.to_json() for h in self.pos_neg],
        }
        if isinstance(self.neg_pos, ExhaustedProof):
            out["neg_pos"] = {"exhausted": True, "k": self.neg_pos.k, "bound": self.neg_pos.bound,
                              "exact": self.neg_pos.exact}
        else:
            out["neg_pos"] = [h.to_json() for h in self.neg_pos]
        return out


def factor_element(g: AnyGraph, h: GroupoidElement, k: int, allow_empty_prefix: bool = False) -> GroupoidFactorization:
    """Write a degree-0 arrow as a product of arrows of degrees (k, -k) and,
    when possible, (-k, k)."""
    require_groupoid_graph(g)
    if h.k != 0:
        raise InvalidInput("factor_element expects a degree-0 arrow")
    if k < 1:
        raise InvalidInput("k must be at least 1")
    x, y = h.x, h.y
    sx = shift(g, x, k)
    pos = (element_validate(g, x, k, sx), element_validate(g, sx, -k, y))
    found = property_y_witness(g, x, k, allow_empty_prefix)
    if isinstance(found, ExhaustedProof):
        neg: Union[tuple, ExhaustedProof] = found
    else:
        z = prepend(g, found.beta, shift(g, x, found.n))
        neg = (element_validate(g, x, -k, z), element_validate(g, z, k, y))
    return GroupoidFactorization(h, k, pos, neg)


# ---------------------------------------------------------------------------
# functions on the groupoid
# ---------------------------------------------------------------------------


def evaluate(g: AnyGraph, f: dict[CylinderBisection, Fraction], h: GroupoidElement) -> Fraction:
    """Value at h of sum c_B 1_B."""
    return sum((c for B, c in f.items() if element_in_bisection(g, h, B)), Fraction(0))


def as_function(x: LpaElement) -> dict[CylinderBisection, Fraction]:
    return {CylinderBisection(a, b): c for (a, b), c in x.terms.items()}


def random_lasso(g: Graph, v: str, rng: random.Random) -> LassoPath:
    """A random eventually periodic path with range v (needs no sources)."""
    seen = {v: 0}
    edges: list[str] = []
    cur = v
    while True:
        e = rng.choice(g.receivers[cur])
        edges.append(e)
        cur = g.edge[e].source
        if cur in seen:
            i = seen[cur]
            return canonical_lasso(g, tuple(edges[:i]), tuple(edges[i:]))
        seen[cur] = len(edges)


def random_point(g: AnyGraph, v: str, rng: random.Random) -> InfinitePath:
    if isinstance(g, LadderGraph):
        return infinite_path_from(g, v)
    return random_lasso(g, v, rng)


def support_containment(
    g: Graph,
    F: dict[CylinderBisection, Fraction],
    H: dict[CylinderBisection, Fraction],
    rng: random.Random,
    points_per_term: int = 3,
) -> dict:
    """Check that the convolution F * H, computed through the algebra, is
    supported inside the union of the products B D (B in F, D in H), and that
    its values agree with sum c_B d_D 1_{BD} at the sampled arrows."""
    FX = LpaElement(g, {(B.alpha, B.beta): c for B, c in F.items()})
    HX = LpaElement(g, {(D.alpha, D.beta): c for D, c in H.items()})
    prod = as_function(FX * HX)
    direct: dict[CylinderBisection, Fraction] = {}
    for B, c in F.items():
        for D, d in H.items():
            BD = bisection_product(B, D)
            if BD is not None:
                direct[BD] = direct.get(BD, 0) + c * d
    checked = outside = mismatched = 0
    for Z in prod:
        for _ in range(points_per_term):
            h = point_in_bisection(g, Z, random_point(g, Z.alpha.src, rng))
            val = evaluate(g, prod, h)
            if evaluate(g, direct, h) != val:
                mismatched += 1
            if val:
                checked += 1
                if not any(element_in_bisection(g, h, BD) for BD in direct):
                    outside += 1
    return {"nonzero_points": checked, "outside_support": outside, "value_mismatches": mismatched,
            "ok": outside == 0 and mismatched == 0}
