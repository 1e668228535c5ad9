"""Potentials, groupoid morphisms/characters, and derivations.

A potential is a rational-valued function on the group given by a finite
table plus an optional named closed-form rule.  Closed-form supports are
truncated at a cutoff index K; evaluation is then the exact derivation of
the truncated potential, so algebraic identities (Leibniz, character
additivity) hold exactly, while `tail_bound` quantifies what the cutoff
discards in q-norm.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .groups import DEFAULT_NODE_BUDGET, GroupElement, GroupModel, get_model
from .ring import Coeff, GroupRingVector

DEFAULT_TRUNCATION = 10**4


# ---------------------------------------------------------------------------
# Closed-form potential rules

def _harmonic_value(payload) -> Fraction:
    # supported on Ap*Ax^-k = Ax^-k Ap A1^-k, triple (1, -k, -k), value 1/k
    a, b, c = payload
    if a == 1 and b == c and b <= -1:
        return Fraction(1, -b)
    return Fraction(0)


def _harmonic_support(model, trunc_k):
    return [model.element((1, -k, -k)) for k in range(1, trunc_k + 1)]


def _harmonic_tail_pow(trunc_k: int, q: int) -> Fraction:
    # sum_{k>K} (1/k)^q <= 1/((q-1) K^(q-1)); divergent for q = 1
    if q <= 1:
        raise UsageError("harmonic closed form has no finite l1 tail bound")
    return Fraction(1, (q - 1) * trunc_k ** (q - 1))


CLOSED_FORMS = {
    "appendix_harmonic": {
        "model": "h3",
        "value": _harmonic_value,
        "support": _harmonic_support,
        "tail_pow": _harmonic_tail_pow,
    },
}


class Potential:
    """phi: G -> Q as a finite table plus optional closed-form rule."""

    def __init__(self, model: GroupModel, table=None, closed_form=None,
                 trunc_k: int = DEFAULT_TRUNCATION):
        self.model = model
        self.table = {}
        for g, v in (table or {}).items():
            model._check(g)
            v = Fraction(v)
            if v != 0:
                self.table[g] = v
        if closed_form is not None:
            rule = CLOSED_FORMS.get(closed_form)
            if rule is None:
                raise UsageError(f"unknown closed form {closed_form!r}")
            if rule["model"] != model.name:
                raise UsageError(
                    f"closed form {closed_form!r} is defined on model "
                    f"{rule['model']}, not {model.name}"
                )
            for g in self.table:
                if rule["value"](g.payload) != 0:
                    raise UsageError(
                        "table and closed-form supports must be disjoint"
                    )
        if trunc_k < 1:
            raise UsageError("truncation cutoff must be >= 1")
        self.closed_form = closed_form
        self.trunc_k = trunc_k
        self._support_cache = None

    def is_exact(self) -> bool:
        return self.closed_form is None

    def value(self, g: GroupElement) -> Fraction:
        """phi(g) under the truncation policy (0 beyond the cutoff)."""
        self.model._check(g)
        if g in self.table:
            return self.table[g]
        if self.closed_form is not None:
            rule = CLOSED_FORMS[self.closed_form]
            v = rule["value"](g.payload)
            if v != 0 and g in self._closed_support_set():
                return v
        return Fraction(0)

    def _closed_support_set(self):
        if self._support_cache is None:
            if self.closed_form is None:
                self._support_cache = frozenset()
            else:
                rule = CLOSED_FORMS[self.closed_form]
                self._support_cache = frozenset(
                    rule["support"](self.model, self.trunc_k)
                )
        return self._support_cache

    def support(self) -> list:
        """Sorted effective (truncated) support."""
        supp = set(self.table) | set(self._closed_support_set())
        return sorted(supp)

    def lq_pow(self, q: int) -> Fraction:
        total = Fraction(0)
        for g in self.support():
            total += abs(self.value(g)) ** q
        return total

    def lq_norm(self, q: int) -> float:
        return float(self.lq_pow(q)) ** (1.0 / q)

    def tail_bound_pow(self, q: int) -> Fraction:
        """Upper bound on the q-th-power mass the truncation discards."""
        if self.closed_form is None:
            return Fraction(0)
        return CLOSED_FORMS[self.closed_form]["tail_pow"](self.trunc_k, q)

    # -- wire format --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "model": self.model.name,
            "table": [
                [g.encode(), str(v)]
                for g, v in sorted(self.table.items(), key=lambda kv: kv[0].encode())
            ],
            "closed_form": self.closed_form,
            "truncation": self.trunc_k,
        }

    @classmethod
    def from_json(cls, data) -> "Potential":
        model = get_model(data["model"])
        table = {model.decode(enc): Fraction(v) for enc, v in data.get("table", [])}
        return cls(
            model,
            table,
            closed_form=data.get("closed_form"),
            trunc_k=data.get("truncation", DEFAULT_TRUNCATION),
        )

    @classmethod
    def load(cls, path) -> "Potential":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# Groupoid morphisms and characters


@dataclass(frozen=True)
class Morphism:
    """The pair (u, v): a morphism from v^-1 u to u v^-1.

    Stored exactly as the (h, g) pair the character formula chi(h, g)
    consumes, with u = h and v = g.
    """

    u: GroupElement
    v: GroupElement

    def source(self) -> GroupElement:
        return self.v.inverse() * self.u

    def target(self) -> GroupElement:
        return self.u * self.v.inverse()

    def is_loop(self) -> bool:
        return self.u * self.v == self.v * self.u


def identity_morphism(obj: GroupElement) -> Morphism:
    """The identity loop at an object: (g, e)."""
    return Morphism(obj, obj.model.identity())


def compose_morphisms(psi: Morphism, phi: Morphism) -> Morphism:
    """(u2, v2) o (u1, v1) = (v2 u1, v2 v1), defined when the target of phi
    equals the source of psi."""
    if phi.target() != psi.source():
        raise UsageError("morphisms are not composable")
    return Morphism(psi.v * phi.u, psi.v * phi.v)


def character_from_potential(phi: Potential, mor: Morphism) -> Fraction:
    """chi(h, g) = phi(h g^-1) - phi(g^-1 h)."""
    h, g = mor.u, mor.v
    ginv = g.inverse()
    return phi.value(h * ginv) - phi.value(ginv * h)


# ---------------------------------------------------------------------------
# Derivations


class Derivation:
    """Either an inner derivation [x, -] or the derivation induced by a
    potential; the two agree whenever the potential is the coefficient
    table of x."""

    def __init__(self, model, potential=None, inner_vector=None):
        if (potential is None) == (inner_vector is None):
            raise UsageError("exactly one of potential / inner_vector required")
        self.model = model
        self.potential_obj = potential
        self.inner_vector = inner_vector

    @classmethod
    def inner(cls, x: GroupRingVector) -> "Derivation":
        return cls(x.model, inner_vector=x)

    @classmethod
    def from_potential(cls, phi: Potential) -> "Derivation":
        return cls(phi.model, potential=phi)

    def is_exact(self) -> bool:
        return self.potential_obj is None or self.potential_obj.is_exact()

    def apply(self, g: GroupElement) -> GroupRingVector:
        """d(g); exact over the (truncated) support."""
        self.model._check(g)
        if self.inner_vector is not None:
            xg = self.inner_vector.mul_elem_right(g)
            gx = self.inner_vector.mul_elem_left(g)
            return xg - gx
        phi = self.potential_obj
        ginv = g.inverse()
        supp = phi.support()
        span = set(supp)
        span.update(self.model.conjugate(ginv, s) for s in supp)
        terms = {}
        for t in span:
            c = phi.value(self.model.conjugate(g, t)) - phi.value(t)
            if c != 0:
                terms[g * t] = Coeff(c)
        v = GroupRingVector(self.model)
        v.terms = terms
        return v

    def apply_linear(self, a: GroupRingVector) -> GroupRingVector:
        out = GroupRingVector.zero(self.model)
        for g, c in a.terms.items():
            out = out + self.apply(g).scale(c)
        return out


def inner_derivation_apply(x: GroupRingVector, a: GroupRingVector) -> GroupRingVector:
    """D_x(a) = x a - a x, exactly."""
    x._check_model(a)
    return x * a - a * x


def character_from_derivation(d: Derivation, mor: Morphism) -> Coeff:
    """chi(h, g) = delta_h(d(g))."""
    return d.apply(mor.v).coefficient(mor.u)


def leibniz_residual(d: Derivation, g: GroupElement, h: GroupElement):
    """l1 norm of d(gh) - d(g) h - g d(h); 0 for exact evaluations."""
    lhs = d.apply(g * h)
    rhs = d.apply(g).mul_elem_right(h) + d.apply(h).mul_elem_left(g)
    return (lhs - rhs).l1_norm()


def quasi_inner_check(source, loops):
    """Check that the character vanishes on the given loop morphisms.

    `source` is a Derivation, a Potential, or a bare character function
    morphism -> value; returns (ok, witness) where witness is the first
    violating (morphism, value), if any.
    """
    for mor in loops:
        if not mor.is_loop():
            raise UsageError(f"morphism {mor} is not a loop")
    for mor in loops:
        if isinstance(source, Potential):
            val = character_from_potential(source, mor)
            bad = val != 0
        elif isinstance(source, Derivation):
            val = character_from_derivation(source, mor)
            bad = not val.is_zero()
        else:
            val = source(mor)
            bad = val != 0
        if bad:
            return False, (mor, val)
    return True, None


# ---------------------------------------------------------------------------
# Probes


def g_boundedness_probe(
    d: Derivation,
    model: GroupModel,
    radius: int,
    p: float,
    node_budget: int = DEFAULT_NODE_BUDGET,
):
    """Max of ||d(g)||_p over the Cayley ball, with argmax.

    For potential-induced derivations, conjugators with the same action on
    the support share one norm computation.
    """
    if p < 1:
        raise UsageError(f"g_boundedness_probe needs p >= 1, got {p}")
    ball = model.cayley_ball(radius, node_budget)
    supp = d.potential_obj.support() if d.potential_obj is not None else None
    memo = {}
    best = -1.0
    argmax = None
    for g in sorted(ball, key=lambda e: (ball[e], e.encode())):
        if supp is not None:
            key = tuple(model.conjugate(g, s) for s in supp)
            if key not in memo:
                memo[key] = _potential_image_norm(d.potential_obj, supp, key, p)
            norm = memo[key]
        else:
            norm = d.apply(g).lp_norm(p)
        if norm > best:
            best = norm
            argmax = g
    return best, argmax


def _potential_image_norm(phi, supp, images, p) -> float:
    # ||d(g)||_p depends only on the conjugated images of the support:
    # the terms of d(g) sit at the distinct elements g*t, t in supp(phi)
    # union its preimage, so the norm is the lp norm of the coefficient
    # multiset {phi(g t g^-1) - phi(t)}.
    fwd = dict(zip(supp, images))
    image_set = set(images)
    total = 0.0
    for t in supp:
        c = phi.value(fwd[t]) - phi.value(t)
        if c:
            total += float(abs(c)) ** p
    for s in supp:
        # t = g^-1 s g lies outside supp iff s is not a forward image;
        # such t contributes phi(g t g^-1) - phi(t) = phi(s) - 0
        if s not in image_set:
            c = phi.value(s)
            if c:
                total += float(abs(c)) ** p
    return total ** (1.0 / p)


def stabilisation_probe(phi: Potential, ball, radii):
    """For each radius r: sup |phi| over ball vertices at distance > r
    (the stabilised-at-0 convention)."""
    out = []
    for r in radii:
        sup = Fraction(0)
        for v, dv in ball.dist.items():
            if dv > r:
                sup = max(sup, abs(phi.value(v)))
        out.append((r, sup))
    return out


def edge_jump_probe(phi: Potential, ball, eps: Fraction):
    """Count adjacent vertex pairs in the ball whose potential gap is
    >= eps, with witnesses."""
    eps = Fraction(eps)
    if eps <= 0:
        raise UsageError("edge_jump_probe needs eps > 0")
    seen_pairs = set()
    witnesses = []
    for e in ball.edges:
        if e.is_loop():
            continue
        pair = tuple(sorted((e.src, e.dst)))
        if pair in seen_pairs:
            continue
        seen_pairs.add(pair)
        gap = abs(phi.value(e.src) - phi.value(e.dst))
        if gap >= eps:
            witnesses.append((pair[0], pair[1], gap))
    witnesses.sort(key=lambda w: (w[0].encode(), w[1].encode()))
    return len(witnesses), witnesses
