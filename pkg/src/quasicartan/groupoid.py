"""Finite groupoids with validation, standard constructors, and the
isotropy-based predicates (principal, effective).

Everything is finite and discrete, so a "topological" condition like
effectiveness collapses to a combinatorial one; we still compute it from
the definition (with the discrete interior operator) rather than aliasing
is_principal, so the coincidence is a checked fact, not a shortcut.
"""

from __future__ import annotations

import itertools


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, name, elements, mul_table):
        self.name = name
        self.elements = list(elements)
        self.mul = dict(mul_table)  # (g, h) -> gh
        self.identity = self._find_identity()
        self.inverse = {}
        for g in self.elements:
            for h in self.elements:
                if self.mul[(g, h)] == self.identity and self.mul[(h, g)] == self.identity:
                    self.inverse[g] = h
                    break
        if len(self.inverse) != len(self.elements):
            raise ValueError("not every element has an inverse")
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.mul[(self.mul[(a, b)], c)] != self.mul[(a, self.mul[(b, c)])]:
                raise ValueError(f"multiplication not associative at ({a},{b},{c})")

    def _find_identity(self):
        for e in self.elements:
            if all(self.mul[(e, g)] == g and self.mul[(g, e)] == g for g in self.elements):
                return e
        raise ValueError("group table has no identity")

    def __len__(self):
        return len(self.elements)


def cyclic_group(n):
    elements = list(range(n))
    mul = {(a, b): (a + b) % n for a in elements for b in elements}
    return FiniteGroup(f"cyclic({n})", elements, mul)


def direct_product_group(H1, H2):
    elements = [(a, b) for a in H1.elements for b in H2.elements]
    mul = {((a, b), (c, d)): (H1.mul[(a, c)], H2.mul[(b, d)])
           for (a, b) in elements for (c, d) in elements}
    return FiniteGroup(f"{H1.name}x{H2.name}", elements, mul)


class FiniteGroupoid:
    """A finite groupoid: objects, arrows, source/range, partial composition.

    compose[(a, b)] is defined exactly when src(a) == rng(b), and the
    composite a∘b runs "b first, then a".
    """

    def __init__(self, name, objects, arrows, src, rng, compose, inv, unit_at):
        self.name = name
        self.objects = list(objects)
        self.arrows = list(arrows)
        self.src = dict(src)
        self.rng = dict(rng)
        self.compose = dict(compose)
        self.inv = dict(inv)
        self.unit_at = dict(unit_at)
        self.units = set(unit_at.values())

    def composable(self, a, b):
        return self.src[a] == self.rng[b]

    def composable_pairs(self):
        for a in self.arrows:
            for b in self.arrows:
                if self.src[a] == self.rng[b]:
                    yield (a, b)

    def is_unit(self, a):
        return a in self.units

    def __repr__(self):
        return f"FiniteGroupoid({self.name}, {len(self.objects)} objects, {len(self.arrows)} arrows)"


def make_groupoid(name, objects, arrows, src, rng, compose):
    """Assemble a groupoid from composition data, deriving units and inverses."""
    src = dict(src)
    rng = dict(rng)
    compose = dict(compose)
    unit_at = {}
    for x in objects:
        for u in arrows:
            if src[u] != x or rng[u] != x:
                continue
            if all(compose.get((u, b)) == b for b in arrows if src[u] == rng[b]) and \
               all(compose.get((a, u)) == a for a in arrows if src[a] == rng[u]):
                unit_at[x] = u
                break
        if x not in unit_at:
            raise ValueError(f"no unit arrow at object {x}")
    inv = {}
    for a in arrows:
        for b in arrows:
            if src[b] == rng[a] and rng[b] == src[a] \
                    and compose.get((b, a)) == unit_at[src[a]] \
                    and compose.get((a, b)) == unit_at[rng[a]]:
                inv[a] = b
                break
        if a not in inv:
            raise ValueError(f"arrow {a} has no inverse")
    return FiniteGroupoid(name, objects, arrows, src, rng, compose, inv, unit_at)


def validate_groupoid(G):
    """Exhaustively check the groupoid axioms; returns a violation list."""
    bad = []
    for a in G.arrows:
        if G.src[a] not in G.objects or G.rng[a] not in G.objects:
            bad.append(f"arrow {a} has src/rng outside the object set")
    for a in G.arrows:
        for b in G.arrows:
            defined = (a, b) in G.compose
            should = G.src[a] == G.rng[b]
            if defined != should:
                bad.append(f"compose domain wrong at ({a},{b})")
            elif defined:
                c = G.compose[(a, b)]
                if G.src[c] != G.src[b] or G.rng[c] != G.rng[a]:
                    bad.append(f"src/rng of composite wrong at ({a},{b})")
    for a, b in G.composable_pairs():
        ab = G.compose[(a, b)]
        for c in G.arrows:
            if G.src[b] == G.rng[c]:
                if G.compose[(ab, c)] != G.compose[(a, G.compose[(b, c)])]:
                    bad.append(f"associativity fails at ({a},{b},{c})")
    for x in G.objects:
        u = G.unit_at.get(x)
        if u is None or G.src[u] != x or G.rng[u] != x:
            bad.append(f"unit at {x} missing or not an endo-arrow")
            continue
        for b in G.arrows:
            if G.rng[b] == x and G.compose.get((u, b)) != b:
                bad.append(f"unit at {x} not a left identity for {b}")
            if G.src[b] == x and G.compose.get((b, u)) != b:
                bad.append(f"unit at {x} not a right identity for {b}")
    for a in G.arrows:
        ai = G.inv.get(a)
        if ai is None:
            bad.append(f"no inverse recorded for {a}")
            continue
        if G.compose.get((ai, a)) != G.unit_at[G.src[a]]:
            bad.append(f"inv({a})∘{a} is not the unit at src")
        if G.compose.get((a, ai)) != G.unit_at[G.rng[a]]:
            bad.append(f"{a}∘inv({a}) is not the unit at rng")
    return bad


def full_relation(n):
    """The pair groupoid on n objects: arrows (i,j), (i,j)∘(j,k) = (i,k)."""
    if n < 1:
        raise ValueError("need n >= 1")
    objects = list(range(1, n + 1))
    arrows = [(i, j) for i in objects for j in objects]
    src = {(i, j): j for (i, j) in arrows}
    rng = {(i, j): i for (i, j) in arrows}
    compose = {((i, j), (j2, k)): (i, k)
               for (i, j) in arrows for (j2, k) in arrows if j == j2}
    return make_groupoid(f"full_relation({n})", objects, arrows, src, rng, compose)


def group_as_groupoid(H):
    """A group viewed as a one-object groupoid."""
    obj = "*"
    arrows = list(H.elements)
    src = {g: obj for g in arrows}
    rng = {g: obj for g in arrows}
    compose = {(g, h): H.mul[(g, h)] for g in arrows for h in arrows}
    return make_groupoid(f"group({H.name})", [obj], arrows, src, rng, compose)


def disjoint_union(G1, G2):
    """Tagged disjoint union; no composition across components."""
    objects = [(0, x) for x in G1.objects] + [(1, x) for x in G2.objects]
    arrows = [(0, a) for a in G1.arrows] + [(1, a) for a in G2.arrows]
    src = {(0, a): (0, G1.src[a]) for a in G1.arrows}
    src.update({(1, a): (1, G2.src[a]) for a in G2.arrows})
    rng = {(0, a): (0, G1.rng[a]) for a in G1.arrows}
    rng.update({(1, a): (1, G2.rng[a]) for a in G2.arrows})
    compose = {((0, a), (0, b)): (0, c) for (a, b), c in G1.compose.items()}
    compose.update({((1, a), (1, b)): (1, c) for (a, b), c in G2.compose.items()})
    return make_groupoid(f"({G1.name})+({G2.name})", objects, arrows, src, rng, compose)


class IsotropySet:
    def __init__(self, arrows, fibres):
        self.arrows = arrows              # set of arrows with src == rng
        self.fibres = fibres              # object -> list of arrows at it


def isotropy(G):
    """The arrows with equal source and range, grouped per object.

    Each fibre is verified to be a group under composition.
    """
    arrows = {a for a in G.arrows if G.src[a] == G.rng[a]}
    fibres = {x: [a for a in arrows if G.src[a] == x] for x in G.objects}
    for x, fib in fibres.items():
        for a in fib:
            if G.inv[a] not in fib:
                raise ValueError(f"isotropy fibre at {x} not closed under inverse")
            for b in fib:
                if G.compose[(a, b)] not in fib:
                    raise ValueError(f"isotropy fibre at {x} not closed under composition")
    return IsotropySet(arrows, fibres)


def isotropy_fibre_group(G, x):
    """The isotropy group at object x as a FiniteGroup on the arrow labels."""
    fib = [a for a in G.arrows if G.src[a] == x and G.rng[a] == x]
    mul = {(a, b): G.compose[(a, b)] for a in fib for b in fib}
    return FiniteGroup(f"iso({G.name},{x})", fib, mul)


def _discrete_interior(subset):
    # In the discrete topology every set is open, so it is its own interior.
    return set(subset)


def is_principal(G):
    """Isotropy consists of units only."""
    return isotropy(G).arrows == G.units


def is_effective(G):
    """Interior of the isotropy consists of units only.

    Computed from the definition with the discrete interior operator; for
    the finite discrete groupoids modeled here this always agrees with
    is_principal, and callers assert that coincidence.
    """
    return _discrete_interior(isotropy(G).arrows) == G.units
