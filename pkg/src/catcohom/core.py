"""Finite categories, functors, natural transformations, and the categorical
constructions the rest of the package is built on: opposites, comma
categories, categories of factorizations, and the Grothendieck construction.

Objects and morphisms are dense integer ids; every derived category carries
labels tying its objects/morphisms back to the data they were built from.
All enumeration orders are id-lexicographic so downstream matrix bases are
reproducible.  Values are immutable after construction.
"""

from __future__ import annotations


class CategoryError(ValueError):
    pass


class ValidationReport:
    def __init__(self, subject: str, violations=None):
        self.subject = subject
        self.violations = list(violations or [])

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, msg: str):
        self.violations.append(msg)

    def __repr__(self):
        if self.ok:
            return f"ValidationReport({self.subject}: valid)"
        return f"ValidationReport({self.subject}: {len(self.violations)} violations)"


class FiniteCategory:
    """Objects 0..k-1, morphisms 0..m-1 with a total composition table.

    compose maps (g, f) -> g after f, defined exactly when dst(f) == src(g).
    Derived categories fill obj_labels / mor_labels with their construction
    data (e.g. (c, mu) pairs for comma categories).
    """

    def __init__(self, n_objects, mor_src, mor_dst, identity, compose,
                 object_names=None, morphism_names=None,
                 obj_labels=None, mor_labels=None, name=""):
        self.n_objects = n_objects
        self.mor_src = list(mor_src)
        self.mor_dst = list(mor_dst)
        self.identity = list(identity)
        self.compose_table = dict(compose)
        self.object_names = list(object_names) if object_names else [str(i) for i in range(n_objects)]
        self.morphism_names = (list(morphism_names) if morphism_names
                               else [f"m{i}" for i in range(len(mor_src))])
        self.obj_labels = list(obj_labels) if obj_labels is not None else None
        self.mor_labels = list(mor_labels) if mor_labels is not None else None
        self.name = name
        self._hom_cache = None
        self._out_cache = None

    @property
    def n_morphisms(self) -> int:
        return len(self.mor_src)

    def src(self, m: int) -> int:
        return self.mor_src[m]

    def dst(self, m: int) -> int:
        return self.mor_dst[m]

    def compose(self, g: int, f: int) -> int:
        """g after f; raises if dst(f) != src(g) or table entry missing."""
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise CategoryError(
                f"composite undefined for ({self.morphism_names[g]}, {self.morphism_names[f]})")

    def composable(self, g: int, f: int) -> bool:
        return self.mor_dst[f] == self.mor_src[g]

    def hom(self, x: int, y: int):
        if self._hom_cache is None:
            cache = {}
            for m in range(self.n_morphisms):
                cache.setdefault((self.mor_src[m], self.mor_dst[m]), []).append(m)
            self._hom_cache = cache
        return self._hom_cache.get((x, y), [])

    def out_morphisms(self, x: int):
        """Morphisms with source x, ascending by id."""
        if self._out_cache is None:
            cache = [[] for _ in range(self.n_objects)]
            for m in range(self.n_morphisms):
                cache[self.mor_src[m]].append(m)
            self._out_cache = cache
        return self._out_cache[x]

    def composite_chain(self, morphisms) -> int:
        """Compose a composable chain (m1, ..., mk) to mk o ... o m1."""
        it = iter(morphisms)
        acc = next(it)
        for m in it:
            acc = self.compose(m, acc)
        return acc

    def find_morphism(self, src: int, dst: int, label):
        """Morphism id with the given endpoints and label (labelled categories)."""
        if not hasattr(self, "_label_index"):
            idx = {}
            for m in range(self.n_morphisms):
                idx[(self.mor_src[m], self.mor_dst[m], self.mor_labels[m])] = m
            self._label_index = idx
        return self._label_index[(src, dst, label)]

    def __repr__(self):
        tag = self.name or "FiniteCategory"
        return f"{tag}({self.n_objects} objects, {self.n_morphisms} morphisms)"


def validate_category(C: FiniteCategory) -> ValidationReport:
    """Exhaustive axiom check; the report lists every violation found."""
    rep = ValidationReport(C.name or "category")
    m = C.n_morphisms
    for x in range(C.n_objects):
        if not 0 <= x < C.n_objects or x >= len(C.identity):
            rep.add(f"object {x} has no identity assigned")
            continue
        e = C.identity[x]
        if not 0 <= e < m:
            rep.add(f"identity of object {x} is not a morphism id: {e}")
        elif C.mor_src[e] != x or C.mor_dst[e] != x:
            rep.add(f"identity {e} of object {x} is not an endomorphism of {x}")
    if len(C.identity) != C.n_objects:
        rep.add("identity table size differs from object count")
    if len(set(C.identity)) != len(C.identity):
        rep.add("two objects share an identity morphism")

    for f in range(m):
        if not (0 <= C.mor_src[f] < C.n_objects and 0 <= C.mor_dst[f] < C.n_objects):
            rep.add(f"morphism {f} has endpoints outside the object range")

    for (g, f), h in C.compose_table.items():
        if C.mor_dst[f] != C.mor_src[g]:
            rep.add(f"compose({g},{f}) defined although dst/src do not match")
        elif not 0 <= h < m:
            rep.add(f"compose({g},{f}) = {h} is not a morphism id")
        elif C.mor_src[h] != C.mor_src[f] or C.mor_dst[h] != C.mor_dst[g]:
            rep.add(f"compose({g},{f}) = {h} has wrong endpoints")
    for g in range(m):
        for f in range(m):
            if C.mor_dst[f] == C.mor_src[g] and (g, f) not in C.compose_table:
                rep.add(f"compose({g},{f}) missing although composable")

    if rep.violations:
        return rep  # identity/associativity checks need a well-formed table

    for f in range(m):
        if C.compose_table[(C.identity[C.mor_dst[f]], f)] != f:
            rep.add(f"id o {f} != {f}")
        if C.compose_table[(f, C.identity[C.mor_src[f]])] != f:
            rep.add(f"{f} o id != {f}")

    for g in range(m):
        for f in range(m):
            if C.mor_dst[f] != C.mor_src[g]:
                continue
            gf = C.compose_table[(g, f)]
            for h in range(m):
                if C.mor_dst[g] != C.mor_src[h]:
                    continue
                if C.compose_table[(h, gf)] != C.compose_table[(C.compose_table[(h, g)], f)]:
                    rep.add(f"associativity fails on ({h},{g},{f})")
    return rep


def opposite(C: FiniteCategory) -> FiniteCategory:
    """Same objects and morphism ids, src/dst swapped, composition transposed."""
    compose = {(f, g): h for (g, f), h in C.compose_table.items()}
    return FiniteCategory(
        C.n_objects, C.mor_dst, C.mor_src, C.identity, compose,
        object_names=C.object_names,
        morphism_names=C.morphism_names,
        obj_labels=C.obj_labels, mor_labels=C.mor_labels,
        name=(C.name + "^op") if C.name else "op")


class FunctorData:
    def __init__(self, source: FiniteCategory, target: FiniteCategory,
                 obj_map, mor_map, name=""):
        self.source = source
        self.target = target
        self.obj_map = list(obj_map)
        self.mor_map = list(mor_map)
        self.name = name

    def check(self) -> ValidationReport:
        rep = ValidationReport(self.name or "functor")
        S, T = self.source, self.target
        if len(self.obj_map) != S.n_objects or len(self.mor_map) != S.n_morphisms:
            rep.add("map tables have wrong size")
            return rep
        for m in range(S.n_morphisms):
            fm = self.mor_map[m]
            if T.mor_src[fm] != self.obj_map[S.mor_src[m]] or \
               T.mor_dst[fm] != self.obj_map[S.mor_dst[m]]:
                rep.add(f"morphism {m} endpoints not preserved")
        for x in range(S.n_objects):
            if self.mor_map[S.identity[x]] != T.identity[self.obj_map[x]]:
                rep.add(f"identity of object {x} not preserved")
        for (g, f), h in S.compose_table.items():
            if T.compose_table.get((self.mor_map[g], self.mor_map[f])) != self.mor_map[h]:
                rep.add(f"composition ({g},{f}) not preserved")
        return rep

    def apply_obj(self, x: int) -> int:
        return self.obj_map[x]

    def apply_mor(self, m: int) -> int:
        return self.mor_map[m]

    def then(self, other: "FunctorData") -> "FunctorData":
        """Composite other o self."""
        if other.source is not self.target:
            # structural composition across equal-shaped categories is fine
            pass
        return FunctorData(self.source, other.target,
                           [other.obj_map[x] for x in self.obj_map],
                           [other.mor_map[m] for m in self.mor_map])

    @classmethod
    def identity_functor(cls, C: FiniteCategory) -> "FunctorData":
        return cls(C, C, list(range(C.n_objects)), list(range(C.n_morphisms)), name="id")

    def __eq__(self, other):
        if not isinstance(other, FunctorData):
            return NotImplemented
        return self.obj_map == other.obj_map and self.mor_map == other.mor_map

    def __repr__(self):
        return f"FunctorData({self.name or '?'}: {self.source!r} -> {self.target!r})"


class FunctorToCat:
    """A Cat-valued functor on a finite base: a fiber category per object and
    a fiber functor per morphism."""

    def __init__(self, base: FiniteCategory, fibers, actions, name=""):
        self.base = base
        self.fibers = list(fibers)      # object id -> FiniteCategory
        self.actions = list(actions)    # morphism id -> FunctorData
        self.name = name

    def fiber(self, d: int) -> FiniteCategory:
        return self.fibers[d]

    def action(self, m: int) -> FunctorData:
        return self.actions[m]

    def check(self) -> ValidationReport:
        rep = ValidationReport(self.name or "functor-to-cat")
        B = self.base
        for m in range(B.n_morphisms):
            act = self.actions[m]
            if act.source is not self.fibers[B.mor_src[m]] or \
               act.target is not self.fibers[B.mor_dst[m]]:
                rep.add(f"action of morphism {m} has wrong fiber endpoints")
            sub = act.check()
            for v in sub.violations:
                rep.add(f"action {m}: {v}")
        for x in range(B.n_objects):
            act = self.actions[B.identity[x]]
            if act.obj_map != list(range(self.fibers[x].n_objects)) or \
               act.mor_map != list(range(self.fibers[x].n_morphisms)):
                rep.add(f"identity of object {x} does not act as the identity functor")
        for (g, f), h in B.compose_table.items():
            comp = self.actions[f].then(self.actions[g])
            if comp != self.actions[h]:
                rep.add(f"action of composite ({g},{f}) differs from composed actions")
        return rep

    def __repr__(self):
        return f"FunctorToCat({self.name or '?'} over {self.base!r})"


class NatTransData:
    """Natural transformation between two FunctorToCat over the same base."""

    def __init__(self, source: FunctorToCat, target: FunctorToCat, components, name=""):
        self.source = source
        self.target = target
        self.components = list(components)  # object id -> FunctorData between fibers
        self.name = name

    def component(self, d: int) -> FunctorData:
        return self.components[d]

    def check(self) -> ValidationReport:
        rep = ValidationReport(self.name or "natural transformation")
        B = self.source.base
        if self.target.base is not B and self.target.base != B:
            rep.add("source and target live over different bases")
            return rep
        for d in range(B.n_objects):
            comp = self.components[d]
            sub = comp.check()
            for v in sub.violations:
                rep.add(f"component {d}: {v}")
        for m in range(B.n_morphisms):
            d0, d1 = B.mor_src[m], B.mor_dst[m]
            left = self.source.actions[m].then(self.components[d1])
            right = self.components[d0].then(self.target.actions[m])
            if left != right:
                rep.add(f"naturality square fails at morphism {m}")
        return rep


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def build_category(n_objects, morphisms, identity, compose, **kw) -> FiniteCategory:
    """morphisms: list of (src, dst); compose: dict (g,f)->h."""
    src = [s for s, _ in morphisms]
    dst = [d for _, d in morphisms]
    return FiniteCategory(n_objects, src, dst, identity, compose, **kw)


def terminal_category() -> FiniteCategory:
    return FiniteCategory(1, [0], [0], [0], {(0, 0): 0}, object_names=["*"],
                          morphism_names=["id"], name="pt")


def poset_category(le, names=None) -> FiniteCategory:
    """Category of a partial order given as a full relation: le[x][y] truthy
    iff x <= y.  Rejects tables that are not reflexive, antisymmetric and
    transitive."""
    k = len(le)
    for x in range(k):
        if not le[x][x]:
            raise CategoryError(f"order not reflexive at {x}")
    for x in range(k):
        for y in range(k):
            if x != y and le[x][y] and le[y][x]:
                raise CategoryError(f"order not antisymmetric on ({x},{y})")
    for x in range(k):
        for y in range(k):
            for z in range(k):
                if le[x][y] and le[y][z] and not le[x][z]:
                    raise CategoryError(f"order not transitive on ({x},{y},{z})")
    pairs = [(x, y) for x in range(k) for y in range(k) if le[x][y]]
    index = {p: i for i, p in enumerate(pairs)}
    identity = [index[(x, x)] for x in range(k)]
    compose = {}
    for gi, (y2, z) in enumerate(pairs):
        for fi, (x, y) in enumerate(pairs):
            if y == y2:
                compose[(gi, fi)] = index[(x, z)]
    names = names or [str(x) for x in range(k)]
    mor_names = [f"{names[x]}<={names[y]}" if x != y else f"id{names[x]}"
                 for (x, y) in pairs]
    return FiniteCategory(k, [p[0] for p in pairs], [p[1] for p in pairs],
                          identity, compose, object_names=names,
                          morphism_names=mor_names, mor_labels=pairs,
                          name=f"poset{k}")


def chain_poset(n: int) -> FiniteCategory:
    """The linear order [n] = {0 < 1 < ... < n}."""
    le = [[1 if x <= y else 0 for y in range(n + 1)] for x in range(n + 1)]
    C = poset_category(le)
    C.name = f"[{n}]"
    return C


def group_category(table, names=None) -> FiniteCategory:
    """One-object category of a finite group given by its multiplication
    table: table[g][f] = g*f.  Rejects non-groups."""
    k = len(table)
    for row in table:
        if len(row) != k or any(not 0 <= x < k for x in row):
            raise CategoryError("multiplication table is not square over 0..n-1")
    e = next((g for g in range(k)
              if all(table[g][f] == f and table[f][g] == f for f in range(k))), -1)
    if e < 0:
        raise CategoryError("no two-sided identity element")
    for a in range(k):
        for b in range(k):
            for c in range(k):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise CategoryError(f"multiplication not associative on ({a},{b},{c})")
    for a in range(k):
        if not any(table[a][b] == e and table[b][a] == e for b in range(k)):
            raise CategoryError(f"element {a} has no inverse")
    compose = {(g, f): table[g][f] for g in range(k) for f in range(k)}
    names = names or [f"g{i}" for i in range(k)]
    return FiniteCategory(1, [0] * k, [0] * k, [e], compose,
                          object_names=["*"], morphism_names=names,
                          name=f"group{k}")


def cyclic_group_category(n: int) -> FiniteCategory:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    C = group_category(table, names=[f"t{i}" if i else "e" for i in range(n)])
    C.name = f"Z/{n}"
    return C


def discrete_category(k: int) -> FiniteCategory:
    compose = {(x, x): x for x in range(k)}
    C = FiniteCategory(k, list(range(k)), list(range(k)), list(range(k)), compose,
                       name=f"discrete{k}")
    return C


def indiscrete_category(k: int) -> FiniteCategory:
    """Exactly one morphism between any ordered pair of objects."""
    pairs = [(x, y) for x in range(k) for y in range(k)]
    index = {p: i for i, p in enumerate(pairs)}
    identity = [index[(x, x)] for x in range(k)]
    compose = {}
    for gi, (y2, z) in enumerate(pairs):
        for fi, (x, y) in enumerate(pairs):
            if y == y2:
                compose[(gi, fi)] = index[(x, z)]
    return FiniteCategory(k, [p[0] for p in pairs], [p[1] for p in pairs],
                          identity, compose, mor_labels=pairs, name=f"indiscrete{k}")


# ---------------------------------------------------------------------------
# Comma categories
# ---------------------------------------------------------------------------

def _labelled_subcategory(objects, morphisms, compose_label, identity_label, name):
    """Assemble a labelled category from object labels and morphism triples
    (src_index, dst_index, payload)."""
    obj_index = {lab: i for i, lab in enumerate(objects)}
    mor_index = {t: i for i, t in enumerate(morphisms)}
    identity = []
    for i, lab in enumerate(objects):
        identity.append(mor_index[(i, i, identity_label(lab))])
    compose = {}
    for gi, (b2, c, glab) in enumerate(morphisms):
        for fi, (a, b, flab) in enumerate(morphisms):
            if b == b2:
                compose[(gi, fi)] = mor_index[(a, c, compose_label(glab, flab))]
    cat = FiniteCategory(
        len(objects), [t[0] for t in morphisms], [t[1] for t in morphisms],
        identity, compose,
        obj_labels=list(objects), mor_labels=[t[2] for t in morphisms], name=name)
    cat._triple_index = mor_index
    return cat, obj_index, mor_index


def comma_over(phi: FunctorData, d: int):
    """The comma category phi/d: objects (c, mu: phi(c) -> d), morphisms the
    gamma: c -> c' with mu' o phi(gamma) = mu.  Returns (category, projection
    functor to the source of phi)."""
    C, D = phi.source, phi.target
    if not 0 <= d < D.n_objects:
        raise CategoryError(f"unknown object id {d}")
    objects = [(c, mu) for c in range(C.n_objects)
               for mu in D.hom(phi.obj_map[c], d)]
    obj_index = {lab: i for i, lab in enumerate(objects)}
    morphisms = []
    for i, (c, mu) in enumerate(objects):
        for j, (c2, mu2) in enumerate(objects):
            for gamma in C.hom(c, c2):
                if D.compose(mu2, phi.mor_map[gamma]) == mu:
                    morphisms.append((i, j, gamma))
    cat, _, _ = _labelled_subcategory(
        objects, morphisms,
        compose_label=lambda g, f: C.compose(g, f),
        identity_label=lambda lab: C.identity[lab[0]],
        name=f"{phi.name or 'phi'}/{D.object_names[d]}")
    proj = FunctorData(cat, C, [lab[0] for lab in cat.obj_labels],
                       list(cat.mor_labels), name=f"proj_{D.object_names[d]}")
    return cat, proj


def comma_under(d: int, phi: FunctorData):
    """The comma category d\\phi: objects (c, mu: d -> phi(c)); dual of
    comma_over."""
    C, D = phi.source, phi.target
    if not 0 <= d < D.n_objects:
        raise CategoryError(f"unknown object id {d}")
    objects = [(c, mu) for c in range(C.n_objects)
               for mu in D.hom(d, phi.obj_map[c])]
    morphisms = []
    for i, (c, mu) in enumerate(objects):
        for j, (c2, mu2) in enumerate(objects):
            for gamma in C.hom(c, c2):
                if D.compose(phi.mor_map[gamma], mu) == mu2:
                    morphisms.append((i, j, gamma))
    cat, _, _ = _labelled_subcategory(
        objects, morphisms,
        compose_label=lambda g, f: C.compose(g, f),
        identity_label=lambda lab: C.identity[lab[0]],
        name=f"{D.object_names[d]}\\{phi.name or 'phi'}")
    proj = FunctorData(cat, C, [lab[0] for lab in cat.obj_labels],
                       list(cat.mor_labels), name=f"proj_{D.object_names[d]}")
    return cat, proj


class CommaFamily:
    """The functor d -> phi/d (or d -> d\\phi over the opposite base) packaged
    as a FunctorToCat together with the projections j_d to the source of phi."""

    def __init__(self, base, functor_to_cat, projections, phi, dual=False):
        self.base = base
        self.tocat = functor_to_cat
        self.projections = projections  # object id -> FunctorData fiber -> C
        self.phi = phi
        self.dual = dual

    def fiber(self, d):
        return self.tocat.fibers[d]

    def projection(self, d):
        return self.projections[d]


def comma_family_over(phi: FunctorData) -> CommaFamily:
    """phi/-: the target of phi acts by postcomposition on the mu component."""
    D = phi.target
    data = [comma_over(phi, d) for d in range(D.n_objects)]
    fibers = [cat for cat, _ in data]
    projections = [proj for _, proj in data]
    actions = []
    for alpha in range(D.n_morphisms):
        d0, d1 = D.mor_src[alpha], D.mor_dst[alpha]
        f0, f1 = fibers[d0], fibers[d1]
        oidx = {lab: i for i, lab in enumerate(f1.obj_labels)}
        obj_map = [oidx[(c, D.compose(alpha, mu))] for (c, mu) in f0.obj_labels]
        mor_map = []
        for m in range(f0.n_morphisms):
            i, j = f0.mor_src[m], f0.mor_dst[m]
            mor_map.append(f1.find_morphism(obj_map[i], obj_map[j], f0.mor_labels[m]))
        actions.append(FunctorData(f0, f1, obj_map, mor_map))
    tocat = FunctorToCat(D, fibers, actions, name=f"{phi.name or 'phi'}/-")
    return CommaFamily(D, tocat, projections, phi)


def comma_family_under(phi: FunctorData) -> CommaFamily:
    """-\\phi as a functor on the opposite of the target of phi: a base
    morphism acts by precomposition on the mu component."""
    D = phi.target
    Dop = opposite(D)
    data = [comma_under(d, phi) for d in range(D.n_objects)]
    fibers = [cat for cat, _ in data]
    projections = [proj for _, proj in data]
    actions = []
    for alpha in range(D.n_morphisms):
        # in Dop, alpha runs from dst(alpha) to src(alpha)
        d_from, d_to = D.mor_dst[alpha], D.mor_src[alpha]
        f0, f1 = fibers[d_from], fibers[d_to]
        oidx = {lab: i for i, lab in enumerate(f1.obj_labels)}
        obj_map = [oidx[(c, D.compose(mu, alpha))] for (c, mu) in f0.obj_labels]
        mor_map = []
        for m in range(f0.n_morphisms):
            i, j = f0.mor_src[m], f0.mor_dst[m]
            mor_map.append(f1.find_morphism(obj_map[i], obj_map[j], f0.mor_labels[m]))
        actions.append(FunctorData(f0, f1, obj_map, mor_map))
    tocat = FunctorToCat(Dop, fibers, actions, name=f"-\\{phi.name or 'phi'}")
    return CommaFamily(Dop, tocat, projections, phi, dual=True)


def comma_nat_trans(phi: FunctorData) -> NatTransData:
    """U: phi/- -> id/- sending (c, mu) to (phi(c), mu)."""
    D = phi.target
    fam_phi = comma_family_over(phi)
    fam_id = comma_family_over(FunctorData.identity_functor(D))
    comps = []
    for d in range(D.n_objects):
        f0, f1 = fam_phi.fiber(d), fam_id.fiber(d)
        oidx = {lab: i for i, lab in enumerate(f1.obj_labels)}
        obj_map = [oidx[(phi.obj_map[c], mu)] for (c, mu) in f0.obj_labels]
        mor_map = []
        for m in range(f0.n_morphisms):
            i, j = f0.mor_src[m], f0.mor_dst[m]
            mor_map.append(f1.find_morphism(obj_map[i], obj_map[j],
                                            phi.mor_map[f0.mor_labels[m]]))
        comps.append(FunctorData(f0, f1, obj_map, mor_map))
    nt = NatTransData(fam_phi.tocat, fam_id.tocat, comps, name="U")
    nt.source_family = fam_phi
    nt.target_family = fam_id
    return nt


# ---------------------------------------------------------------------------
# Factorization category and the Grothendieck construction
# ---------------------------------------------------------------------------

def factorization_category(C: FiniteCategory):
    """Objects are the morphisms of C; a morphism alpha -> alpha' is a pair
    (u, v) with u o alpha o v = alpha'.  Returns (FC, S, T) with
    S: FC -> C^op and T: FC -> C the endpoint functors."""
    objects = list(range(C.n_morphisms))
    morphisms = []
    for i, a in enumerate(objects):
        for j, a2 in enumerate(objects):
            for v in C.hom(C.mor_src[a2], C.mor_src[a]):
                av = C.compose(a, v)
                for u in C.hom(C.mor_dst[a], C.mor_dst[a2]):
                    if C.compose(u, av) == a2:
                        morphisms.append((i, j, (u, v)))
    cat, _, _ = _labelled_subcategory(
        objects, morphisms,
        # (u', v') o (u, v) = (u'u, vv')
        compose_label=lambda g, f: (C.compose(g[0], f[0]), C.compose(f[1], g[1])),
        identity_label=lambda a: (C.identity[C.mor_dst[a]], C.identity[C.mor_src[a]]),
        name=f"F({C.name or 'C'})")
    Cop = opposite(C)
    S = FunctorData(cat, Cop, [C.mor_src[a] for a in objects],
                    [lab[1] for lab in cat.mor_labels], name="S")
    T = FunctorData(cat, C, [C.mor_dst[a] for a in objects],
                    [lab[0] for lab in cat.mor_labels], name="T")
    return cat, S, T


def grothendieck(F: FunctorToCat):
    """The Grothendieck construction: objects (d, x), morphisms
    (alpha, gamma) with gamma: F(alpha)(x) -> x', composed by
    (a', g') o (a, g) = (a'a, g' o F(a')(g)).  Returns (category, projection
    to the base)."""
    D = F.base
    objects = [(d, x) for d in range(D.n_objects)
               for x in range(F.fibers[d].n_objects)]
    obj_index = {lab: i for i, lab in enumerate(objects)}
    morphisms = []
    for i, (d, x) in enumerate(objects):
        for j, (d2, x2) in enumerate(objects):
            for alpha in D.hom(d, d2):
                fx = F.actions[alpha].obj_map[x]
                for gamma in F.fibers[d2].hom(fx, x2):
                    morphisms.append((i, j, (alpha, gamma)))

    def compose_label(g, f):
        a2, g2 = g
        a1, g1 = f
        fib = F.fibers[D.mor_dst[a2]]
        return (D.compose(a2, a1), fib.compose(g2, F.actions[a2].mor_map[g1]))

    cat, _, _ = _labelled_subcategory(
        objects, morphisms, compose_label,
        identity_label=lambda lab: (D.identity[lab[0]],
                                    F.fibers[lab[0]].identity[lab[1]]),
        name=f"int({F.name or 'F'})")
    proj = FunctorData(cat, D, [lab[0] for lab in cat.obj_labels],
                       [lab[0] for lab in cat.mor_labels], name="pi")
    return cat, proj


def categories_isomorphic(A: FiniteCategory, B: FiniteCategory) -> bool:
    """Brute-force isomorphism search; only for desk-scale categories."""
    from itertools import permutations
    if A.n_objects != B.n_objects or A.n_morphisms != B.n_morphisms:
        return False
    homA = {}
    for m in range(A.n_morphisms):
        homA.setdefault((A.mor_src[m], A.mor_dst[m]), []).append(m)
    for perm in permutations(range(B.n_objects)):
        # build morphism matching respecting endpoints, then test
        ok = all(len(A.hom(x, y)) == len(B.hom(perm[x], perm[y]))
                 for x in range(A.n_objects) for y in range(A.n_objects))
        if not ok:
            continue
        if _match_morphisms(A, B, perm):
            return True
    return False


def _match_morphisms(A, B, perm):
    from itertools import permutations
    slots = sorted(homs := {(x, y): (A.hom(x, y), B.hom(perm[x], perm[y]))
                            for x in range(A.n_objects) for y in range(A.n_objects)})

    def backtrack(idx, mor_map):
        if idx == len(slots):
            for x in range(A.n_objects):
                if mor_map[A.identity[x]] != B.identity[perm[x]]:
                    return False
            for (g, f), h in A.compose_table.items():
                if B.compose_table.get((mor_map[g], mor_map[f])) != mor_map[h]:
                    return False
            return True
        key = slots[idx]
        amors, bmors = homs[key]
        for p in permutations(bmors):
            for m, im in zip(amors, p):
                mor_map[m] = im
            if backtrack(idx + 1, mor_map):
                return True
        return False

    return backtrack(0, [-1] * A.n_morphisms)
