"""On-disk formats: categories (.fcat), modules / natural systems (.fmod),
functors and Cat-valued functors (.ffun), and structured report output.

All three formats are line-oriented UTF-8 text with '#' comments and a
mandatory version line.  Parsers report positioned diagnostics (1-based line
and column).  The serializers emit a canonical form; parsing a serialized
value returns an equal value, and serialization is a fixed point on
canonical text.

Grammar sketch (see README for the full description):

    fcat 1                      fmod 1                   ffun 1
    objects a b                 ring int                 functor
    mor f : a -> b              rank a = 1               source { ...fcat body... }
    identity a = ida            rank * = 1               target { ...fcat body... }
    compose g . f = h           mat f = [[1],[2]]        obj a -> x
    poset a b  /  le a b                                 mor f -> g
    group e t  /  mul t t = e

A Cat-valued functor uses `tocat` with `base { ... }`, one `fiber d { ... }`
per base object and one `action f { obj .. mor .. }` per base morphism.
"""

from __future__ import annotations

import json

from .core import (
    CategoryError,
    FiniteCategory,
    FunctorData,
    FunctorToCat,
    group_category,
    poset_category,
    validate_category,
)
from .coeff import ModuleOverCategory
from .homalg import Mat, Ring, ring_from_tag


class ParseError(ValueError):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class _Line:
    __slots__ = ("no", "text", "tokens", "cols")

    def __init__(self, no, text):
        self.no = no
        self.text = text
        self.tokens = []
        self.cols = []
        col = 1
        for raw in text.split("#", 1)[0].split():
            c = text.index(raw, col - 1) + 1
            self.tokens.append(raw)
            self.cols.append(c)
            col = c + len(raw)

    def err(self, msg, tok_index=0):
        col = self.cols[tok_index] if self.cols and tok_index < len(self.cols) else 1
        raise ParseError(self.no, col, msg)


def _lines(text: str):
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        ln = _Line(no, raw)
        if ln.tokens:
            out.append(ln)
    return out


def _expect_version(lines, kind: str):
    if not lines:
        raise ParseError(1, 1, f"empty file, expected '{kind} 1'")
    first = lines[0]
    if len(first.tokens) != 2 or first.tokens[0] != kind:
        first.err(f"expected version line '{kind} 1'")
    if first.tokens[1] != "1":
        first.err(f"unsupported {kind} version {first.tokens[1]}", 1)
    return lines[1:]


# ---------------------------------------------------------------------------
# Categories
# ---------------------------------------------------------------------------

def _parse_category_body(lines, name="category") -> FiniteCategory:
    mode = None
    objects = []
    obj_index = {}
    morphisms = []       # (name, src, dst)
    mor_index = {}
    identity = {}
    compose = {}
    le_pairs = []
    mul = {}

    def obj_id(ln, tok_i):
        nm = ln.tokens[tok_i]
        if nm not in obj_index:
            ln.err(f"unknown object {nm!r}", tok_i)
        return obj_index[nm]

    def mor_id(ln, tok_i):
        nm = ln.tokens[tok_i]
        if nm not in mor_index:
            ln.err(f"unknown morphism {nm!r}", tok_i)
        return mor_index[nm]

    for ln in lines:
        head = ln.tokens[0]
        if head == "objects":
            if mode not in (None, "explicit"):
                ln.err("objects line not allowed after a builder")
            mode = "explicit"
            for i, nm in enumerate(ln.tokens[1:], start=1):
                if nm in obj_index:
                    ln.err(f"duplicate object {nm!r}", i)
                obj_index[nm] = len(objects)
                objects.append(nm)
        elif head == "mor":
            if mode != "explicit":
                ln.err("mor line requires an explicit category (objects first)")
            # mor f : a -> b
            if len(ln.tokens) != 6 or ln.tokens[2] != ":" or ln.tokens[4] != "->":
                ln.err("expected 'mor <name> : <src> -> <dst>'")
            nm = ln.tokens[1]
            if nm in mor_index:
                ln.err(f"duplicate morphism {nm!r}", 1)
            s, d = obj_id(ln, 3), obj_id(ln, 5)
            mor_index[nm] = len(morphisms)
            morphisms.append((nm, s, d))
        elif head == "identity":
            if len(ln.tokens) != 4 or ln.tokens[2] != "=":
                ln.err("expected 'identity <obj> = <mor>'")
            identity[obj_id(ln, 1)] = mor_id(ln, 3)
        elif head == "compose":
            # compose g . f = h
            if len(ln.tokens) != 6 or ln.tokens[2] != "." or ln.tokens[4] != "=":
                ln.err("expected 'compose <g> . <f> = <h>'")
            g, f, h = mor_id(ln, 1), mor_id(ln, 3), mor_id(ln, 5)
            compose[(g, f)] = h
        elif head == "poset":
            if mode is not None:
                ln.err("poset builder must come first")
            mode = "poset"
            for i, nm in enumerate(ln.tokens[1:], start=1):
                if nm in obj_index:
                    ln.err(f"duplicate object {nm!r}", i)
                obj_index[nm] = len(objects)
                objects.append(nm)
        elif head == "le":
            if mode != "poset":
                ln.err("le line requires a poset builder")
            if len(ln.tokens) != 3:
                ln.err("expected 'le <x> <y>'")
            le_pairs.append((obj_id(ln, 1), obj_id(ln, 2), ln))
        elif head == "group":
            if mode is not None:
                ln.err("group builder must come first")
            mode = "group"
            for i, nm in enumerate(ln.tokens[1:], start=1):
                if nm in obj_index:
                    ln.err(f"duplicate element {nm!r}", i)
                obj_index[nm] = len(objects)
                objects.append(nm)
        elif head == "mul":
            if mode != "group":
                ln.err("mul line requires a group builder")
            if len(ln.tokens) != 5 or ln.tokens[3] != "=":
                ln.err("expected 'mul <a> <b> = <c>'")
            mul[(obj_id(ln, 1), obj_id(ln, 2))] = (obj_id(ln, 4), ln)
        else:
            ln.err(f"unknown directive {head!r}")

    if mode == "poset":
        k = len(objects)
        le = [[1 if x == y else 0 for y in range(k)] for x in range(k)]
        for x, y, _ in le_pairs:
            le[x][y] = 1
        # transitive closure; reject cycles between distinct objects
        changed = True
        while changed:
            changed = False
            for x in range(k):
                for y in range(k):
                    if le[x][y]:
                        for z in range(k):
                            if le[y][z] and not le[x][z]:
                                le[x][z] = 1
                                changed = True
        for x in range(k):
            for y in range(k):
                if x != y and le[x][y] and le[y][x]:
                    raise ParseError(lines[0].no, 1,
                                     f"not a partial order: cycle between "
                                     f"{objects[x]!r} and {objects[y]!r}")
        try:
            return poset_category(le, names=objects)
        except CategoryError as exc:
            raise ParseError(lines[0].no, 1, str(exc))

    if mode == "group":
        k = len(objects)
        table = [[-1] * k for _ in range(k)]
        for (a, b), (c, ln) in mul.items():
            table[a][b] = c
        for a in range(k):
            for b in range(k):
                if table[a][b] < 0:
                    raise ParseError(lines[0].no, 1,
                                     f"missing product {objects[a]!r} * {objects[b]!r}")
        try:
            return group_category(table, names=objects)
        except CategoryError as exc:
            raise ParseError(lines[0].no, 1, str(exc))

    if mode != "explicit":
        raise ParseError(lines[0].no if lines else 1, 1,
                         "no category content (objects/poset/group)")
    for x in range(len(objects)):
        if x not in identity:
            raise ParseError(lines[-1].no, 1,
                             f"missing identity for object {objects[x]!r}")
    for gi, (gn, gs, gd) in enumerate(morphisms):
        for fi, (fn, fs, fd) in enumerate(morphisms):
            if fd == gs and (gi, fi) not in compose:
                raise ParseError(
                    lines[-1].no, 1,
                    f"missing composite for the pair ({gn!r}, {fn!r})")
    cat = FiniteCategory(
        len(objects), [m[1] for m in morphisms], [m[2] for m in morphisms],
        [identity[x] for x in range(len(objects))], compose,
        object_names=objects, morphism_names=[m[0] for m in morphisms],
        name=name)
    return cat


def parse_category(text: str, name="category", validate=True) -> FiniteCategory:
    """Parse a .fcat file; raises ParseError with a position.  With validate
    (the default) the category axioms are also checked and failures raise."""
    lines = _expect_version(_lines(text), "fcat")
    cat = _parse_category_body(lines, name=name)
    if validate:
        report = validate_category(cat)
        if not report.ok:
            raise ParseError(1, 1,
                             "category axioms violated: " + "; ".join(report.violations[:5]))
    return cat


def serialize_category(cat: FiniteCategory) -> str:
    out = ["fcat 1"]
    out.append("objects " + " ".join(cat.object_names))
    for m in range(cat.n_morphisms):
        out.append(f"mor {cat.morphism_names[m]} : "
                   f"{cat.object_names[cat.mor_src[m]]} -> "
                   f"{cat.object_names[cat.mor_dst[m]]}")
    for x in range(cat.n_objects):
        out.append(f"identity {cat.object_names[x]} = "
                   f"{cat.morphism_names[cat.identity[x]]}")
    for (g, f) in sorted(cat.compose_table):
        h = cat.compose_table[(g, f)]
        out.append(f"compose {cat.morphism_names[g]} . {cat.morphism_names[f]}"
                   f" = {cat.morphism_names[h]}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Modules
# ---------------------------------------------------------------------------

def _parse_matrix_literal(ln, tok_start, ring: Ring, rows, cols):
    # hand-rolled scan: entries may be fractions like 1/2, which json rejects
    text = " ".join(ln.tokens[tok_start:])
    s = text.strip()
    if not (s.startswith("[[") or s == "[]"):
        ln.err("expected a matrix literal like [[1,0],[0,1]]", tok_start)
    try:
        body = s[1:-1].strip()
        data = []
        if body:
            depth = 0
            row_texts = []
            cur = ""
            for ch in body:
                if ch == "[":
                    depth += 1
                    cur = ""
                elif ch == "]":
                    depth -= 1
                    row_texts.append(cur)
                elif depth == 1:
                    cur += ch
            for rt in row_texts:
                entries = [e for e in rt.split(",") if e.strip() != ""]
                data.append([ring.parse_entry(e) for e in entries])
    except (ValueError, ZeroDivisionError) as exc:
        ln.err(f"bad matrix entry: {exc}", tok_start)
    if len(data) != rows or any(len(r) != cols for r in data):
        got = f"{len(data)}x{len(data[0]) if data else 0}"
        ln.err(f"matrix of wrong shape: got {got}, expected {rows}x{cols}", tok_start)
    return Mat(ring, rows, cols, data)


def parse_module(text: str, over: FiniteCategory, name="module") -> ModuleOverCategory:
    """Parse a .fmod file against a known category.

    Identity morphisms default to identity matrices and morphisms with a
    rank-0 endpoint default to the zero matrix; all other matrices are
    mandatory.  Shapes are dst-rank x src-rank."""
    lines = _expect_version(_lines(text), "fmod")
    ring = None
    ranks = {}
    mats = {}
    obj_index = {nm: i for i, nm in enumerate(over.object_names)}
    mor_index = {nm: i for i, nm in enumerate(over.morphism_names)}
    pending_mats = []
    constant_default = False
    for ln in lines:
        head = ln.tokens[0]
        if head == "constant":
            # unspecified matrices default to the identity (ranks must agree)
            constant_default = True
        elif head == "ring":
            if ring is not None:
                ln.err("duplicate ring line")
            try:
                ring = ring_from_tag(" ".join(ln.tokens[1:]))
            except ValueError as exc:
                ln.err(str(exc), 1)
        elif head == "rank":
            if len(ln.tokens) != 4 or ln.tokens[2] != "=":
                ln.err("expected 'rank <obj|*> = <k>'")
            try:
                k = int(ln.tokens[3])
            except ValueError:
                ln.err("rank must be an integer", 3)
            if k < 0:
                ln.err("rank must be nonnegative", 3)
            if ln.tokens[1] == "*":
                for x in range(over.n_objects):
                    ranks.setdefault(x, k)
            else:
                if ln.tokens[1] not in obj_index:
                    ln.err(f"unknown object {ln.tokens[1]!r}", 1)
                ranks[obj_index[ln.tokens[1]]] = k
        elif head == "mat":
            if len(ln.tokens) < 4 or ln.tokens[2] != "=":
                ln.err("expected 'mat <mor> = [[...]]'")
            if ln.tokens[1] not in mor_index:
                ln.err(f"unknown morphism {ln.tokens[1]!r}", 1)
            pending_mats.append((mor_index[ln.tokens[1]], ln))
        else:
            ln.err(f"unknown directive {head!r}")
    if ring is None:
        raise ParseError(1, 1, "missing ring line")
    for x in range(over.n_objects):
        if x not in ranks:
            raise ParseError(1, 1, f"missing rank for object {over.object_names[x]!r}")
    for m, ln in pending_mats:
        rows = ranks[over.mor_dst[m]]
        cols = ranks[over.mor_src[m]]
        mats[m] = _parse_matrix_literal(ln, 3, ring, rows, cols)
    full = []
    for m in range(over.n_morphisms):
        if m in mats:
            full.append(mats[m])
            continue
        rows, cols = ranks[over.mor_dst[m]], ranks[over.mor_src[m]]
        if m in over.identity:
            full.append(Mat.identity(ring, rows))
        elif rows == 0 or cols == 0:
            full.append(Mat(ring, rows, cols))
        elif constant_default and rows == cols:
            full.append(Mat.identity(ring, rows))
        else:
            raise ParseError(1, 1,
                             f"missing matrix for morphism {over.morphism_names[m]!r}")
    M = ModuleOverCategory(over, ring, [ranks[x] for x in range(over.n_objects)],
                           full, name=name)
    rep = M.check()
    if not rep.ok:
        raise ParseError(1, 1, "module not functorial: " + "; ".join(rep.violations[:5]))
    return M


def serialize_module(M: ModuleOverCategory) -> str:
    over = M.cat
    out = ["fmod 1", f"ring {M.ring.tag()}"]
    for x in range(over.n_objects):
        out.append(f"rank {over.object_names[x]} = {M.ranks[x]}")
    identities = set(over.identity)
    for m in range(over.n_morphisms):
        rows, cols = M.mats[m].rows, M.mats[m].cols
        if m in identities or rows == 0 or cols == 0:
            continue
        body = ",".join(
            "[" + ",".join(M.ring.format_entry(x) for x in row) + "]"
            for row in M.mats[m].data)
        out.append(f"mat {over.morphism_names[m]} = [{body}]")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Functors
# ---------------------------------------------------------------------------

def _split_blocks(lines):
    """Group 'name ... {' blocks; returns list of (header_tokens, body_lines,
    header_line) and top-level lines."""
    blocks = []
    top = []
    i = 0
    while i < len(lines):
        ln = lines[i]
        if ln.tokens[-1] == "{":
            depth = 1
            body = []
            j = i + 1
            while j < len(lines):
                if lines[j].tokens[-1] == "{":
                    depth += 1
                if lines[j].tokens[0] == "}":
                    depth -= 1
                    if depth == 0:
                        break
                body.append(lines[j])
                j += 1
            if j == len(lines) and depth != 0:
                ln.err("unclosed block")
            blocks.append((ln.tokens[:-1], body, ln))
            i = j + 1
        else:
            top.append(ln)
            i += 1
    return blocks, top


def _mor_map_from_lines(src_cat, dst_cat, obj_map, lines, ctx):
    """Build a morphism map from 'mor f -> g' lines, defaulting identities and
    unique-hom targets."""
    src_m = {nm: i for i, nm in enumerate(src_cat.morphism_names)}
    dst_m = {nm: i for i, nm in enumerate(dst_cat.morphism_names)}
    explicit = {}
    for ln in lines:
        if ln.tokens[0] != "mor":
            continue
        if len(ln.tokens) != 4 or ln.tokens[2] != "->":
            ln.err("expected 'mor <f> -> <g>'")
        if ln.tokens[1] not in src_m:
            ln.err(f"unknown morphism {ln.tokens[1]!r} in {ctx}", 1)
        if ln.tokens[3] not in dst_m:
            ln.err(f"unknown morphism {ln.tokens[3]!r} in {ctx}", 3)
        explicit[src_m[ln.tokens[1]]] = dst_m[ln.tokens[3]]
    mor_map = []
    for m in range(src_cat.n_morphisms):
        if m in explicit:
            mor_map.append(explicit[m])
            continue
        s, d = obj_map[src_cat.mor_src[m]], obj_map[src_cat.mor_dst[m]]
        if m in set(src_cat.identity):
            mor_map.append(dst_cat.identity[s])
            continue
        hom = dst_cat.hom(s, d)
        if len(hom) == 1:
            mor_map.append(hom[0])
        else:
            raise ParseError(1, 1,
                             f"morphism {src_cat.morphism_names[m]!r} of {ctx} needs an "
                             f"explicit image ({len(hom)} candidates)")
    return mor_map


def _obj_map_from_lines(src_cat, dst_cat, lines, ctx):
    src_o = {nm: i for i, nm in enumerate(src_cat.object_names)}
    dst_o = {nm: i for i, nm in enumerate(dst_cat.object_names)}
    omap = {}
    for ln in lines:
        if ln.tokens[0] != "obj":
            continue
        if len(ln.tokens) != 4 or ln.tokens[2] != "->":
            ln.err("expected 'obj <a> -> <x>'")
        if ln.tokens[1] not in src_o:
            ln.err(f"unknown object {ln.tokens[1]!r} in {ctx}", 1)
        if ln.tokens[3] not in dst_o:
            ln.err(f"unknown object {ln.tokens[3]!r} in {ctx}", 3)
        omap[src_o[ln.tokens[1]]] = dst_o[ln.tokens[3]]
    for x in range(src_cat.n_objects):
        if x not in omap:
            if dst_cat.n_objects == 1:
                omap[x] = 0
            else:
                raise ParseError(1, 1,
                                 f"missing object image for {src_cat.object_names[x]!r} in {ctx}")
    return [omap[x] for x in range(src_cat.n_objects)]


def parse_functor(text: str):
    """Parse a .ffun file: returns FunctorData (kind 'functor') or
    FunctorToCat (kind 'tocat')."""
    lines = _expect_version(_lines(text), "ffun")
    if not lines:
        raise ParseError(1, 1, "missing 'functor' or 'tocat' line")
    kind = lines[0].tokens[0]
    if kind not in ("functor", "tocat"):
        lines[0].err("expected 'functor' or 'tocat'")
    blocks, top = _split_blocks(lines[1:])

    if kind == "functor":
        named = {b[0][0]: b for b in blocks}
        if "source" not in named or "target" not in named:
            raise ParseError(lines[0].no, 1, "functor needs source { } and target { } blocks")
        source = _parse_category_body(named["source"][1], name="source")
        target = _parse_category_body(named["target"][1], name="target")
        for cat in (source, target):
            rep = validate_category(cat)
            if not rep.ok:
                raise ParseError(1, 1, "category axioms violated: " + rep.violations[0])
        obj_map = _obj_map_from_lines(source, target, top, "functor")
        mor_map = _mor_map_from_lines(source, target, obj_map, top, "functor")
        phi = FunctorData(source, target, obj_map, mor_map, name="functor")
        rep = phi.check()
        if not rep.ok:
            raise ParseError(1, 1, "not a functor: " + "; ".join(rep.violations[:5]))
        return phi

    base = None
    fibers = {}
    actions = {}
    for header, body, ln in blocks:
        if header[0] == "base":
            base = _parse_category_body(body, name="base")
        elif header[0] == "fiber":
            if len(header) != 2:
                ln.err("expected 'fiber <object> {'")
            fibers[header[1]] = (body, ln)
        elif header[0] == "action":
            if len(header) != 2:
                ln.err("expected 'action <morphism> {'")
            actions[header[1]] = (body, ln)
        else:
            ln.err(f"unknown block {header[0]!r}")
    if base is None:
        raise ParseError(lines[0].no, 1, "tocat needs a base { } block")
    rep = validate_category(base)
    if not rep.ok:
        raise ParseError(1, 1, "base axioms violated: " + rep.violations[0])
    fiber_cats = []
    for x in range(base.n_objects):
        nm = base.object_names[x]
        if nm not in fibers:
            raise ParseError(1, 1, f"missing fiber block for object {nm!r}")
        cat = _parse_category_body(fibers[nm][0], name=f"fiber {nm}")
        vrep = validate_category(cat)
        if not vrep.ok:
            raise ParseError(1, 1, f"fiber {nm!r} axioms violated: " + vrep.violations[0])
        fiber_cats.append(cat)
    action_data = []
    identities = set(base.identity)
    for m in range(base.n_morphisms):
        nm = base.morphism_names[m]
        s, d = base.mor_src[m], base.mor_dst[m]
        if nm in actions:
            body, _ = actions[nm]
            obj_map = _obj_map_from_lines(fiber_cats[s], fiber_cats[d], body, f"action {nm}")
            mor_map = _mor_map_from_lines(fiber_cats[s], fiber_cats[d], obj_map, body,
                                          f"action {nm}")
            action_data.append(FunctorData(fiber_cats[s], fiber_cats[d], obj_map, mor_map))
        elif m in identities:
            action_data.append(FunctorData.identity_functor(fiber_cats[s]))
        else:
            raise ParseError(1, 1, f"missing action block for morphism {nm!r}")
    F = FunctorToCat(base, fiber_cats, action_data, name="tocat")
    rep = F.check()
    if not rep.ok:
        raise ParseError(1, 1, "not a Cat-valued functor: " + "; ".join(rep.violations[:5]))
    return F


def _indent_block(name, body_text):
    lines = [f"{name} {{"]
    for ln in body_text.strip().splitlines():
        lines.append("  " + ln)
    lines.append("}")
    return lines


def serialize_functor(phi: FunctorData) -> str:
    out = ["ffun 1", "functor"]
    src_body = serialize_category(phi.source).split("\n", 1)[1]
    tgt_body = serialize_category(phi.target).split("\n", 1)[1]
    out += _indent_block("source", src_body)
    out += _indent_block("target", tgt_body)
    for x in range(phi.source.n_objects):
        out.append(f"obj {phi.source.object_names[x]} -> "
                   f"{phi.target.object_names[phi.obj_map[x]]}")
    for m in range(phi.source.n_morphisms):
        out.append(f"mor {phi.source.morphism_names[m]} -> "
                   f"{phi.target.morphism_names[phi.mor_map[m]]}")
    return "\n".join(out) + "\n"


def serialize_functor_to_cat(F: FunctorToCat) -> str:
    out = ["ffun 1", "tocat"]
    out += _indent_block("base", serialize_category(F.base).split("\n", 1)[1])
    for x in range(F.base.n_objects):
        body = serialize_category(F.fibers[x]).split("\n", 1)[1]
        out += _indent_block(f"fiber {F.base.object_names[x]}", body)
    identities = set(F.base.identity)
    for m in range(F.base.n_morphisms):
        if m in identities:
            continue
        act = F.actions[m]
        body_lines = []
        for x in range(act.source.n_objects):
            body_lines.append(f"obj {act.source.object_names[x]} -> "
                              f"{act.target.object_names[act.obj_map[x]]}")
        for mm in range(act.source.n_morphisms):
            body_lines.append(f"mor {act.source.morphism_names[mm]} -> "
                              f"{act.target.morphism_names[act.mor_map[mm]]}")
        out += _indent_block(f"action {F.base.morphism_names[m]}", "\n".join(body_lines))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def serialize_report(report, include_timing=True) -> str:
    """Structured report text: JSON with insertion-ordered keys, so identical
    inputs produce byte-identical output (timing suppressible)."""
    if report is None:
        obj = {}
    elif hasattr(report, "to_dict"):
        obj = report.to_dict(include_timing=include_timing)
    elif hasattr(report, "as_dict"):
        obj = report.as_dict()
    else:
        obj = report
    return json.dumps(obj, separators=(",", ":"))
