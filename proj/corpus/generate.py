#!/usr/bin/env python3
"""Writes the shipped .cat files. Tables are computed by brute force over
functions between finite sets; the DSL carries no arithmetic of its own."""

import itertools
import pathlib

HERE = pathlib.Path(__file__).resolve().parent


def functions(a, b):
    """All maps {0..a-1} -> {0..b-1} as tuples."""
    return list(itertools.product(range(b), repeat=a))


def compose(g, f):
    """g after f."""
    return tuple(g[i] for i in f)


def skeleton(cards, obj, name):
    """Objects and morphisms of the full subcategory of FinSet on `cards`.
    Returns (objects, morphisms {name: (dom, cod, fn)}, identities)."""
    mors = {}
    for a in cards:
        for b in cards:
            for fn in functions(a, b):
                mors[name(a, b, fn)] = (a, b, fn)
    ids = {a: name(a, a, tuple(range(a))) for a in cards}
    return [obj(a) for a in cards], mors, ids


def composites(mors, opposite):
    by_fn = {(d, c, fn): m for m, (d, c, fn) in mors.items()}
    out = []
    for g, (gd, gc, gfn) in mors.items():
        for f, (fd, fc, ffn) in mors.items():
            if not opposite and fc == gd:
                h = by_fn[(fd, gc, compose(gfn, ffn))]
                out.append((g, f, h))
            if opposite and gc == fd:
                # g . f in the opposite is f after g in FinSet
                h = by_fn[(gd, fc, compose(ffn, gfn))]
                out.append((g, f, h))
    return out


def category_block(cname, objects, mors, ids, obj, opposite=False):
    lines = [f"category {cname} {{", "  objects: " + ", ".join(objects) + ";", "  morphisms:"]
    entries = []
    for m, (d, c, _) in mors.items():
        src, dst = (c, d) if opposite else (d, c)
        entries.append(f"    {m} : {obj(src)} -> {obj(dst)}")
    lines.append(";\n".join(entries) + ";")
    lines.append("  identity: " + "; ".join(f"{obj(a)} = {m}" for a, m in ids.items()) + ";")
    lines.append("  compose:")
    lines.append(";\n".join(f"    {g} . {f} = {h}" for g, f, h in composites(mors, opposite)))
    lines.append("}")
    return "\n".join(lines)


def presheaf_block(fname, cat, mors, obj, elems, act):
    """A functor on op(FinSet skeleton): a morphism fn : a -> b acts as
    elems(b) -> elems(a)."""
    lines = [f"functor {fname} : {cat} {{"]
    objs = sorted({d for d, _, _ in mors.values()})
    for a in objs:
        lines.append(f"  {obj(a)} -> {{ " + ", ".join(elems(a)) + " };")
    for m, (a, b, fn) in mors.items():
        if fn == tuple(range(a)) and a == b:
            continue
        pairs = [f"{x} => {act(fn, a, b, x)}" for x in elems(b)]
        lines.append(f"  {m} -> [ " + ", ".join(pairs) + " ];")
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# delta: sets 0, 1, 2

DELTA_NAMES = {
    (0, 0, ()): "id0", (0, 1, ()): "e01", (0, 2, ()): "e02",
    (1, 1, (0,)): "id1", (1, 2, (0,)): "inl", (1, 2, (1,)): "inr",
    (2, 1, (0, 0)): "t21",
    (2, 2, (0, 1)): "id2", (2, 2, (1, 0)): "swap", (2, 2, (0, 0)): "c0", (2, 2, (1, 1)): "c1",
}


def delta():
    obj = lambda a: f"n{a}"
    objects, mors, ids = skeleton([0, 1, 2], obj, lambda a, b, fn: DELTA_NAMES[(a, b, fn)])
    mors = {m: mors[m] for m in DELTA_NAMES.values()}
    by_fn = {v: k for k, v in DELTA_NAMES.items()}

    def hom_into(target):
        # Hom(X, target) by name; these are the representable presheaves.
        return lambda x: [DELTA_NAMES[(x, target, fn)] for fn in functions(x, target)]

    def precompose(prefix_of, name_of):
        def act(fn, a, b, elem):
            tag, h = prefix_of(elem)
            d, c, hfn = by_fn[h]
            return name_of(tag, DELTA_NAMES[(a, c, compose(hfn, fn))])
        return act

    def two_points(x):
        return [f"{t}_{h}" for t in "lr" for h in hom_into(1)(x)]

    split = lambda e: (e[0], e[2:])
    f_block = presheaf_block("F", "op(delta)", mors, obj, two_points,
                             precompose(split, lambda t, h: f"{t}_{h}"))
    g_block = presheaf_block("G", "op(delta)", mors, obj, hom_into(2),
                             precompose(lambda e: ("", e), lambda t, h: h))

    gamma = ["nat gamma : F -> G {"]
    for x in [0, 1, 2]:
        pairs = []
        for e in two_points(x):
            t, h = split(e)
            d, c, hfn = by_fn[h]
            leg = by_fn["inl" if t == "l" else "inr"][2]
            pairs.append(f"{e} => {DELTA_NAMES[(x, 2, compose(leg, hfn))]}")
        gamma.append(f"  n{x} : [ " + ", ".join(pairs) + " ];")
    gamma.append("}")

    return "\n\n".join([
        "# The simplex category truncated at 2, as finite sets 0, 1, 2.\n"
        "# In op(delta), n2 is the product n1 x n1 and n0 is terminal.",
        category_block("delta", objects, mors, ids, obj),
        "cone sum : op(delta) { apex: n2, left: n1, right: n1, fst: inl, snd: inr }",
        "terminal init : op(delta) { apex: n0 }",
        "# F = y(n1) + y(n1), G = y(n2); gamma is the copairing [y(inl), y(inr)].",
        f_block,
        g_block,
        "\n".join(gamma),
        'query demo : F {\n'
        '  normalize "inl(pair(n1.l_id1, n1.r_id1))";\n'
        '  equal "inl(pair(n1.l_id1, n1.r_id1))" "n1.l_id1";\n'
        '  equal "t21(n1.l_id1)" "pair(n1.l_id1, n1.l_id1)";\n'
        '  equal "n1.l_id1" "n1.r_id1"\n'
        '}',
    ]) + "\n"


# ---------------------------------------------------------------------------
# the opposite of finite sets 1, 2: P is O1 x O1

PRODUCT_NAMES = {
    (1, 1, (0,)): "idO1", (1, 2, (0,)): "fst", (1, 2, (1,)): "snd",
    (2, 1, (0, 0)): "diag",
    (2, 2, (0, 1)): "idP", (2, 2, (1, 0)): "swap", (2, 2, (0, 0)): "d1", (2, 2, (1, 1)): "d2",
}


def product():
    obj = lambda a: {1: "O1", 2: "P"}[a]
    objects, mors, ids = skeleton([1, 2], obj, lambda a, b, fn: PRODUCT_NAMES[(a, b, fn)])
    mors = {m: mors[m] for m in PRODUCT_NAMES.values()}
    # F(n) = {a, b}^n; a function fn : a -> b acts on b-tuples by reindexing.
    elems = lambda n: ["".join(t) for t in itertools.product("ab", repeat=n)]
    act = lambda fn, a, b, x: "".join(x[i] for i in fn)
    return "\n\n".join([
        "# Finite sets 1 and 2 with their arrows reversed, so P = O1 x O1.",
        category_block("fin12op", objects, mors, ids, obj, opposite=True),
        "cone prod { apex: P, left: O1, right: O1, fst: fst, snd: snd }",
        presheaf_block("F", "fin12op", mors, obj, elems, act),
        'query pairing {\n'
        '  equal "fst(pair(O1.a, O1.b))" "O1.a";\n'
        '  equal "snd(pair(O1.a, O1.b))" "O1.b";\n'
        '  equal "pair(fst(P.ab), snd(P.ab))" "P.ab";\n'
        '  equal "swap(P.ab)" "P.ba";\n'
        '  normalize "diag(snd(swap(P.ab)))"\n'
        '}',
    ]) + "\n"


# ---------------------------------------------------------------------------

EQUALIZER = """\
# e equalizes f and g; h is the common composite.
category eq {
  objects: E, A, B;
  morphisms: e : E -> A; f : A -> B; g : A -> B; h : E -> B;
  compose: f . e = h; g . e = h
}

equalizer eqz { e: e, f: f, g: g }

# P preserves the equalizer: P(E) is exactly where P(f) and P(g) agree.
functor P : eq {
  E -> { e1, e3 };
  A -> { a1, a2, a3 };
  B -> { b1, b2 };
  e -> [ e1 => a1, e3 => a3 ];
  f -> [ a1 => b1, a2 => b1, a3 => b2 ];
  g -> [ a1 => b1, a2 => b2, a3 => b2 ];
  h -> [ e1 => b1, e3 => b2 ]
}

# M does not: e3 and e3b both land on a3.
functor M : eq {
  E -> { e1, e3, e3b };
  A -> { a1, a2, a3 };
  B -> { b1, b2 };
  e -> [ e1 => a1, e3 => a3, e3b => a3 ];
  f -> [ a1 => b1, a2 => b1, a3 => b2 ];
  g -> [ a1 => b1, a2 => b2, a3 => b2 ];
  h -> [ e1 => b1, e3 => b2, e3b => b2 ]
}

query guarded : P {
  normalize "e(eql(A.a1))";
  equal "eql(A.a1)" "E.e1";
  equal "eql(e(E.e3))" "E.e3";
  equal "A.a1" "A.a3"
}
"""

if __name__ == "__main__":
    (HERE / "delta.cat").write_text(delta())
    (HERE / "product.cat").write_text(product())
    (HERE / "equalizer.cat").write_text(EQUALIZER)
