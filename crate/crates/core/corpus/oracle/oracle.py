#!/usr/bin/env python3
"""Independent oracle for the pinned corpus values.

Reads the bundled presentations, reduces them by plain generator
elimination, then counts homomorphisms into every catalog group by plain
enumeration over numpy permutation arrays, and counts low-index subgroups
through transitive permutation actions on k points. Nothing here shares
code with the Rust crate.

Usage: python3 oracle.py > pinned.json
"""
import itertools
import json
import os
import re
import sys

import numpy as np
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

HERE = os.path.dirname(os.path.abspath(__file__))
CORPUS = os.path.dirname(HERE)
CATALOG = os.path.join(os.path.dirname(CORPUS), "data", "catalog_v1.json")
K = 6

INPUTS = {
    "U[1466]": "u1466.pres",
    "U[1563]": "u1563.pres",
    "U[2125]": "u2125.pres",
    "U[2165]": "u2165.pres",
}
TREFOIL = ("trefoil", ["a", "b"], ["a*b*a*b^-1*a^-1*b^-1"])


def read_pres(path):
    gens, rels = None, []
    for line in open(path):
        line = line.strip()
        if line.startswith("gens:"):
            gens = [g.strip() for g in line[5:].split(",") if g.strip()]
        elif line.startswith("rels:"):
            rels = [r.strip() for r in line[5:].split(";") if r.strip()]
    return gens, rels


def parse_word(text, sym):
    text = text.strip()
    if text == "1":
        return []
    out = []
    for tok in text.split("*"):
        m = re.fullmatch(r"(\w+)(?:\^(-?\d+))?", tok.strip())
        out.append((sym[m.group(1)], int(m.group(2) or 1)))
    return out


def to_fp(gens, rels):
    F, *xs = free_group(",".join(gens))
    sym = dict(zip(gens, xs))
    words = []
    for r in rels:
        if "=" in r:
            lhs, rhs = r.split("=")
        else:
            lhs, rhs = r, "1"
        w = F.identity
        for g, e in parse_word(lhs, sym):
            w = w * g**e
        v = F.identity
        for g, e in parse_word(rhs, sym):
            v = v * g**e
        words.append(w * v**-1)
    return FpGroup(F, words)


def letters(word, gens):
    idx = {g: i for i, g in enumerate(gens)}
    out = []
    for sym, e in word.array_form:
        i = idx[str(sym)]
        out.extend([(i, 1 if e > 0 else -1)] * abs(e))
    return out


def enumerate_group(generators):
    deg = len(generators[0])
    ident = tuple(range(deg))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = tuple(g[p[i]] for i in range(deg))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def subgroup_order(perms):
    return len(enumerate_group([list(p) for p in perms])) if perms else 1


def count_homs(gens, rel_letters, group):
    elems = np.array(enumerate_group(group["generators"]), dtype=np.int64)
    order, deg = elems.shape
    assert order == group["order"]
    inv = np.argsort(elems, axis=1)
    n = len(gens)
    if n == 0:
        return 1, 1 if order == 1 else 0
    # Enumerate all tuples of the first n-1 generators explicitly and
    # vectorize over the last one.
    total, surj = 0, 0
    ident = np.tile(np.arange(deg), (order, 1))
    for head in itertools.product(range(order), repeat=n - 1):
        ok = np.ones(order, dtype=bool)
        for word in rel_letters:
            cur = ident.copy()
            for g, e in word:
                if g < n - 1:
                    perm = elems[head[g]] if e > 0 else inv[head[g]]
                    cur = perm[cur]
                else:
                    perms = elems if e > 0 else inv
                    cur = np.take_along_axis(perms, cur, axis=1)
            ok &= np.all(cur == np.arange(deg), axis=1)
        hits = np.nonzero(ok)[0]
        total += len(hits)
        for last in hits:
            images = [tuple(elems[h]) for h in head] + [tuple(elems[last])]
            if subgroup_order(images) == order:
                surj += 1
    return total, surj


def symmetric_group(k):
    return [tuple(p) for p in itertools.permutations(range(k))]


def cycle_type(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i not in seen:
            n, j = 0, i
            while j not in seen:
                seen.add(j)
                j = p[j]
                n += 1
            out.append(n)
    return tuple(sorted(out))


def is_transitive(perms, k):
    reach, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for p in perms:
            for y in (p[x], list(p).index(x)):
                if y not in reach:
                    reach.add(y)
                    stack.append(y)
    return len(reach) == k


def low_index(n, rel_letters, k_max):
    """Subgroups of index k correspond to transitive actions on k points
    with a marked point: total = #transitive homs to S_k / (k-1)!, and the
    conjugacy classes are the S_k-orbits of transitive homs, counted as
    the sum of |centralizer| / k! over all of them."""
    res = {}
    for k in range(2, k_max + 1):
        elems = np.array(symmetric_group(k), dtype=np.int64)
        order = len(elems)
        inv = np.argsort(elems, axis=1)
        index = {tuple(p): i for i, p in enumerate(elems.tolist())}
        # First generator over cycle-type representatives, weighted.
        reps = {}
        for i, p in enumerate(elems.tolist()):
            reps.setdefault(cycle_type(p), [i, 0])[1] += 1
        trans = 0
        cent_sum = 0
        if n == 0:
            res[k] = [0, 0]
            continue
        ident = np.tile(np.arange(k), (order, 1))
        firsts = list(reps.values()) if n >= 2 else [[i, 1] for i in range(order)]
        for first, weight in firsts:
            for rest in itertools.product(range(order), repeat=max(n - 2, 0)):
                head = (first,) + rest if n >= 2 else ()
                ok = np.ones(order, dtype=bool)
                for word in rel_letters:
                    cur = ident.copy()
                    for g, e in word:
                        if g < n - 1:
                            perm = elems[head[g]] if e > 0 else inv[head[g]]
                            cur = perm[cur]
                        else:
                            perms = elems if e > 0 else inv
                            cur = np.take_along_axis(perms, cur, axis=1)
                    ok &= np.all(cur == np.arange(k), axis=1)
                for last in np.nonzero(ok)[0]:
                    imgs = [elems[h] for h in head] + [elems[last]]
                    if not is_transitive([p.tolist() for p in imgs], k):
                        continue
                    trans += weight
                    # centralizer: c with c p c^-1 = p for every image
                    mask = np.ones(order, dtype=bool)
                    for p in imgs:
                        # (c o p)[i] = c[p[i]] ; (p o c)[i] = p[c[i]]
                        mask &= np.all(elems[:, p] == p[elems], axis=1)
                    cent_sum += weight * int(mask.sum())
        fact = order // k
        assert trans % fact == 0 and cent_sum % order == 0
        res[k] = [cent_sum // order, trans // fact]
        sys.stderr.write("    index %d: %s\n" % (k, res[k]))
    return res


def free_reduce(word):
    out = []
    for g, e in word:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    while len(out) >= 2 and out[0] == (out[-1][0], -out[-1][1]):
        out = out[1:-1]
    return out


def invert(word):
    return [(g, -e) for g, e in reversed(word)]


def eliminate(ngens, rels):
    """Plain generator elimination: while some relator contains a generator
    exactly once, solve for it and substitute everywhere."""
    rels = [free_reduce(r) for r in rels]
    alive = list(range(ngens))
    while True:
        best = None
        for ri, r in enumerate(rels):
            for g in alive:
                if sum(1 for x, _ in r if x == g) == 1:
                    cand = (len(r), g, ri)
                    if best is None or cand < best:
                        best = cand
        if best is None:
            break
        _, g, ri = best
        r = rels[ri]
        pos = next(i for i, (x, _) in enumerate(r) if x == g)
        rot = r[pos:] + r[:pos]
        e = rot[0][1]
        rest = rot[1:]
        # g^e * rest = 1  =>  g = rest^-1 (e = 1) or g = rest (e = -1)
        value = invert(rest) if e == 1 else rest
        new = []
        for j, other in enumerate(rels):
            if j == ri:
                continue
            w = []
            for x, ex in other:
                if x == g:
                    w.extend(value if ex == 1 else invert(value))
                else:
                    w.append((x, ex))
            w = free_reduce(w)
            if w:
                new.append(w)
        rels = new
        alive.remove(g)
    remap = {g: i for i, g in enumerate(alive)}
    return len(alive), [[(remap[g], e) for g, e in r] for r in rels]


def run(name, gens, rels, catalog):
    fp = to_fp(gens, rels)
    rel_letters = [letters(r, gens) for r in fp.relators]
    n, rel_letters = eliminate(len(gens), rel_letters)
    sgens = ["x%d" % i for i in range(n)]
    sys.stderr.write("%s: reduced to %d generators, %d relators, lengths %s\n" % (
        name, len(sgens), len(rel_letters), [len(r) for r in rel_letters]))
    homs = {}
    for g in catalog["groups"]:
        t, s = count_homs(sgens, rel_letters, g)
        homs[g["name"]] = {"total": t, "surjective": s}
        sys.stderr.write("  %s: %d %d\n" % (g["name"], t, s))
    li = low_index(n, rel_letters, K)
    sys.stderr.write("  low index: %s\n" % li)
    return {
        "hom_counts": homs,
        "low_index": {str(k): {"classes": v[0], "total": v[1]} for k, v in li.items()},
    }


def main():
    catalog = json.load(open(CATALOG))
    out = {"catalog_version": catalog["version"], "k": K, "entries": {}}
    only = sys.argv[1:]
    for name, fname in INPUTS.items():
        if only and name not in only:
            continue
        gens, rels = read_pres(os.path.join(CORPUS, fname))
        out["entries"][name] = run(name, gens, rels, catalog)
    if not only or "trefoil" in only:
        out["entries"]["trefoil"] = run(TREFOIL[0], TREFOIL[1], TREFOIL[2], catalog)
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
