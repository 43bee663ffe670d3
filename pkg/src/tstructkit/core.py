"""Subcategory calculus over a finite hereditary backend.

Subcategories of a finite backend are additively-closed sets of
indecomposable ids (frozensets).  All predicates and closures are decided
by exhaustive enumeration of morphisms, subobjects, and extensions between
bounded direct sums of the subcategory's indecomposables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import faults
from .quiver import BackendError, QuiverBackend, Obj

Subcat = frozenset

RULES = ("cokernels", "kernels", "quotients", "subobjects", "extensions", "images")

DEFAULT_MULT_BOUND = 2
DEFAULT_COPY_BOUND = 4


def obj_in(S: Subcat, obj: Obj) -> bool:
    return all(i in S for i in obj)


def candidates(backend: QuiverBackend, S: Subcat, mult_bound: int = DEFAULT_MULT_BOUND):
    """Direct sums of up to mult_bound indecomposables of S, zero excluded."""
    ids = sorted(S)
    out = []
    for r in range(1, mult_bound + 1):
        for combo in itertools.combinations_with_replacement(ids, r):
            out.append(tuple(combo))
    return out


def _violations(backend, S, rules, ambient, mult_bound):
    """Yield (rule, produced Obj) for every one-step rule application whose
    result leaves S.  With an ambient set, results escaping the ambient do
    not count (they are not objects of the ambient subcategory)."""
    bad = set(rules) - set(RULES)
    if bad:
        raise BackendError(f"unknown closure rules: {sorted(bad)}")
    rules = set(rules)
    if faults.is_active("drop-extension-closure"):
        rules.discard("extensions")
    if faults.is_active("wide-closure-skips-kernels"):
        rules.discard("kernels")
    cands = candidates(backend, S, mult_bound)

    def ok(obj):
        return obj_in(S, obj)

    def in_ambient(obj):
        return ambient is None or obj_in(ambient, obj)

    mor_rules = [r for r in ("kernels", "cokernels", "images") if r in rules]
    if mor_rules:
        for a in cands:
            for b in cands:
                for ker, img, cok in backend.part_sets(a, b):
                    for rule, part in (("kernels", ker), ("cokernels", cok), ("images", img)):
                        if rule in mor_rules and in_ambient(part) and not ok(part):
                            yield rule, part
    if "quotients" in rules or "subobjects" in rules:
        for a in cands:
            for sub, quot in backend.sub_quot_pairs(a):
                if "quotients" in rules and in_ambient(quot) and not ok(quot):
                    yield "quotients", quot
                if "subobjects" in rules and in_ambient(sub) and not ok(sub):
                    yield "subobjects", sub
    if "extensions" in rules:
        for sub in cands:
            for quot in cands:
                for mid in backend.middle_terms(quot, sub):
                    if in_ambient(mid) and not ok(mid):
                        yield "extensions", mid


def _memo(backend) -> dict:
    cache = getattr(backend, "_core_cache", None)
    if cache is None:
        cache = {}
        backend._core_cache = cache
    return cache


def is_closed(backend, S, rules, ambient=None, mult_bound=DEFAULT_MULT_BOUND):
    S = frozenset(S)
    key = ("closed", S, tuple(sorted(rules)),
           None if ambient is None else frozenset(ambient), mult_bound, faults.snapshot())
    cache = _memo(backend)
    if key not in cache:
        cache[key] = not any(True for _ in _violations(backend, S, rules, ambient, mult_bound))
    return cache[key]


def closure(backend, seed, rules, ambient=None, mult_bound=DEFAULT_MULT_BOUND) -> Subcat:
    """Least superset of seed closed under the selected rules.

    With an ambient set, the closure is taken inside the ambient
    subcategory: produced objects outside it are discarded.
    """
    S = frozenset(seed)
    key = ("closure", S, tuple(sorted(rules)),
           None if ambient is None else frozenset(ambient), mult_bound, faults.snapshot())
    cache = _memo(backend)
    hit = cache.get(key)
    if hit is not None:
        return hit
    while True:
        new = set(S)
        for _, produced in _violations(backend, S, rules, ambient, mult_bound):
            new.update(produced)
        if new == S:
            cache[key] = S
            return S
        S = frozenset(new)


@dataclass(frozen=True)
class SubcatFlags:
    is_narrow: bool
    is_wide: bool
    is_nullity: bool
    is_torsion_class: bool


def classify_subcat(backend, S, mult_bound=DEFAULT_MULT_BOUND) -> SubcatFlags:
    """Closure flags of an additively-closed subset, by one-step scans.

    On a finite-length backend every nullity class is coreflective, so the
    torsion-class flag coincides with the nullity flag.
    """
    S = frozenset(S)
    key = ("classify", S, mult_bound, faults.snapshot())
    cache = _memo(backend)
    if key not in cache:
        narrow = is_closed(backend, S, ("extensions", "cokernels"), mult_bound=mult_bound)
        wide = narrow and is_closed(backend, S, ("kernels",), mult_bound=mult_bound)
        nullity = is_closed(backend, S, ("quotients", "extensions"), mult_bound=mult_bound)
        cache[key] = SubcatFlags(narrow, wide, nullity, nullity)
    return cache[key]


def perp(backend, S, side, degrees="all", universe=None) -> Subcat:
    """Indecomposables with vanishing Hom (and Ext, if degrees='all')
    against every object of S; side='left' vanishes maps into S,
    side='right' vanishes maps out of S."""
    if side not in ("left", "right"):
        raise BackendError("side must be 'left' or 'right'")
    if degrees not in ("all", "zero_only"):
        raise BackendError("degrees must be 'all' or 'zero_only'")
    if faults.is_active("perp-ignores-ext"):
        degrees = "zero_only"
    ids = backend.all_ids() if universe is None else sorted(universe)
    out = set()
    for i in ids:
        good = True
        for s in S:
            if side == "left":
                h = backend.hom_matrix[i, s]
                e = backend.ext_matrix[i, s]
            else:
                h = backend.hom_matrix[s, i]
                e = backend.ext_matrix[s, i]
            if h or (degrees == "all" and e):
                good = False
                break
        if good:
            out.add(i)
    return frozenset(out)


def torsion_decompose(backend, obj: Obj, T) -> tuple:
    """Split obj as (torsion part in T, free part in T^perp0).

    The torsion part is the trace of T in obj: the subrepresentation
    spanned by the images of all maps out of T's indecomposables.
    """
    T = frozenset(T)
    if not classify_subcat(backend, T).is_torsion_class:
        raise BackendError("subcategory is not a torsion class")
    if not obj:
        return (), ()
    import numpy as np
    from . import fplinalg as la

    rep = backend.obj_rep(obj)
    cols = [[] for _ in range(backend.spec.vertices)]
    for t in sorted(T):
        for f in backend.hom_basis((t,), obj):
            for v in range(backend.spec.vertices):
                for j in range(f[v].shape[1]):
                    cols[v].append(f[v][:, j])
    bases = []
    for v in range(backend.spec.vertices):
        if cols[v]:
            mat = np.column_stack(cols[v])
            bases.append(la.column_space(mat, backend.p))
        else:
            bases.append(np.zeros((rep.dims[v], 0), dtype=np.int64))
    torsion = backend.decompose_rep(backend._sub_rep(rep, bases))
    free = backend.decompose_rep(backend._quot_rep(rep, bases))
    return torsion, free


def ext_injectives(backend, C) -> Subcat:
    """Indecomposables I of C with Ext(X, I) = 0 for every X in C."""
    C = frozenset(C)
    if not classify_subcat(backend, C).is_narrow:
        raise BackendError("ext_injectives requires a narrow subcategory")
    return frozenset(i for i in C if all(backend.ext_matrix[x, i] == 0 for x in C))


def is_tilting_in(backend, N, W, copy_bound=DEFAULT_COPY_BOUND) -> bool:
    """True iff every indecomposable of W embeds into a finite sum of
    objects of N (monomorphism search bounded by copy_bound summands)."""
    N = frozenset(N)
    W = frozenset(W)
    if not N <= W:
        raise BackendError("N must be contained in W")
    key = ("tilting", N, W, copy_bound)
    cache = _memo(backend)
    hit = cache.get(key)
    if hit is not None:
        return hit
    cache[key] = _tilting_search(backend, N, W, copy_bound)
    return cache[key]


def _tilting_search(backend, N, W, copy_bound) -> bool:
    for w in sorted(W):
        if w in N:
            continue
        wd = backend.indecs[w].dims
        found = False
        usable = [n for n in sorted(N) if backend.hom_matrix[w, n] > 0]
        for r in range(1, copy_bound + 1):
            for combo in itertools.combinations_with_replacement(usable, r):
                tgt = tuple(combo)
                td = backend.obj_dims(tgt)
                if any(t < d for t, d in zip(td, wd)):
                    continue
                for f in backend.morphisms((w,), tgt):
                    if backend.is_mono(f):
                        found = True
                        break
                if found:
                    break
            if found:
                break
        if not found:
            return False
    return True


def split_injective_test(backend, S, I, mult_bound=DEFAULT_MULT_BOUND) -> bool:
    """True iff every monomorphism I -> M with M in S splits."""
    S = frozenset(S)
    for m in candidates(backend, S, mult_bound):
        for f in backend.morphisms((I,), m):
            if not backend.is_mono(f):
                continue
            if not any(_composes_to_identity(backend, f, g)
                       for g in backend.morphisms(m, (I,))):
                return False
    return True


def _composes_to_identity(backend, f, g):
    import numpy as np

    sd = backend.obj_dims(f.source)
    md = backend.obj_dims(f.target)
    for v in range(backend.spec.vertices):
        fm = f.mat(v, sd, md)
        gm = g.mat(v, md, sd)
        comp = (gm @ fm) % backend.p if fm.size and gm.size else np.zeros((sd[v], sd[v]), dtype=np.int64)
        if not np.array_equal(comp, np.eye(sd[v], dtype=np.int64)):
            return False
    return True


def kernel_realizations(backend, S, target_id, mult_bound=DEFAULT_MULT_BOUND):
    """Epimorphisms between bounded sums of S whose kernel is the given
    indecomposable; yields (source, target) witnesses."""
    S = frozenset(S)
    for a in candidates(backend, S, mult_bound):
        for b in candidates(backend, S, mult_bound):
            for f in backend.morphisms(a, b):
                if not backend.is_epi(f):
                    continue
                ker, _, _ = backend.morphism_parts(f)
                if ker == (target_id,):
                    yield a, b


def enumerate_subcats(backend, flags=(), mult_bound=DEFAULT_MULT_BOUND, max_indecs=14):
    """All additively-closed subsets passing classify_subcat with every
    requested flag, in bitmask order."""
    n = len(backend.indecs)
    if n > max_indecs:
        raise BackendError("indecomposable table too large for subset enumeration")
    out = []
    for S in backend.subsets():
        fl = classify_subcat(backend, S, mult_bound=mult_bound)
        if all(getattr(fl, f) for f in flags):
            out.append(S)
    return out
