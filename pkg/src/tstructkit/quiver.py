"""Finite-dimensional representations of an acyclic quiver over a prime field.

This backend realizes a hereditary abelian category with a finite list of
indecomposables.  Objects are multisets of indecomposable ids, morphisms are
tuples of matrices commuting with the arrow maps, and all structure
(Hom, Ext, kernels, cokernels, subrepresentations) is computed by exact
linear algebra over F_p.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import fplinalg as la

Obj = tuple  # sorted tuple of indecomposable ids; () is the zero object

MORPHISM_SPACE_LIMIT = 18  # refuse to enumerate Hom spaces above p^this


class BackendError(Exception):
    pass


@dataclass(frozen=True)
class QuiverSpec:
    """An acyclic quiver with a prime base field and an enumeration bound."""

    vertices: int
    arrows: tuple  # tuple of (source, target) pairs, 0-based
    field: int = 2
    dim_bound: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if not self.dim_bound:
            object.__setattr__(self, "dim_bound", tuple(2 for _ in range(self.vertices)))
        else:
            object.__setattr__(self, "dim_bound", tuple(self.dim_bound))
        if len(self.dim_bound) != self.vertices:
            raise BackendError("dim_bound length must match vertex count")
        if self.field < 2 or not _is_prime(self.field):
            raise BackendError("field size must be a prime (prime powers beyond primes unsupported)")
        for (s, t) in self.arrows:
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise BackendError("arrow endpoint out of range")
        if _has_cycle(self.vertices, self.arrows):
            raise BackendError("quiver must be acyclic")

    @staticmethod
    def from_json(path):
        with open(path) as fh:
            data = json.load(fh)
        return QuiverSpec(
            vertices=data["vertices"],
            arrows=tuple(tuple(a) for a in data["arrows"]),
            field=data.get("field", 2),
            dim_bound=tuple(data.get("dim_bound", ())),
        )


def _is_prime(n):
    if n < 2:
        return False
    for d in range(2, int(n**0.5) + 1):
        if n % d == 0:
            return False
    return True


def _has_cycle(n, arrows):
    adj = {v: [] for v in range(n)}
    for s, t in arrows:
        adj[s].append(t)
    state = [0] * n

    def dfs(v):
        state[v] = 1
        for w in adj[v]:
            if state[w] == 1:
                return True
            if state[w] == 0 and dfs(w):
                return True
        state[v] = 2
        return False

    return any(state[v] == 0 and dfs(v) for v in range(n))


@dataclass(frozen=True)
class Rep:
    """A representation: a dimension vector and one matrix per arrow.

    Matrix for arrow (s, t) has shape (dims[t], dims[s]).
    """

    dims: tuple
    mats: tuple  # tuple of bytes-hashable immutable matrices stored as nested tuples

    @staticmethod
    def make(dims, mats):
        dims = tuple(int(d) for d in dims)
        frozen = tuple(tuple(tuple(int(x) for x in row) for row in np.asarray(m, dtype=np.int64)) for m in mats)
        return Rep(dims, frozen)

    def mat(self, i):
        m = self.mats[i]
        if not m:
            # degenerate: one side is zero-dimensional
            return np.zeros((0, 0), dtype=np.int64)
        return np.array(m, dtype=np.int64)

    def arrow_matrix(self, i, spec):
        s, t = spec.arrows[i]
        m = np.array(self.mats[i], dtype=np.int64) if self.mats[i] else np.zeros((0, 0), dtype=np.int64)
        return m.reshape(self.dims[t], self.dims[s])

    @property
    def total_dim(self):
        return sum(self.dims)


def rep_from_arrays(spec, dims, arrays):
    dims = tuple(int(d) for d in dims)
    mats = []
    for i, (s, t) in enumerate(spec.arrows):
        a = np.asarray(arrays[i], dtype=np.int64).reshape(dims[t], dims[s]) % spec.field
        mats.append(tuple(tuple(int(x) for x in row) for row in a))
    return Rep(dims, tuple(mats))


def zero_rep(spec):
    return rep_from_arrays(spec, (0,) * spec.vertices, [np.zeros((0, 0))] * len(spec.arrows))


@dataclass(frozen=True)
class Morphism:
    """A homomorphism of representations, one matrix per vertex."""

    source: Obj
    target: Obj
    mats: tuple  # per-vertex numpy matrices (shape tgt_dim x src_dim)

    def mat(self, v, src_dims=None, tgt_dims=None):
        return self.mats[v]


class QuiverBackend:
    """Finite hereditary backend built from an acyclic quiver.

    After construction the instance is read-only: the indecomposable table,
    the cached Hom/Ext matrices, and all memo dictionaries only accrete
    derived values of pure functions.
    """

    def __init__(self, spec: QuiverSpec):
        self.spec = spec
        self.p = spec.field
        self.truncated = False
        self.indecs: list[Rep] = []
        self._build_table()
        n = len(self.indecs)
        self.hom_matrix = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                self.hom_matrix[i, j] = self._rep_hom_dim(self.indecs[i], self.indecs[j])
        self.ext_matrix = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                e = self.hom_matrix[i, j] - self.euler_form(self.indecs[i].dims, self.indecs[j].dims)
                if e < 0:
                    raise BackendError("negative Ext dimension; backend table inconsistent")
                self.ext_matrix[i, j] = e
        self._hom_inv = _rational_inverse(self.hom_matrix)
        if self._hom_inv is None:
            self.truncated = True
        self._hom_basis_cache = {}
        self._decompose_cache = {}
        self._middle_cache = {}
        self._subrep_cache = {}
        self._parts_cache = {}
        self._obj_rep_cache = {}
        self._sub_quot_cache = {}

    # ------------------------------------------------------------------
    # table construction

    def _build_table(self):
        spec = self.spec
        bound = spec.dim_bound
        dimvecs = sorted(
            (dv for dv in itertools.product(*(range(b + 1) for b in bound)) if any(dv)),
            key=lambda dv: (sum(dv), dv),
        )
        for dv in dimvecs:
            for rep in self._all_reps(dv):
                if not self._is_new_indec(rep):
                    continue
                self.indecs.append(rep)
        if any(b > 0 for b in bound) and not self.indecs and any(bound):
            return
        # mark windows that cannot be complete: a rep-infinite quiver keeps
        # producing indecomposables beyond any bound, detected below via the
        # Hom-matrix invertibility check in __init__

    def _all_reps(self, dv):
        spec = self.spec
        shapes = [(dv[t], dv[s]) for (s, t) in spec.arrows]
        spaces = []
        for (r, c) in shapes:
            entries = r * c
            spaces.append(range(self.p**entries))
        for combo in itertools.product(*spaces):
            arrays = []
            for (r, c), code in zip(shapes, combo):
                flat = []
                x = code
                for _ in range(r * c):
                    flat.append(x % self.p)
                    x //= self.p
                arrays.append(np.array(flat, dtype=np.int64).reshape(r, c))
            yield rep_from_arrays(spec, dv, arrays)

    def _is_new_indec(self, rep):
        # graded order: every proper summand is already in the table, so rep
        # is decomposable iff some accepted indec splits off
        for idx, cand in enumerate(self.indecs):
            if all(cd <= rd for cd, rd in zip(cand.dims, rep.dims)) and cand.total_dim < rep.total_dim:
                if self._is_split_summand(cand, rep):
                    return False
        for cand in self.indecs:
            if cand.dims == rep.dims and self._reps_isomorphic(cand, rep):
                return False
        return True

    def _is_split_summand(self, small, big):
        fs = self._rep_hom_basis(small, big)
        if not fs:
            return False
        gs = self._rep_hom_basis(big, small)
        for f in fs:
            for g in gs:
                comp = [(_mm(g[v], f[v], self.p)) for v in range(self.spec.vertices)]
                if all(m.shape[0] == m.shape[1] and la.rank(m, self.p) == m.shape[0] for m in comp):
                    return True
        return False

    def _reps_isomorphic(self, a, b):
        if a.dims != b.dims:
            return False
        basis = self._rep_hom_basis(a, b)
        h = len(basis)
        if h == 0:
            return a.total_dim == 0
        if h > MORPHISM_SPACE_LIMIT:
            raise BackendError("Hom space too large for isomorphism search")
        for coeffs in itertools.product(range(self.p), repeat=h):
            if not any(coeffs):
                continue
            mats = _combine(basis, coeffs, self.p)
            if all(m.shape[0] == m.shape[1] and la.rank(m, self.p) == m.shape[0] for m in mats):
                return True
        return False

    def is_indecomposable(self, rep):
        """Brute-force test: End(rep) contains no nontrivial idempotent."""
        if rep.total_dim == 0:
            return False
        basis = self._rep_hom_basis(rep, rep)
        h = len(basis)
        if h > MORPHISM_SPACE_LIMIT:
            raise BackendError("End algebra too large for idempotent search")
        idy = [np.eye(d, dtype=np.int64) for d in rep.dims]
        for coeffs in itertools.product(range(self.p), repeat=h):
            if not any(coeffs):
                continue
            e = _combine(basis, coeffs, self.p)
            if all(np.array_equal(m, i) for m, i in zip(e, idy)):
                continue
            if all(np.array_equal(_mm(m, m, self.p), m) for m in e):
                return False
        return True

    # ------------------------------------------------------------------
    # linear-algebra layer on representations

    def _rep_hom_basis(self, a, b):
        """Basis of Hom(a, b) as lists of per-vertex matrices."""
        spec = self.spec
        nvar = sum(b.dims[v] * a.dims[v] for v in range(spec.vertices))
        if nvar == 0:
            return []
        offsets = []
        off = 0
        for v in range(spec.vertices):
            offsets.append(off)
            off += b.dims[v] * a.dims[v]
        rows = []
        for i, (s, t) in enumerate(spec.arrows):
            am = a.arrow_matrix(i, spec)
            bm = b.arrow_matrix(i, spec)
            # condition: bm @ X_s - X_t @ am = 0, entries (r, c): r < b.dims[t], c < a.dims[s]
            for r in range(b.dims[t]):
                for c in range(a.dims[s]):
                    row = np.zeros(nvar, dtype=np.int64)
                    for k in range(a.dims[s]):
                        # X_s entry (k_row=?, c) -> bm[r, q] * X_s[q, c]
                        pass
                    for q in range(b.dims[s]):
                        row[offsets[s] + q * a.dims[s] + c] += bm[r, q]
                    for q in range(a.dims[t]):
                        row[offsets[t] + r * a.dims[t] + q] -= am[q, c]
                    rows.append(row % self.p)
        if rows:
            mat = np.vstack(rows)
            null = la.nullspace(mat, self.p)
        else:
            null = np.eye(nvar, dtype=np.int64)
        basis = []
        for j in range(null.shape[1]):
            vec = null[:, j]
            mats = []
            for v in range(spec.vertices):
                block = vec[offsets[v]:offsets[v] + b.dims[v] * a.dims[v]]
                mats.append(block.reshape(b.dims[v], a.dims[v]) % self.p)
            basis.append(mats)
        return basis

    def _rep_hom_dim(self, a, b):
        return len(self._rep_hom_basis(a, b))

    def euler_form(self, d, e):
        total = sum(dv * ev for dv, ev in zip(d, e))
        for (s, t) in self.spec.arrows:
            total -= d[s] * e[t]
        return total

    # ------------------------------------------------------------------
    # objects (multisets of indecomposable ids)

    def obj(self, *ids) -> Obj:
        return tuple(sorted(ids))

    def obj_dims(self, obj: Obj):
        dims = np.zeros(self.spec.vertices, dtype=np.int64)
        for i in obj:
            dims += np.array(self.indecs[i].dims, dtype=np.int64)
        return tuple(int(d) for d in dims)

    def obj_rep(self, obj: Obj) -> Rep:
        hit = self._obj_rep_cache.get(obj)
        if hit is not None:
            return hit
        spec = self.spec
        parts = [self.indecs[i] for i in obj]
        dims = self.obj_dims(obj)
        arrays = []
        for ai, (s, t) in enumerate(spec.arrows):
            blocks = [p.arrow_matrix(ai, spec) for p in parts]
            m = np.zeros((dims[t], dims[s]), dtype=np.int64)
            ro = co = 0
            for p_, b in zip(parts, blocks):
                m[ro:ro + p_.dims[t], co:co + p_.dims[s]] = b
                ro += p_.dims[t]
                co += p_.dims[s]
            arrays.append(m)
        rep = rep_from_arrays(spec, dims, arrays)
        self._obj_rep_cache[obj] = rep
        return rep

    def hom_dim(self, x: Obj, y: Obj) -> int:
        return int(sum(self.hom_matrix[i, j] for i in x for j in y))

    def ext_dim(self, x: Obj, y: Obj) -> int:
        return int(sum(self.ext_matrix[i, j] for i in x for j in y))

    def decompose_rep(self, rep) -> Obj:
        """Multiset of indecomposable ids isomorphic to rep."""
        key = (rep.dims, rep.mats)
        hit = self._decompose_cache.get(key)
        if hit is not None:
            return hit
        if rep.total_dim == 0:
            self._decompose_cache[key] = ()
            return ()
        if self._hom_inv is None:
            raise BackendError("cannot decompose: indecomposable table is incomplete (truncated backend)")
        g = [Fraction(self._rep_hom_dim(self.indecs[i], rep)) for i in range(len(self.indecs))]
        mult = _mat_vec(self._hom_inv, g)
        ids = []
        dims = np.zeros(self.spec.vertices, dtype=np.int64)
        for i, m in enumerate(mult):
            if m.denominator != 1 or m < 0:
                raise BackendError("object does not decompose over the table")
            for _ in range(int(m)):
                ids.append(i)
                dims += np.array(self.indecs[i].dims, dtype=np.int64)
        if tuple(int(d) for d in dims) != rep.dims:
            raise BackendError("object does not decompose over the table")
        out = tuple(sorted(ids))
        self._decompose_cache[key] = out
        return out

    # ------------------------------------------------------------------
    # morphisms between objects

    def hom_basis(self, x: Obj, y: Obj):
        key = (x, y)
        hit = self._hom_basis_cache.get(key)
        if hit is None:
            hit = self._rep_hom_basis(self.obj_rep(x), self.obj_rep(y))
            self._hom_basis_cache[key] = hit
        return hit

    def morphisms(self, x: Obj, y: Obj, include_zero=False):
        """All morphisms x -> y (F_p combinations of the Hom basis)."""
        basis = self.hom_basis(x, y)
        h = len(basis)
        if h > MORPHISM_SPACE_LIMIT:
            raise BackendError("Hom space too large to enumerate")
        xd, yd = self.obj_dims(x), self.obj_dims(y)
        for coeffs in itertools.product(range(self.p), repeat=h):
            if not include_zero and not any(coeffs):
                continue
            mats = _combine_dims(basis, coeffs, self.p, xd, yd)
            yield Morphism(x, y, tuple(mats))
        if include_zero and h == 0:
            mats = [np.zeros((yd[v], xd[v]), dtype=np.int64) for v in range(self.spec.vertices)]
            yield Morphism(x, y, tuple(mats))

    def morphism_parts(self, f: Morphism):
        """(kernel, image, cokernel) of f, each as an Obj up to isomorphism."""
        kr, ir, cr = self.morphism_part_reps(f)
        return self.decompose_rep(kr), self.decompose_rep(ir), self.decompose_rep(cr)

    def part_sets(self, x: Obj, y: Obj):
        """Distinct (kernel, image, cokernel) triples over all nonzero
        morphisms x -> y."""
        key = (x, y)
        hit = self._parts_cache.get(key)
        if hit is None:
            seen = set()
            for f in self.morphisms(x, y):
                seen.add(self.morphism_parts(f))
            hit = sorted(seen)
            self._parts_cache[key] = hit
        return hit

    def morphism_part_reps(self, f: Morphism):
        spec = self.spec
        src = self.obj_rep(f.source)
        tgt = self.obj_rep(f.target)
        fmats = [f.mat(v, src.dims, tgt.dims) for v in range(spec.vertices)]
        # kernel: nullspace at each vertex, arrows restrict
        kbases = [la.nullspace(fmats[v], self.p) for v in range(spec.vertices)]
        ker = self._sub_rep(src, kbases)
        # image: column spaces, arrows restrict from the target rep
        ibases = [la.column_space(fmats[v], self.p) for v in range(spec.vertices)]
        img = self._sub_rep(tgt, ibases)
        cok = self._quot_rep(tgt, ibases)
        return ker, img, cok

    def _sub_rep(self, ambient, bases):
        """The subrepresentation spanned by per-vertex bases (assumed invariant)."""
        spec = self.spec
        dims = tuple(b.shape[1] for b in bases)
        arrays = []
        for i, (s, t) in enumerate(spec.arrows):
            am = ambient.arrow_matrix(i, spec)
            mapped = _mm(am, bases[s], self.p)
            if dims[t] == 0:
                if mapped.size and la.rank(mapped, self.p) > 0:
                    raise BackendError("subspace tuple is not arrow-invariant")
                arrays.append(np.zeros((0, dims[s]), dtype=np.int64))
                continue
            coords = la.coords_in_basis(bases[t], mapped, self.p) if dims[s] else np.zeros((dims[t], 0), dtype=np.int64)
            arrays.append(coords)
        return rep_from_arrays(spec, dims, arrays)

    def _quot_rep(self, ambient, bases):
        """Quotient of ambient by the subrepresentation spanned by bases."""
        spec = self.spec
        comps = [la.complement_basis(bases[v], ambient.dims[v], self.p) for v in range(spec.vertices)]
        dims = tuple(c.shape[1] for c in comps)
        arrays = []
        for i, (s, t) in enumerate(spec.arrows):
            am = ambient.arrow_matrix(i, spec)
            if dims[t] == 0 or dims[s] == 0:
                arrays.append(np.zeros((dims[t], dims[s]), dtype=np.int64))
                continue
            full = np.concatenate([bases[t], comps[t]], axis=1)
            mapped = _mm(am, comps[s], self.p)
            coords = la.coords_in_basis(full, mapped, self.p)
            arrays.append(coords[bases[t].shape[1]:, :])
        return rep_from_arrays(spec, dims, arrays)

    def is_mono(self, f: Morphism) -> bool:
        src = self.obj_rep(f.source)
        tgt = self.obj_rep(f.target)
        return all(
            la.rank(f.mat(v, src.dims, tgt.dims), self.p) == src.dims[v]
            for v in range(self.spec.vertices)
        )

    def is_epi(self, f: Morphism) -> bool:
        src = self.obj_rep(f.source)
        tgt = self.obj_rep(f.target)
        return all(
            la.rank(f.mat(v, src.dims, tgt.dims), self.p) == tgt.dims[v]
            for v in range(self.spec.vertices)
        )

    # ------------------------------------------------------------------
    # subobject enumeration

    def subrep_bases(self, obj: Obj):
        """All arrow-invariant subspace tuples of obj, as per-vertex bases."""
        key = obj
        hit = self._subrep_cache.get(key)
        if hit is not None:
            return hit
        spec = self.spec
        rep = self.obj_rep(obj)
        per_vertex = [all_subspaces(rep.dims[v], self.p) for v in range(spec.vertices)]
        out = []
        for combo in itertools.product(*per_vertex):
            ok = True
            for i, (s, t) in enumerate(spec.arrows):
                am = rep.arrow_matrix(i, spec)
                ws = combo[s]
                wt = combo[t]
                if ws.shape[1] == 0:
                    continue
                mapped = _mm(am, ws, self.p)
                stacked = np.concatenate([wt, mapped], axis=1)
                if la.rank(stacked, self.p) != la.rank(wt, self.p):
                    ok = False
                    break
            if ok:
                out.append(combo)
        self._subrep_cache[key] = out
        return out

    def subobjects(self, obj: Obj):
        """All subobjects of obj up to isomorphism, as Objs."""
        rep = self.obj_rep(obj)
        seen = set()
        for bases in self.subrep_bases(obj):
            seen.add(self.decompose_rep(self._sub_rep(rep, bases)))
        return sorted(seen)

    def quotients(self, obj: Obj):
        """All quotient objects of obj up to isomorphism, as Objs."""
        rep = self.obj_rep(obj)
        seen = set()
        for bases in self.subrep_bases(obj):
            seen.add(self.decompose_rep(self._quot_rep(rep, bases)))
        return sorted(seen)

    def sub_quot_pairs(self, obj: Obj):
        """All (subobject, quotient) pairs of complementary subrepresentations."""
        hit = self._sub_quot_cache.get(obj)
        if hit is not None:
            return hit
        rep = self.obj_rep(obj)
        seen = set()
        for bases in self.subrep_bases(obj):
            seen.add((self.decompose_rep(self._sub_rep(rep, bases)),
                      self.decompose_rep(self._quot_rep(rep, bases))))
        out = sorted(seen)
        self._sub_quot_cache[obj] = out
        return out

    # ------------------------------------------------------------------
    # extensions

    def objs_with_dims(self, dims):
        """All multisets of indecomposables with the given total dimension vector."""
        dims = tuple(dims)
        results = []

        def rec(start, remaining, acc):
            if all(r == 0 for r in remaining):
                results.append(tuple(acc))
                return
            for i in range(start, len(self.indecs)):
                d = self.indecs[i].dims
                if all(dv <= rv for dv, rv in zip(d, remaining)):
                    acc.append(i)
                    rec(i, tuple(rv - dv for rv, dv in zip(remaining, d)), acc)
                    acc.pop()

        rec(0, dims, [])
        return sorted(results)

    def middle_terms(self, quot: Obj, sub: Obj):
        """All M (up to iso) fitting 0 -> sub -> M -> quot -> 0."""
        key = (quot, sub)
        hit = self._middle_cache.get(key)
        if hit is not None:
            return hit
        if not sub:
            out = [quot]
            self._middle_cache[key] = out
            return out
        if not quot:
            out = [sub]
            self._middle_cache[key] = out
            return out
        total = tuple(a + b for a, b in zip(self.obj_dims(quot), self.obj_dims(sub)))
        found = []
        for cand in self.objs_with_dims(total):
            if self._extension_screen(cand, quot, sub) and self._is_extension(cand, quot, sub):
                found.append(cand)
        self._middle_cache[key] = found
        return found

    def _extension_screen(self, mid: Obj, quot: Obj, sub: Obj) -> bool:
        """Necessary Hom-count inequalities from left exactness of Hom:
        hom(quot,I) <= hom(mid,I) <= hom(quot,I) + hom(sub,I) and dually."""
        for i in range(len(self.indecs)):
            io = (i,)
            hm = self.hom_dim(mid, io)
            if not self.hom_dim(quot, io) <= hm <= self.hom_dim(quot, io) + self.hom_dim(sub, io):
                return False
            hm = self.hom_dim(io, mid)
            if not self.hom_dim(io, sub) <= hm <= self.hom_dim(io, sub) + self.hom_dim(io, quot):
                return False
        return True

    def _is_extension(self, mid: Obj, quot: Obj, sub: Obj):
        for f in self.morphisms(sub, mid):
            if not self.is_mono(f):
                continue
            src = self.obj_rep(f.source)
            tgt = self.obj_rep(f.target)
            ibases = [la.column_space(f.mat(v), self.p) for v in range(self.spec.vertices)]
            if self.decompose_rep(self._quot_rep(tgt, ibases)) == quot:
                return True
        return False

    # ------------------------------------------------------------------
    # enumeration interface

    def enumerate_indecomposables(self):
        return list(self.indecs)

    def all_ids(self):
        return tuple(range(len(self.indecs)))

    def subsets(self):
        """All additively-closed subcategories, in bitmask order."""
        n = len(self.indecs)
        for mask in range(1 << n):
            yield frozenset(i for i in range(n) if mask >> i & 1)


def all_subspaces(dim, p):
    """All subspaces of F_p^dim, each as a matrix whose columns are a basis."""
    key = (dim, p)
    hit = _SUBSPACE_CACHE.get(key)
    if hit is not None:
        return hit
    if dim == 0:
        out = [np.zeros((0, 0), dtype=np.int64)]
        _SUBSPACE_CACHE[key] = out
        return out
    vectors = []
    for code in range(1, p**dim):
        v = []
        x = code
        for _ in range(dim):
            v.append(x % p)
            x //= p
        vectors.append(np.array(v, dtype=np.int64))
    seen = {}
    # spans of all tuples of up to dim vectors; canonicalize by rref
    for r in range(0, dim + 1):
        for combo in itertools.combinations(vectors, r):
            mat = np.column_stack(combo) if combo else np.zeros((dim, 0), dtype=np.int64)
            red, piv = la.rref(mat.T, p) if combo else (np.zeros((0, dim), dtype=np.int64), [])
            basis_rows = red[:len(piv), :] if combo else red
            keyb = basis_rows.tobytes() if combo else b""
            keyb = (len(piv) if combo else 0, keyb)
            if keyb not in seen:
                seen[keyb] = basis_rows.T.copy() if combo else np.zeros((dim, 0), dtype=np.int64)
    out = sorted(seen.values(), key=lambda m: (m.shape[1], m.tobytes()))
    _SUBSPACE_CACHE[key] = out
    return out


_SUBSPACE_CACHE: dict = {}


def _mm(a, b, p):
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return (a @ b) % p


def _combine(basis, coeffs, p):
    mats = [np.zeros_like(m) for m in basis[0]]
    for c, b in zip(coeffs, basis):
        if c:
            mats = [(m + c * bm) % p for m, bm in zip(mats, b)]
    return mats


def _combine_dims(basis, coeffs, p, src_dims, tgt_dims):
    if not basis:
        return [np.zeros((tgt_dims[v], src_dims[v]), dtype=np.int64) for v in range(len(src_dims))]
    return _combine(basis, coeffs, p)


def _rational_inverse(mat):
    """Exact inverse of an integer matrix as Fractions, or None if singular."""
    n = mat.shape[0]
    if n == 0:
        return []
    a = [[Fraction(int(mat[i, j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _mat_vec(mat, vec):
    return [sum(m * v for m, v in zip(row, vec)) for row in mat]


def build_backend(spec: QuiverSpec) -> QuiverBackend:
    return QuiverBackend(spec)
