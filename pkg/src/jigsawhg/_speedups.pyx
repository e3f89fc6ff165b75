# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled percolation round loop; mirrors jigsawhg._fallback.run_rounds."""

from libc.stdint cimport int64_t, uint64_t
from libcpp.vector cimport vector

# j-subsets per edge handled by the fixed gather buffer
cdef enum:
    MAX_DUTY = 64


cdef inline long uf_find(vector[long]& parent, long x) noexcept:
    cdef long root = x
    cdef long nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


cdef void _radix_sort(vector[uint64_t]& keys, vector[uint64_t]& scratch) noexcept:
    """LSD radix sort with 16-bit digits; passes above the maximum key are skipped."""
    cdef Py_ssize_t m = <Py_ssize_t> keys.size()
    if m < 2:
        return
    cdef uint64_t max_key = 0
    cdef Py_ssize_t i
    for i in range(m):
        if keys[i] > max_key:
            max_key = keys[i]
    scratch.resize(m)
    cdef vector[Py_ssize_t] counts = vector[Py_ssize_t](65536)
    cdef int shift = 0
    cdef Py_ssize_t digit, acc, tmp_count
    cdef bint flipped = False
    while shift < 64 and (max_key >> shift) > 0:
        for i in range(65536):
            counts[i] = 0
        if not flipped:
            for i in range(m):
                counts[<Py_ssize_t> ((keys[i] >> shift) & 0xFFFF)] += 1
            acc = 0
            for i in range(65536):
                tmp_count = counts[i]
                counts[i] = acc
                acc += tmp_count
            for i in range(m):
                digit = <Py_ssize_t> ((keys[i] >> shift) & 0xFFFF)
                scratch[counts[digit]] = keys[i]
                counts[digit] += 1
        else:
            for i in range(m):
                counts[<Py_ssize_t> ((scratch[i] >> shift) & 0xFFFF)] += 1
            acc = 0
            for i in range(65536):
                tmp_count = counts[i]
                counts[i] = acc
                acc += tmp_count
            for i in range(m):
                digit = <Py_ssize_t> ((scratch[i] >> shift) & 0xFFFF)
                keys[counts[digit]] = scratch[i]
                counts[digit] += 1
        flipped = not flipped
        shift += 16
    if flipped:
        for i in range(m):
            keys[i] = scratch[i]


cdef void _colour_keys(const int64_t[:, ::1] incidence,
                       const int64_t[::1] labels,
                       vector[uint64_t]& keys,
                       vector[uint64_t]& scratch) noexcept:
    cdef Py_ssize_t m = incidence.shape[0]
    cdef Py_ssize_t width = incidence.shape[1]
    cdef long buf[MAX_DUTY]
    cdef Py_ssize_t e, t, u, v, w, r
    cdef long cls
    cdef Py_ssize_t count
    cdef bint seen
    cdef uint64_t lo, hi
    keys.clear()
    for e in range(m):
        count = 0
        for t in range(width):
            cls = labels[incidence[e, t]]
            if cls < 0:
                continue
            seen = False
            for u in range(count):
                if buf[u] == cls:
                    seen = True
                    break
            if not seen:
                buf[count] = cls
                count += 1
        for u in range(count):
            for v in range(u + 1, count):
                if buf[u] < buf[v]:
                    lo = <uint64_t> buf[u]
                    hi = <uint64_t> buf[v]
                else:
                    lo = <uint64_t> buf[v]
                    hi = <uint64_t> buf[u]
                keys.push_back((lo << 32) | hi)
    _radix_sort(keys, scratch)
    w = 0
    for r in range(<Py_ssize_t> keys.size()):
        if w == 0 or keys[r] != keys[w - 1]:
            keys[w] = keys[r]
            w += 1
    keys.resize(w)


def run_rounds(list incidences, int64_t[::1] labels, long num_classes,
               int64_t[::1] class_sizes, long r_threshold):
    """Iterate merge rounds in place; see jigsawhg._fallback.run_rounds."""
    cdef Py_ssize_t n_items = labels.shape[0]
    cdef long kappa = num_classes
    cdef Py_ssize_t n_colours = len(incidences)
    cdef list rounds = []
    cdef vector[vector[uint64_t]] colour_keys = vector[vector[uint64_t]](n_colours)
    cdef vector[uint64_t] scratch
    cdef vector[Py_ssize_t] cursor = vector[Py_ssize_t](n_colours)
    cdef vector[long] parent
    cdef vector[long] szs
    cdef vector[long] new_szs
    cdef vector[long] new_id
    cdef Py_ssize_t c, i
    cdef long a, b, ra, rb, root, nid, cls, max_size, tmp, hits
    cdef uint64_t key
    cdef bint merged_any, exhausted
    cdef const int64_t[:, ::1] inc

    for arr in incidences:
        if arr.shape[1] > MAX_DUTY:
            raise ValueError("edge duty width exceeds the compiled kernel limit")

    szs.resize(kappa)
    for i in range(kappa):
        szs[i] = class_sizes[i]

    while kappa > 1:
        exhausted = True
        for c in range(n_colours):
            inc = incidences[c]
            if inc.shape[0] == 0:
                colour_keys[c].clear()
            else:
                _colour_keys(inc, labels, colour_keys[c], scratch)
                if colour_keys[c].size() > 0:
                    exhausted = False
            cursor[c] = 0
        if exhausted:
            break

        parent.resize(kappa)
        for i in range(kappa):
            parent[i] = i
        merged_any = False
        # merge-count across the per-colour sorted unique key vectors
        while True:
            key = <uint64_t> 0xFFFFFFFFFFFFFFFF
            for c in range(n_colours):
                if cursor[c] < <Py_ssize_t> colour_keys[c].size() and colour_keys[c][cursor[c]] < key:
                    key = colour_keys[c][cursor[c]]
            if key == <uint64_t> 0xFFFFFFFFFFFFFFFF:
                break
            hits = 0
            for c in range(n_colours):
                if cursor[c] < <Py_ssize_t> colour_keys[c].size() and colour_keys[c][cursor[c]] == key:
                    hits += 1
                    cursor[c] += 1
            if hits >= r_threshold:
                a = <long> (key >> 32)
                b = <long> (key & <uint64_t> 0xFFFFFFFF)
                ra = uf_find(parent, a)
                rb = uf_find(parent, b)
                if ra != rb:
                    if szs[ra] < szs[rb]:
                        tmp = ra
                        ra = rb
                        rb = tmp
                    parent[rb] = ra
                    szs[ra] += szs[rb]
                    merged_any = True
        if not merged_any:
            break

        # canonical relabel: new ids by first occurrence over old class ids,
        # which preserves the increasing-minimum-member-rank numbering
        new_id.resize(kappa)
        for i in range(kappa):
            new_id[i] = -1
        nid = 0
        for i in range(kappa):
            root = uf_find(parent, i)
            if new_id[root] < 0:
                new_id[root] = nid
                nid += 1
        new_szs.resize(nid)
        max_size = 0
        for i in range(kappa):
            root = uf_find(parent, i)
            if root == i:
                new_szs[new_id[i]] = szs[i]
                if szs[i] > max_size:
                    max_size = szs[i]
        for i in range(n_items):
            cls = labels[i]
            if cls >= 0:
                labels[i] = new_id[uf_find(parent, cls)]
        szs.resize(nid)
        for i in range(nid):
            szs[i] = new_szs[i]
        kappa = nid
        rounds.append((int(kappa), int(max_size)))
    return int(kappa), rounds
