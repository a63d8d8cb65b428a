"""Hot numeric loops, each with a numba and a pure-numpy implementation.

The public functions dispatch on :data:`arglearn._accel.HAVE_NUMBA`; the
``*_np`` variants are always importable so tests can compare both paths.

Three families live here:

* subset classification for the brute-force extension oracle,
* least-model / bound propagation for the answer-set solver,
* candidate-interpretation pruning for the hypothesis search.
"""
import numpy as np

from ._accel import HAVE_NUMBA, njit

CONFLICT_FREE = 1
ADMISSIBLE = 2
COMPLETE = 4
STABLE = 8


# --------------------------------------------------------------------------
# oracle: classify every subset mask in [start, stop)

@njit
def _classify_nb(n, attackers, targets, start, stop):
    full = (np.int64(1) << n) - 1
    out = np.zeros(stop - start, np.uint8)
    for m in range(start, stop):
        s = np.int64(m)
        attacked = np.int64(0)
        for i in range(n):
            if (s >> i) & 1:
                attacked |= targets[i]
        if attacked & s:
            continue
        flags = CONFLICT_FREE
        defended = np.int64(0)
        for i in range(n):
            if (attackers[i] & ~attacked) == 0:
                defended |= np.int64(1) << i
        if (s & ~defended) == 0:
            flags |= ADMISSIBLE
            if defended == s:
                flags |= COMPLETE
        if (s | attacked) == full:
            flags |= STABLE
        out[m - start] = flags
    return out


def classify_subsets_np(n, attackers, targets, start, stop):
    masks = np.arange(start, stop, dtype=np.int64)
    attacked = np.zeros_like(masks)
    for i in range(n):
        attacked |= np.where(((masks >> i) & 1) == 1, targets[i], 0)
    cf = (attacked & masks) == 0
    defended = np.zeros_like(masks)
    for i in range(n):
        defended |= np.where((attackers[i] & ~attacked) == 0, np.int64(1) << i, 0)
    adm = cf & ((masks & ~defended) == 0)
    comp = adm & (defended == masks)
    full = (np.int64(1) << n) - 1
    stable = cf & ((masks | attacked) == full)
    flags = cf * CONFLICT_FREE + adm * ADMISSIBLE + comp * COMPLETE + stable * STABLE
    return flags.astype(np.uint8)


def classify_subsets(n, attackers, targets, start, stop):
    """Bit flags (CONFLICT_FREE | ADMISSIBLE | COMPLETE | STABLE) per mask.

    ``attackers[i]`` is the mask of arguments defeating ``i``; ``targets[i]``
    the mask of arguments ``i`` defeats.
    """
    attackers = np.asarray(attackers, dtype=np.int64)
    targets = np.asarray(targets, dtype=np.int64)
    if HAVE_NUMBA:
        return _classify_nb(n, attackers, targets, start, stop)
    return classify_subsets_np(n, attackers, targets, start, stop)


# --------------------------------------------------------------------------
# solver: least model of the active rules, and bound propagation

@njit
def _least_model_nb(n, head, pos_ptr, occ_ptr, occ_rule, active):
    nrules = head.shape[0]
    truth = np.zeros(n, np.uint8)
    count = np.empty(nrules, np.int32)
    stack = np.empty(n + 1, np.int32)
    sp = 0
    bottom = False
    for r in range(nrules):
        count[r] = pos_ptr[r + 1] - pos_ptr[r]
        if active[r] and count[r] == 0:
            h = head[r]
            if h < 0:
                bottom = True
            elif truth[h] == 0:
                truth[h] = 1
                stack[sp] = h
                sp += 1
    while sp > 0:
        sp -= 1
        a = stack[sp]
        for k in range(occ_ptr[a], occ_ptr[a + 1]):
            r = occ_rule[k]
            count[r] -= 1
            if count[r] == 0 and active[r]:
                h = head[r]
                if h < 0:
                    bottom = True
                elif truth[h] == 0:
                    truth[h] = 1
                    stack[sp] = h
                    sp += 1
    return truth, bottom


@njit
def _backward_nb(val, head, pos_ptr, pos_idx, neg_ptr, neg_idx):
    """Rules whose head is false (or constraints) must not fire; a true atom
    with a single possible rule needs that rule's body. Returns
    (conflict, changed)."""
    n = val.shape[0]
    nrules = head.shape[0]
    changed = False
    open_rules = np.zeros(n, np.int32)
    last_rule = np.full(n, -1, np.int32)
    for r in range(nrules):
        body_false = False
        unknown = 0
        last = -1
        last_neg = False
        for k in range(pos_ptr[r], pos_ptr[r + 1]):
            v = val[pos_idx[k]]
            if v == 0:
                body_false = True
                break
            if v < 0:
                unknown += 1
                last = pos_idx[k]
                last_neg = False
        if not body_false:
            for k in range(neg_ptr[r], neg_ptr[r + 1]):
                v = val[neg_idx[k]]
                if v == 1:
                    body_false = True
                    break
                if v < 0:
                    unknown += 1
                    last = neg_idx[k]
                    last_neg = True
        if body_false:
            continue
        h = head[r]
        if h >= 0:
            open_rules[h] += 1
            last_rule[h] = r
        if h < 0 or val[h] == 0:
            if unknown == 0:
                return True, changed
            if unknown == 1 and val[last] < 0:
                val[last] = 1 if last_neg else 0
                changed = True
    for a in range(n):
        if val[a] == 1:
            if open_rules[a] == 0:
                return True, changed
            if open_rules[a] == 1:
                r = last_rule[a]
                for k in range(pos_ptr[r], pos_ptr[r + 1]):
                    b = pos_idx[k]
                    if val[b] < 0:
                        val[b] = 1
                        changed = True
                    elif val[b] == 0:
                        return True, changed
                for k in range(neg_ptr[r], neg_ptr[r + 1]):
                    b = neg_idx[k]
                    if val[b] < 0:
                        val[b] = 0
                        changed = True
                    elif val[b] == 1:
                        return True, changed
    return False, changed


@njit
def _propagate_nb(val, head, pos_ptr, pos_idx, neg_ptr, neg_idx, occ_ptr, occ_rule):
    n = val.shape[0]
    nrules = head.shape[0]
    active_lo = np.empty(nrules, np.bool_)
    active_hi = np.empty(nrules, np.bool_)
    while True:
        for r in range(nrules):
            all_false = True
            any_true = False
            for k in range(neg_ptr[r], neg_ptr[r + 1]):
                v = val[neg_idx[k]]
                if v != 0:
                    all_false = False
                    if v == 1:
                        any_true = True
            active_lo[r] = all_false
            active_hi[r] = not any_true
        changed = False
        lo, bottom = _least_model_nb(n, head, pos_ptr, occ_ptr, occ_rule, active_lo)
        if bottom:
            return 1
        for a in range(n):
            if lo[a]:
                if val[a] == 0:
                    return 1
                if val[a] < 0:
                    val[a] = 1
                    changed = True
        hi, _ = _least_model_nb(n, head, pos_ptr, occ_ptr, occ_rule, active_hi)
        for a in range(n):
            if not hi[a]:
                if val[a] == 1:
                    return 1
                if val[a] < 0:
                    val[a] = 0
                    changed = True
        conflict, moved = _backward_nb(val, head, pos_ptr, pos_idx, neg_ptr, neg_idx)
        if conflict:
            return 1
        if not (changed or moved):
            return 0


def least_model_np(g, active):
    truth = np.zeros(g.n_atoms, dtype=bool)
    has_head = g.head >= 0
    bottom = False
    while True:
        hits = np.bincount(g.pos_rule, weights=truth[g.pos_idx], minlength=g.n_rules)
        fire = active & (hits == g.pos_len)
        if np.any(fire & ~has_head):
            bottom = True
        new = np.zeros_like(truth)
        new[g.head[fire & has_head]] = True
        if not np.any(new & ~truth):
            return truth.astype(np.uint8), bottom
        truth |= new


def backward_np(val, g):
    """Vectorised twin of the backward step; returns (conflict, changed)."""
    has_head = g.head >= 0
    pv = val[g.pos_idx]
    nv = val[g.neg_idx]
    body_false = (np.bincount(g.pos_rule, weights=pv == 0, minlength=g.n_rules) > 0) | \
        (np.bincount(g.neg_rule, weights=nv == 1, minlength=g.n_rules) > 0)
    unknown = np.bincount(g.pos_rule, weights=pv < 0, minlength=g.n_rules) + \
        np.bincount(g.neg_rule, weights=nv < 0, minlength=g.n_rules)
    head_val = np.where(has_head, val[np.maximum(g.head, 0)], 0)
    blocked = ~body_false & (~has_head | (head_val == 0))
    if np.any(blocked & (unknown == 0)):
        return True, False
    one = blocked & (unknown == 1)
    to_false = g.pos_idx[one[g.pos_rule] & (pv < 0)]
    to_true = g.neg_idx[one[g.neg_rule] & (nv < 0)]
    open_rules = np.bincount(g.head[has_head & ~body_false], minlength=g.n_atoms)
    if np.any((val == 1) & (open_rules == 0)):
        return True, False
    need = (val == 1) & (open_rules == 1)
    sole = has_head & ~body_false & need[np.maximum(g.head, 0)]
    to_true = np.concatenate([to_true, g.pos_idx[sole[g.pos_rule] & (pv < 0)]])
    to_false = np.concatenate([to_false, g.neg_idx[sole[g.neg_rule] & (nv < 0)]])
    if np.any(val[g.pos_idx[sole[g.pos_rule]]] == 0) or np.any(val[g.neg_idx[sole[g.neg_rule]]] == 1):
        return True, False
    if np.intersect1d(to_true, to_false).size:
        return True, False
    val[to_true] = 1
    val[to_false] = 0
    return False, bool(to_true.size or to_false.size)


def propagate_np(val, g):
    while True:
        negv = val[g.neg_idx]
        zeros = np.bincount(g.neg_rule, weights=negv == 0, minlength=g.n_rules)
        ones = np.bincount(g.neg_rule, weights=negv == 1, minlength=g.n_rules)
        active_lo = zeros == g.neg_len
        active_hi = ones == 0
        lo, bottom = least_model_np(g, active_lo)
        lo = lo.astype(bool)
        if bottom or np.any(lo & (val == 0)):
            return 1
        grow = lo & (val < 0)
        val[grow] = 1
        hi = least_model_np(g, active_hi)[0].astype(bool)
        if np.any(~hi & (val == 1)):
            return 1
        shrink = ~hi & (val < 0)
        val[shrink] = 0
        conflict, moved = backward_np(val, g)
        if conflict:
            return 1
        if not (grow.any() or shrink.any() or moved):
            return 0


def least_model(g, active):
    """Least model of the rules flagged in ``active``; returns (truth, bottom)."""
    if HAVE_NUMBA:
        return _least_model_nb(g.n_atoms, g.head, g.pos_ptr, g.occ_ptr, g.occ_rule, active)
    return least_model_np(g, active)


def propagate(val, g):
    """Tighten a partial assignment in place. Returns 1 on conflict, else 0.

    ``val`` holds -1 (unknown), 0 (false) or 1 (true) per atom.
    """
    if HAVE_NUMBA:
        return _propagate_nb(val, g.head, g.pos_ptr, g.pos_idx, g.neg_ptr, g.neg_idx, g.occ_ptr, g.occ_rule)
    return propagate_np(val, g)


# --------------------------------------------------------------------------
# hypothesis search: can every positive example still be covered?

@njit
def _segments_ok_nb(derived, io, reach, seg_ptr):
    for s in range(seg_ptr.shape[0] - 1):
        found = False
        for k in range(seg_ptr[s], seg_ptr[s + 1]):
            d = derived[k]
            if (d & ~io[k]) == 0 and (io[k] & ~(d | reach[k])) == 0:
                found = True
                break
        if not found:
            return False
    return True


def segments_ok_np(derived, io, reach, seg_ptr):
    if len(seg_ptr) < 2:
        return True
    starts = seg_ptr[:-1]
    if np.any(seg_ptr[1:] <= starts):
        return False  # an empty segment has nothing viable
    ok = ((derived & ~io) == 0) & ((io & ~(derived | reach)) == 0)
    return bool(np.logical_or.reduceat(ok, starts).all())


def segments_ok(derived, io, reach, seg_ptr):
    """True when every segment keeps a candidate that is still viable.

    ``derived[k]`` is the bitmask of head atoms the partial hypothesis
    derives in candidate interpretation ``k``, ``io[k]`` the head atoms that
    candidate contains and ``reach[k]`` what the remaining rules could still
    add. A candidate stays viable while it derives nothing outside itself
    (adding rules only derives more) and everything it contains is derived
    or still derivable. Segment ``s`` spans ``seg_ptr[s]:seg_ptr[s+1]``.
    """
    if HAVE_NUMBA:
        return _segments_ok_nb(derived, io, reach, seg_ptr)
    return segments_ok_np(derived, io, reach, seg_ptr)
