"""Cyclic shift classes, cyclic reduction with witnesses, K-conjugation.

A cyclic shift replaces w by s*w*s whenever that does not increase the
length.  The closure of an element under such moves is finite and is
explored breadth-first with a worklist ordered by (length, ShortLex word),
so witness paths are reproducible byte for byte.
"""

import heapq

from . import coxmat, element
from .errors import NonSpherical, NotNormalizing, VerificationFailed


def _shift_candidates(w):
    for s in range(w.sys.rank):
        v = w.shift(s)
        if v.length() <= w.length():
            yield s, v


def cyc_class(w, max_size=None):
    """The cyclic shift class Cyc(w) with a predecessor map.

    Returns (elements, pred): elements is the closure listed in worklist
    order (by (length, ShortLex word), starting at w) and pred maps each
    element to (parent, generator), with pred[w] = None.
    """
    pred = {w: None}
    order = []
    heap = [(w.sort_key(), w)]
    while heap:
        _, v = heapq.heappop(heap)
        order.append(v)
        for s, u in _shift_candidates(v):
            if u not in pred:
                pred[u] = (v, s)
                heapq.heappush(heap, (u.sort_key(), u))
                if max_size is not None and len(pred) > max_size:
                    raise VerificationFailed("cyclic shift class exceeded "
                                             "size cap %d" % max_size)
    return order, pred


def witness_path(pred, v):
    """Generator indices of the shift sequence leading from the root to v."""
    path = []
    cur = v
    while pred[cur] is not None:
        parent, s = pred[cur]
        path.append(s)
        cur = parent
    path.reverse()
    return tuple(path)


def cyc_min(w):
    """(Cyc_min(w), witness) -- the minimal-length stratum with shift paths."""
    elements, pred = cyc_class(w)
    m = min(v.length() for v in elements)
    stratum = {v for v in elements if v.length() == m}
    return stratum, {v: witness_path(pred, v) for v in stratum}


def is_cyclically_reduced(w):
    elements, _ = cyc_class(w)
    return all(v.length() >= w.length() for v in elements)


def cyclically_reduce(w, plateau_cap=None):
    """Some minimal-length element of Cyc(w) plus the conjugating word.

    Returns (v, conj) with v = a^-1 w a for a the element with word conj.
    Restarts the plateau search whenever the length drops, so the cost is
    governed by the plateaus actually visited.  plateau_cap bounds the size
    of any one plateau; reaching it raises.
    """
    current = w
    conj = []
    while True:
        seen = {current: ()}
        heap = [(current.sort_key(), current)]
        dropped = None
        while heap:
            _, v = heapq.heappop(heap)
            path = seen[v]
            for s, u in _shift_candidates(v):
                if u.length() < current.length():
                    dropped = (u, path + (s,))
                    break
                if u not in seen:
                    seen[u] = path + (s,)
                    heapq.heappush(heap, (u.sort_key(), u))
                    if plateau_cap is not None and len(seen) > plateau_cap:
                        raise VerificationFailed(
                            "cyclic reduction plateau exceeded %d elements"
                            % plateau_cap)
            if dropped:
                break
        if dropped is None:
            return current, tuple(conj)
        current, path = dropped
        conj.extend(path)


def k_conjugate(w, K):
    """op_K(w) = w_0(K) w w_0(K); requires K spherical and normalised by w."""
    K = frozenset(K)
    if not coxmat.is_spherical(w.sys, K):
        raise NonSpherical("K-conjugation needs a spherical K")
    if not element.normalizes(w, K):
        raise NotNormalizing("element does not normalise W_K")
    w0 = element.longest_element(w.sys, K)
    if isinstance(w, element.TwistedElement):
        if not w.twist.stabilises(K):
            raise NotNormalizing("twist does not stabilise K")
        out = w0 * (w * w0)
    else:
        out = w0 * w * w0
    if out.length() != w.length():
        raise VerificationFailed("K-conjugation changed the length")
    return out
