"""Dehn twist words: homology action, arc transport, conjugation.

Word convention: letters act leftmost first, so a word [l1, l2, ...]
is the map  T_ln o ... o T_l1  and word matrices multiply accordingly.
Word equality is free-reduced literal equality, extended only by
commutation of letters whose curves the surface declares disjoint.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .intalg import IntMatrix
from .surface import Involution, RefArc, SurfaceModel, vec_add, vec_dot, vec_scale

Letter = tuple[str, int]
TwistWord = tuple[Letter, ...]


def word(letters: Iterable[tuple[str, int]]) -> TwistWord:
    """Build a freely reduced twist word."""
    return free_reduce(tuple((str(n), int(e)) for n, e in letters))


def free_reduce(w: Sequence[Letter]) -> TwistWord:
    out: list[Letter] = []
    for name, exp in w:
        if exp == 0:
            continue
        if out and out[-1][0] == name:
            merged = out[-1][1] + exp
            out.pop()
            if merged != 0:
                out.append((name, merged))
        else:
            out.append((name, exp))
    return tuple(out)


def invert(w: Sequence[Letter]) -> TwistWord:
    return free_reduce(tuple((name, -exp) for name, exp in reversed(tuple(w))))


def concat(*words: Sequence[Letter]) -> TwistWord:
    letters: list[Letter] = []
    for w in words:
        letters.extend(w)
    return free_reduce(tuple(letters))


def twist_matrix(model: SurfaceModel, curve: str, exponent: int) -> IntMatrix:
    """Homology action x -> x + e <x, a> a of the e-th power of a twist."""
    a = model.curve(curve).h1_class
    rank = model.h1_rank
    ja = model.form.apply(a)  # <x, a> = x . (J a)
    rows = [
        [(1 if i == j else 0) + exponent * a[i] * ja[j] for j in range(rank)]
        for i in range(rank)
    ]
    return IntMatrix(rows, ncols=rank)


def word_matrix(model: SurfaceModel, w: Sequence[Letter]) -> IntMatrix:
    m = IntMatrix.identity(model.h1_rank)
    for name, exp in w:
        m = twist_matrix(model, name, exp) @ m
    return m


def conjugate_by_involution(
    model: SurfaceModel, inv: Involution, w: Sequence[Letter]
) -> TwistWord | None:
    """The word for c o w o c, or None when some letter has no c-image.

    Uses c o tau_a o c = tau_{c(a)}^{-1} letterwise: images keep their
    position, exponents negate.  A letter whose curve is moved by the
    involution only up to unknown isotopy is honestly unavailable.
    """
    letters: list[Letter] = []
    for name, exp in w:
        img = inv.curve_image.get(name)
        if img is None:
            return None
        letters.append((img[0], -exp))
    return free_reduce(tuple(letters))


def words_equal(model: SurfaceModel, w1: Sequence[Letter], w2: Sequence[Letter]) -> bool:
    """Equality modulo free reduction and declared-disjoint commutation.

    Sound but incomplete: no braid or lantern relations.  Normal form is
    the lexicographically sorted interleaving reachable by swapping
    adjacent letters on disjoint curves, re-reducing after every pass.
    """
    return _normal_form(model, w1) == _normal_form(model, w2)


def _normal_form(model: SurfaceModel, w: Sequence[Letter]) -> TwistWord:
    cur = list(free_reduce(tuple(w)))
    changed = True
    while changed:
        changed = False
        i = 0
        while i + 1 < len(cur):
            (n1, e1), (n2, e2) = cur[i], cur[i + 1]
            if n1 > n2 and model.curves_disjoint(n1, n2):
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                changed = True
            i += 1
        reduced = list(free_reduce(tuple(cur)))
        if reduced != cur:
            cur = reduced
            changed = True
    return tuple(cur)


def transport_arc(model: SurfaceModel, w: Sequence[Letter], arc: RefArc) -> RefArc:
    """Push a reference arc through a twist word, letter by letter.

    Per letter (a, e): the class gains e <gamma, a> [a] and the pairing
    row updates by <tau_a^e(gamma), x> = <gamma, x> + e <gamma, a> <a, x>.
    """
    cls = arc.current_class
    row = arc.pairings
    for name, exp in w:
        a = model.curve(name).h1_class
        cross = vec_dot(row, a)
        cls = vec_add(cls, vec_scale(exp * cross, a))
        a_row = model.form.transpose().apply(a)  # <a, x> = (J^T a) . x per basis x
        row = vec_add(row, vec_scale(exp * cross, a_row))
    return RefArc(target_boundary=arc.target_boundary, current_class=cls, pairings=row)
