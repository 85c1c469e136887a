"""Combinatorial model of a compact oriented page with boundary.

A page is described by declared data: an integral basis of its first
homology with the intersection form, a named curve alphabet with pairing
tables, reference arcs from a basepoint boundary to every other
boundary, and (for a real page) an orientation-reversing involution with
its fixed-point set.

Conventions fixed here once and used everywhere else:

* basis order is a1, b1, ..., ag, bg, d1, ..., d_{b-1} with <ai, bi> = +1;
* boundary-parallel classes are oriented as the boundary of the page, so
  they sum to zero and db = -(d1 + ... + d_{b-1});
* the reference arc to boundary i crosses the d_i curve once (+1) and
  the basepoint-parallel curve d_1 once (-1), and misses everything else.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .intalg import IntMatrix


Vec = tuple[int, ...]


def _vec(x: Sequence[int]) -> Vec:
    return tuple(int(v) for v in x)


def vec_add(x: Sequence[int], y: Sequence[int]) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def vec_scale(c: int, x: Sequence[int]) -> Vec:
    return tuple(c * a for a in x)


def vec_dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class NamedCurve:
    """A named simple closed curve with declared homological data."""

    name: str
    h1_class: Vec
    pairings: Vec        # <x_j, curve> for each basis class x_j, equals J @ h1_class
    arc_pairings: Vec    # <gamma_i, curve> for reference arcs in ref-arc order


@dataclass(frozen=True)
class RefArc:
    """Reference arc from the basepoint boundary to ``target_boundary``.

    ``pairings[j]`` is the crossing number with the j-th basis curve;
    pairings with arbitrary classes follow by linearity.
    ``current_class`` accumulates the transport defect under twists.
    """

    target_boundary: int
    current_class: Vec
    pairings: Vec

    def pairing_with_class(self, cls: Sequence[int]) -> int:
        return vec_dot(self.pairings, cls)


@dataclass(frozen=True)
class BoundaryCircle:
    """Boundary circle with a stable id and its parallel pushoff class."""

    cid: int
    pclass: Vec


@dataclass(frozen=True)
class FixArc:
    """Fixed arc of an involution, with declared crossing data.

    ``ends`` are (circle id, fixed point id) pairs.  ``pair_curves`` is
    the signed crossing vector against the basis curves; ``pair_arcs``
    maps a boundary id to the signed crossing number with its reference
    arc.
    """

    ends: tuple[tuple[int, int], tuple[int, int]]
    pair_curves: Vec
    pair_arcs: Mapping[int, int] = field(default_factory=dict)

    def boundary_pair(self) -> tuple[int, int]:
        return (self.ends[0][0], self.ends[1][0])


@dataclass(frozen=True)
class FixCircle:
    """Fixed circle of an involution; crossing data follows from its class."""

    h1_class: Vec


@dataclass(frozen=True)
class FixedSet:
    arcs: tuple[FixArc, ...] = ()
    circles: tuple[FixCircle, ...] = ()

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @property
    def circle_count(self) -> int:
        return len(self.circles)

    def arc_boundary_pairs(self) -> list[tuple[int, int]]:
        return [a.boundary_pair() for a in self.arcs]


@dataclass(frozen=True)
class Involution:
    """Orientation-reversing involution of a page, as declared data."""

    matrix: IntMatrix
    boundary_perm: Mapping[int, int]
    fixed_points: Mapping[int, tuple[int, int]]   # circle id -> its two fixed point ids
    fixed_set: FixedSet
    curve_image: Mapping[str, tuple[str, int]]    # partial: name -> (name, sign)


@dataclass(frozen=True)
class SurfaceModel:
    genus: int
    circles: tuple[BoundaryCircle, ...]
    basis: tuple[str, ...]
    form: IntMatrix                      # intersection form J on the basis
    alphabet: Mapping[str, NamedCurve]
    ref_arcs: Mapping[int, RefArc]       # keyed by target boundary id
    disjoint: frozenset[frozenset[str]] = frozenset()

    @property
    def boundary_count(self) -> int:
        return len(self.circles)

    @property
    def h1_rank(self) -> int:
        return len(self.basis)

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - self.boundary_count

    @property
    def basepoint(self) -> int:
        return min(c.cid for c in self.circles)

    def circle(self, cid: int) -> BoundaryCircle:
        for c in self.circles:
            if c.cid == cid:
                return c
        raise KeyError(f"no boundary circle {cid}")

    def curve(self, name: str) -> NamedCurve:
        try:
            return self.alphabet[name]
        except KeyError:
            raise KeyError(f"unknown curve {name!r}") from None

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Intersection pairing <x, y> = x^T J y of two classes."""
        return vec_dot(x, self.form.apply(y))

    def curves_disjoint(self, a: str, b: str) -> bool:
        return a != b and frozenset((a, b)) in self.disjoint

    def ref_arc_order(self) -> list[int]:
        return sorted(cid for cid in self.ref_arcs)

    def zero_class(self) -> Vec:
        return (0,) * self.h1_rank

    def basis_vector(self, idx: int) -> Vec:
        return tuple(1 if j == idx else 0 for j in range(self.h1_rank))


def _symplectic_block(g: int, extra: int) -> IntMatrix:
    n = 2 * g + extra
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[2 * i][2 * i + 1] = 1
        rows[2 * i + 1][2 * i] = -1
    return IntMatrix(rows, ncols=n)


def standard_surface(g: int, b: int) -> SurfaceModel:
    """Standard page of genus g with b boundary circles.

    Basis: symplectic pairs (a_i, b_i) with <a_i, b_i> = +1 followed by
    the boundary-parallel classes d_1 .. d_{b-1}.  The alphabet holds
    curves realizing every basis class plus d_b (the negated sum), and a
    reference arc runs from boundary 1 to each other boundary.
    """
    if b < 1:
        raise ValueError("open book pages need binding: b >= 1")
    if g < 0:
        raise ValueError("genus must be >= 0")
    rank = 2 * g + b - 1
    basis: list[str] = []
    for i in range(1, g + 1):
        basis.extend((f"a{i}", f"b{i}"))
    basis.extend(f"d{j}" for j in range(1, b))
    form = _symplectic_block(g, b - 1)

    def unit(idx: int) -> Vec:
        return tuple(1 if j == idx else 0 for j in range(rank))

    classes: dict[str, Vec] = {}
    for idx, name in enumerate(basis):
        classes[name] = unit(idx)
    # the last boundary curve is determined by the others
    classes[f"d{b}"] = tuple(-sum(unit(2 * g + j)[k] for j in range(b - 1)) for k in range(rank))

    # reference arc pairing rows, one per boundary 2..b, indexed by basis
    arc_rows: dict[int, Vec] = {}
    for i in range(2, b + 1):
        row = [0] * rank
        if b >= 2:
            d1_idx = 2 * g
            row[d1_idx] -= 1
            if i <= b - 1:
                row[2 * g + (i - 1)] += 1
            # for i == b the +1 crossing sits on d_b, which is not a basis
            # vector; linearity over the basis already encodes it
        arc_rows[i] = _vec(row)

    arc_order = list(range(2, b + 1))
    alphabet: dict[str, NamedCurve] = {}
    for name, cls in classes.items():
        pair = _vec(IntMatrix(form.rows, ncols=rank).apply(cls)) if rank else ()
        arcp = tuple(vec_dot(arc_rows[i], cls) for i in arc_order)
        alphabet[name] = NamedCurve(name=name, h1_class=cls, pairings=pair, arc_pairings=arcp)

    circles = tuple(BoundaryCircle(cid=i, pclass=classes[f"d{i}"]) for i in range(1, b + 1))

    ref_arcs = {
        i: RefArc(target_boundary=i, current_class=(0,) * rank, pairings=arc_rows[i])
        for i in range(2, b + 1)
    }

    # every standard pair of curves is disjoint except the dual pairs (a_i, b_i)
    def dual_pair(x: str, y: str) -> bool:
        return x[0] in "ab" and y[0] in "ab" and x[0] != y[0] and x[1:] == y[1:]

    names = list(alphabet)
    disjoint = set()
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            if not dual_pair(x, y):
                disjoint.add(frozenset((x, y)))

    return SurfaceModel(
        genus=g,
        circles=circles,
        basis=tuple(basis),
        form=form,
        alphabet=alphabet,
        ref_arcs=ref_arcs,
        disjoint=frozenset(disjoint),
    )


def _fresh_pids(start: int, n: int) -> list[int]:
    return list(range(start, start + n))


def standard_involution(model: SurfaceModel, kind: str) -> Involution:
    """Construct one of the documented involutions on a standard page.

    Descriptors cover exactly the real structures used by the worked
    examples; adding a new conjugacy class means adding a branch here.

      disk-reflection            (0,1)  one fixed diameter
      annulus-reflection         (0,2)  c(core) = -core, two fixed arcs
      annulus-rotation           (0,2)  c(core) = +core, one fixed circle
      planar-reflection          (0,b)  reflection fixing every boundary
      boundary-swap              (0,2k) free involution swapping circles
                                        i <-> i+k
    """
    g, b = model.genus, model.boundary_count
    rank = model.h1_rank

    if kind in ("disk-reflection", "planar-reflection"):
        if g != 0:
            raise ValueError(f"{kind} needs a planar page")
        if kind == "disk-reflection" and b != 1:
            raise ValueError("disk-reflection needs b = 1")
        c = -IntMatrix.identity(rank) if rank else IntMatrix.identity(0)
        perm = {i: i for i in range(1, b + 1)}
        fixed_points = {i: (2 * i - 1, 2 * i) for i in range(1, b + 1)}
        arcs = []
        if b == 1:
            arcs.append(FixArc(ends=((1, 1), (1, 2)), pair_curves=(0,) * rank))
        else:
            for i in range(1, b + 1):
                j = i + 1 if i < b else 1
                row = [0] * rank
                if i <= b - 1:
                    row[2 * g + i - 1] -= 1
                if j <= b - 1:
                    row[2 * g + j - 1] += 1
                arcs.append(
                    FixArc(ends=((i, fixed_points[i][1]), (j, fixed_points[j][0])), pair_curves=_vec(row))
                )
        image = {f"d{i}": (f"d{i}", -1) for i in range(1, b + 1)}
        return Involution(
            matrix=c,
            boundary_perm=perm,
            fixed_points=fixed_points,
            fixed_set=FixedSet(arcs=tuple(arcs)),
            curve_image=image,
        )

    if kind == "annulus-reflection":
        if (g, b) != (0, 2):
            raise ValueError("annulus-reflection needs (g, b) = (0, 2)")
        c = IntMatrix([[-1]])
        fixed_points = {1: (1, 2), 2: (3, 4)}
        arcs = (
            FixArc(ends=((1, 1), (2, 3)), pair_curves=(1,), pair_arcs={2: 0}),
            FixArc(ends=((1, 2), (2, 4)), pair_curves=(-1,), pair_arcs={2: 0}),
        )
        image = {"d1": ("d1", -1), "d2": ("d2", -1)}
        return Involution(
            matrix=c,
            boundary_perm={1: 1, 2: 2},
            fixed_points=fixed_points,
            fixed_set=FixedSet(arcs=arcs),
            curve_image=image,
        )

    if kind == "annulus-rotation":
        if (g, b) != (0, 2):
            raise ValueError("annulus-rotation needs (g, b) = (0, 2)")
        return Involution(
            matrix=IntMatrix([[1]]),
            boundary_perm={1: 2, 2: 1},
            fixed_points={},
            fixed_set=FixedSet(circles=(FixCircle(h1_class=(1,)),)),
            curve_image={"d1": ("d2", -1), "d2": ("d1", -1)},
        )

    if kind == "boundary-swap":
        if g != 0 or b % 2 != 0 or b < 2:
            raise ValueError("boundary-swap needs a planar page with an even number of circles")
        k = b // 2
        perm = {}
        for i in range(1, k + 1):
            perm[i] = i + k
            perm[i + k] = i
        cols = []
        for i in range(1, b):
            img = model.curve(f"d{perm[i]}").h1_class
            cols.append(vec_scale(-1, img))
        c = IntMatrix.from_columns(cols, rank) if rank else IntMatrix.identity(0)
        image = {f"d{i}": (f"d{perm[i]}", -1) for i in range(1, b + 1)}
        if b == 2:
            # on the annulus every essential circle is isotopic to the core,
            # so the free involution fixes each curve up to isotopy
            image = {"d1": ("d1", 1), "d2": ("d2", 1)}
        return Involution(
            matrix=c,
            boundary_perm=perm,
            fixed_points={},
            fixed_set=FixedSet(),
            curve_image=image,
        )

    raise ValueError(f"unknown involution descriptor {kind!r}")


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def validate_involution(model: SurfaceModel, inv: Involution) -> list[CheckResult]:
    """Check every declared invariant; reports failures, never raises."""
    out: list[CheckResult] = []
    c = inv.matrix
    j = model.form
    rank = model.h1_rank

    ident = IntMatrix.identity(rank)
    sq = c @ c if rank else ident
    out.append(CheckResult("involution", sq == ident, "" if sq == ident else f"C^2 = {sq.rows}"))

    anti = c.transpose() @ j @ c if rank else j
    ok = anti == -j
    out.append(CheckResult("anti_symplectic", ok, "" if ok else f"C^T J C = {anti.rows}"))

    perm = dict(inv.boundary_perm)
    ok = all(perm.get(perm.get(i, None), None) == i for i in perm)
    ids = {cc.cid for cc in model.circles}
    ok = ok and set(perm) == ids
    out.append(CheckResult("boundary_perm", ok, "" if ok else f"perm = {perm}"))

    ok = True
    detail = ""
    for cid in ids:
        if perm.get(cid) == cid:
            if len(inv.fixed_points.get(cid, ())) != 2:
                ok, detail = False, f"reflection circle {cid} lacks two fixed points"
        else:
            if cid in inv.fixed_points:
                ok, detail = False, f"swapped circle {cid} carries fixed points"
    out.append(CheckResult("boundary_tags", ok, detail))

    arcs = inv.fixed_set.arcs
    lef = 1 - (c.trace() if rank else 0)
    ok = len(arcs) == lef
    out.append(CheckResult("lefschetz", ok, "" if ok else f"{len(arcs)} arcs vs 1 - tr = {lef}"))

    # each declared fixed point is used by exactly one arc end
    declared = {(cid, p) for cid, pts in inv.fixed_points.items() for p in pts}
    used: list[tuple[int, int]] = [e for a in arcs for e in a.ends]
    ok = sorted(used) == sorted(declared)
    out.append(CheckResult("arc_endpoints", ok, "" if ok else f"used {sorted(used)} vs declared {sorted(declared)}"))

    ok, detail = True, ""
    for name, (img, s) in inv.curve_image.items():
        if name not in model.alphabet or img not in model.alphabet:
            ok, detail = False, f"image map mentions unknown curve {name!r} -> {img!r}"
            break
        want = vec_scale(s, c.apply(model.curve(name).h1_class)) if rank else ()
        if model.curve(img).h1_class != want:
            ok, detail = False, f"curve_image({name}) class mismatch"
            break
    out.append(CheckResult("curve_image", ok, detail))

    ok, detail = True, ""
    total = (0,) * rank
    for circle in model.circles:
        total = vec_add(total, circle.pclass)
        if rank and any(j.apply(circle.pclass)):
            ok, detail = False, f"boundary class of circle {circle.cid} is not radical"
    if rank and any(total):
        ok, detail = False, "boundary classes do not sum to zero"
    out.append(CheckResult("boundary_classes", ok, detail))

    return out


def involution_is_valid(model: SurfaceModel, inv: Involution) -> bool:
    return all(r.ok for r in validate_involution(model, inv))
