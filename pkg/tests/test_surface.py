import pytest

from realbook.intalg import IntMatrix
from realbook.surface import (
    FixArc,
    FixedSet,
    Involution,
    involution_is_valid,
    standard_involution,
    standard_surface,
    validate_involution,
)


def test_disk():
    disk = standard_surface(0, 1)
    assert disk.h1_rank == 0
    assert disk.euler == 1
    assert disk.basis == ()


def test_annulus_core_self_pairing():
    ann = standard_surface(0, 2)
    assert ann.h1_rank == 1
    core = ann.curve("d1").h1_class
    assert ann.pairing(core, core) == 0


def test_once_punctured_torus_form():
    t = standard_surface(1, 1)
    assert t.form == IntMatrix([[0, 1], [-1, 0]])


def test_rank_formula():
    for g in range(5):
        for b in range(1, 6):
            assert standard_surface(g, b).h1_rank == 2 * g + b - 1


def test_self_pairing_vanishes_for_all_curves():
    for g in range(3):
        for b in range(1, 5):
            m = standard_surface(g, b)
            for c in m.alphabet.values():
                assert m.pairing(c.h1_class, c.h1_class) == 0


def test_closed_pages_rejected():
    with pytest.raises(ValueError):
        standard_surface(1, 0)


@pytest.mark.parametrize("kind,g,b", [
    ("disk-reflection", 0, 1),
    ("annulus-reflection", 0, 2),
    ("annulus-rotation", 0, 2),
    ("planar-reflection", 0, 3),
    ("planar-reflection", 0, 5),
    ("boundary-swap", 0, 2),
    ("boundary-swap", 0, 4),
])
def test_standard_involutions_valid(kind, g, b):
    m = standard_surface(g, b)
    inv = standard_involution(m, kind)
    report = validate_involution(m, inv)
    assert all(r.ok for r in report), [r for r in report if not r.ok]


def test_disk_reflection_lefschetz():
    m = standard_surface(0, 1)
    inv = standard_involution(m, "disk-reflection")
    assert inv.fixed_set.arc_count == 1
    assert 1 - inv.matrix.trace() == 1


def test_annulus_reflection_counts():
    m = standard_surface(0, 2)
    inv = standard_involution(m, "annulus-reflection")
    assert inv.matrix == IntMatrix([[-1]])
    assert inv.fixed_set.arc_count == 2
    assert inv.fixed_set.circle_count == 0


def test_annulus_rotation_counts():
    m = standard_surface(0, 2)
    inv = standard_involution(m, "annulus-rotation")
    assert inv.matrix == IntMatrix([[1]])
    assert inv.fixed_set.arc_count == 0
    assert inv.fixed_set.circle_count == 1


def test_incompatible_descriptor_rejected():
    m = standard_surface(0, 1)
    with pytest.raises(ValueError):
        standard_involution(m, "boundary-swap")
    with pytest.raises(ValueError):
        standard_involution(standard_surface(1, 2), "annulus-reflection")


def test_validate_reports_lefschetz_failure():
    m = standard_surface(0, 2)
    rot = standard_involution(m, "annulus-rotation")
    broken = Involution(
        matrix=rot.matrix,
        boundary_perm={1: 1, 2: 2},
        fixed_points={1: (1, 2), 2: (3, 4)},
        fixed_set=FixedSet(arcs=(
            FixArc(ends=((1, 1), (2, 3)), pair_curves=(0,)),
            FixArc(ends=((1, 2), (2, 4)), pair_curves=(0,)),
        )),
        curve_image={},
    )
    report = {r.name: r for r in validate_involution(m, broken)}
    assert not report["lefschetz"].ok
    assert "2 arcs" in report["lefschetz"].detail


def test_validate_reports_antisymplectic_failure():
    # the identity preserves the form, so it cannot be a real structure
    t = standard_surface(1, 1)
    broken = Involution(
        matrix=IntMatrix.identity(2),
        boundary_perm={1: 1},
        fixed_points={1: (1, 2)},
        fixed_set=FixedSet(arcs=(FixArc(ends=((1, 1), (1, 2)), pair_curves=(0, 0)),)),
        curve_image={},
    )
    report = {r.name: r for r in validate_involution(t, broken)}
    assert not report["anti_symplectic"].ok


def test_validate_never_raises():
    t = standard_surface(1, 1)
    junk = Involution(matrix=IntMatrix.zeros(2, 2), boundary_perm={},
                      fixed_points={}, fixed_set=FixedSet(), curve_image={})
    report = validate_involution(t, junk)
    assert any(not r.ok for r in report)


def test_involution_invariants_exact():
    for kind, b in [("planar-reflection", 3), ("planar-reflection", 4),
                    ("boundary-swap", 4), ("annulus-reflection", 2)]:
        m = standard_surface(0, b)
        inv = standard_involution(m, kind)
        c = inv.matrix
        assert c @ c == IntMatrix.identity(m.h1_rank)
        assert c.transpose() @ m.form @ c == -m.form
        assert inv.fixed_set.arc_count == 1 - c.trace()
        assert involution_is_valid(m, inv)
