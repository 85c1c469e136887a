import random

import pytest

from realbook.catalog import (
    ENTRIES,
    catalog_fig4,
    catalog_fig5,
    catalog_fig6,
    catalog_hopf,
    catalog_lens_annulus,
    catalog_s3_disk,
)
from realbook.heegaard import (
    RealPartUnavailable,
    heegaard_data,
    is_maximal,
    real_part,
    validate_heegaard,
)
from realbook.openbook import (
    OpenBook,
    StabilizationError,
    enumerate_sites,
    stabilize,
)


def heegaard_genus(ob):
    return 2 * ob.page.genus + ob.binding_count - 1


def test_disk_sphere_splitting():
    ob = catalog_s3_disk()
    hd = heegaard_data(ob)
    assert hd.genus == 0
    rp = real_part(ob)
    assert rp.count == 1
    assert rp.separating_flags() == (True,)     # an equator on the sphere
    assert is_maximal(hd, rp)


def test_hopf_torus_splitting():
    for variant in ("conjugation", "swap"):
        ob = catalog_hopf(variant)
        hd = heegaard_data(ob)
        assert hd.genus == 1
        rp = real_part(ob)
        assert rp.count == 1
        assert rp.separating_flags() == (False,)
        assert not is_maximal(hd, rp)           # 1 < 2


def test_fig_family_genus_bookkeeping():
    for k in range(1, 5):
        assert heegaard_data(catalog_fig4(k)).genus == 2 * k - 1
        assert heegaard_data(catalog_fig5(k)).genus == 2 * k
        assert heegaard_data(catalog_fig6(k)).genus == 2 * k


def test_fig_family_separating_flags():
    for k in range(1, 5):
        assert real_part(catalog_fig4(k)).separating_flags() == (False,)
        assert real_part(catalog_fig5(k)).separating_flags() == (True,)
        assert real_part(catalog_fig6(k)).separating_flags() == (False,)


def test_single_handle_adds_one_pair_adds_two():
    for e in ENTRIES:
        ob = e.build()
        g0 = heegaard_genus(ob)
        for tag, site in enumerate_sites(ob):
            try:
                out = stabilize(ob, tag, site)
            except StabilizationError:
                continue
            delta = heegaard_genus(out) - g0
            handles = {"I": 1, "II": 1, "V": 1, "VII": 1}.get(tag, 2)
            assert delta == handles, (e.name, tag)


def test_lens_annulus_real_part_parity():
    # tau^n composed with the reflection reconnects the strands by the
    # parity of n: one circle for odd powers, two for even
    for n in range(1, 9):
        rp = real_part(catalog_lens_annulus(n))
        assert rp.count == (1 if n % 2 else 2)
        g = heegaard_data(catalog_lens_annulus(n)).genus
        assert rp.count <= g + 1
    # the even case meets the Harnack bound on the torus
    assert is_maximal(heegaard_data(catalog_lens_annulus(2)),
                      real_part(catalog_lens_annulus(2)))


def test_harnack_bound_everywhere():
    rng = random.Random(17)
    for _ in range(60):
        ob = ENTRIES[rng.randrange(len(ENTRIES))].build()
        for _ in range(rng.randint(0, 4)):
            sites = enumerate_sites(ob)
            rng.shuffle(sites)
            for tag, site in sites:
                try:
                    ob = stabilize(ob, tag, site)
                    break
                except StabilizationError:
                    continue
        rp = real_part(ob)
        assert rp.count <= heegaard_genus(ob) + 1


def test_gluing_blocks_validate():
    for e in ENTRIES:
        ob = e.build()
        hd = heegaard_data(ob)
        assert all(ok for _n, ok in validate_heegaard(hd, ob))


def test_plus_side_lefschetz_under_stabilization():
    # both invariant pages must satisfy their own fixed-point identity
    rng = random.Random(41)
    for _ in range(30):
        ob = ENTRIES[rng.randrange(len(ENTRIES))].build()
        for _ in range(rng.randint(1, 5)):
            sites = enumerate_sites(ob)
            rng.shuffle(sites)
            for tag, site in sites:
                try:
                    ob = stabilize(ob, tag, site)
                    break
                except StabilizationError:
                    continue
        hd = heegaard_data(ob)
        report = dict(validate_heegaard(hd, ob))
        assert report["minus_lefschetz"] and report["plus_lefschetz"]


def test_untracked_plus_side_reported():
    ob = catalog_s3_disk()
    stripped = OpenBook(page=ob.page, monodromy=ob.monodromy,
                        real_structure=ob.real_structure, fix_plus=None)
    with pytest.raises(RealPartUnavailable):
        real_part(stripped)


def test_not_real_rejected():
    from test_openbook import not_real_example

    with pytest.raises(ValueError):
        heegaard_data(not_real_example())
    with pytest.raises(ValueError):
        real_part(not_real_example())


def test_maximality_arithmetic():
    hd = heegaard_data(catalog_s3_disk())
    rp = real_part(catalog_s3_disk())
    assert is_maximal(hd, rp)
    hd1 = heegaard_data(catalog_lens_annulus(1))
    rp1 = real_part(catalog_lens_annulus(1))
    assert not is_maximal(hd1, rp1)
