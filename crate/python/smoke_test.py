"""Smoke test for the sa_algebra extension module.

Build and install it first:
    pip install --no-build-isolation ./crates/py
then run this file with python.
"""

import json

import sa_algebra as sa


def main():
    b = sa.Semiring.boolean()
    assert (b.size, b.zero, b.one) == (2, 0, 1)
    assert b.add(1, 1) == 1 and b.mul(1, 0) == 0

    plane = sa.Module.free(b, 2)
    assert len(plane) == 4
    members, witnesses = plane.halo([1, 2])
    assert members == [1, 2]
    assert witnesses[0] == (1, 1, 1)
    assert plane.is_additive_spine([1, 2])
    assert not plane.is_additive_spine([3])

    sa_plane = plane.enumerate_sa([1, 2])
    assert sa_plane == plane.enumerate_sa_bruteforce()
    assert len(sa_plane) == 4
    assert len(plane.enumerate_sa([1, 2], sigma=True)) == 4
    assert plane.sa_closure([3]) == [0, 1, 2, 3]
    assert plane.is_sa([0, 1]) and not plane.is_sa([0, 3])
    assert plane.lattice_dot([1, 2]).startswith("digraph")

    m2 = b.matrix(2)
    regular = sa.Module.regular(m2)
    assert regular.is_additive_spine([1, 8])
    assert len(regular.enumerate_sa([1, 8])) == 4

    try:
        sa.Semiring("bad", 0, 1, [[0, 1]], [[0, 0], [0, 1]])
    except ValueError as e:
        assert "malformed" in str(e)
    else:
        raise AssertionError("non-square table accepted")

    names = sa.zoo_names()
    assert len(names) == 10
    module, spine, gens, m = sa.zoo_instance("boolean-free-2")
    assert module.is_additive_spine(spine)

    reports = json.loads(sa.run_checks(theorems=["2.9", "3.3"]))
    assert len(reports) == 10
    assert all(t["status"] != "fail" for r in reports for t in r["theorems"])
    print(f"ok: {len(names)} zoo instances, {len(sa.theorem_ids())} theorem checks available")


if __name__ == "__main__":
    main()
