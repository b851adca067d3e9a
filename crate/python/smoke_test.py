"""Smoke test for the Python extension.

Build and install first:  pip install --no-build-isolation ./crates/py
then run:                 python python/smoke_test.py
"""

import json

import semitotal


def main():
    keys = semitotal.catalog_keys()
    assert "q3" in keys and "heawood" in keys, keys

    g = semitotal.Graph.from_catalog("q3")
    assert g.n == 8 and len(g.edges) == 12

    mu = semitotal.Coloring.from_catalog("heawood")
    assert mu.is_stc() and not mu.is_tc()
    print(mu.listing())

    paths = mu.mcaps()
    assert paths and all(p.k >= 2 for p in paths)
    swapped = mu.swap(paths[0].vertices)
    assert swapped.is_stc()
    assert swapped.swap(paths[0].vertices) == mu

    tr = mu.reduce("equitable-tc")
    assert tr.goal_reached, tr.scores()
    fin = tr.final_coloring
    assert fin.is_tc() and fin.gamma <= 1
    assert fin.listing().splitlines()[-1] == "Hea(9,9,9,8)=Hea(8,9^3)"
    assert json.loads(tr.to_json())["goal"] == "equitable_tc"

    pet = semitotal.Coloring.from_catalog("petersen")
    dod = semitotal.lift("dodecahedron", pet)
    assert (dod.beta, dod.gamma) == (0, 2 * pet.gamma)

    assert semitotal.oracle("min-beta", g) == 0
    try:
        semitotal.oracle("chi", g, cap=40)
    except ValueError:
        pass
    else:
        raise AssertionError("cap above the default needs consent")

    try:
        semitotal.Coloring.from_catalog("no_such_graph")
    except KeyError:
        pass

    report = json.loads(semitotal.Coloring.from_catalog("q3").codes())
    assert len(report["classes"]) == 4

    c6 = semitotal.Graph(6, [(i, (i + 1) % 6) for i in range(6)], name="C6")
    lac = semitotal.Coloring.lacunar
    assert semitotal.oracle("min-gamma", c6) == 0
    k4 = semitotal.Graph.lcf("[2]^4")
    assert lac(k4).is_stc()
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
