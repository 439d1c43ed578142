"""Smoke test for the hbraid extension module."""

import json

import hbraid


def main():
    assert hbraid.braid_eq(3, "s1 s2 s1", "s2 s1 s2")
    assert not hbraid.braid_eq(3, "s1 s2", "s2 s1")
    assert hbraid.perm(3, "s1 s2") == [2, 3, 1]

    assert hbraid.comb(3, "a1.2 a1.3") == ["a2.3^-1 a1.3 a2.3", "a1.2"]

    w = hbraid.HandleWord(1, 2, "t1 s2 t1 s2^-1")
    assert len(w) == 4
    assert str(w.wreath()) == "h1=b1.2 h2=b1.3 perm=id"
    assert w.wreath() * w.inverse().wreath() == hbraid.HandleWord(1, 2).wreath()
    assert w.equals(w * hbraid.HandleWord(1, 2, "s2 s2^-1"))
    comps, tail, ok = (w * hbraid.HandleWord(1, 2, "s2")).rdecomp()
    assert ok and len(comps) == 2

    instances, failures = hbraid.presentation_check(2, 3)
    assert instances > 0 and failures == 0

    terms = hbraid.hecke_reduce(1, 2, "[s2 s2]")
    assert terms == [("q", ""), ("q - 1", "s2")]
    assert hbraid.hn_mul([2, 1], [2, 1]) == [([1, 2], "q"), ([2, 1], "q - 1")]

    report = json.loads(hbraid.hecke_probe(1, 2, 3))
    assert report["total"] == report["reduced"] == 53
    assert report["q1_mismatches"] == 0

    try:
        hbraid.HandleWord(1, 2, "s5")
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-range letter accepted")

    print("smoke ok")


if __name__ == "__main__":
    main()
