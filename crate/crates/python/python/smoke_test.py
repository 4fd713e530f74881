"""Smoke test for the covereq extension module.

Build and install first, e.g. `maturin develop -m crates/python/Cargo.toml`,
then run `python crates/python/python/smoke_test.py`.
"""

import covereq


def main():
    whole = covereq.System.unweighted([(0, 1)])
    halves = covereq.System.unweighted([(0, 2), (1, 2)])
    verdict, witness = covereq.are_equivalent(whole, halves)
    assert verdict and witness.prime == 3 and witness.s_cardinality == 2, witness
    assert covereq.equivalent_bruteforce(whole, halves)

    verdict, witness = covereq.are_equivalent(whole, halves, prime=7)
    assert verdict and witness.prime == 7

    shifted = covereq.System.parse("0 (2)\n0 (2)\n")
    verdict, witness = covereq.are_equivalent(whole, shifted)
    assert not verdict and any(c != "0" for c in witness.coefficients)

    cover = covereq.System.unweighted([(0, 2), (1, 4), (3, 4)])
    assert covereq.is_exact_m_cover(cover, 1)[0]
    assert covereq.is_exact_m_cover(cover.union(cover), 2)[0]

    five = covereq.System.unweighted([(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)])
    assert not covereq.is_exact_m_cover(five, 1)[0]
    assert five.table() == [2, 1, 1, 1, 1, 2, 2, 1, 1, 2, 1, 1]
    assert five.period() == 12

    weighted = covereq.System([(2, -1, 3), (-1, 5, 6)])
    assert weighted.classes() == [(2, 2, 3), (-1, 5, 6)]
    assert weighted.covering_value(-1) == 1

    assert covereq.s_set([2, 3]) == (4, ["0", "1/3", "1/2", "2/3"])
    assert covereq.choose_prime([2, 4]) == (5, 4)
    assert covereq.cyclotomic_polynomial(6) == [1, -1, 1]

    classes, s = covereq.composite_counterexample(4, 2, 3)
    assert classes == [(0, 3), (2, 3)] and s == 3

    holds, witnesses = covereq.go_search(3, 2)
    assert holds and len(witnesses) == 3

    try:
        covereq.System.parse("0 (2)\nbogus\n")
    except ValueError as e:
        assert "line 2" in str(e)
    else:
        raise AssertionError("parse error not raised")

    print("covereq smoke test passed")


if __name__ == "__main__":
    main()
