"""Quick end-to-end check of the Python bindings.

Build and install first:

    cd crates/py && maturin build --release -o dist && pip install dist/trigpos-*.whl
"""

import math

import trigpos


def main():
    m = trigpos.mu_star(2 / 3)
    # printed to 10 decimals
    assert m.lo <= 0.8468555683 + 5e-11 and m.hi >= 0.8468555683 - 5e-11, m
    assert m.width < 1e-9

    u = trigpos.TrigSum.u_n(5, m.lo, m.hi)
    value, err = u.eval(1.0)
    assert value > err
    cert = u.certify(1e-3, math.pi / 2)
    assert cert.certified, cert

    s = trigpos.TrigSum.varsigma(4, "1/3", trigpos.mu_star(1 / 3).mid)
    assert s.certify(1e-3, math.pi - 1e-3).certified

    master = trigpos.master_bound()
    assert abs(master.value - 0.207809) < 1e-4

    chi, chi_err = trigpos.chi_reference_integral(m.mid)
    assert abs(chi + 0.3212698190821) < 1e-10, (chi, chi_err)

    z = 0.3 + 0.4j
    assert abs(trigpos.partial_sum(0.5, z, 0) - 1) < 1e-15
    assert abs(trigpos.gegenbauer_c(3, 1.0, 0.5) - (8 * 0.125 - 4 * 0.5)) < 1e-15

    # x^2 - 2 has one root in (0, 2]
    assert trigpos.count_roots(["-2", "0", "1"], "0", "2") == 1
    cert = trigpos.certify_positive_poly(["1/2", "12", "-40", "32"], "0", "1")
    assert cert["status"] == "certified", cert

    report = trigpos.run_case("sturm:q1")
    assert report["status"] == "pass", report

    try:
        trigpos.mu_star(1.5)
    except ValueError:
        pass
    else:
        raise AssertionError("rho outside (0, 1] accepted")

    print("python smoke test ok:", len(trigpos.cases()), "cases")


if __name__ == "__main__":
    main()
