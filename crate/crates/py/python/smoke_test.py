"""Smoke test for the Python bindings. Run with `python python/smoke_test.py`
after `pip install --no-build-isolation -e .` in crates/py."""

import json

import bialgebroid as bg


def main():
    assert "dual-numbers" in bg.presets()

    b = bg.Bialgebroid.preset("dual-numbers")
    assert (b.dim, b.base_dim, b.characteristic) == (2, 1, 2)
    assert b.is_left_hopf() and b.is_right_hopf()
    assert all(item["status"] == "pass" for item in b.check())

    x = b.basis(1)
    assert b.mul(x, x) == ["0", "0"]
    assert b.counit(x) == ["0"]
    assert b.left_integrals() == [x]
    assert b.is_left_integral(x) and not b.is_left_integral(b.one())

    separable, reason, _ = b.maschke()
    assert not separable and "vanishes" in reason

    theta, tensor, t0 = b.frobenius_system("s")
    assert t0 == x

    z2 = bg.Bialgebroid.preset("group-z2", prime=3)
    g = z2.basis(1)
    assert z2.mul(g, g) == z2.one()
    assert z2.maschke()[2] == ["2", "2"]
    assert z2.mul(["1/2", 0], [2, 0]) == ["1", "0"]

    again = bg.Bialgebroid.from_json(z2.to_json())
    assert again.to_json() == z2.to_json()

    monoid = bg.Bialgebroid.preset("idempotent-monoid")
    assert not monoid.is_left_hopf()
    try:
        monoid.translate(monoid.basis(1))
    except NotImplementedError:
        pass
    else:
        raise AssertionError("translation needs left Hopf")

    try:
        bg.Bialgebroid.preset("no-such-preset")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown presets are rejected")

    report = bg.run(["maschke", "--preset", "dual-numbers"])
    assert report["items"][0]["check_id"] == "maschke.equivalence"
    assert report["data"]["separable"] is False

    doc = json.loads(bg.run(["example", "idempotent-monoid"]))
    assert doc["field"] == {"prime": 2}

    print("ok")


if __name__ == "__main__":
    main()
