"""Smoke test for the qwire extension module.

Build it with `cargo build -p qwire-python --features extension-module`, copy
the shared library next to this script as `qwire.so` (or put it on
PYTHONPATH), then run `python3 smoke_test.py`.
"""

import qwire

SOURCE = """
box coin_flip (() : One) -> Bit {
  gate q = init0(());
  gate q = H(q);
  gate b = meas(q);
  output b;
}
"""


def close(a, b, eps=1e-9):
    return all(abs(x - y) <= eps for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def main():
    boxes = qwire.parse(SOURCE)
    coin = boxes["coin_flip"]
    assert coin.input_type == "One" and coin.output_type == "Bit", repr(coin)
    assert close(coin.simulate(), [[0.5, 0], [0, 0.5]])

    flips = qwire.builtin("coin_flips@3")
    assert close(flips.simulate(), [[0.875, 0], [0, 0.125]])

    assert qwire.equivalent(coin, qwire.builtin("coin_flip"))
    assert not qwire.equivalent(qwire.builtin("meas"), qwire.builtin("id"))
    assert coin.alpha_eq(qwire.builtin("coin_flip"))

    assert coin.lower().splitlines()[-1] == "halt 0"
    again = qwire.parse(coin.to_source("again"))["again"]
    assert again.alpha_eq(coin)

    h = qwire.unitary("H")
    assert abs(h[0][0] - 2 ** -0.5) < 1e-12
    plus = [[0.5, 0.5], [0.5, 0.5]]
    ident = qwire.builtin("id")
    assert close(ident.simulate(plus), plus)
    assert len(qwire.builtin_names()) > 0

    try:
        qwire.parse("box f (q : Qubit) -> Qubit {")
    except qwire.ParseError:
        pass
    else:
        raise AssertionError("expected ParseError")

    try:
        qwire.parse("box f (q : Qubit) -> One { output (); }")
    except qwire.LinearityError:
        pass
    else:
        raise AssertionError("expected LinearityError")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
