"""Smoke test for the nearkahler_py extension.

Build and install first, e.g.
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/nearkahler_py-*.whl
"""

import json
import tempfile

import nearkahler_py as nk


def main():
    cert = json.loads(nk.verify("hodge"))
    assert cert["passed"], cert
    assert nk.degree2_charpoly() == ["-144", "108", "-20", "1"]
    assert nk.einstein_deformation_dim(1, 2, 3) == 6

    irreps = nk.enumerate_irreps("60")
    assert len(irreps) == 53
    first = irreps[0]
    assert (first.twice, first.dim, first.casimir) == ((0, 0, 0), 1, "0")
    assert str(nk.IrrepLabel(2, 1, 1)) == "(1, 1/2, 1/2)"

    with tempfile.TemporaryDirectory() as cache:
        engine = nk.SpectralEngine(cache_dir=cache)
        lam0 = json.loads(engine.spectrum("lambda0", "13"))
        assert lam0["lines"][0] == {"eigenvalue": 0.0, "multiplicity": 1, "irreps": ["(0, 0, 0)"]}
        assert lam0["normalization"]["scal"] == 30
        moduli = json.loads(engine.moduli("30"))
        assert moduli["equality"]
        hits, built, rejected = engine.cache_stats()
        assert built > 0 and rejected == 0
        assert engine.e_lambda_dims("1/2") == (0, 0, 0)

    try:
        nk.SpectralEngine().spectrum("sym2")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown bundle accepted")

    code, out = nk.run_cli(["verify", "--section", "fiber"])
    assert code == 0 and "20 of 20 identities hold" in out
    print("smoke test passed")


if __name__ == "__main__":
    main()
