"""Build the extension module and exercise it from Python.

    python3 python/smoke_test.py [--release]
"""

import importlib.util
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build(release):
    cmd = ["cargo", "build", "-p", "hplane-py"]
    if release:
        cmd.append("--release")
    subprocess.run(cmd, cwd=ROOT, check=True)
    lib = ROOT / "target" / ("release" if release else "debug") / "libhplane.so"
    if not lib.exists():
        lib = lib.with_suffix(".dylib")
    return lib


def load(lib, workdir):
    target = Path(workdir) / ("hplane" + sysconfig.get_config_var("EXT_SUFFIX"))
    shutil.copy(lib, target)
    spec = importlib.util.spec_from_file_location("hplane", target)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def check(hp):
    e = hp.Expr("theta*x")
    n = e.normalize()
    assert n == hp.normalize("x*theta - h*x*phi + h*y*theta + h*hp*y*phi"), n
    assert hp.normalize("phi*theta + theta*phi").is_zero()
    assert str(hp.normalize("phi*theta")) == "- theta*phi"
    assert hp.normalize("x*y - y*x", subst=["hp=0"]).is_zero()

    assert hp.d("theta") == hp.Expr("x")
    assert hp.d(hp.d("theta*phi*theta")).is_zero()
    assert hp.partial(2, "theta*phi") == hp.Expr("-theta - hp*phi")
    assert hp.o_map(2, 2, "theta") == hp.Expr("theta + hp*phi")

    assert hp.star("theta") == hp.Expr("theta + h*phi")
    for name in ["theta", "phi", "pi_theta", "pi_phi"]:
        x = hp.hat(name).normalize()
        assert hp.star(x) == x, name
    try:
        hp.star("x")
    except ValueError:
        pass
    else:
        raise AssertionError("star accepted a differential")

    rt = hp.Expr.from_json(n.to_json())
    assert rt == n
    assert hp.Expr.from_latex(n.to_latex()) == n
    product = (hp.Expr("pth") * "theta").normalize()
    assert product == hp.normalize("1 - theta*pth + h*phi*pth")

    assert len(hp.matrix("0").splitlines()) == 4
    rels = dict(hp.derive_phase_space())
    assert rels["pi_phi^2"] == "hp*pi_theta*pi_phi"
    assert rels["pi_phi^2"] != dict(hp.derive_phase_space("minus-h"))["pi_phi^2"]

    pairs = hp.critical_pairs()
    assert pairs and all(res == "0" for _, res in pairs)
    ok, checks = hp.verify("phase-space")
    assert ok and all(passed for _, passed, _ in checks)

    try:
        hp.Expr("theta +")
    except ValueError as err:
        assert "position" in str(err)
    else:
        raise AssertionError("parse error not raised")


def main():
    lib = build("--release" in sys.argv)
    with tempfile.TemporaryDirectory() as tmp:
        check(load(lib, tmp))
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
