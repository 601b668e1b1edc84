import importlib.util
import json
from pathlib import Path

import pytest

SCRIPT = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


@pytest.fixture(scope="module")
def bench():
    spec = importlib.util.spec_from_file_location("bench_kernels", SCRIPT)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_benchmark_smoke(bench, tmp_path, capsys):
    out = tmp_path / "t.json"
    assert bench.main(["--sizes", "3", "--repeat", "1", "--json", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert {r["op"] for r in rows} == {"eigvals", "inverse", "charpoly", "oracle"}
    assert all(r["seconds"] > 0 for r in rows)
    assert "eigvals" in capsys.readouterr().out


def test_benchmark_rejects_bad_sizes(bench):
    with pytest.raises(SystemExit):
        bench.main(["--sizes", "0"])
