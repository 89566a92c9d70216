import csv
import json

import numpy as np
import pytest

from mcinterp import BandSpec, ImagePlane, Spectrum, sample_channels, synthesize
from mcinterp.channels import IDENTITY_HILBERT
from mcinterp.cli import main
from mcinterp.oracle import closed_form_y
from mcinterp.pnm import read_image, write_pgm

from conftest import random_spectrum


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


@pytest.fixture
def image(tmp_path, rng):
    y, x = np.mgrid[0:30, 0:30]
    px = 128 + 60 * np.sin(x / 4) * np.cos(y / 5) + rng.normal(0, 2, (30, 30))
    path = tmp_path / "img.pgm"
    write_pgm(path, ImagePlane(np.clip(px, 0, 255)))
    return path


class TestTable:
    def test_default_rows(self, tmp_path):
        out = tmp_path / "t.csv"
        assert main(["table", "--out", str(out)]) == 0
        rows = _rows(out)
        assert rows[0] == ["mu", "f", "hf", "d1", "d2", "delta1", "delta2"]
        assert len(rows) == 17
        assert rows[1][:5] == ["16", "16", "0", "0", "0"]
        assert rows[1][5] == "1.482e+00"
        row48 = next(r for r in rows if r[:5] == ["48", "24", "24", "0", "0"])
        assert row48[5:] == ["2.861e-01", "2.400e-01"]

    def test_config_single_row(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"rows": [{"f": 36, "hf": 36}]}))
        out = tmp_path / "t.csv"
        assert main(["table", "--config", str(cfg), "--out", str(out)]) == 0
        rows = _rows(out)
        assert rows[1:] == [["72", "36", "36", "0", "0", "3.802e-02", "3.233e-02"]]

    def test_stdout(self, capsys):
        cfg_rows = ["table", "--digits", "6"]
        assert main(cfg_rows) == 0
        assert "1.48173e+00" in capsys.readouterr().out


class TestReconstruct:
    def test_two_channel_round_trip(self, tmp_path, rng):
        band = BandSpec(-5, 6, 2)
        spec = random_spectrum(rng, -5, 6)
        g = sample_channels(spec, IDENTITY_HILBERT, band).g
        src = tmp_path / "s.csv"
        with open(src, "w") as fh:
            fh.write("f,hf\n")
            for a, b in zip(g[0], g[1]):
                fh.write(f"{complex(a)!r},{complex(b)!r}\n".replace("(", "").replace(")", ""))
        out = tmp_path / "r.csv"
        rc = main(["reconstruct", "--input", str(src), "--band", "-5:6:2",
                   "--channels", '["identity", "hilbert"]', "--grid", "32",
                   "--hilbert", "--out", str(out)])
        assert rc == 0
        rows = _rows(out)
        assert rows[0] == ["t", "f_re", "f_im", "hf_re", "hf_im"]
        vals = np.array(rows[1:], dtype=float)
        want = synthesize(spec, 32).values
        assert np.allclose(vals[:, 1] + 1j * vals[:, 2], want, atol=1e-10)

    def test_real_output_and_default_band(self, tmp_path):
        src = tmp_path / "s.csv"
        t = 2 * np.pi * np.arange(9) / 9
        src.write_text("\n".join(repr(float(v)) for v in np.cos(2 * t)) + "\n")
        out = tmp_path / "r.csv"
        assert main(["reconstruct", "--input", str(src), "--real", "--grid", "18",
                     "--out", str(out)]) == 0
        vals = np.array(_rows(out)[1:], dtype=float)
        assert np.allclose(vals[:, 1], np.cos(2 * vals[:, 0]))

    def test_column_count_mismatch(self, tmp_path, capsys):
        src = tmp_path / "s.csv"
        src.write_text("1,2\n3,4\n")
        rc = main(["reconstruct", "--input", str(src), "--channels", '["identity"]'])
        assert rc == 1
        assert "s.csv" in capsys.readouterr().err

    def test_bad_number(self, tmp_path, capsys):
        src = tmp_path / "bad.csv"
        src.write_text("1\nfoo\n")
        assert main(["reconstruct", "--input", str(src)]) == 1
        assert "bad.csv" in capsys.readouterr().err

    def test_imaginary_residual_warning(self, tmp_path, capsys):
        src = tmp_path / "s.csv"
        src.write_text("1j\n0\n0\n")
        assert main(["reconstruct", "--input", str(src), "--real",
                     "--out", str(tmp_path / "o.csv")]) == 0
        assert "imaginary residual" in capsys.readouterr().err


class TestImages:
    def test_degrade_then_sisr(self, tmp_path, image):
        low = tmp_path / "low.pgm"
        assert main(["degrade", "--input", str(image), "--out", str(low)]) == 0
        assert read_image(low).pixels.shape == (10, 10)
        up = tmp_path / "up.pgm"
        assert main(["sisr", "--input", str(low), "--out", str(up),
                     "--reference", str(image)]) == 0
        report = json.loads((tmp_path / "up.json").read_text())
        assert {"psnr", "cc"} <= set(report)
        assert read_image(up).pixels.shape == (30, 30)

    def test_degrade_size(self, tmp_path):
        src = tmp_path / "big.pgm"
        write_pgm(src, ImagePlane(np.zeros((510, 510))))
        out = tmp_path / "small.pgm"
        assert main(["degrade", "--input", str(src), "--out", str(out)]) == 0
        assert read_image(out).pixels.shape == (170, 170)

    def test_noise_flag_is_reproducible(self, tmp_path, image):
        a, b = tmp_path / "a.pgm", tmp_path / "b.pgm"
        for p in (a, b):
            main(["degrade", "--input", str(image), "--out", str(p),
                  "--noise-sigma", "3", "--seed", "11"])
        assert a.read_bytes() == b.read_bytes()

    def test_flag_overrides_config(self, tmp_path, image):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"factor": 2, "extend": "mirror"}))
        out = tmp_path / "up.pgm"
        assert main(["sisr", "--config", str(cfg), "--input", str(image),
                     "--factor", "3", "--out", str(out)]) == 0
        assert read_image(out).pixels.shape == (90, 90)

    def test_reference_size_mismatch(self, tmp_path, image, capsys):
        out = tmp_path / "up.pgm"
        assert main(["sisr", "--input", str(image), "--out", str(out),
                     "--reference", str(image)]) == 1
        assert "img.pgm" in capsys.readouterr().err

    def test_not_divisible(self, tmp_path, capsys):
        src = tmp_path / "odd.pgm"
        write_pgm(src, ImagePlane(np.zeros((10, 10))))
        assert main(["degrade", "--input", str(src), "--out", str(tmp_path / "o.pgm")]) == 1
        assert "divisible" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        assert main(["sisr", "--input", str(tmp_path / "nope.pgm"),
                     "--out", str(tmp_path / "o.pgm")]) == 1
        assert "nope.pgm" in capsys.readouterr().err


class TestKernels:
    def test_derivative_bank_matches_closed_form(self, tmp_path):
        out = tmp_path / "k.csv"
        assert main(["kernels", "--band", "-34:34:3", "--channels",
                     '["identity", "d1", "d2"]', "--grid", "200",
                     "--out", str(out)]) == 0
        rows = _rows(out)
        assert rows[0] == ["t", "y1_re", "y1_im", "y2_re", "y2_im", "y3_re", "y3_im"]
        vals = np.array(rows[1:], dtype=float)
        keep = vals[:, 0] > 0.01
        t = vals[keep, 0]
        want = closed_form_y("ex2_y2", t, n0=11)
        assert np.allclose(vals[keep, 3], want.real, atol=1e-9)

    def test_singular_bank_fails(self, capsys):
        rc = main(["kernels", "--band", "-3:3", "--channels", '["hilbert"]'])
        assert rc == 1
        assert "null_band" in capsys.readouterr().err

    def test_null_band_via_json(self, tmp_path):
        out = tmp_path / "k.csv"
        rc = main(["kernels", "--band", "-3:3", "--channels",
                   '{"channels": ["hilbert"], "null_band": [0]}', "--out", str(out)])
        assert rc == 0

    def test_condition_warning(self, capsys, tmp_path):
        # two nearly identical table channels
        bank = {"channels": [
            {"kind": "table", "values": {str(n): [1.0, 0.0] for n in range(-4, 4)}},
            {"kind": "table", "values": {str(n): [1.0, 1e-10 * n] for n in range(-4, 4)}},
        ]}
        rc = main(["kernels", "--band", "-4:3:2", "--channels", json.dumps(bank),
                   "--out", str(tmp_path / "k.csv")])
        assert rc == 0
        assert "ill-conditioned" in capsys.readouterr().err

    def test_deterministic(self, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            main(["kernels", "--band", "-7:8:2", "--channels", '["identity","hilbert"]',
                  "--out", str(p)])
        assert paths[0].read_bytes() == paths[1].read_bytes()
