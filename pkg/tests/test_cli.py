import numpy as np
import pytest
from PIL import Image

from isle.cli import run_cli
from isle.image import load_edge_map, load_image, save_image
from synth import building_scene


@pytest.fixture()
def constant_png(tmp_path):
    p = tmp_path / "const.png"
    save_image(np.full((48, 48, 3), 0.9), p)
    return p


@pytest.fixture()
def scene_png(tmp_path):
    img, bounds = building_scene(size=96, rect_w=40, rect_h=56, inset=4)
    p = tmp_path / "scene.png"
    save_image(img, p)
    return p, bounds


def test_usage_error_unknown_flag(tmp_path, capsys):
    assert run_cli(["smooth", "--wat", "1", "a", "b"]) == 1
    assert "usage" in capsys.readouterr().err


def test_usage_error_no_subcommand():
    assert run_cli([]) == 1


def test_smooth_lambda_zero_is_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    img = rng.uniform(size=(24, 24, 3))
    src = tmp_path / "in.png"
    dst = tmp_path / "out.png"
    save_image(img, src)
    assert run_cli(["smooth", "--lambda", "0", str(src), str(dst)]) == 0
    assert np.abs(load_image(dst) - img).max() <= 1.0 / 255.0 + 1e-12


def test_smooth_missing_input_is_io_error(tmp_path):
    assert run_cli(["smooth", "--lambda", "0.01", str(tmp_path / "no.png"), str(tmp_path / "o.png")]) == 2


def test_edges_constant_black(tmp_path, constant_png):
    out = tmp_path / "edges.png"
    assert run_cli(["edges", str(constant_png), str(out)]) == 0
    assert not load_edge_map(out).any()


def test_edges_bad_thresholds_contract_error(tmp_path, constant_png):
    out = tmp_path / "e.png"
    assert run_cli(["edges", "--low", "0.5", "--high", "0.2", str(constant_png), str(out)]) == 3
    assert not out.exists()  # no partial artifacts


def test_isle_constant_all_black_exit0(tmp_path, constant_png):
    raw = tmp_path / "raw.png"
    refined = tmp_path / "refined.png"
    assert run_cli(["isle", str(constant_png), str(raw), str(refined)]) == 0
    assert not load_edge_map(raw).any()
    assert not load_edge_map(refined).any()
    assert np.asarray(Image.open(raw)).max() == 0


def test_isle_deterministic_bytes(tmp_path, scene_png):
    src, _ = scene_png
    outs = []
    for tag in ("a", "b"):
        raw = tmp_path / f"raw_{tag}.png"
        refined = tmp_path / f"ref_{tag}.png"
        dump = tmp_path / f"dump_{tag}"
        code = run_cli([
            "isle", "--dump-intermediates", str(dump), str(src), str(raw), str(refined)
        ])
        assert code == 0
        blob = raw.read_bytes() + refined.read_bytes()
        for p in sorted(dump.iterdir()):
            blob += p.read_bytes()
        outs.append(blob)
    assert outs[0] == outs[1]


def test_isle_with_mask_restricts_output(tmp_path, scene_png):
    src, (top, bottom, left, right) = scene_png
    mask = np.zeros((96, 96), dtype=bool)
    mask[top - 4 : bottom + 4, left - 4 : right + 4] = True
    mask_p = tmp_path / "mask.png"
    save_image(mask, mask_p)
    raw = tmp_path / "raw.png"
    refined = tmp_path / "refined.png"
    assert run_cli(["isle", "--mask", str(mask_p), str(src), str(raw), str(refined)]) == 0
    r = load_edge_map(raw)
    f = load_edge_map(refined)
    assert not (f & ~r).any()


def test_isle_mask_dimension_mismatch_no_output(tmp_path, scene_png):
    src, _ = scene_png
    bad = np.zeros((10, 10), dtype=bool)
    mask_p = tmp_path / "bad_mask.png"
    save_image(bad, mask_p)
    raw = tmp_path / "raw.png"
    refined = tmp_path / "refined.png"
    assert run_cli(["isle", "--mask", str(mask_p), str(src), str(raw), str(refined)]) == 3
    assert not raw.exists() and not refined.exists()


def test_isle_labels_and_mask_mutually_exclusive(tmp_path, scene_png, capsys):
    src, _ = scene_png
    assert run_cli([
        "isle", "--labels", "x.png", "--mask", "y.png", str(src), "r.png", "f.png"
    ]) == 1


def test_isle_with_labels(tmp_path, scene_png):
    src, (top, bottom, left, right) = scene_png
    labels = np.full((96, 96), 2, dtype=np.uint8)  # sky
    labels[top:bottom, left:right] = 1  # building
    lab_p = tmp_path / "labels.png"
    Image.fromarray(labels, mode="L").save(lab_p)
    raw = tmp_path / "raw.png"
    refined = tmp_path / "refined.png"
    assert run_cli(["isle", "--labels", str(lab_p), str(src), str(raw), str(refined)]) == 0
    f = load_edge_map(refined)
    assert f.any()
    # nothing outside the dilated building box
    assert not f[: top - 6].any() and not f[bottom + 6 :].any()


def test_mask_subcommand(tmp_path):
    labels = np.zeros((32, 32), dtype=np.uint8)
    labels[8:24, 8:24] = 1  # building
    lab_p = tmp_path / "labels.png"
    Image.fromarray(labels, mode="L").save(lab_p)
    classes = tmp_path / "classes.txt"
    classes.write_text("building=1\n")
    out = tmp_path / "mask.png"
    assert run_cli([
        "mask", "--labels", str(lab_p), "--classes", str(classes), "--dilate", "2", str(out)
    ]) == 0
    m = load_edge_map(out)
    assert m[8:24, 8:24].all()
    assert m[6, 16]  # dilated beyond the box
    assert not m[0, 0]


def test_eval_identical_files_mean_one(tmp_path, capsys):
    rng = np.random.default_rng(1)
    edges = rng.uniform(size=(32, 32)) < 0.2
    e_p = tmp_path / "edges.png"
    save_image(edges, e_p)
    pairs = tmp_path / "pairs.csv"
    pairs.write_text(f"{e_p},{e_p},img0\n")
    report = tmp_path / "report.csv"
    assert run_cli(["eval", "--pairs", str(pairs), "--out", str(report)]) == 0
    text = report.read_text()
    assert "img0" in text
    assert "1.000000" in text
    assert "mean_ssim=1.0000" in capsys.readouterr().out


def test_eval_missing_pair_nonzero_exit(tmp_path):
    rng = np.random.default_rng(2)
    edges = rng.uniform(size=(16, 16)) < 0.2
    e_p = tmp_path / "edges.png"
    save_image(edges, e_p)
    pairs = tmp_path / "pairs.csv"
    pairs.write_text(f"{e_p},{e_p},ok\n{tmp_path / 'gone.png'},{e_p},broken\n")
    report = tmp_path / "report.csv"
    assert run_cli(["eval", "--pairs", str(pairs), "--out", str(report)]) == 2
    assert "broken" in report.read_text()


def test_eval_pairs_with_header(tmp_path):
    rng = np.random.default_rng(3)
    edges = rng.uniform(size=(16, 16)) < 0.2
    e_p = tmp_path / "edges.png"
    save_image(edges, e_p)
    pairs = tmp_path / "pairs.csv"
    pairs.write_text(f"result_path,groundtruth_path,image_id\n{e_p},{e_p},x\n")
    report = tmp_path / "report.csv"
    assert run_cli(["eval", "--pairs", str(pairs), "--out", str(report)]) == 0
