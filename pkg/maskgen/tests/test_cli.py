import os

import numpy as np
from PIL import Image

from maskgen.cli import run_cli


def test_usage_error():
    assert run_cli([]) == 1


def test_missing_weights_exit_2(tmp_path, photo, capsys):
    code = run_cli(["--weights", str(tmp_path / "no.pt"), "--out-dir", str(tmp_path), photo])
    assert code == 2
    assert "model zoo" in capsys.readouterr().err


def test_batch_emits_label_files(checkpoint, photo, tmp_path, capsys):
    rng = np.random.default_rng(3)
    second = tmp_path / "street.png"
    Image.fromarray((rng.uniform(size=(64, 80, 3)) * 255).astype(np.uint8)).save(second)
    out = tmp_path / "labels"
    code = run_cli([
        "--weights", checkpoint, "--out-dir", str(out), "--max-side", "96",
        photo, str(second),
    ])
    assert code == 0
    assert sorted(os.listdir(out)) == ["house_labels.png", "street_labels.png"]
    printed = capsys.readouterr().out.splitlines()
    assert len(printed) == 2


def test_unreadable_image_exit_3(checkpoint, tmp_path, capsys):
    junk = tmp_path / "junk.png"
    junk.write_bytes(b"not an image")
    code = run_cli(["--weights", checkpoint, "--out-dir", str(tmp_path), str(junk)])
    assert code == 3
    assert "junk.png" in capsys.readouterr().err
