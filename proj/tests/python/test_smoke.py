import json
import os

import numpy as np
import pytest

import soundplot as sp

SR = sp.SAMPLE_RATE


def tone(hz, seconds=1.0, amp=0.8):
    t = np.arange(int(seconds * SR)) / SR
    return amp * np.sin(2 * np.pi * hz * t)


def test_stft_shape_and_peak():
    mag = sp.stft_magnitude(tone(1000.0))
    assert mag.shape == (1025, 44)
    assert int(np.argmax(mag[:, 20])) == 93


def test_mel_and_mfcc_shapes():
    x = tone(2000.0)
    assert sp.mel_spectrogram(x).shape == (128, 44)
    assert sp.mfcc(x).shape == (13, 44)
    feats = sp.features(x)
    assert feats["centroid"].shape == (44,)
    assert feats["contrast"].shape == (7, 44)


def test_pitch_on_a_sine():
    _, f0, _ = sp.track_pitch(tone(440.0))
    voiced = f0[~np.isnan(f0)]
    assert voiced.size > 0.9 * f0.size
    assert abs(np.median(voiced) - 440.0) < 4.4


def test_griffin_lim_and_metrics():
    x = tone(1000.0) + tone(3000.0, amp=0.3)
    audio, sc = sp.griffin_lim(sp.stft_magnitude(x), iterations=8, length=x.size)
    assert audio.size == x.size
    assert np.all(np.diff(sc) <= 1e-9)
    y = sp.synthesize(x, iterations=4)
    assert y.size == x.size
    m = sp.compute_metrics(x, x)
    assert m["snr_db"] == 120.0
    assert m["mel_corr"] == pytest.approx(1.0)
    assert sp.compute_metrics(x, -x)["snr_db"] == pytest.approx(-6.0206, abs=1e-3)


def test_pca():
    rng = np.random.default_rng(0)
    data = rng.normal(size=(13, 200))
    model = sp.fit_pca(data, 13)
    ref = np.sort(np.linalg.eigvalsh(np.cov(data)))[::-1]
    np.testing.assert_allclose(model["explained_variance"], ref, rtol=1e-9)
    a, b = sp.joint_embedding(data, data)
    np.testing.assert_array_equal(a, b)


def test_session_and_cli(tmp_path):
    wav = tmp_path / "robin song.wav"
    x = np.zeros(SR)
    x[2000:15000] = 0.8 * np.sin(2 * np.pi * 2500.0 * np.arange(13000) / SR)
    sp.write_wav(wav, x)
    folder, meta = sp.analyze(wav, tmp_path / "sessions", gl_iterations=2, seed=1)
    assert os.path.basename(folder).startswith("robin_song_")
    assert sorted(os.listdir(folder)) == sorted(meta["files"].values())
    with open(os.path.join(folder, "trajectory_original.json")) as f:
        traj = json.load(f)
    for p in traj["points"]:
        assert 0.0 <= p["x"] <= 10.0 and 0.0 <= p["y"] <= 10.0 and 0.0 <= p["z"] <= 10.0

    code, _, err = sp.run_cli(["analyze", str(tmp_path / "nope.wav")])
    assert code == 2 and "nope.wav" in err
    with pytest.raises(sp.SoundplotError):
        sp.load_audio(tmp_path / "nope.wav")
