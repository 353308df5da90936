"""Birdsong analysis, resynthesis and visualization."""

try:
    from . import _soundplot as _core
except ImportError:
    import _soundplot as _core

SAMPLE_RATE = _core.SAMPLE_RATE
SoundplotError = _core.SoundplotError

load_audio = _core.load_audio
write_wav = _core.write_wav
stft_magnitude = _core.stft_magnitude
mel_spectrogram = _core.mel_spectrogram
mfcc = _core.mfcc
features = _core.features
track_pitch = _core.track_pitch
griffin_lim = _core.griffin_lim
synthesize = _core.synthesize
compute_metrics = _core.compute_metrics
fit_pca = _core.fit_pca
joint_embedding = _core.joint_embedding
analyze = _core.analyze
run_cli = _core.run_cli

__all__ = [
    "SAMPLE_RATE",
    "SoundplotError",
    "load_audio",
    "write_wav",
    "stft_magnitude",
    "mel_spectrogram",
    "mfcc",
    "features",
    "track_pitch",
    "griffin_lim",
    "synthesize",
    "compute_metrics",
    "fit_pca",
    "joint_embedding",
    "analyze",
    "run_cli",
]
