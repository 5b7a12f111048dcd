"""Method x image x attack factorial runner."""
import logging
import time
import zlib
from pathlib import Path

from hybridmark import __version__
from hybridmark._backend import BACKEND, kernels
from hybridmark.attacks import AttackSpec
from hybridmark.bench.records import TrialRecord
from hybridmark.bitcodec import text_to_stream
from hybridmark.dft import dft_embed, dft_extract, plan_coords
from hybridmark.errors import ConfigError, WatermarkError
from hybridmark.fixtures import make as make_fixture
from hybridmark.hybrid import hybrid_embed, hybrid_extract
from hybridmark.lsb import lsb_embed, lsb_extract_n
from hybridmark.metrics import nc, psnr
from hybridmark.raster import load_image, resize_nn
from hybridmark.spectral import fft2, to_double

log = logging.getLogger(__name__)

GEOMETRY = 512


def derive_seed(seed, *labels):
    """Fold string labels into a 64-bit seed; independent of execution order."""
    s = seed
    for label in labels:
        s = int(kernels.splitmix64_fill(s ^ zlib.crc32(label.encode("utf-8")), 1)[0])
    return s


def load_host(ref):
    """``fixture:<name>`` or a file path -> (image id, 512x512 raster)."""
    if ref.startswith("fixture:"):
        name = ref.split(":", 1)[1]
        return name, make_fixture(name, GEOMETRY)
    img = load_image(ref)
    if img.shape != (GEOMETRY, GEOMETRY):
        img = resize_nn(img, GEOMETRY, GEOMETRY)
    return Path(ref).stem, img


class _Host:
    """Per-image state shared by all methods: original, its spectrum, the plan."""

    def __init__(self, image_id, original, config, length):
        self.id = image_id
        self.original = original
        self.spectrum = fft2(to_double(original))
        self._plan = None
        self._plan_error = None
        self._config = config
        self._length = length

    @property
    def plan(self):
        if self._plan is None and self._plan_error is None:
            c = self._config
            try:
                self._plan = plan_coords(self.original, c.seed, self._length, c.band,
                                         c.mag_floor, spectrum=self.spectrum)
            except WatermarkError as exc:
                self._plan_error = exc
        if self._plan_error is not None:
            raise self._plan_error
        return self._plan


def _embed(method, host, bits, config):
    if method == "lsb":
        return lsb_embed(host.original, bits)
    if method == "dft":
        return dft_embed(host.original, bits, config.alpha, host.plan)
    return hybrid_embed(host.original, bits, config.alpha, host.plan, config.order)


def _extract(method, img, host, bits, config):
    """Returns (stream, hybrid path or '')."""
    if method == "lsb":
        return lsb_extract_n(img, bits.size), ""
    if method == "dft":
        return dft_extract(img, host.original, host.plan, host.spectrum), ""
    rep = hybrid_extract(img, host.original, host.plan, bits, config.threshold, host.spectrum)
    return rep.stream, rep.path


def _error_row(image_id, method, attack, param, exc, psnr_embed=None):
    log.warning("%s/%s/%s failed: %s", image_id, method, attack, exc)
    return TrialRecord(image_id, method, attack, param, psnr_embed, None, None,
                       f"error:{type(exc).__name__}", 0.0)


def run_sweep(config):
    config.validate()
    bits = text_to_stream(config.text)
    hosts = [_Host(*load_host(ref), config, bits.size) for ref in config.images]
    ids = [h.id for h in hosts]
    if len(set(ids)) != len(ids):
        raise ConfigError(f"image ids collide: {ids}")

    records = []
    clock = time.perf_counter if config.timing else (lambda: 0.0)
    for host in hosts:
        for method in config.methods:
            t0 = clock()
            try:
                marked = _embed(method, host, bits, config)
                score_embed = psnr(host.original, marked)
                stream, path = _extract(method, marked, host, bits, config)
            except WatermarkError as exc:
                records.append(_error_row(host.id, method, "none", None, exc))
                for kind, param in config.attack_grid():
                    records.append(_error_row(host.id, method, kind, param, exc))
                continue
            score = nc(bits, stream)
            records.append(TrialRecord(host.id, method, "none", None, score_embed, score,
                                       1.0 - score, path, (clock() - t0) * 1000.0))
            for kind, param in config.attack_grid():
                t0 = clock()
                spec = AttackSpec(kind, param)
                spec = AttackSpec(kind, param, derive_seed(config.seed, host.id, spec.label))
                try:
                    attacked = spec.apply(marked)
                    stream, path = _extract(method, attacked, host, bits, config)
                except WatermarkError as exc:
                    records.append(_error_row(host.id, method, kind, param, exc, score_embed))
                    continue
                score = nc(bits, stream)
                records.append(TrialRecord(host.id, method, kind, float(param), score_embed, score,
                                           1.0 - score, path, (clock() - t0) * 1000.0))
    return sorted(records, key=TrialRecord.sort_key)


def sweep_metadata(config):
    """Reproducibility header written above the CSV table."""
    return {
        "hybridmark": __version__,
        "backend": BACKEND,
        "quant_tables": "ijg-annexk-luma",
        "text": config.text,
        "length": 16 + 8 * len(config.text),
        "alpha": config.alpha,
        "seed": config.seed,
        "band": f"{config.band[0]},{config.band[1]}",
        "mag_floor": config.mag_floor,
        "order": config.order,
        "threshold": config.threshold,
    }
