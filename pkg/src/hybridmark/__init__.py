"""LSB, DFT-magnitude and hybrid image watermarking with attack simulation and metrics."""

__version__ = "0.1.0"

from hybridmark._backend import BACKEND  # noqa: E402
from hybridmark.bitcodec import stream_to_text, text_to_stream  # noqa: E402
from hybridmark.dft import CoordinatePlan, dft_embed, dft_extract, plan_coords  # noqa: E402
from hybridmark.hybrid import ExtractionReport, HybridOrder, hybrid_embed, hybrid_extract  # noqa: E402
from hybridmark.lsb import lsb_embed, lsb_extract, lsb_extract_n  # noqa: E402
from hybridmark.metrics import ber, mse, nc, psnr  # noqa: E402
from hybridmark.raster import GrayImage, load_image, save_image  # noqa: E402

__all__ = [
    "BACKEND", "CoordinatePlan", "ExtractionReport", "GrayImage", "HybridOrder", "ber",
    "dft_embed", "dft_extract", "hybrid_embed", "hybrid_extract", "load_image", "lsb_embed",
    "lsb_extract", "lsb_extract_n", "mse", "nc", "plan_coords", "psnr", "save_image",
    "stream_to_text", "text_to_stream",
]
