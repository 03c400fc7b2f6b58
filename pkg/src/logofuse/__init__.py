"""Appearance-based logo classification.

Extracts color (48-d), texture (8-d) and shape (4-d) feature vectors from
logo images, fuses them in all seven combinations, classifies with 1-nearest
neighbor under Euclidean distance, and reports accuracy, macro precision and
recall, and F-measure across varying train/test splits.
"""

from . import errors
from .classifier import (
    LabeledSample,
    Prediction,
    TrainedModel,
    classify,
    classify_batch,
    euclidean_distance,
)
from .color_features import extract_color
from .config import ExperimentConfig, load_config
from .evaluation import (
    ConfusionMatrix,
    MetricsReport,
    accuracy,
    build_confusion,
    class_precision_recall,
    f_measure,
    format_percent,
    macro_metrics,
    metrics_report,
)
from .fusion import (
    COMBO_NAMES,
    apply_normalizer,
    combo_dim,
    fit_normalizer,
    fuse,
    fuse_matrix,
)
from .harness import (
    CLASSES,
    CorpusManifest,
    run_experiment,
    scan_corpus,
    stratified_split,
)
from .imaging import load_image, resize, to_grayscale
from .shape_features import ShapeConfig, extract_shape, pseudo_zernike_moment
from .synthetic import generate_synthetic_corpus
from .texture_features import extract_texture, gaussian_derivative_kernels, steer_response

__version__ = "0.1.0"
