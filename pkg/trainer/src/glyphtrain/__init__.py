"""Toy-scale contrastive glyph encoder training."""

from .batching import epoch_batches, mine_hard_negatives, nearest_classes
from .config import (
    DEFAULT_LR,
    DEFAULT_T0,
    DEFAULT_T_MULT,
    DEFAULT_TAU,
    DEFAULT_WEIGHT_DECAY,
    TrainerConfig,
    read_config,
)
from .data import (
    ERASE_MAX_FRACTION,
    ROTATION_MAX_DEG,
    GlyphClass,
    augment,
    load_glyph_dir,
    render_class,
    split_views,
    toy_dataset,
    toy_references,
    views_from_references,
)
from .encoder import ToyEncoder, embed_images
from .errors import ConfigError, DataError, TrainError
from .export import export_embeddings
from .loss import supcon_loss
from .train import TrainResult, train, validate_top1

__all__ = [
    "ConfigError",
    "DataError",
    "DEFAULT_LR",
    "DEFAULT_T0",
    "DEFAULT_T_MULT",
    "DEFAULT_TAU",
    "DEFAULT_WEIGHT_DECAY",
    "ERASE_MAX_FRACTION",
    "GlyphClass",
    "ROTATION_MAX_DEG",
    "ToyEncoder",
    "TrainError",
    "TrainResult",
    "TrainerConfig",
    "augment",
    "embed_images",
    "epoch_batches",
    "export_embeddings",
    "load_glyph_dir",
    "mine_hard_negatives",
    "nearest_classes",
    "read_config",
    "render_class",
    "split_views",
    "supcon_loss",
    "toy_dataset",
    "toy_references",
    "train",
    "validate_top1",
    "views_from_references",
]
