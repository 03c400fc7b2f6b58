"""Exception types shared across the pipeline."""


class LogoFuseError(Exception):
    """Base class for every error this package raises on purpose."""


class ImageDecodeError(LogoFuseError):
    """The file could not be read or decoded as a supported image."""


class EmptyImageError(LogoFuseError):
    """An image or resize target has a zero dimension."""


class PartitionError(LogoFuseError):
    """Channel dimensions are not divisible by the partition grid."""


class KernelError(LogoFuseError):
    """Invalid filter-kernel parameters."""


class MomentError(LogoFuseError):
    """Inadmissible moment order, or a raster too small for the unit disk."""


class EmptyDatasetError(LogoFuseError):
    """An operation that needs at least one sample received none."""


class ShapeMismatchError(LogoFuseError):
    """Vector or matrix dimensions do not agree."""


class ComboMismatchError(LogoFuseError):
    """Supplied feature blocks do not match the requested combination."""


class LabelError(LogoFuseError):
    """A label outside the declared class list."""


class CorpusLayoutError(LogoFuseError):
    """Corpus tree does not follow <root>/<CLASS>/<subclass>/<image>."""


class SplitError(LogoFuseError):
    """A class cannot yield at least one train and one test sample."""


class ConfigError(LogoFuseError):
    """Invalid configuration value; ``key`` names the offending field."""

    def __init__(self, key: str, message: str):
        super().__init__(f"config key '{key}': {message}")
        self.key = key


class IoError(LogoFuseError):
    """Filesystem failure while writing generated corpus files."""
