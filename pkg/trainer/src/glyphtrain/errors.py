class TrainError(Exception):
    """Base for everything glyphtrain raises on purpose."""


class ConfigError(TrainError):
    """Invalid parameter or flag combination."""


class DataError(TrainError):
    """Malformed or insufficient input data."""
