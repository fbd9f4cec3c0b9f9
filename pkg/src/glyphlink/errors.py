"""Exception types shared across the toolkit."""


class GlyphLinkError(Exception):
    """Base class for all toolkit errors."""


class DataError(GlyphLinkError):
    """Malformed or inconsistent input data (bad file, bad value, missing key)."""


class ConfigError(GlyphLinkError):
    """Invalid configuration: unknown method, contradictory or out-of-range parameters."""


class BlankGlyphError(DataError):
    """A glyph bitmap with no ink; it has no direction in embedding space."""
