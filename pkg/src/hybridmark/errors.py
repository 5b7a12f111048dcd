"""Exception types raised across the toolkit."""


class WatermarkError(Exception):
    """Base class for every error raised by hybridmark."""


class EncodingError(WatermarkError, ValueError):
    pass


class CapacityError(WatermarkError, ValueError):
    pass


class TruncatedError(WatermarkError, ValueError):
    pass


class MalformedHeaderError(WatermarkError, ValueError):
    pass


class FormatError(WatermarkError, ValueError):
    pass


class GeometryError(WatermarkError, ValueError):
    pass


class PlanMismatchError(WatermarkError, ValueError):
    pass


class ParamError(WatermarkError, ValueError):
    pass


class LengthError(WatermarkError, ValueError):
    pass


class ConfigError(WatermarkError, ValueError):
    pass
