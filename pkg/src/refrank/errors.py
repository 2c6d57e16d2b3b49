"""Exception hierarchy shared across the pipeline stages."""


class RefrankError(Exception):
    """Base class for every error raised by refrank."""


class UnsupportedFormat(RefrankError):
    pass


class ExtractionFailed(RefrankError):
    pass


class ParseFailure(RefrankError):
    """Input could not be turned into a citation list (CLI exit code 2)."""


class NoReferenceSection(ParseFailure):
    pass


class NoCitationsFound(ParseFailure):
    pass


class EmptyName(RefrankError, ValueError):
    pass


class IdNotFound(RefrankError):
    pass


class ProfileParseError(RefrankError):
    def __init__(self, field, message=None):
        self.field = field
        super().__init__(message or f"required field missing or invalid: {field}")


class FetchError(RefrankError):
    """Transport-level failure in live mode (CLI exit code 3)."""


class CacheMiss(RefrankError):
    def __init__(self, url):
        self.url = url
        super().__init__(f"not in cache: {url}")


class ConfigError(RefrankError):
    pass


class MissingLabel(RefrankError):
    pass
