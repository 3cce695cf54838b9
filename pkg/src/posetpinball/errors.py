class DomainError(Exception):
    """Base class for contract violations raised by this package.

    Subclasses carry a stable ``code`` used by the CLI and the game server
    when reporting structured errors.
    """

    code = "domain-error"

    def __init__(self, message="", **detail):
        super().__init__(message or self.code)
        self.detail = detail
