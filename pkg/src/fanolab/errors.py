class FanoError(ValueError):
    """Structured failure; `code` is a stable machine-readable tag, `details` extra data."""

    def __init__(self, code: str, message: str = "", **details):
        super().__init__(f"{code}: {message}" if message else code)
        self.code = code
        self.message = message
        self.details = details
