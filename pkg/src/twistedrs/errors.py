"""Exception types shared across the package."""


class FieldMismatchError(ValueError):
    """Elements of different field towers were mixed in one operation."""


class ParameterError(ValueError):
    """A code-parameter constraint was violated; the message names it."""


class SizeGuardError(ValueError):
    """A brute-force operation refused to run above its size guard."""


class BudgetExceededError(RuntimeError):
    """The decoder's guess space exceeds the configured budget."""


class DecodingIntegrityError(RuntimeError):
    """Two candidates were accepted inside the unique-decoding radius."""


class KeyFormatError(ValueError):
    """A serialized key or ciphertext failed structural validation."""
