"""Exception hierarchy shared by all modules.

The CLI maps these onto process exit codes: ConfigError -> 2,
DataError -> 3, ModelMismatchError -> 4.
"""


class RecipetextError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(RecipetextError):
    """Invalid configuration: bad parameter value, missing file, bad spec."""


class DataError(RecipetextError):
    """Invalid input data: malformed XML, schema violation, bad run file."""


class CorpusParseError(DataError):
    """The XML document could not be parsed at all."""


class CorpusSchemaError(DataError):
    """The XML parsed but violates the corpus schema."""


class ModelMismatchError(RecipetextError):
    """A serialized model does not match the stats/schema it is used with."""
