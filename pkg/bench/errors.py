class ConfigError(ValueError):
    """Bad run configuration; the CLI exits with status 2"""


class DatasetError(RuntimeError):
    """Missing input directory or no matching images"""


class OutputError(RuntimeError):
    """Output location cannot be written; aborts the batch"""
