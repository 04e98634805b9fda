"""Exception hierarchy shared by every stage of the migration pipeline."""


class MigrationError(Exception):
    """Base class. ``exit_status`` is what the CLI returns when this escapes."""

    exit_status = 2


# -- repository ---------------------------------------------------------------

class RepositoryError(MigrationError):
    pass


class MissingFile(RepositoryError):
    pass


class MalformedRecord(RepositoryError):
    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{self.path}:{line}: {message}")


class DuplicateMatchKey(RepositoryError):
    def __init__(self, key, path=None, line=None):
        self.key = key
        where = f"{path}:{line}: " if path is not None else ""
        super().__init__(f"{where}duplicate match key {key!r}")


class PersistenceFailure(RepositoryError):
    pass


# -- source parsing -----------------------------------------------------------

class SourceSyntaxError(MigrationError):
    def __init__(self, message, line, column, token=None):
        self.line = line
        self.column = column
        self.token = token
        near = f" near {token!r}" if token is not None else ""
        super().__init__(f"{line}:{column}: {message}{near}")


class UnsupportedConstruct(SourceSyntaxError):
    def __init__(self, construct, line, column):
        self.construct = construct
        super().__init__(f"unsupported construct: {construct}", line, column)


class NoMainFunction(MigrationError):
    pass


# -- hardware model -----------------------------------------------------------

class XmlSyntaxError(MigrationError):
    pass


class UnknownComponentType(MigrationError):
    def __init__(self, unresolved):
        # unresolved: list of (instance id, moduleIdRef, title)
        self.unresolved = list(unresolved)
        names = ", ".join(f"{title} ({module})" for _, module, title in self.unresolved)
        super().__init__(f"cannot resolve component type for: {names}")


class NoBoard(MigrationError):
    pass


class MultipleBoards(MigrationError):
    pass


# -- recommendation / generation ----------------------------------------------

class EmptyCorpus(MigrationError):
    pass


class SelectionError(MigrationError):
    exit_status = 3


class MissingSelection(SelectionError):
    def __init__(self, components):
        self.components = sorted(components)
        super().__init__("no library selected for: " + ", ".join(self.components))


class UnknownLibrary(SelectionError):
    pass
