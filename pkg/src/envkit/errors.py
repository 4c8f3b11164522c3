"""Exception taxonomy shared by every envkit module.

All library errors derive from :class:`EnvKitError` so callers can catch the
whole family with one clause.  The class *name* is the stable, documented
identifier; it is what crosses process and language boundaries (vector
workers, the stdio bridge).
"""


class EnvKitError(Exception):
    """Base class for all errors raised by envkit."""


# --- space algebra -------------------------------------------------------

class UnflattenableSpace(EnvKitError):
    """The space has no fixed flat dimension (Text, Sequence, Graph)."""


class ValueNotInSpace(EnvKitError):
    """A value failed membership against the space it was used with."""


class DimensionMismatch(EnvKitError):
    """A flat vector's length does not equal the space's flat dimension."""


class MalformedEncoding(EnvKitError):
    """A flat vector cannot be decoded (e.g. an all-zero one-hot block)."""


class EmptyBatch(EnvKitError):
    """concatenate() was called with no samples."""


class NotABatch(EnvKitError):
    """iterate() was given a value that is not a batched sample."""


# --- environment contract ------------------------------------------------

class ResetNeeded(EnvKitError):
    """step() was called before reset(), or after the episode ended."""


class InvalidAction(EnvKitError):
    """The action is not a member of the action space."""


class EnvClosed(EnvKitError):
    """reset() or step() was called on a closed environment."""


class RenderModeUnset(EnvKitError):
    """render() was called but no render mode was set at construction."""


class TransformedValueNotInSpace(EnvKitError):
    """An observation transform produced a value outside its declared space."""


# --- registry ------------------------------------------------------------

class MalformedId(EnvKitError):
    """An environment id string does not follow ``[namespace/]name[-vN]``."""


class DuplicateRegistration(EnvKitError):
    """The (namespace, name, version) triple is already registered."""


class MissingVersion(EnvKitError):
    """register() requires an explicit version in the spec id."""


class UnknownEnvironment(EnvKitError):
    """No environment with this name is registered."""


class VersionNotFound(EnvKitError):
    """The name is registered but not at the requested version."""


class InvalidKwargs(EnvKitError):
    """The environment constructor rejected the supplied kwargs."""


class UnserializableKwargs(EnvKitError):
    """Spec kwargs contain values outside the serializable kind set."""


class MalformedDocument(EnvKitError):
    """A serialized spec or space document could not be parsed."""


# --- vectorization -------------------------------------------------------

class WorkerSpawnFailure(EnvKitError):
    """A parallel vector worker failed to start."""


class WorkerFailure(EnvKitError):
    """A parallel vector worker died or reported an unexpected error."""
