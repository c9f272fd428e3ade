"""Base classes for the document parsers of czlearn."""

from abc import ABC, ABCMeta, abstractmethod
from collections.abc import Iterable, KeysView
from pathlib import Path
from typing import Any


class ParserRegistry:
    """Container for the registered parsers, keyed by file extension without the dot."""

    _registered_parsers: dict[str, type["Parser"]] = {}

    @classmethod
    def get(cls, key: str) -> type["Parser"] | None:
        """Get the parser class of a file extension, `None` if no parser is registered
        for it.
        """
        return cls._registered_parsers.get(key.lower().lstrip("."))

    @classmethod
    def for_path(cls, path: Path) -> type["Parser"]:
        """Get the parser class of a file from its suffix.

        Args:
            path (Path): Path of the file.

        Returns:
            type[Parser]: The registered parser class.

        Raises:
            ValueError: If no parser is registered for the suffix.
        """
        parser = cls.get(path.suffix)
        if parser is None:
            raise ValueError(
                f"No parser for '{path.name}', supported extensions: "
                f"{', '.join(sorted(cls.keys()))}"
            )
        return parser

    @classmethod
    def keys(cls) -> KeysView[str]:
        """Get the extensions of the registered parsers."""
        return cls._registered_parsers.keys()


class _ParserMeta(ABCMeta):
    def __new__(
        cls,
        name: str,
        bases: tuple[type, ...],
        namespace: dict[str, Any],
        /,
        **kwargs: Any,
    ):
        the_cls: type["Parser"] = super().__new__(cls, name, bases, namespace, **kwargs)  # type: ignore
        extensions = the_cls.extensions()  # type: ignore
        if extensions is not None:
            ParserRegistry._registered_parsers.update({k: the_cls for k in extensions})
        return the_cls


class Parser[T: Any](ABC, metaclass=_ParserMeta):
    """Base class for parsers converting documents (configs, serialized games,
    summaries) from and to bytes. Every subclass is registered in the `ParserRegistry`
    on import.

    Subclasses should implement the `parse`, `dump` and `extensions` methods.
    """

    def __init__(self, type_: type[T] | None = None):
        """
        Args:
            type_ (type[T] | None, optional): Concrete type of the parsed documents. A
                pydantic model validates the parsed data. Defaults to `None`, in which
                case the plain decoded data is returned.
        """
        super().__init__()
        self._type = type_

    @property
    def type_(self) -> type[T] | None:
        """Concrete type of the parsed documents, if known."""
        return self._type

    @abstractmethod
    def parse(self, data: bytes) -> T:
        """Parse a document from bytes.

        Args:
            data (bytes): Encoded document.

        Returns:
            T: The parsed document.
        """
        pass

    @abstractmethod
    def dump(self, data: T) -> bytes:
        """Dump a document to bytes. Equal documents produce identical bytes.

        Args:
            data (T): The document.

        Returns:
            bytes: Encoded document.
        """
        pass

    @classmethod
    @abstractmethod
    def extensions(cls) -> Iterable[str] | None:
        """File extensions associated with the parser, `None` for abstract parsers."""
        pass


def read_document[T](path: Path, type_: type[T] | None = None) -> T:
    """Read a document with the parser registered for its extension.

    Args:
        path (Path): Path of the document.
        type_ (type[T] | None, optional): Concrete type of the document. Defaults to
            `None`.

    Returns:
        T: The parsed document.
    """
    parser = ParserRegistry.for_path(path)(type_)
    return parser.parse(path.read_bytes())


def write_document(path: Path, data: Any) -> None:
    """Write a document with the parser registered for its extension, creating the
    parent directories.
    """
    parser = ParserRegistry.for_path(path)()
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(parser.dump(data))
