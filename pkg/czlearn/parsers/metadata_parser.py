"""Parsers for JSON and YAML documents."""

import json
from collections.abc import Iterable
from typing import Any, Protocol, Self

import yaml

from czlearn.parsers.base import Parser

type _Plain = str | int | float | bool | dict | list


class PydanticLike(Protocol):
    """Protocol for classes that behave like pydantic models."""

    @classmethod
    def model_validate(cls, obj: Any) -> Self: ...
    def model_dump(self, *, mode: str = ..., by_alias: bool = ...) -> dict: ...


class _StructuredParser[T: _Plain | PydanticLike](Parser[T]):
    @classmethod
    def extensions(cls) -> Iterable[str] | None:
        return None

    def _decode(self, text: str) -> Any:
        raise NotImplementedError()

    def _encode(self, data: Any) -> str:
        raise NotImplementedError()

    def parse(self, data: bytes) -> T:
        decoded = self._decode(data.decode())
        if self._type is None:
            return decoded
        elif issubclass(self._type, (str, int, float, bool, dict, list)):
            return self._type(decoded)  # type: ignore
        else:
            return self._type.model_validate(decoded)

    def dump(self, data: T) -> bytes:
        if isinstance(data, (str, int, float, bool, dict, list)):
            plain = data
        else:
            plain = data.model_dump(mode="json", by_alias=True)
        return self._encode(plain).encode()


class JSONParser[T: _Plain | PydanticLike](_StructuredParser[T]):
    """Parser for JSON documents. Parses and dumps basic types as well as pydantic
    models, dumping with sorted keys and an indentation of 2.
    """

    def _decode(self, text: str) -> Any:
        return json.loads(text)

    def _encode(self, data: Any) -> str:
        return json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n"

    @classmethod
    def extensions(cls) -> Iterable[str]:
        return ["json"]


class YAMLParser[T: _Plain | PydanticLike](_StructuredParser[T]):
    """Parser for YAML documents. Parses and dumps basic types as well as pydantic
    models.
    """

    def _decode(self, text: str) -> Any:
        return yaml.safe_load(text)

    def _encode(self, data: Any) -> str:
        return yaml.safe_dump(data, sort_keys=True)

    @classmethod
    def extensions(cls) -> Iterable[str]:
        return ["yaml", "yml"]
