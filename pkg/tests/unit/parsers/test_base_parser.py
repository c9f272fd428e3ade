from collections.abc import Iterable
from pathlib import Path

import pytest

from czlearn.parsers import JSONParser, Parser, ParserRegistry, YAMLParser
from czlearn.parsers import read_document, write_document


class TestParserRegistry:
    def test_registration(self) -> None:
        exts = ["myext", "myextension"]

        for x in exts:
            assert ParserRegistry.get(x) is None

        class MyParser(Parser[int]):
            def parse(self, data: bytes) -> int:
                return 10

            def dump(self, data: int) -> bytes:
                return b"10"

            @classmethod
            def extensions(cls) -> Iterable[str]:
                return exts

        for x in exts:
            assert ParserRegistry.get(x) is MyParser
            assert x in ParserRegistry.keys()

    @pytest.mark.parametrize(
        ["name", "parser"],
        [
            ["config.json", JSONParser],
            ["config.yaml", YAMLParser],
            ["config.YML", YAMLParser],
        ],
    )
    def test_for_path(self, name: str, parser: type[Parser]) -> None:
        assert ParserRegistry.for_path(Path(name)) is parser

    def test_unknown_extension(self) -> None:
        with pytest.raises(ValueError, match="json"):
            ParserRegistry.for_path(Path("config.toml"))


class TestParser:
    def test_type(self) -> None:
        class MyParser(Parser[int]):
            def parse(self, data: bytes) -> int:
                return 10

            def dump(self, data: int) -> bytes:
                return b"10"

            @classmethod
            def extensions(cls) -> Iterable[str]:
                return []

        class MyInteger(int):
            pass

        assert MyParser().type_ is None
        assert MyParser(int).type_ is int
        assert MyParser(MyInteger).type_ is MyInteger


class TestDocuments:
    @pytest.mark.parametrize("suffix", [".json", ".yaml"])
    def test_write_read(self, tmp_path: Path, suffix: str) -> None:
        path = tmp_path / "nested" / f"summary{suffix}"
        data = {"seeds": [0, 1], "regret": {"mean": 0.25}}
        write_document(path, data)
        assert path.is_file()
        assert read_document(path) == data

    def test_sorted_output(self, tmp_path: Path) -> None:
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        write_document(first, {"b": 1, "a": 2})
        write_document(second, {"a": 2, "b": 1})
        assert first.read_bytes() == second.read_bytes()
