"""Package for the document parsers of czlearn."""

from czlearn.parsers.base import Parser, ParserRegistry, read_document, write_document
from czlearn.parsers.metadata_parser import JSONParser, PydanticLike, YAMLParser
