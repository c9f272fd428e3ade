"""Package for the czlearn CLI."""

from czlearn.cli.main import czlearn_app, main
