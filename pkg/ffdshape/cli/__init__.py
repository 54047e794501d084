from ffdshape.cli.cli import build_parser, main, parse_range

__all__ = ["build_parser", "main", "parse_range"]
