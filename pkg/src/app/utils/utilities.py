import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from app.utils.errors import ParseError
from app.utils.logging import logger


class Utilities:

    @staticmethod
    def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
        """Exact rational from an int or a "p/q" string."""
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError, TypeError) as error:
            raise ParseError(f"'{value}' is not an exact rational number: {error}") from error

    @staticmethod
    def read_text(path: Union[str, Path]) -> str:
        try:
            return Path(path).read_text(encoding='utf-8')
        except OSError as error:
            logger.error({'message': 'cannot read input file', 'path': str(path), 'error': str(error)})
            raise ParseError(f"cannot read {path}: {error.strerror}") from error

    @staticmethod
    def write_output(text: str, path: Optional[Union[str, Path]] = None) -> None:
        """Write to `path`, or to stdout when no path is given."""
        if path is None:
            sys.stdout.write(text if text.endswith('\n') else text + '\n')
            return
        Path(path).write_text(text if text.endswith('\n') else text + '\n', encoding='utf-8')
        logger.info({'message': 'report written', 'path': str(path)})
