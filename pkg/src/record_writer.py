import csv
import io
import json
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

from src.exceptions import InvalidArgumentError
from src.logger import logger

Record = Dict[str, Any]


class RecordWriter:
    """Render solver records as csv, json or an aligned text table"""

    def __init__(self, float_format: str = '%.6f'):
        """
        Initialize the writer

        Args:
            float_format: printf-style format for floats in csv and pretty output
        """
        self.supported_formats = ['csv', 'json', 'pretty']
        self.float_format = float_format

    def render(self, records: Sequence[Record], fmt: str = 'csv') -> str:
        """
        Render records to text

        Args:
            records: List of flat dicts sharing the same keys
            fmt: One of csv, json, pretty

        Returns:
            Rendered text ending with a newline (empty string for no records in csv/pretty)
        """
        if fmt not in self.supported_formats:
            raise InvalidArgumentError(f"unsupported format: {fmt}")

        if fmt == 'json':
            return self._render_json(records)
        if not records:
            return ''
        if fmt == 'csv':
            return self._render_csv(records)
        return self._render_pretty(records)

    def write(self, records: Sequence[Record], fmt: str = 'csv', path: Optional[str] = None) -> str:
        """
        Render records and send them to a file or stdout

        Args:
            records: Records to write
            fmt: Output format
            path: Target file; stdout when None

        Returns:
            The rendered text
        """
        text = self.render(records, fmt)

        if path is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return text

        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)

        logger.info(f"💾 Записано {len(records)} записей в {path} ({fmt})")
        return text

    def read_csv(self, path: str) -> List[Record]:
        """Parse a csv file written by this class."""
        if not os.path.isfile(path):
            logger.error(f"❌ CSV-файл не найден: {path}")
            raise InvalidArgumentError(f"no such csv file: {path}")
        with open(path, 'r', encoding='utf-8', newline='') as f:
            return self.parse_csv(f.read())

    def parse_csv(self, text: str) -> List[Record]:
        """
        Parse csv text written by this class

        Args:
            text: The csv text itself

        Returns:
            Records with every value kept as the original string
        """
        rows = list(csv.DictReader(io.StringIO(text)))
        logger.debug(f"CSV прочитан: {len(rows)} строк")
        return [dict(row) for row in rows]

    def _format_value(self, value: Any) -> str:
        if value is None:
            return ''
        if isinstance(value, bool):
            return str(value).lower()
        if isinstance(value, float):
            return self.float_format % value
        return str(value)

    def _render_csv(self, records: Sequence[Record]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        headers = list(records[0].keys())
        writer.writerow(headers)
        for record in records:
            writer.writerow([self._format_value(record.get(key)) for key in headers])
        return buffer.getvalue()

    def _render_json(self, records: Sequence[Record]) -> str:
        def plain(value):
            # numpy scalars carry .item()
            return value.item() if hasattr(value, 'item') else value

        payload = [{key: plain(value) for key, value in record.items()} for record in records]
        return json.dumps(payload, indent=2) + '\n'

    def _render_pretty(self, records: Sequence[Record]) -> str:
        headers = list(records[0].keys())
        rows = [[self._format_value(record.get(key)) for key in headers] for record in records]
        widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(headers)]

        lines = [' | '.join(h.rjust(w) for h, w in zip(headers, widths))]
        lines.append('-+-'.join('-' * w for w in widths))
        for row in rows:
            lines.append(' | '.join(cell.rjust(w) for cell, w in zip(row, widths)))
        return '\n'.join(lines) + '\n'
