import csv
import hashlib
import json
import logging
from pathlib import Path

logger = logging.getLogger(__name__)


def _ensure_parent(path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_json(path, payload):
    """UTF-8, sorted snake_case keys, LF line endings."""
    path = _ensure_parent(path)
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + '\n'
    path.write_text(text, encoding='utf-8', newline='\n')
    logger.info("wrote %s", path)
    return path


def write_csv(path, header, rows):
    path = _ensure_parent(path)
    with path.open('w', encoding='utf-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
    logger.info("wrote %s", path)
    return path


def write_text(path, text):
    path = _ensure_parent(path)
    path.write_text(text, encoding='utf-8', newline='\n')
    logger.info("wrote %s", path)
    return path


def file_digest(path):
    digest = hashlib.sha256()
    with Path(path).open('rb') as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b''):
            digest.update(chunk)
    return digest.hexdigest()


def sibling(path, suffix):
    """``h.csv`` -> ``h.json`` / ``h.manifest.json``."""
    path = Path(path)
    return path.with_name(path.stem + suffix)
