import os
import tempfile
from pathlib import Path


def format_number(x):
    """12 significant digits, locale independent."""
    return format(float(x), ".12g")


def atomic_write_text(path, text):
    """Write ``text`` to ``path`` via a temporary file in the same directory and rename."""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
    return path
