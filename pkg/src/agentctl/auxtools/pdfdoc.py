"""Minimal text-only PDF writer (and structural checker).

Produces complete, valid single-font PDFs: header, page tree, one
content stream per page, cross-reference table with byte-accurate
offsets, and trailer.  Enough for transcript delivery and for the PDF
text extraction path to round-trip.
"""

from __future__ import annotations

import math
from pathlib import Path

from ..errors import StoreError

LINES_PER_PAGE = 50
FONT_SIZE = 10
LEADING = 14
MARGIN = 50
PAGE_WIDTH = 612
PAGE_HEIGHT = 792
MAX_LINE_CHARS = 95


def _escape(text: str) -> str:
    return text.replace("\\", r"\\").replace("(", r"\(").replace(")", r"\)")


def _wrap_lines(text: str) -> list[str]:
    lines: list[str] = []
    for raw in text.splitlines() or [""]:
        raw = raw.rstrip()
        if not raw:
            lines.append("")
            continue
        while len(raw) > MAX_LINE_CHARS:
            lines.append(raw[:MAX_LINE_CHARS])
            raw = raw[MAX_LINE_CHARS:]
        lines.append(raw)
    return lines or [""]


def render_pdf(text: str, lines_per_page: int = LINES_PER_PAGE) -> bytes:
    """Render plain text into a complete PDF byte string."""
    lines = _wrap_lines(text)
    n_pages = max(1, math.ceil(len(lines) / lines_per_page))
    # Object numbering: 1 catalog, 2 pages, 3 font, then per page
    # (page object, content stream).
    objects: list[bytes] = []
    page_ids = [4 + 2 * i for i in range(n_pages)]
    kids = " ".join(f"{pid} 0 R" for pid in page_ids)
    objects.append(b"<< /Type /Catalog /Pages 2 0 R >>")
    objects.append(
        f"<< /Type /Pages /Kids [{kids}] /Count {n_pages} >>".encode()
    )
    objects.append(b"<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica >>")
    for i in range(n_pages):
        page_lines = lines[i * lines_per_page : (i + 1) * lines_per_page]
        ops = [b"BT", f"/F1 {FONT_SIZE} Tf".encode(), f"{LEADING} TL".encode()]
        ops.append(f"{MARGIN} {PAGE_HEIGHT - MARGIN} Td".encode())
        for line in page_lines:
            ops.append(f"({_escape(line)}) Tj".encode())
            ops.append(b"T*")
        ops.append(b"ET")
        stream = b"\n".join(ops)
        content_id = page_ids[i] + 1
        objects.append(
            (
                f"<< /Type /Page /Parent 2 0 R /MediaBox [0 0 {PAGE_WIDTH} {PAGE_HEIGHT}] "
                f"/Resources << /Font << /F1 3 0 R >> >> /Contents {content_id} 0 R >>"
            ).encode()
        )
        objects.append(
            f"<< /Length {len(stream)} >>\nstream\n".encode() + stream + b"\nendstream"
        )

    out = bytearray(b"%PDF-1.4\n")
    offsets = [0]
    for num, body in enumerate(objects, start=1):
        offsets.append(len(out))
        out += f"{num} 0 obj\n".encode() + body + b"\nendobj\n"
    xref_at = len(out)
    n_objs = len(objects) + 1
    out += f"xref\n0 {n_objs}\n".encode()
    out += b"0000000000 65535 f \n"
    for off in offsets[1:]:
        out += f"{off:010d} 00000 n \n".encode()
    out += (
        f"trailer\n<< /Size {n_objs} /Root 1 0 R >>\nstartxref\n{xref_at}\n%%EOF\n"
    ).encode()
    return bytes(out)


def text_to_pdf_tool(text: str, out_path: str | Path, lines_per_page: int = LINES_PER_PAGE) -> Path:
    """Write the text as a PDF document; returns the written path."""
    path = Path(out_path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(render_pdf(text, lines_per_page=lines_per_page))
    except OSError as exc:
        raise StoreError(f"cannot write PDF to {path}: {exc}") from exc
    return path


def page_count(data: bytes) -> int:
    marker = b"/Count "
    at = data.index(marker) + len(marker)
    end = at
    while data[end : end + 1].isdigit():
        end += 1
    return int(data[at:end])


def check_pdf_structure(data: bytes) -> bool:
    """Verify header, xref offsets, and trailer of a PDF byte string."""
    if not data.startswith(b"%PDF-"):
        return False
    if b"%%EOF" not in data:
        return False
    try:
        startxref_at = data.rindex(b"startxref")
        xref_pos = int(data[startxref_at:].split()[1])
        section = data[xref_pos:]
        if not section.startswith(b"xref"):
            return False
        header = section.split(b"\n", 2)
        first, count = (int(v) for v in header[1].split())
        table = header[2]
        for i in range(count):
            entry = table[i * 20 : (i + 1) * 20]
            offset = int(entry[:10])
            kind = entry[17:18]
            if kind == b"f":
                continue
            expected = f"{first + i} 0 obj".encode()
            if not data[offset : offset + len(expected)] == expected:
                return False
    except (ValueError, IndexError):
        return False
    return True
