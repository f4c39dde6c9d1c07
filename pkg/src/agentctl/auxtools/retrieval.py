"""Corpus ingestion and lexical passage retrieval.

Documents are chunked with fixed-size overlapping windows and ranked
with BM25 over the shared tokenizer.  Plain text files are read
directly; PDFs are mined for embedded text strings (text-only PDFs,
such as the ones this package writes, round-trip losslessly).
"""

from __future__ import annotations

import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import IngestError, NoCorpus
from .critique import tokenize

CHUNK_SIZE = 800
CHUNK_OVERLAP = 200

BM25_K1 = 1.5
BM25_B = 0.75

_PDF_TEXT = re.compile(rb"\((?:\\.|[^()\\])*\)\s*Tj")


@dataclass(frozen=True)
class Chunk:
    doc_id: int
    offset: int
    text: str


@dataclass(frozen=True)
class Document:
    doc_id: int
    source: str
    text: str


@dataclass(frozen=True)
class RetrievedPassage:
    chunk: Chunk
    score: float
    low_confidence: bool = False


@dataclass
class CorpusIndex:
    documents: list[Document] = field(default_factory=list)
    chunks: list[Chunk] = field(default_factory=list)
    term_freqs: list[Counter] = field(default_factory=list)
    doc_freq: dict[str, int] = field(default_factory=dict)
    avg_chunk_len: float = 0.0

    def __len__(self) -> int:
        return len(self.chunks)


def chunk_text(text: str, size: int = CHUNK_SIZE, overlap: int = CHUNK_OVERLAP) -> list[tuple[int, str]]:
    """Fixed windows of ``size`` characters overlapping by ``overlap``."""
    if not text:
        return []
    step = size - overlap
    pieces = []
    start = 0
    while True:
        pieces.append((start, text[start : start + size]))
        if start + size >= len(text):
            break
        start += step
    return pieces


def _unescape_pdf_string(raw: bytes) -> str:
    out = raw.decode("latin-1")
    return (
        out.replace(r"\(", "(")
        .replace(r"\)", ")")
        .replace(r"\\", "\\")
    )


def extract_pdf_text(data: bytes) -> str:
    """Pull text from uncompressed Tj show-string operators."""
    strings = [
        _unescape_pdf_string(m[1:m.rindex(b")")]) for m in _PDF_TEXT.findall(data)
    ]
    return "\n".join(strings)


def read_document(path: Path) -> str:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".pdf":
        return extract_pdf_text(data)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise IngestError(f"cannot decode {path}: {exc}") from exc


def ingest_corpus(paths) -> CorpusIndex:
    """Chunk and index the given files (or every file in given directories)."""
    index = CorpusIndex()
    files: list[Path] = []
    for entry in paths:
        p = Path(entry)
        if p.is_dir():
            files.extend(sorted(child for child in p.iterdir() if child.is_file()))
        else:
            files.append(p)
    for doc_id, path in enumerate(files):
        text = read_document(path)
        index.documents.append(Document(doc_id=doc_id, source=str(path), text=text))
        for offset, piece in chunk_text(text):
            index.chunks.append(Chunk(doc_id=doc_id, offset=offset, text=piece))
    seen_in_chunk: dict[str, int] = defaultdict(int)
    for chunk in index.chunks:
        counts = Counter(tokenize(chunk.text))
        index.term_freqs.append(counts)
        for term in counts:
            seen_in_chunk[term] += 1
    index.doc_freq = dict(seen_in_chunk)
    if index.chunks:
        index.avg_chunk_len = sum(
            sum(tf.values()) for tf in index.term_freqs
        ) / len(index.chunks)
    return index


def bm25_score(index: CorpusIndex, chunk_pos: int, query_terms: list[str]) -> float:
    tf = index.term_freqs[chunk_pos]
    length = sum(tf.values())
    n_chunks = len(index.chunks)
    score = 0.0
    for term in query_terms:
        if term not in tf:
            continue
        df = index.doc_freq.get(term, 0)
        idf = math.log(1.0 + (n_chunks - df + 0.5) / (df + 0.5))
        freq = tf[term]
        denom = freq + BM25_K1 * (1 - BM25_B + BM25_B * length / (index.avg_chunk_len or 1.0))
        score += idf * freq * (BM25_K1 + 1) / denom
    return score


def retriever_tool(query: str, index: CorpusIndex, k: int = 3) -> list[RetrievedPassage]:
    """Top-k passages by BM25; ties break toward earlier documents.

    A query scoring zero everywhere (vocabulary absent from the corpus)
    returns the first chunk flagged low-confidence rather than nothing.
    """
    if len(index) == 0:
        raise NoCorpus("retrieval attempted against an empty index")
    terms = tokenize(query)
    scored = [
        (bm25_score(index, pos, terms), pos) for pos in range(len(index.chunks))
    ]
    scored.sort(key=lambda pair: (-pair[0], pair[1]))
    best_score = scored[0][0]
    if best_score <= 0.0:
        return [RetrievedPassage(chunk=index.chunks[0], score=0.0, low_confidence=True)]
    return [
        RetrievedPassage(chunk=index.chunks[pos], score=score)
        for score, pos in scored[:k]
        if score > 0.0
    ]
