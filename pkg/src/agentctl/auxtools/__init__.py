"""Tools of the auxiliary agents: retrieval, search, reasoning scaffolds,
critique, memory, human replies, document delivery, and debug advice."""

from .critique import CriticVerdict, cosine_similarity, critic_tool, tokenize
from .debugging import DebugAdvice, debug_advise
from .humanio import InteractiveChannel, PendingQuestionChannel, ScriptedChannel
from .memory import MemoryRecord, MemoryStore, RecallResult
from .pdfdoc import check_pdf_structure, page_count, render_pdf, text_to_pdf_tool
from .reasoning import build_scaffold, reason_tool
from .research import FixtureSearchClient, SearchSnippet, search_tool
from .retrieval import (
    Chunk,
    CorpusIndex,
    Document,
    RetrievedPassage,
    chunk_text,
    extract_pdf_text,
    ingest_corpus,
    retriever_tool,
)

__all__ = [
    "Chunk",
    "CorpusIndex",
    "CriticVerdict",
    "DebugAdvice",
    "Document",
    "FixtureSearchClient",
    "InteractiveChannel",
    "MemoryRecord",
    "MemoryStore",
    "PendingQuestionChannel",
    "RecallResult",
    "RetrievedPassage",
    "ScriptedChannel",
    "SearchSnippet",
    "build_scaffold",
    "check_pdf_structure",
    "chunk_text",
    "cosine_similarity",
    "critic_tool",
    "debug_advise",
    "extract_pdf_text",
    "ingest_corpus",
    "page_count",
    "reason_tool",
    "render_pdf",
    "retriever_tool",
    "search_tool",
    "text_to_pdf_tool",
    "tokenize",
]
