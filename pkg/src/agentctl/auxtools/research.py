"""External search behind a pluggable client interface."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import SearchUnavailable


@dataclass(frozen=True)
class SearchSnippet:
    text: str
    source: str


class FixtureSearchClient:
    """Canned search results for offline runs and tests."""

    def __init__(self, fixtures: dict[str, list[SearchSnippet]]):
        self._fixtures = fixtures

    def search(self, query: str) -> list[SearchSnippet]:
        key = " ".join(query.lower().split())
        for fixture_query, snippets in self._fixtures.items():
            if fixture_query.lower() in key or key in fixture_query.lower():
                return snippets
        return []


def search_tool(query: str, client=None) -> list[SearchSnippet]:
    """Run the query through the configured client; offline without one."""
    if client is None:
        raise SearchUnavailable("no search client configured and no fixtures supplied")
    results = client.search(query)
    return [r for r in results if r.source]
