"""Paper search and PDF text extraction behind a pluggable fetcher.

The HTTP fetcher talks to the public scholarly-graph search endpoint and
keeps only results with an open-access document.  Tests and offline runs
use the fixture fetcher, which serves a JSON array of
{title, url, abstract} records and canned document text.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

DEFAULT_RESULTS = 5
SEARCH_ENDPOINT = "https://api.semanticscholar.org/graph/v1/paper/search"


@dataclass(frozen=True)
class PaperResult:
    title: str
    url: str
    abstract: str


class LiteratureFetcher(Protocol):
    def search(self, query: str, limit: int) -> list[PaperResult]: ...

    def fetch_document(self, url: str) -> str: ...


class FixtureFetcher:
    """Serve canned search results and document text from a JSON file or list."""

    def __init__(self, source: str | Path | list[dict]) -> None:
        if isinstance(source, (str, Path)):
            entries = json.loads(Path(source).read_text())
        else:
            entries = source
        self.entries = [
            PaperResult(
                title=e.get("title", ""),
                url=e.get("url", ""),
                abstract=e.get("abstract", ""),
            )
            for e in entries
        ]
        self.documents: dict[str, str] = {}

    def add_document(self, url: str, text: str) -> None:
        self.documents[url] = text

    def search(self, query: str, limit: int) -> list[PaperResult]:
        # Only entries with an open-access document are returned.
        hits = [e for e in self.entries if e.url]
        return hits[:limit]

    def fetch_document(self, url: str) -> str:
        try:
            return self.documents[url]
        except KeyError:
            raise IOError(f"no document recorded for {url}") from None


class HTTPFetcher:
    """Live fetcher; network use is the caller's choice, never the default."""

    def __init__(self, timeout: float = 30.0, api_key: str | None = None) -> None:
        self.timeout = timeout
        self.api_key = api_key

    def search(self, query: str, limit: int) -> list[PaperResult]:
        import requests

        headers = {"x-api-key": self.api_key} if self.api_key else {}
        response = requests.get(
            SEARCH_ENDPOINT,
            params={
                "query": query,
                "limit": limit * 2,
                "fields": "title,abstract,openAccessPdf",
            },
            headers=headers,
            timeout=self.timeout,
        )
        response.raise_for_status()
        results = []
        for item in response.json().get("data", []):
            pdf = item.get("openAccessPdf") or {}
            url = pdf.get("url", "")
            if not url:
                continue
            results.append(
                PaperResult(
                    title=item.get("title", ""),
                    url=url,
                    abstract=item.get("abstract") or "",
                )
            )
            if len(results) >= limit:
                break
        return results

    def fetch_document(self, url: str) -> str:
        import io

        import requests

        response = requests.get(url, timeout=self.timeout)
        response.raise_for_status()
        try:
            from pypdf import PdfReader
        except ImportError as exc:
            raise IOError(
                "PDF extraction needs the optional pypdf package; install it "
                "or use a fetcher that returns extracted text"
            ) from exc
        reader = PdfReader(io.BytesIO(response.content))
        return "\n".join(page.extract_text() or "" for page in reader.pages)


def literature_search(fetcher: LiteratureFetcher, query: str,
                      n: int = DEFAULT_RESULTS) -> str:
    """Render the top-n open-access results as an observation."""
    if not query.strip():
        return "Empty query; provide search terms."
    try:
        results = fetcher.search(query, n)
    except Exception as exc:
        return f"Literature search failed: {exc}"
    if not results:
        return f'No open-access papers found for "{query}".'
    lines = [f'Top {len(results)} result(s) for "{query}":']
    for i, paper in enumerate(results, 1):
        lines.append(f"{i}. {paper.title}")
        lines.append(f"   url: {paper.url}")
        if paper.abstract:
            abstract = paper.abstract
            if len(abstract) > 500:
                abstract = abstract[:500] + "..."
            lines.append(f"   abstract: {abstract}")
    return "\n".join(lines)


def parse_pdf_url(fetcher: LiteratureFetcher, url: str) -> str:
    """Fetch a document and return its text contents as an observation."""
    if not url.startswith(("http://", "https://")):
        return f"Malformed URL {url!r}; expected an http(s) address."
    try:
        return fetcher.fetch_document(url)
    except Exception as exc:
        return f"Could not fetch or parse the document at {url}: {exc}"
