"""Loading, cleaning, tokenizing and time-bucketing of raw text records."""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

URL_RE = re.compile(r"https?://\S+|www\.\S+")
# strip anything that is not a letter, digit or intra-token connector
PUNCT_RE = re.compile(r"[^\w\s]|_", re.UNICODE)


class IngestError(Exception):
    pass


@dataclass(frozen=True)
class Record:
    """One preprocessed post/query: timestamp, token list, platform tag."""

    timestamp: int
    tokens: tuple[str, ...]
    platform: str


@dataclass
class EventPhase:
    """Bag of words for one time interval.

    ``index`` is 0-based internally (reports add 1).  ``records`` keeps the
    per-record token lists so the TF-IDF baseline can compute per-phase
    document frequencies.  ``contributive`` is filled later by the
    textrank stage.
    """

    index: int
    start: int
    end: int
    freq: Counter = field(default_factory=Counter)
    records: list[tuple[str, ...]] = field(default_factory=list)
    contributive: set[str] = field(default_factory=set)

    @property
    def token_total(self) -> int:
        return sum(self.freq.values())


def load_stopwords(path: str) -> set[str]:
    """One token per line, '#' comments and blank lines ignored."""
    words: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            words.add(line)
    return words


def preprocess(raw_text: str, stopwords: set[str] | None = None) -> list[str]:
    """Clean a raw text into a token list.

    Removes URLs, punctuation and symbol-only tokens, lower-cases, splits
    on whitespace and drops stopwords.  Worst case returns [].
    """
    stopwords = stopwords or set()
    text = URL_RE.sub(" ", raw_text)
    text = PUNCT_RE.sub(" ", text)
    tokens = []
    for tok in text.lower().split():
        if not any(ch.isalnum() for ch in tok):
            continue
        if tok in stopwords:
            continue
        tokens.append(tok)
    return tokens


def _parse_line(line: str, stopwords: set[str] | None) -> tuple[int, list[str]] | None:
    obj = json.loads(line)
    ts = obj["ts"]
    if not isinstance(ts, (int, float)):
        raise ValueError("ts must be numeric")
    if "tokens" in obj:
        tokens = obj["tokens"]
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            raise ValueError("tokens must be a list of strings")
        if stopwords:
            tokens = [t for t in tokens if t not in stopwords]
    elif "text" in obj:
        tokens = preprocess(obj["text"], stopwords)
    else:
        raise ValueError("record needs a 'text' or 'tokens' field")
    return int(ts), list(tokens)


def load_records(
    path: str,
    platform: str,
    stopwords: set[str] | None = None,
    counts: dict[str, int] | None = None,
) -> Iterator[Record]:
    """Yield Records from a line-delimited JSON file.

    Each line carries ``ts`` (integer seconds) and either ``text`` or a
    pre-tokenized ``tokens`` array.  Malformed lines are counted, not
    fatal, unless they exceed half the file.  Records whose token list is
    empty after preprocessing are dropped and counted.  ``counts``
    (optional) receives 'loaded', 'skipped_malformed', 'skipped_empty'.
    """
    stats = counts if counts is not None else {}
    stats.setdefault("loaded", 0)
    stats.setdefault("skipped_malformed", 0)
    stats.setdefault("skipped_empty", 0)
    total = 0
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read records file {path!r}: {exc}") from exc
    with fh:
        for line in fh:
            if not line.strip():
                continue
            total += 1
            try:
                parsed = _parse_line(line, stopwords)
            except (ValueError, KeyError, json.JSONDecodeError):
                stats["skipped_malformed"] += 1
                continue
            ts, tokens = parsed
            if not tokens:
                stats["skipped_empty"] += 1
                continue
            stats["loaded"] += 1
            yield Record(timestamp=ts, tokens=tuple(tokens), platform=platform)
    if total and stats["skipped_malformed"] > total / 2:
        raise IngestError(
            f"{stats['skipped_malformed']} of {total} lines malformed in {path!r}; "
            "check the record format (ts + text/tokens per line)"
        )


def bucket(
    records: Iterable[Record],
    span: tuple[int, int],
    resolution: int,
    counts: dict[str, int] | None = None,
) -> list[EventPhase]:
    """Partition records into half-open intervals [start, end) of width
    ``resolution`` and accumulate per-phase word frequencies.

    Out-of-span records are dropped (counted in ``counts['out_of_span']``).
    """
    start, end = span
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    if end <= start:
        raise ValueError("span end must be after start")
    n = math.ceil((end - start) / resolution)
    phases = [
        EventPhase(index=i, start=start + i * resolution, end=min(start + (i + 1) * resolution, end))
        for i in range(n)
    ]
    stats = counts if counts is not None else {}
    stats.setdefault("out_of_span", 0)
    stats.setdefault("bucketed", 0)
    for rec in records:
        if not (start <= rec.timestamp < end):
            stats["out_of_span"] += 1
            continue
        i = (rec.timestamp - start) // resolution
        phases[i].freq.update(rec.tokens)
        phases[i].records.append(rec.tokens)
        stats["bucketed"] += 1
    if stats["bucketed"] == 0:
        raise IngestError(
            f"no records fall inside the span [{start}, {end}); "
            "check --span and the timestamps in the input"
        )
    return phases


def pooled_frequencies(phases: Iterable[EventPhase]) -> Counter:
    """Word frequencies pooled over all phases of one (event, platform)."""
    pooled: Counter = Counter()
    for phase in phases:
        pooled.update(phase.freq)
    return pooled
