"""Corpus ingestion and preprocessing.

Parses the labeled-comment XML schema, turns raw message text into
bag-of-words token lists (lowercase, alphanumeric runs, stop words
removed), and produces deterministic stratified train/test splits.
"""

from __future__ import annotations

import random
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path

from .errors import CorpusTooSmall, DuplicateId, MalformedXml, UnknownClass
from .labels import LABELS, ClassLabel

# Maximal runs of Unicode letters/digits. \w would also admit underscores,
# which the token invariant excludes.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class RawMessage:
    """One comment as it arrives: raw text plus an optional gold label."""

    id: str
    author_id: str
    text: str
    label: ClassLabel | None = None


@dataclass(frozen=True)
class TokenizedDoc:
    """A preprocessed message: ordered lowercase tokens, optional label."""

    message_id: str
    tokens: tuple[str, ...]
    label: ClassLabel | None = None


@dataclass(frozen=True)
class StopList:
    """Exact-match set of lowercase tokens to drop during preprocessing."""

    entries: frozenset[str]
    source_path: str = "<memory>"

    def __contains__(self, token: str) -> bool:
        return token in self.entries

    @classmethod
    def from_tokens(cls, tokens, source_path: str = "<memory>") -> "StopList":
        entries = frozenset(t.lower() for t in tokens)
        return cls(entries=entries, source_path=source_path)

    @classmethod
    def from_path(cls, path: str | Path) -> "StopList":
        """Load a stop list file: one token per line, ``#`` starts a comment."""
        entries = set()
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            word = line.split("#", 1)[0].strip()
            if word:
                entries.add(word.lower())
        return cls(entries=frozenset(entries), source_path=str(path))

    @classmethod
    def empty(cls) -> "StopList":
        return cls(entries=frozenset(), source_path="<disabled>")


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of raw messages."""

    docs: tuple[RawMessage, ...]

    @property
    def label_histogram(self) -> dict[ClassLabel, int]:
        """Count of labeled docs per class; sums to the number of labeled docs."""
        histogram = {label: 0 for label in LABELS}
        for doc in self.docs:
            if doc.label is not None:
                histogram[doc.label] += 1
        return histogram

    @property
    def labeled_docs(self) -> tuple[RawMessage, ...]:
        return tuple(d for d in self.docs if d.label is not None)

    def __len__(self) -> int:
        return len(self.docs)


def parse_corpus_xml(data: bytes) -> Corpus:
    """Parse corpus XML bytes.

    Schema: root ``<corpus>`` with ``<message id author class>text</message>``
    children; ``class`` is optional and must be one of the five labels.

    Raises MalformedXml, UnknownClass, or DuplicateId.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedXml(f"unparseable corpus XML: {exc}") from exc

    if root.tag != "corpus":
        raise MalformedXml(f"expected <corpus> root element, got <{root.tag}>")

    docs: list[RawMessage] = []
    seen_ids: set[str] = set()
    for element in root:
        if element.tag != "message":
            raise MalformedXml(f"unexpected element <{element.tag}> under <corpus>")
        if len(element) > 0:
            raise MalformedXml("nested elements inside <message> are not allowed")

        message_id = element.get("id")
        if not message_id:
            raise MalformedXml("<message> is missing a non-empty id attribute")
        if message_id in seen_ids:
            raise DuplicateId(f"duplicate message id: {message_id!r}")
        seen_ids.add(message_id)

        author = element.get("author")
        if author is None:
            raise MalformedXml(f"<message id={message_id!r}> is missing the author attribute")

        label: ClassLabel | None = None
        class_attr = element.get("class")
        if class_attr is not None:
            try:
                label = ClassLabel.from_string(class_attr)
            except ValueError:
                raise UnknownClass(
                    f"message {message_id!r} has unknown class {class_attr!r}"
                ) from None

        docs.append(
            RawMessage(id=message_id, author_id=author, text=element.text or "", label=label)
        )

    return Corpus(docs=tuple(docs))


def corpus_to_xml(corpus: Corpus) -> bytes:
    """Serialize a corpus back to the XML schema (UTF-8, round-trip exact)."""
    root = ET.Element("corpus")
    for doc in corpus.docs:
        attrs = {"id": doc.id, "author": doc.author_id}
        if doc.label is not None:
            attrs["class"] = doc.label.value
        element = ET.SubElement(root, "message", attrs)
        element.text = doc.text
    return ET.tostring(root, encoding="utf-8", xml_declaration=True)


def load_corpus(path: str | Path) -> Corpus:
    return parse_corpus_xml(Path(path).read_bytes())


def preprocess(msg: RawMessage, stops: StopList) -> TokenizedDoc:
    """Lowercase, split on non-alphanumeric runs, and drop stop words.

    Empty fragments disappear with the split; token order follows the
    original text. Empty text yields an empty token list.
    """
    tokens = tuple(
        t for t in _TOKEN_RE.findall(msg.text.lower()) if t not in stops
    )
    return TokenizedDoc(message_id=msg.id, tokens=tokens, label=msg.label)


def tokenize_whitespace(msg: RawMessage) -> TokenizedDoc:
    """Whitespace-split-only tokenization: no lowercasing, no stop list.

    This is the "without preprocessing" variant used by the timing
    ablation; its tokens intentionally keep case and punctuation.
    """
    return TokenizedDoc(message_id=msg.id, tokens=tuple(msg.text.split()), label=msg.label)


def preprocess_corpus(corpus: Corpus, stops: StopList) -> list[TokenizedDoc]:
    return [preprocess(doc, stops) for doc in corpus.docs]


def split(corpus: Corpus, test_fraction: float, seed: int) -> tuple[Corpus, Corpus]:
    """Deterministic stratified train/test split.

    Each class contributes round(count * test_fraction) docs to the test
    side. Unlabeled docs always stay in train. Doc order within each side
    follows the original corpus order.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    labeled = corpus.labeled_docs
    if len(labeled) < 2:
        raise CorpusTooSmall(f"need at least 2 labeled docs to split, have {len(labeled)}")

    by_label: dict[ClassLabel, list[RawMessage]] = {label: [] for label in LABELS}
    for doc in labeled:
        by_label[doc.label].append(doc)

    rng = random.Random(seed)
    test_ids: set[str] = set()
    for label in LABELS:
        group = by_label[label]
        if not group:
            continue
        n_test = int(len(group) * test_fraction + 0.5)
        shuffled = rng.sample(group, len(group))
        test_ids.update(doc.id for doc in shuffled[:n_test])

    train_docs = tuple(d for d in corpus.docs if d.id not in test_ids)
    test_docs = tuple(d for d in corpus.docs if d.id in test_ids)
    return Corpus(docs=train_docs), Corpus(docs=test_docs)
