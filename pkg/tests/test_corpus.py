"""XML corpus parsing, preprocessing, stop lists, and stratified splits."""

import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wallguard import (
    ClassLabel,
    Corpus,
    RawMessage,
    StopList,
    corpus_to_xml,
    parse_corpus_xml,
    preprocess,
    split,
    tokenize_whitespace,
)
from wallguard.errors import CorpusTooSmall, DuplicateId, MalformedXml, UnknownClass


def msg(i, text, label=None, author="u1"):
    return RawMessage(id=f"m{i}", author_id=author, text=text, label=label)


# ----------------------------------------------------------------- parsing


class TestParse:
    def test_single_labeled_message(self):
        data = (
            b'<corpus><message id="m1" author="u7" class="neutral">'
            b"I had a good day</message></corpus>"
        )
        corpus = parse_corpus_xml(data)
        assert len(corpus) == 1
        doc = corpus.docs[0]
        assert doc.id == "m1"
        assert doc.author_id == "u7"
        assert doc.text == "I had a good day"
        assert doc.label is ClassLabel.NEUTRAL

    def test_empty_corpus_element(self):
        corpus = parse_corpus_xml(b"<corpus></corpus>")
        assert len(corpus) == 0
        assert all(n == 0 for n in corpus.label_histogram.values())

    def test_message_without_class_is_unlabeled(self):
        data = b'<corpus><message id="m1" author="u1">hi</message></corpus>'
        corpus = parse_corpus_xml(data)
        assert corpus.docs[0].label is None
        assert corpus.labeled_docs == ()

    def test_empty_text_becomes_empty_string(self):
        data = b'<corpus><message id="m1" author="u1"></message></corpus>'
        assert parse_corpus_xml(data).docs[0].text == ""

    def test_histogram_counts_each_class(self):
        # Expected counts derived independently of the parser: count the
        # class attributes in the raw document with a regex.
        rows = []
        spec = [
            ("sexual", 3), ("hatred", 3), ("offensive", 3),
            ("pun_intended", 2), ("neutral", 1),
        ]
        i = 0
        for value, n in spec:
            for _ in range(n):
                i += 1
                rows.append(f'<message id="m{i}" author="u{i}" class="{value}">x</message>')
        data = "<corpus>" + "".join(rows) + "</corpus>"

        regex_counts = {
            label: len(re.findall(f'class="{label.value}"', data)) for label in ClassLabel
        }
        assert sum(regex_counts.values()) == 12

        histogram = parse_corpus_xml(data.encode()).label_histogram
        assert {label.value: n for label, n in histogram.items()} == {
            label.value: regex_counts[label] for label in ClassLabel
        }

    def test_unparseable_bytes(self):
        with pytest.raises(MalformedXml):
            parse_corpus_xml(b"<corpus><message id=")

    def test_wrong_root_element(self):
        with pytest.raises(MalformedXml):
            parse_corpus_xml(b"<messages></messages>")

    def test_unexpected_child_element(self):
        with pytest.raises(MalformedXml):
            parse_corpus_xml(b"<corpus><post id='m1' author='u1'>x</post></corpus>")

    def test_nested_element_inside_message(self):
        data = b'<corpus><message id="m1" author="u1">a<b>c</b></message></corpus>'
        with pytest.raises(MalformedXml):
            parse_corpus_xml(data)

    def test_missing_id(self):
        with pytest.raises(MalformedXml):
            parse_corpus_xml(b'<corpus><message author="u1">x</message></corpus>')

    def test_missing_author(self):
        with pytest.raises(MalformedXml):
            parse_corpus_xml(b'<corpus><message id="m1">x</message></corpus>')

    def test_unknown_class_value(self):
        data = b'<corpus><message id="m1" author="u1" class="spam">x</message></corpus>'
        with pytest.raises(UnknownClass):
            parse_corpus_xml(data)

    def test_duplicate_id(self):
        data = (
            b'<corpus><message id="m1" author="u1">x</message>'
            b'<message id="m1" author="u2">y</message></corpus>'
        )
        with pytest.raises(DuplicateId):
            parse_corpus_xml(data)


class TestRoundTrip:
    def test_labels_authors_text_survive(self):
        corpus = Corpus(docs=(
            msg(1, "I had a good day", ClassLabel.NEUTRAL),
            msg(2, "plain unlabeled text"),
            msg(3, "tabs\tand\nnewlines stay", ClassLabel.PUN_INTENDED, author="u9"),
            msg(4, "<angle> brackets &amp; entities", ClassLabel.OFFENSIVE),
            msg(5, ""),
        ))
        assert parse_corpus_xml(corpus_to_xml(corpus)) == corpus

    def test_unicode_text_survives(self):
        corpus = Corpus(docs=(msg(1, "naïve café 日本語 🙂", ClassLabel.SEXUAL),))
        assert parse_corpus_xml(corpus_to_xml(corpus)) == corpus

    # \r is excluded because XML parsers normalize it to \n by design.
    @given(
        texts=st.lists(
            st.text(
                st.characters(blacklist_categories=("Cs", "Cc"), blacklist_characters="\r"),
                max_size=60,
            ),
            max_size=12,
        ),
        labels=st.lists(st.sampled_from(list(ClassLabel) + [None]), max_size=12),
    )
    @settings(deadline=None)
    def test_any_corpus_round_trips(self, texts, labels):
        docs = tuple(
            msg(i, text, labels[i] if i < len(labels) else None)
            for i, text in enumerate(texts)
        )
        corpus = Corpus(docs=docs)
        assert parse_corpus_xml(corpus_to_xml(corpus)) == corpus


# ----------------------------------------------------- preprocessing


class TestPreprocess:
    def test_drops_stop_words_and_lowercases(self, stops):
        doc = preprocess(msg(1, "I had a good day"), stops)
        assert doc.tokens == ("good", "day")

    def test_hate_sentence(self, stops):
        assert preprocess(msg(1, "I hate this woman"), stops).tokens == ("hate", "woman")

    def test_respect_sentence(self, stops):
        doc = preprocess(msg(1, "I want to see you without your respect"), stops)
        assert doc.tokens == ("want", "respect")

    def test_punctuation_splits_tokens(self):
        doc = preprocess(msg(1, "Good,day!!x9 -- *ok*"), StopList.empty())
        assert doc.tokens == ("good", "day", "x9", "ok")

    def test_underscore_is_a_separator(self):
        assert preprocess(msg(1, "foo_bar"), StopList.empty()).tokens == ("foo", "bar")

    def test_unicode_letters_kept(self):
        doc = preprocess(msg(1, "Héllo WÖRLD 42"), StopList.empty())
        assert doc.tokens == ("héllo", "wörld", "42")

    def test_empty_and_all_stop_texts(self, stops):
        assert preprocess(msg(1, ""), stops).tokens == ()
        assert preprocess(msg(2, "I had a the of"), stops).tokens == ()

    def test_label_and_id_carry_over(self, stops):
        doc = preprocess(msg(1, "good day", ClassLabel.NEUTRAL), stops)
        assert doc.message_id == "m1"
        assert doc.label is ClassLabel.NEUTRAL

    @given(text=st.text(max_size=120))
    def test_no_stop_word_survives(self, stops, text):
        for token in preprocess(msg(1, text), stops).tokens:
            assert token == token.lower()
            assert token not in stops

    @given(text=st.text(max_size=120))
    def test_idempotent_on_own_output(self, stops, text):
        once = preprocess(msg(1, text), stops).tokens
        again = preprocess(msg(1, " ".join(once)), stops).tokens
        assert once == again

    def test_whitespace_variant_keeps_case_and_punctuation(self):
        doc = tokenize_whitespace(msg(1, "Good,day!! I said"))
        assert doc.tokens == ("Good,day!!", "I", "said")

    def test_preprocessed_vocab_not_larger_on_sample(self, sample_corpus, stops):
        processed = {
            t for d in sample_corpus.docs for t in preprocess(d, stops).tokens
        }
        naive = {
            t for d in sample_corpus.docs for t in tokenize_whitespace(d).tokens
        }
        assert len(processed) <= len(naive)


class TestStopList:
    def test_file_comments_and_blanks_ignored(self, tmp_path):
        path = tmp_path / "stops.txt"
        path.write_text("# header\n\nthe\nAnd  # inline\n")
        stops = StopList.from_path(path)
        assert "the" in stops
        assert "and" in stops
        assert "header" not in stops

    def test_membership_is_exact_match(self):
        stops = StopList.from_tokens(["the"])
        assert "the" in stops
        assert "thee" not in stops

    def test_bundled_list_contents(self, stops):
        for word in ("i", "had", "a", "this", "to", "you", "without", "your"):
            assert word in stops
        for word in ("good", "day", "hate", "woman", "want", "respect"):
            assert word not in stops


# ------------------------------------------------------------- splitting


def make_labeled(counts: dict[ClassLabel, int]) -> Corpus:
    docs = []
    i = 0
    for label, n in counts.items():
        for _ in range(n):
            i += 1
            docs.append(msg(i, f"text {i}", label))
    return Corpus(docs=tuple(docs))


class TestSplit:
    def test_eighty_twenty(self):
        corpus = make_labeled({ClassLabel.NEUTRAL: 80, ClassLabel.HATRED: 20})
        train_c, test_c = split(corpus, 0.25, seed=1)
        assert test_c.label_histogram[ClassLabel.NEUTRAL] == 20
        assert test_c.label_histogram[ClassLabel.HATRED] == 5
        assert len(train_c) == 75

    def test_rounding_half_up(self):
        corpus = make_labeled({ClassLabel.SEXUAL: 10})
        _, test_c = split(corpus, 0.25, seed=3)
        # 10 * 0.25 = 2.5 rounds to 3
        assert len(test_c) == 3

    def test_same_seed_same_membership(self):
        corpus = make_labeled({ClassLabel.NEUTRAL: 60, ClassLabel.OFFENSIVE: 40})
        first = split(corpus, 0.2, seed=42)
        second = split(corpus, 0.2, seed=42)
        assert [d.id for d in first[1].docs] == [d.id for d in second[1].docs]
        assert [d.id for d in first[0].docs] == [d.id for d in second[0].docs]

    def test_unlabeled_docs_stay_in_train(self):
        docs = (msg(1, "a", ClassLabel.NEUTRAL), msg(2, "b"), msg(3, "c", ClassLabel.NEUTRAL))
        train_c, test_c = split(Corpus(docs=docs), 0.5, seed=0)
        assert "m2" in {d.id for d in train_c.docs}
        assert all(d.label is not None for d in test_c.docs)

    def test_too_few_labeled_docs(self):
        with pytest.raises(CorpusTooSmall):
            split(Corpus(docs=(msg(1, "a", ClassLabel.NEUTRAL), msg(2, "b"))), 0.5, seed=0)

    @pytest.mark.parametrize("fraction", [0.0, 1.0, -0.1, 1.5])
    def test_fraction_bounds(self, fraction):
        corpus = make_labeled({ClassLabel.NEUTRAL: 4})
        with pytest.raises(ValueError):
            split(corpus, fraction, seed=0)

    @given(
        counts=st.dictionaries(
            st.sampled_from(list(ClassLabel)), st.integers(1, 30), min_size=1
        ),
        fraction=st.floats(0.05, 0.95),
        seed=st.integers(0, 2**32 - 1),
    )
    @settings(deadline=None, max_examples=50)
    def test_partition_and_stratification(self, counts, fraction, seed):
        corpus = make_labeled(counts)
        if len(corpus.labeled_docs) < 2:
            return
        train_c, test_c = split(corpus, fraction, seed=seed)

        train_ids = {d.id for d in train_c.docs}
        test_ids = {d.id for d in test_c.docs}
        assert not train_ids & test_ids
        assert train_ids | test_ids == {d.id for d in corpus.docs}

        for label, n in counts.items():
            assert test_c.label_histogram[label] == int(n * fraction + 0.5)

        # both sides preserve original corpus order
        order = {d.id: i for i, d in enumerate(corpus.docs)}
        for side in (train_c, test_c):
            positions = [order[d.id] for d in side.docs]
            assert positions == sorted(positions)
