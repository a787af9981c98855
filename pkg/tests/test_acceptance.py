"""Acceptance gates for the whole stack.

One test per criterion. Each states its tolerance and runtime budget
inline; the terminal summary prints a PASS/FAIL line per criterion.
"""

import json
import random
import socket
import subprocess
import sys
import time
import urllib.error
import urllib.request
from pathlib import Path

import pytest

from nb_oracle import oracle_posterior
from wallguard import (
    LABELS,
    ClassLabel,
    ClassPosterior,
    EvalConfig,
    PolicyConfig,
    TokenizedDoc,
    benchmark_compare,
    bundled_corpus_path,
    classify,
    complement_posterior,
    decide,
    posterior,
    preprocess,
    timing_preprocessing_ablation,
    train,
)
from wallguard.policy import DecisionKind

ORACLE_TOL = 1e-9
EXACT_TOL = 1e-12


def doc(tokens, label=None):
    return TokenizedDoc(message_id="q", tokens=tuple(tokens), label=label)


def build(pairs, alpha=1.0):
    return train(
        [doc(tokens, label) for tokens, label in pairs], alpha=alpha
    )


def random_corpus(rng, pool):
    labels = list(ClassLabel)
    return [
        ([rng.choice(pool) for _ in range(rng.randint(0, 6))], rng.choice(labels))
        for _ in range(rng.randint(1, 20))
    ]


class TestPosteriorOracle:
    def test_posterior_matches_exact_fraction_oracle(self):
        """Random small corpora: posterior within 1e-9 of exact fractions, < 10 s."""
        start = time.perf_counter()
        rng = random.Random(20260818)
        pool = [f"w{i}" for i in range(10)]
        labels = list(ClassLabel)

        families = [
            [(["w0", "w1"], ClassLabel.HATRED)],                      # single doc
            [(["w0"], ClassLabel.NEUTRAL), (["w1"], ClassLabel.NEUTRAL)],  # one class
            [([], ClassLabel.NEUTRAL), ([], ClassLabel.SEXUAL)],      # empty vocab
        ]
        families += [random_corpus(rng, pool) for _ in range(40)]

        checked = 0
        for pairs in families:
            alpha = rng.choice([0.5, 1.0, 2.0])
            model = build(pairs, alpha=alpha)
            for _ in range(5):
                query = [
                    rng.choice(pool + ["unseen-token"])
                    for _ in range(rng.randint(0, 5))
                ]
                target = rng.choice(labels)
                expected = oracle_posterior(pairs, alpha, query, target)
                actual = posterior(model, doc(query), target)
                assert abs(actual - float(expected)) <= ORACLE_TOL, (
                    f"corpus={pairs} alpha={alpha} query={query} target={target}"
                )
                checked += 1
        assert checked == len(families) * 5
        assert time.perf_counter() - start < 10.0


class TestReferenceSentences:
    def test_reference_sentences_classify_as_labeled(self, sample_corpus, stops):
        """The three reference sentences land on their gold classes, < 1 s."""
        start = time.perf_counter()
        docs = [preprocess(m, stops) for m in sample_corpus.labeled_docs]
        model = train(docs, alpha=1.0)

        def argmax_of(text):
            from wallguard import RawMessage

            tokenized = preprocess(
                RawMessage(id="x", author_id="a", text=text), stops
            )
            return classify(model, tokenized).argmax

        assert argmax_of("I hate this woman") is ClassLabel.HATRED
        assert argmax_of("I had a good day") is ClassLabel.NEUTRAL
        assert (
            argmax_of("I want to see you without your respect")
            is ClassLabel.OFFENSIVE
        )
        assert time.perf_counter() - start < 1.0


class TestThresholdBoundary:
    def test_flags_at_exactly_0_30_and_publishes_just_below(self):
        """Closed lower bound at tau: 0.30 flags, 0.30 - 1e-12 publishes."""

        def result_with_hatred(p):
            probs = {c: 0.1 for c in LABELS}
            probs[ClassLabel.NEUTRAL] = 0.5
            probs[ClassLabel.HATRED] = p
            return ClassPosterior.from_probs(probs)

        policy = PolicyConfig()
        at = decide(result_with_hatred(0.30), policy)
        assert at.kind is DecisionKind.FLAG
        assert at.flagged_classes == frozenset({ClassLabel.HATRED})

        below = decide(result_with_hatred(0.30 - EXACT_TOL), policy)
        assert below.kind is DecisionKind.PUBLISH
        assert below.flagged_classes == frozenset()


class TestComplementarity:
    def test_posterior_range_and_complement_sum(self):
        """1000 random triples: posterior in [0,1], p + swapped-role p = 1 ± 1e-12."""
        rng = random.Random(7)
        pool = [f"w{i}" for i in range(10)]
        labels = list(ClassLabel)
        models = [
            build(random_corpus(rng, pool), alpha=rng.choice([0.5, 1.0, 2.0]))
            for _ in range(25)
        ]
        for i in range(1000):
            model = models[i % len(models)]
            query = doc(
                [rng.choice(pool + ["oov"]) for _ in range(rng.randint(0, 5))]
            )
            target = rng.choice(labels)
            p = posterior(model, query, target)
            q = complement_posterior(model, query, target)
            assert 0.0 <= p <= 1.0
            assert 0.0 <= q <= 1.0
            assert abs(p + q - 1.0) <= EXACT_TOL


class TestBagOfWords:
    def test_classification_is_permutation_invariant(self, sample_corpus, stops):
        """100 random token permutations over 20 docs give identical output."""
        docs = [preprocess(m, stops) for m in sample_corpus.labeled_docs]
        model = train(docs, alpha=1.0)
        rng = random.Random(13)
        eligible = [d for d in docs if len(d.tokens) >= 3][:20]
        assert len(eligible) == 20

        permutations = 0
        for original in eligible:
            baseline = classify(model, original)
            for _ in range(5):
                shuffled = list(original.tokens)
                rng.shuffle(shuffled)
                again = classify(model, doc(shuffled))
                assert again.probs == baseline.probs
                assert again.argmax is baseline.argmax
                permutations += 1
        assert permutations == 100


class TestBenchmark:
    def test_both_classifiers_beat_the_majority_baseline(self, sample_corpus, stops):
        """Held-out accuracy >= baseline + 10 points for both, full report, < 30 s."""
        start = time.perf_counter()
        cfg = EvalConfig(seed=42)
        report = benchmark_compare(sample_corpus, cfg, stops)
        ablation = timing_preprocessing_ablation(sample_corpus, cfg, stops)

        assert report.nb.accuracy >= report.majority_baseline + 0.10
        assert report.svm.accuracy >= report.majority_baseline + 0.10

        for side in (report.nb, report.svm):
            assert side.correct + side.incorrect == report.test_size
            assert set(side.per_class) == set(LABELS)
            assert side.confusion.total == report.test_size
            assert side.train_time_ms > 0.0
            assert side.predict_time_ms > 0.0
        assert len(report.corpus_fingerprint) == 64
        assert len(report.config_fingerprint) == 64

        assert ablation.with_preprocessing.vocab_size > 0
        assert ablation.without_preprocessing.vocab_size > 0
        assert ablation.with_preprocessing.report.train_time_ms > 0.0
        assert ablation.without_preprocessing.report.predict_time_ms > 0.0

        direction = "nbayes" if report.nb.accuracy >= report.svm.accuracy else "svm"
        print(
            f"observed direction: {direction} leads "
            f"(nbayes {report.nb.accuracy:.4f}, svm {report.svm.accuracy:.4f}, "
            f"baseline {report.majority_baseline:.4f})"
        )
        assert time.perf_counter() - start < 30.0


class TestDeterminism:
    def test_training_twice_writes_identical_model_files(self, tmp_path):
        """Same corpus, same flags: byte-identical model files."""
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            done = subprocess.run(
                [
                    sys.executable, "-m", "wallguard", "train",
                    "--corpus", bundled_corpus_path(), "--out", str(path),
                ],
                capture_output=True,
            )
            assert done.returncode == 0, done.stderr
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_eval_with_fixed_seed_reproduces_accuracy(self):
        """Two eval runs with the default seed agree on every count."""
        outputs = []
        for _ in range(2):
            done = subprocess.run(
                [
                    sys.executable, "-m", "wallguard", "eval",
                    "--corpus", bundled_corpus_path(), "--format", "json",
                ],
                capture_output=True,
            )
            assert done.returncode == 0, done.stderr
            outputs.append(json.loads(done.stdout))
        first, second = outputs
        assert first["accuracy"] == second["accuracy"]
        assert first["correct"] == second["correct"]
        assert first["confusion"] == second["confusion"]


def _free_port():
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


def _call(method, url, body=None, token=None):
    data = None if body is None else json.dumps(body).encode()
    request = urllib.request.Request(url, data=data, method=method)
    request.add_header("Content-Type", "application/json")
    if token:
        request.add_header("Authorization", f"Bearer {token}")
    with urllib.request.urlopen(request, timeout=5) as response:
        return response.status, json.loads(response.read())


def _wait_healthy(base, proc, deadline=8.0):
    end = time.time() + deadline
    while time.time() < end:
        if proc.poll() is not None:
            _, err = proc.communicate()
            raise AssertionError(f"server died during startup: {err.decode()}")
        try:
            status, _ = _call("GET", f"{base}/healthz")
            if status == 200:
                return
        except (urllib.error.URLError, ConnectionError):
            time.sleep(0.05)
    raise AssertionError("server did not become healthy in time")


class TestServiceEndToEnd:
    def test_moderation_flow_survives_a_hard_kill(self, tmp_path):
        """Post, flag, approve, block, kill -9, restart: state replays, < 10 s."""
        start = time.perf_counter()
        token = "acceptance-token"
        port = _free_port()
        base = f"http://127.0.0.1:{port}"
        config = tmp_path / "config.json"
        config.write_text(
            json.dumps(
                {
                    "listen": f"127.0.0.1:{port}",
                    "data_dir": str(tmp_path / "data"),
                    "manager_token": token,
                }
            )
        )
        argv = [sys.executable, "-m", "wallguard", "serve", "--config", str(config)]

        def snapshot():
            state = {}
            _, state["wall"] = _call("GET", f"{base}/walls/main")
            _, state["queue"] = _call("GET", f"{base}/moderation/queue", token=token)
            for user in ("alice", "bob", "carol"):
                _, state[user] = _call("GET", f"{base}/users/{user}")
            _, state["health"] = _call("GET", f"{base}/healthz")
            _, state["rules"] = _call("GET", f"{base}/walls/main/rules")
            return state

        proc = subprocess.Popen(argv, stdout=subprocess.PIPE, stderr=subprocess.PIPE)
        try:
            _wait_healthy(base, proc)

            # benign -> straight to the wall
            status, benign = _call(
                "POST", f"{base}/walls/main/messages",
                {"author_id": "alice", "text": "what a lovely morning for a walk"},
            )
            assert (status, benign["status"]) == (201, "published")
            _, wall = _call("GET", f"{base}/walls/main")
            assert [m["message_id"] for m in wall] == [benign["message_id"]]

            # flagged at >= 0.3 -> queue, not wall
            status, flagged = _call(
                "POST", f"{base}/walls/main/messages",
                {"author_id": "bob", "text": "I hate this woman"},
            )
            assert (status, flagged["status"]) == (201, "pending")
            assert flagged["evidence"]["hatred"] >= 0.3
            _, queue = _call("GET", f"{base}/moderation/queue", token=token)
            assert [m["message_id"] for m in queue] == [flagged["message_id"]]
            _, wall = _call("GET", f"{base}/walls/main")
            assert flagged["message_id"] not in [m["message_id"] for m in wall]

            # approve -> on the wall
            status, approved = _call(
                "POST", f"{base}/moderation/{flagged['message_id']}",
                {"action": "approve"}, token=token,
            )
            assert (status, approved["status"]) == (200, "published")
            _, wall = _call("GET", f"{base}/walls/main")
            assert flagged["message_id"] in [m["message_id"] for m in wall]

            # block -> next post rejected unclassified
            _call(
                "POST", f"{base}/walls/main/messages",
                {"author_id": "carol", "text": "the garden looks great today"},
            )
            _call(
                "POST", f"{base}/users/carol/block", {"blocked": True}, token=token
            )
            status, rejected = _call(
                "POST", f"{base}/walls/main/messages",
                {"author_id": "carol", "text": "another walk in the park"},
            )
            assert (status, rejected["status"]) == (201, "rejected")
            assert rejected["evidence"] is None

            before = snapshot()
            proc.kill()  # SIGKILL: no shutdown hooks, the log is all that survives
            proc.wait(timeout=5)

            proc = subprocess.Popen(
                argv, stdout=subprocess.PIPE, stderr=subprocess.PIPE
            )
            _wait_healthy(base, proc)
            assert snapshot() == before
        finally:
            proc.kill()
            proc.wait(timeout=5)

        assert time.perf_counter() - start < 10.0
