#!/usr/bin/env python3
"""Regenerate the bundled sample corpus (src/wallguard/data/sample_corpus.xml).

The corpus is synthetic English wall chatter across the five content
classes, built deterministically from phrase templates. After writing the
file the script retrains on it and checks the classification sanity
anchors the test suite relies on; it fails loudly if any anchor breaks,
so the generated file can be pinned in version control with confidence.
"""

from __future__ import annotations

import random
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from wallguard import (  # noqa: E402
    ClassLabel,
    StopList,
    classify,
    default_stoplist_path,
    parse_corpus_xml,
    preprocess,
    split,
    train,
)
from wallguard.corpus import RawMessage, preprocess_corpus  # noqa: E402

OUT_PATH = Path(__file__).resolve().parents[1] / "src/wallguard/data/sample_corpus.xml"

SEED = "wallguard-sample-corpus-v1"

# The three hand-labeled example sentences the whole stack is sanity
# checked against. They are part of the corpus itself.
ANCHORS = [
    ("I hate this woman", ClassLabel.HATRED),
    ("I had a good day", ClassLabel.NEUTRAL),
    ("I want to see you without your respect", ClassLabel.OFFENSIVE),
]

NEUTRAL = [
    "had a really good day today",
    "what a lovely morning for a walk",
    "met {name} for coffee and we talked for hours",
    "just finished a great book about gardening",
    "the weather was wonderful this weekend",
    "my team won the football game tonight",
    "posted new photos from our trip to the lake",
    "making pasta with fresh tomatoes for dinner",
    "happy birthday {name} hope your day is great",
    "the garden is blooming spring is finally here",
    "great concert last night the band played for hours",
    "studying for my history exam wish me luck",
    "watched a lovely movie with the family",
    "new recipe turned out delicious thanks {name}",
    "cycling along the river such a calm evening",
    "my little brother baked cookies they smell amazing",
    "finally fixed my bike ready for summer rides",
    "the museum exhibit about old trains was fascinating",
    "good morning everyone have a productive week",
    "sunday picnic in the park with friends",
    "adopted a puppy from the shelter meet rex",
    "rainy afternoon perfect for tea and a good film",
    "planted basil and mint on the balcony",
    "the bakery downtown makes the best bread in town",
    "long walk on the beach collecting shells",
    "learned three new chords on the guitar today",
    "cleaned the whole house feels so fresh now",
    "my exam results came back and they were good",
    "road trip playlist ready see you at the coast",
    "grandma shared her famous soup recipe with me",
]

SEXUAL = [
    "send me those naughty pics babe",
    "you looked so sexy in that dress last night",
    "thinking about your lips all day honey",
    "come over tonight for a steamy evening",
    "cant stop staring at your gorgeous body",
    "wanna cuddle in bed all weekend babe",
    "that shirtless photo of you is so hot",
    "kiss me like you did on saturday night",
    "you in that lingerie is all i dream about",
    "lets skip dinner and go straight to bed",
    "your curves drive me absolutely wild",
    "strip poker at my place tonight babe",
    "flirting with you is my favorite hobby",
    "dreaming of your warm skin next to mine",
    "those tight jeans make you look so hot",
    "my place is empty tonight come seduce me",
    "one more nude and i will lose my mind",
    "tease me again like you did last summer",
    "desire burns every time you wink at me",
    "hot tub date just you and me no swimsuits",
]

HATRED = [
    "i hate this woman",
    "i hate you all so much",
    "i despise everything about you people",
    "you people disgust me completely",
    "i loathe this entire neighborhood crowd",
    "get out of our town nobody here likes your kind",
    "the world would be better without people like you",
    "my hatred for that family grows every day",
    "you are vile scum and everyone despises you",
    "i detest every word that crowd ever said",
    "rot away somewhere far from us you enemy",
    "everything about your kind makes me sick with disgust",
    "i curse the day your disgusting family moved here",
    "we will never accept your people around here",
    "hate is the only thing your crowd deserves",
    "i despise that woman and her whole circle",
    "seeing your face fills me with pure hatred",
    "your kind ruined this town and i hate it",
    "may your vile crowd vanish from our streets",
    "nothing but disgust for you and your people",
]

OFFENSIVE = [
    "i want to see you without your respect",
    "you are such an idiot honestly",
    "shut up you stupid loser",
    "what a pathetic clown you turned out to be",
    "nobody cares about your dumb opinion",
    "you talk like a fool learn some respect",
    "your haircut is ridiculous and so are you",
    "grow a brain you absolute muppet",
    "that was the dumbest thing anyone ever posted",
    "you worthless jerk stop embarrassing yourself",
    "have some respect you classless moron",
    "your whole profile screams trash taste",
    "stop talking you sound like a broken clown horn",
    "i want you to learn what respect means you fool",
    "even a rock has more brains than you idiot",
    "pathetic little troll go bother someone else",
    "your opinion is as ugly as your attitude",
    "what a lame excuse from a lazy loser",
    "you dress like a clown and argue like one too",
    "disrespect is all you will ever earn acting dumb",
]

PUN_INTENDED = [
    "i used to be a banker but i lost interest pun intended",
    "the cyclist was two tired to win pun intended",
    "the scarecrow won an award for being outstanding in his field",
    "i am reading a book about anti gravity impossible to put down",
    "time flies like an arrow fruit flies like a banana",
    "the math teacher called in sick with a problem pun intended",
    "i would tell a chemistry joke but i would get no reaction",
    "becoming a vegetarian was a big missed steak pun intended",
    "the baker quit because the job was too crummy pun intended",
    "never trust an atom they make up everything",
    "i was going to look for my watch but i could not find the time",
    "the fisherman is reel good at his job pun intended",
    "velcro what a total rip off pun intended",
    "my calendar days are numbered pun intended",
    "the electrician stayed current with the news pun intended",
    "claustrophobic people are more productive thinking outside the box",
    "the gardener really grew on me pun intended",
    "broken pencils are pointless pun intended",
    "i ate a clock yesterday it was very time consuming",
    "the ladder store raised its prices step by step pun intended",
]

NAMES = ["anna", "tom", "maria", "leo", "sofia", "ben", "carla", "max", "nina", "paul"]
NOISE = ["lol", "haha", "today", "really", "seriously", "honestly", "friends", "again"]

PLAN = [
    (ClassLabel.NEUTRAL, NEUTRAL, 160),
    (ClassLabel.SEXUAL, SEXUAL, 85),
    (ClassLabel.HATRED, HATRED, 85),
    (ClassLabel.OFFENSIVE, OFFENSIVE, 85),
    (ClassLabel.PUN_INTENDED, PUN_INTENDED, 85),
]


def build_messages() -> list[tuple[str, ClassLabel]]:
    rng = random.Random(SEED)
    messages: list[tuple[str, ClassLabel]] = [(text, label) for text, label in ANCHORS]
    for label, bank, count in PLAN:
        needed = count - sum(1 for _, l in messages if l is label)
        for _ in range(needed):
            text = rng.choice(bank)
            if "{name}" in text:
                text = text.replace("{name}", rng.choice(NAMES))
            if rng.random() < 0.35:
                text = text + " " + rng.choice(NOISE)
            if rng.random() < 0.15:
                text = text + " " + rng.choice(NOISE)
            messages.append((text, label))
    rng.shuffle(messages)
    return messages


def write_corpus(messages: list[tuple[str, ClassLabel]]) -> None:
    rng = random.Random(SEED + ":authors")
    root = ET.Element("corpus")
    for i, (text, label) in enumerate(messages, start=1):
        ET.SubElement(
            root,
            "message",
            {
                "id": f"m{i:04d}",
                "author": f"u{rng.randint(1, 40):02d}",
                "class": label.value,
            },
        ).text = text
    ET.indent(root)
    OUT_PATH.write_bytes(ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n")


def verify() -> None:
    corpus = parse_corpus_xml(OUT_PATH.read_bytes())
    stops = StopList.from_path(default_stoplist_path())
    model = train(preprocess_corpus(corpus, stops), alpha=1.0)

    print(f"{len(corpus)} messages, histogram:")
    for label, count in corpus.label_histogram.items():
        print(f"  {label.value:>14}: {count}")

    for text, expected in ANCHORS:
        doc = preprocess(RawMessage(id="probe", author_id="x", text=text), stops)
        result = classify(model, doc)
        status = "ok" if result.argmax is expected else "WRONG"
        print(f"  [{status}] {text!r} -> {result.argmax.value}")
        if result.argmax is not expected:
            raise SystemExit(f"anchor broken: {text!r} classified {result.argmax.value}")

    train_c, test_c = split(corpus, 0.25, seed=42)
    model_split = train(preprocess_corpus(train_c, stops), alpha=1.0)
    test_docs = [preprocess(d, stops) for d in test_c.labeled_docs]
    correct = sum(
        1 for d in test_docs if classify(model_split, d).argmax is d.label
    )
    majority = max(train_c.label_histogram.values()) and max(
        test_c.label_histogram.items(), key=lambda kv: train_c.label_histogram[kv[0]]
    )
    maj_label = max(train_c.label_histogram, key=train_c.label_histogram.get)
    baseline = test_c.label_histogram[maj_label] / len(test_docs)
    print(
        f"held-out NB accuracy {correct / len(test_docs):.3f} "
        f"(majority baseline {baseline:.3f}, n={len(test_docs)})"
    )

    # A live probe whose top non-neutral posterior sits between the 0.3
    # default threshold and 0.9: needed by the rules-editing tests.
    probes = [
        "i hate mondays but the coffee was good today",
        "i hate rainy days but the movie was lovely",
        "the weather today fills me with disgust honestly",
        "i despise traffic but the concert was great",
    ]
    for text in probes:
        doc = preprocess(RawMessage(id="probe", author_id="x", text=text), stops)
        result = classify(model, doc)
        top = max((c for c in ClassLabel if c is not ClassLabel.NEUTRAL),
                  key=lambda c: result.probs[c])
        print(f"  probe {text!r}: top non-neutral {top.value}={result.probs[top]:.4f}")


if __name__ == "__main__":
    messages = build_messages()
    write_corpus(messages)
    print(f"wrote {OUT_PATH}")
    verify()
