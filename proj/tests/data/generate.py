#!/usr/bin/env python3
"""Regenerates the synthetic test corpus under tests/data.

Deterministic: the same script always writes the same files.

Layout written:
  corpus/dNN.txt          30 documents, one sentence per template
  annotations/dNN.tsv     ent / rel / mod records for each document
  queries.tsv             qid<TAB>text
  qrels.txt               qid 0 docid grade
  phrases.txt             one phrase per line
  synonyms_identity.tsv   every phrase term mapped to itself
  synonyms.tsv            a small real lexicon
  chain/                  the strongly-chained document used for reordering
"""

import os
import random

HERE = os.path.dirname(os.path.abspath(__file__))

TOPICS = {
    "ocean": {
        "nouns": ["sailor", "whale", "captain", "harbor", "ship", "reef"],
        "places": ["vast ocean", "coral reef", "harbor wall"],
        "adjs": ["salty", "tall", "quiet", "brave"],
    },
    "forest": {
        "nouns": ["ranger", "wolf", "hunter", "cabin", "owl", "river"],
        "places": ["dark forest", "river bank", "pine ridge"],
        "adjs": ["old", "silent", "wild", "grey"],
    },
    "city": {
        "nouns": ["mayor", "clerk", "vendor", "tram", "tower", "council"],
        "places": ["old city", "night market", "city hall"],
        "adjs": ["busy", "young", "proud", "tired"],
    },
    "food": {
        "nouns": ["chef", "baker", "farmer", "kitchen", "oven", "stall"],
        "places": ["night market", "village square", "hot kitchen"],
        "adjs": ["hungry", "cheerful", "careful", "famous"],
    },
    "office": {
        "nouns": ["manager", "lawyer", "auditor", "memo", "desk", "client"],
        "places": ["head office", "court room", "city hall"],
        "adjs": ["strict", "patient", "anxious", "new"],
    },
}

VERBS = ["watched", "followed", "greeted", "praised", "ignored", "visited", "helped", "found"]
# Phrases salted into the texts; the compositionality tests read these.
PHRASES = {
    "ocean": ["vast ocean", "sea water"],
    "forest": ["dark forest", "red tape"],
    "city": ["night market", "red tape"],
    "food": ["hot dog", "night market"],
    "office": ["red tape", "head office"],
}
# Synonym substitutions of the phrases above, so perturbed profiles exist.
VARIANTS = {
    "ocean": ["wide ocean", "vast sea", "ocean water"],
    "forest": ["black forest", "crimson tape"],
    "city": ["evening market", "night bazaar"],
    "food": ["warm dog", "hot hound"],
    "office": ["main office", "red ribbon"],
}
LABELS = ["background", "cause-result", "contrast", "elaboration", "evaluation", "explanation", "temporal"]


def sentence(rng, topic, subject, obj, forced=None):
    t = TOPICS[topic]
    adj = rng.choice(t["adjs"])
    place = rng.choice(t["places"])
    verb = rng.choice(VERBS)
    extra = ""
    if forced is not None:
        extra = " with some " + forced
    elif rng.random() < 0.45:
        pool = PHRASES[topic] if rng.random() < 0.7 else VARIANTS[topic]
        extra = " with some " + rng.choice(pool)
    words = f"The {adj} {subject} {verb} the {obj}{extra} near the {place}."
    return words, adj, place


def write(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def make_doc(rng, doc_id, topic, number):
    nouns = TOPICS[topic]["nouns"]
    n_sent = rng.randint(5, 9)
    # A small cast keeps entities recurring across sentences.
    cast = rng.sample(nouns, 4)
    sentences, ents, mods = [], [], []
    for j in range(n_sent):
        subject = cast[0] if rng.random() < 0.5 else rng.choice(cast)
        obj = rng.choice([c for c in cast if c != subject])
        # The first sentence cycles through the variants so each one occurs.
        variants = VARIANTS[topic]
        forced = variants[(number - 1) // len(TOPICS) % len(variants)] if j == 0 else None
        text, adj, place = sentence(rng, topic, subject, obj, forced)
        sentences.append(text)
        ents.append((j, subject, "s"))
        ents.append((j, obj, "o"))
        ents.append((j, place.split()[-1], "x"))
        mods.append((subject, adj))
    body = " ".join(sentences) + "\n"
    n_tokens = len(body.split())
    rels = []
    for _ in range(rng.randint(1, 4)):
        start = rng.randrange(n_tokens)
        end = min(n_tokens - 1, start + rng.randint(0, 6))
        rels.append((rng.choice(LABELS), start, end))
    lines = [f"# {doc_id}: {topic}"]
    lines += [f"ent\t{j}\t{e}\t{r}" for j, e, r in ents]
    lines += [f"rel\t{l}\t{s}\t{e}" for l, s, e in rels]
    lines += [f"mod\t{h}\t{d}" for h, d in sorted(set(mods))]
    return body, "\n".join(lines) + "\n"


def chain_doc():
    # Twelve sentences; entity k is the subject of sentences 2k..2k+3 and
    # absent elsewhere, so every catena is one contiguous run of s.
    names = ["miller", "porter", "keeper", "weaver", "singer"]
    n = 12
    runs = {name: range(2 * k, min(n, 2 * k + 4)) for k, name in enumerate(names)}
    sentences, ents = [], []
    for j in range(n):
        present = [name for name in names if j in runs[name]]
        subject = " and the ".join(present)
        sentences.append(f"The {subject} walked to the old mill at dawn.")
        for name in present:
            ents.append((j, name, "s"))
    body = " ".join(sentences) + "\n"
    ann = "# contiguous subject runs of length 4, staggered by 2 sentences\n"
    ann += "".join(f"ent\t{j}\t{e}\t{r}\n" for j, e, r in ents)
    return body, ann


def main():
    rng = random.Random(20240607)
    topics = list(TOPICS)
    doc_topics = {}
    for i in range(1, 31):
        doc_id = f"d{i:02d}"
        topic = topics[(i - 1) % len(topics)]
        doc_topics[doc_id] = topic
        body, ann = make_doc(rng, doc_id, topic, i)
        write(os.path.join(HERE, "corpus", doc_id + ".txt"), body)
        write(os.path.join(HERE, "annotations", doc_id + ".tsv"), ann)

    queries = [
        ("q1", "ocean", "whale captain vast ocean"),
        ("q2", "forest", "wolf ranger dark forest"),
        ("q3", "city", "mayor night market"),
        ("q4", "food", "chef hot dog kitchen"),
        ("q5", "office", "lawyer red tape memo"),
    ]
    write(os.path.join(HERE, "queries.tsv"), "".join(f"{q}\t{t}\n" for q, _, t in queries))
    qrels = []
    for q, topic, text in queries:
        words = set(text.split())
        for doc_id, t in doc_topics.items():
            with open(os.path.join(HERE, "corpus", doc_id + ".txt"), encoding="utf-8") as f:
                doc_words = set(w.strip(".").lower() for w in f.read().split())
            hits = len(words & doc_words)
            if t == topic:
                grade = 2 if hits >= 3 else 1
            elif hits > 0:
                grade = 0
            else:
                continue
            qrels.append(f"{q} 0 {doc_id} {grade}\n")
    write(os.path.join(HERE, "qrels.txt"), "".join(qrels))

    phrases = sorted({p for ps in PHRASES.values() for p in ps})
    write(os.path.join(HERE, "phrases.txt"), "".join(p + "\n" for p in phrases))
    terms = sorted({w for p in phrases for w in p.split()})
    write(os.path.join(HERE, "synonyms_identity.tsv"), "".join(f"{t}\t{t}\n" for t in terms))
    lexicon = {
        "vast": "huge,wide",
        "ocean": "sea",
        "dark": "black",
        "forest": "wood",
        "red": "crimson",
        "tape": "ribbon",
        "night": "evening",
        "market": "bazaar",
        "hot": "warm",
        "dog": "hound",
        "head": "main",
        "office": "bureau",
        "sea": "ocean",
        "water": "liquid",
    }
    write(os.path.join(HERE, "synonyms.tsv"), "".join(f"{k}\t{v}\n" for k, v in sorted(lexicon.items())))

    body, ann = chain_doc()
    write(os.path.join(HERE, "chain", "corpus", "chain.txt"), body)
    write(os.path.join(HERE, "chain", "annotations", "chain.tsv"), ann)


if __name__ == "__main__":
    main()
