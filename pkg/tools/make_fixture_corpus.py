#!/usr/bin/env python3
"""Build the offline fixture corpus: eight synthetic 1920s detective
"novels" wrapped in Gutenberg-style boilerplate, plus canned rewrite and
story responses in the replay-fixture format.

The novels are style imitations produced by a seeded template grammar;
no real novel text is included.  Human text and AI responses are
rendered from the same vocabulary but with different rate tables
(connectives, speech verbs, contractions, adverbs), so bag-of-words
classifiers face a realistic, non-trivial separation.  Rate strength is
calibrated so a tuned Naive Bayes lands in the mid-90s on held-out data
rather than saturating.

Usage:
    python tools/make_fixture_corpus.py --out data [--check]
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import random
import sys
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from wordbanks import (ABSTRACT, ADJECTIVES, FEMALE_NAMES, HOUSES, LONGTAIL,
                       MALE_NAMES, MINOR_SURNAMES, OBJECTS, PROFESSIONS,
                       ROOMS, SURNAMES, TIME_PHRASES, TITLES, VERBS_PAST,
                       VILLAGES, WEATHER)

from ficdetect import corpus, textgen
from ficdetect.corpus import Excerpt
from ficdetect.pipeline import derive_seed
from ficdetect.textgen import GenConfig, build_request, request_fingerprint, rewrite_request

MASTER_SEED = 20240401

# Fraction of rewrite sentences rendered with the AI rate tables (the
# rest keep the human tables).  This is the main separability knob; it is
# jittered per rewrite so some rewrites are much harder than others.
AI_STYLE_WEIGHT = 0.82
REWRITE_WEIGHT_JITTER = 0.04

# Rewrite length model: normal core plus a small outlier mixture, which
# the downstream 2-sigma filter is expected to remove.  The offset is
# fitted by calibrate_length_offset so the surviving core averages the
# same ~563 characters as the truncated human excerpts.
REWRITE_LEN_MEAN = 563.0
REWRITE_LEN_SD = 95.0
REWRITE_OUTLIER_RATE = 0.07
# per-book core means for rewrite lengths, fitted in two passes against
# an exact simulation of the downstream truncation + outlier filter
REWRITE_TARGETS: dict[str, float] = {}

CONTRACTIONS = [
    ("can't", "cannot"), ("didn't", "did not"), ("wasn't", "was not"),
    ("isn't", "is not"), ("won't", "will not"), ("couldn't", "could not"),
    ("hadn't", "had not"), ("don't", "do not"), ("it's", "it is"),
    ("there's", "there is"), ("that's", "that is"), ("shouldn't", "should not"),
]

PASSIVE_PARTICIPLES = ["removed", "examined", "hidden", "burned", "altered",
                       "replaced", "posted", "destroyed", "opened", "copied",
                       "forced", "emptied", "disturbed", "locked", "mislaid"]

UTTERANCE_CORES = [
    "I {cant} believe it", "you must tell me everything", "that is hardly likely",
    "I {dont} trust the {profession}", "the {object} proves nothing",
    "we {wont} speak of it again", "somebody has moved the {object}",
    "{its} later than you think", "nobody left the {room}",
    "I saw nothing from the {room}", "the {abstract} will come out",
    "you {couldnt} have known", "ask the {profession} yourself",
    "{theres} more to this {abstract}", "it {wasnt} an accident",
    "I {hadnt} thought of that", "the {object} was gone by morning",
    "we {shouldnt} linger here", "{thats} not what I was told",
    "my {object} has disappeared",
]

QUESTION_CORES = [
    "who moved the {object}", "where was the {profession} at the time",
    "why does the {abstract} matter", "what became of the {object}",
    "who profits from the {abstract}", "when did the {object} vanish",
    "how did the {object} reach the {room}",
]

# Shared vocabulary, class-specific rates.  Columns: phrase, human
# weight, AI weight.  Ratios are kept mostly under 4:1 so the signal is
# spread across many weak cues instead of a few giveaway tokens.
OPENER_TABLE = [
    ("", 56, 48), ("But", 7, 4), ("And", 5, 3), ("Then", 6, 4.5),
    ("Presently", 4, 1), ("Suddenly", 3, 0.8), ("At last", 3, 1),
    ("Just then", 3, 0.7), ("Still", 3, 1.5), ("After all", 2, 0.7),
    ("However", 1.8, 4.5), ("Moreover", 0.3, 2.5), ("Meanwhile", 1.5, 3),
    ("Subsequently", 0.2, 2.5), ("Indeed", 1.2, 3.5), ("Nevertheless", 0.5, 2.8),
    ("Furthermore", 0.2, 2.2), ("Eventually", 0.8, 3), ("In addition", 0.2, 1.8),
    ("By and by", 1, 0.1), ("At any rate", 1, 0.3), ("Naturally", 0.8, 1.2),
    ("In due course", 0.3, 1.5), ("Before long", 0.8, 1.2),
    ("To be sure", 0.7, 0.1), ("For all that", 0.6, 0.1),
    ("I say", 0.5, 0.03), ("Look here", 0.5, 0.03), ("Hang it all", 0.3, 0.01),
    ("Of course", 1.2, 0.4), ("No doubt", 0.8, 0.3),
    ("It follows that", 0.02, 0.4), ("It is worth noting that", 0.01, 0.5),
    ("Notably", 0.02, 0.4), ("In essence", 0.01, 0.35),
    ("All things considered", 0.05, 0.4),
    ("Be that as it may", 0.4, 0.1), ("Somehow or other", 0.5, 0.1),
    ("Upon my word", 0.5, 0.05), ("As luck would have it", 0.4, 0.05),
    ("Accordingly", 0.1, 0.9), ("In consequence", 0.05, 0.8),
    ("As a result", 0.05, 0.9), ("In summary", 0.02, 0.5),
    ("Taken together", 0.02, 0.45), ("On reflection", 0.1, 0.7),
    ("In the quiet that followed", 0.05, 0.5), ("With measured calm", 0.02, 0.5),
]

SAID_TABLE = [
    ("said", 40, 26), ("asked", 12, 9), ("replied", 10, 8), ("cried", 7, 1.5),
    ("murmured", 6, 1.5), ("muttered", 5, 1), ("demanded", 5, 1.5),
    ("admitted", 3, 2.5), ("observed", 4, 9), ("remarked", 3, 9),
    ("stated", 0.8, 8), ("responded", 0.8, 8), ("noted", 1, 7),
    ("inquired", 1.5, 6), ("commented", 0.5, 5), ("acknowledged", 0.5, 4),
    ("returned", 2, 0.7), ("protested", 1.5, 0.7), ("retorted", 1.5, 0.5),
    ("ventured", 1.5, 1.0),
    ("snapped", 1.0, 0.1), ("gasped", 0.8, 0.1), ("chuckled", 0.8, 0.1),
    ("scoffed", 0.4, 0.04), ("stammered", 0.45, 0.05), ("bleated", 0.2, 0.02),
    ("thundered", 0.3, 0.03), ("wailed", 0.25, 0.03), ("chirped", 0.2, 0.02),
    ("pressed", 0.05, 0.4), ("offered", 0.1, 0.5), ("continued", 0.25, 0.7),
    ("added", 0.4, 0.9), ("concluded", 0.1, 0.6), ("summarised", 0.01, 0.3),
    ("groaned", 0.6, 0.08), ("whispered", 1.2, 0.3), ("sighed", 0.9, 0.15),
    ("grumbled", 0.6, 0.08), ("exclaimed", 0.9, 0.2), ("drawled", 0.4, 0.05),
    ("snorted", 0.4, 0.05),
    ("articulated", 0.02, 0.5), ("affirmed", 0.05, 0.8), ("conveyed", 0.02, 0.6),
    ("elaborated", 0.02, 0.6), ("clarified", 0.02, 0.7), ("reiterated", 0.02, 0.6),
    ("confirmed", 0.1, 0.9), ("specified", 0.02, 0.5), ("mentioned", 0.3, 0.9),
    ("indicated", 0.08, 0.9),
]

ADVERB_TABLE = [
    ("quite", 8, 2.5), ("rather", 8, 2.5), ("very", 9, 3), ("really", 5, 1),
    ("just", 6, 2), ("almost", 4, 3), ("perhaps", 4, 2.5), ("hardly", 3, 1),
    ("quietly", 3, 5), ("carefully", 1.5, 8), ("precisely", 0.6, 5),
    ("notably", 0.2, 3.5), ("deliberately", 0.8, 5), ("meticulously", 0.1, 3.5),
    ("evidently", 1.2, 4.5), ("certainly", 2, 3.5), ("scarcely", 1.5, 1),
    ("duly", 0.3, 1.5), ("distinctly", 0.8, 2.5),
    ("awfully", 1.0, 0.1), ("frightfully", 0.8, 0.08), ("dreadfully", 0.7, 0.1),
    ("abominably", 0.3, 0.03), ("confoundedly", 0.3, 0.02), ("devilish", 0.35, 0.02),
    ("monstrously", 0.25, 0.03), ("prodigiously", 0.2, 0.03), ("vastly", 0.3, 0.05),
    ("singularly", 0.4, 0.1), ("remarkably", 0.5, 0.25),
    ("objectively", 0.01, 0.3), ("measurably", 0.01, 0.25),
    ("verifiably", 0.005, 0.2), ("observably", 0.005, 0.2),
    ("persistently", 0.03, 0.3), ("progressively", 0.02, 0.3),
    ("repeatedly", 0.1, 0.45), ("gradually", 0.15, 0.5),
    ("uncommonly", 0.6, 0.1), ("positively", 0.8, 0.15), ("downright", 0.5, 0.08),
    ("jolly", 0.7, 0.05), ("terribly", 0.9, 0.12),
    ("systematically", 0.02, 0.6), ("methodically", 0.03, 0.7),
    ("demonstrably", 0.01, 0.4), ("effectively", 0.02, 0.6),
    ("particularly", 0.3, 1.2), ("consistently", 0.02, 0.6),
    ("thoroughly", 0.25, 1.1), ("routinely", 0.01, 0.4),
]


def _column(table, col, rng=None, jitter=0.0):
    out = []
    for row in table:
        w = row[col]
        if jitter and w > 0 and rng is not None:
            w *= math.exp(rng.gauss(0.0, jitter))
        out.append((row[0], w))
    return out


RARE_ACTION_TABLE = [
    ("rummaged through", 5, 0.4), ("poked about in", 4, 0.3),
    ("pottered around", 3, 0.2), ("ferreted out", 3, 0.3),
    ("turned out", 4, 0.5), ("cast an eye over", 3, 0.4),
    ("fished out", 3, 0.3), ("squinted at", 2.5, 0.2),
    ("fussed over", 2, 0.2), ("peered into", 3.5, 0.6),
    ("proceeded to examine", 0.4, 5), ("undertook to search", 0.2, 4),
    ("endeavoured to trace", 0.3, 4), ("elected to inspect", 0.1, 3),
    ("resolved to review", 0.2, 3), ("moved to secure", 0.3, 3),
    ("sought to verify", 0.2, 3.5), ("opted to retrieve", 0.1, 2.5),
    ("commenced to study", 0.1, 2.5), ("ascertained the state of", 0.15, 3),
]


@dataclass(frozen=True)
class StyleProfile:
    name: str
    openers: list
    said_verbs: list
    adverbs: list
    adverb_rate: float
    contraction_keep: float
    question_rate: float
    exclaim_rate: float
    combine_rate: float
    combiners: list
    passive_rate: float
    dialogue_rate: float
    indirect_speech_rate: float
    rare_actions: list = None


def human_profile(rng=None, jitter=0.0, name="human") -> StyleProfile:
    """The base human voice; per-book jitter models author drift."""
    return StyleProfile(
        name=name,
        openers=_column(OPENER_TABLE, 1, rng, jitter),
        said_verbs=_column(SAID_TABLE, 1, rng, jitter),
        adverbs=_column(ADVERB_TABLE, 1, rng, jitter),
        adverb_rate=0.30,
        contraction_keep=0.84,
        question_rate=0.09,
        exclaim_rate=0.08,
        combine_rate=0.30,
        combiners=[(", and", 10), (", but", 7), (";", 3), (", for", 3),
                   (", though", 3), (", while", 1.2), (", as", 1.5),
                   ("; however,", 0.3), (", whereupon", 0.3)],
        passive_rate=0.06,
        dialogue_rate=0.32,
        indirect_speech_rate=0.22,
        rare_actions=_column(RARE_ACTION_TABLE, 1, rng, jitter),
    )


def ai_profile() -> StyleProfile:
    """The rewrite voice: formal connectives, expanded contractions,
    measured adverbs, more reported speech and passives."""
    return StyleProfile(
        name="ai",
        openers=_column(OPENER_TABLE, 2),
        said_verbs=_column(SAID_TABLE, 2),
        adverbs=_column(ADVERB_TABLE, 2),
        adverb_rate=0.36,
        contraction_keep=0.26,
        question_rate=0.05,
        exclaim_rate=0.01,
        combine_rate=0.34,
        combiners=[(", and", 8), ("; however,", 3), (", while", 5), (", as", 4),
                   (", whereupon", 1.5), (", but", 2), (", for", 0.5),
                   (";", 1.5), (", though", 1)],
        passive_rate=0.13,
        dialogue_rate=0.24,
        indirect_speech_rate=0.32,
        rare_actions=_column(RARE_ACTION_TABLE, 2),
    )


def sayers_profile(rng=None, jitter=0.0) -> StyleProfile:
    """Second human author: same era, own cadence, still clearly human."""
    base = human_profile(rng, jitter, name="human2")
    return StyleProfile(
        name="human2",
        openers=base.openers,
        said_verbs=[(w, wt * (1.6 if w in ("retorted", "protested", "returned")
                              else 1.0)) for w, wt in base.said_verbs],
        adverbs=base.adverbs,
        adverb_rate=0.32,
        contraction_keep=0.78,
        question_rate=0.10,
        exclaim_rate=0.07,
        combine_rate=0.38,
        combiners=[(", and", 9), (", but", 8), (";", 5), (", though", 4),
                   (", for", 3), (", while", 1.5), (", as", 1.8),
                   ("; however,", 0.4), (", whereupon", 0.4)],
        passive_rate=0.07,
        dialogue_rate=0.34,
        indirect_speech_rate=0.22,
        rare_actions=base.rare_actions,
    )


HUMAN_STYLE = human_profile()
AI_STYLE = ai_profile()
SAYERS_STYLE = sayers_profile()


def blend_profiles(rng: random.Random, human: StyleProfile, ai: StyleProfile,
                   weight: float) -> StyleProfile:
    """Channel-wise mixture: each stylistic habit independently follows
    the AI tables with probability `weight`.  Marginal rates match the
    plain mixture but habits stop co-occurring in lockstep."""
    def side(field):
        return getattr(ai if rng.random() < weight else human, field)

    return StyleProfile(
        name="blend",
        openers=side("openers"),
        said_verbs=side("said_verbs"),
        adverbs=side("adverbs"),
        adverb_rate=side("adverb_rate"),
        contraction_keep=side("contraction_keep"),
        question_rate=side("question_rate"),
        exclaim_rate=side("exclaim_rate"),
        combine_rate=side("combine_rate"),
        combiners=side("combiners"),
        passive_rate=side("passive_rate"),
        dialogue_rate=side("dialogue_rate"),
        indirect_speech_rate=side("indirect_speech_rate"),
        rare_actions=side("rare_actions"),
    )


_VERB_TOKENS = set(VERBS_PAST) | {
    "had", "did", "was", "were", "lay", "stood", "seemed", "took",
    "answered", "looked", "came", "went", "found", "saw", "bore", "made",
}
_PROPER_TOKENS = (set(SURNAMES) | set(MALE_NAMES) | set(FEMALE_NAMES)
                  | set(TITLES) | {h.split()[0] for h in HOUSES}
                  | {v.split()[0] for v in VILLAGES}
                  | {"I", "Tarrant", "Loxley", "Petherbridge", "Fenwick",
                     "Mabey"})

# manner adverbs sit before the verb, degree adverbs before an
# adjective, epistemic ones lead the clause
_MANNER_ADVERBS = {"quietly", "carefully", "precisely", "deliberately",
                   "meticulously", "distinctly", "duly"}
_LEADING_ADVERBS = {"perhaps", "evidently", "certainly", "notably"}
_ADJ_SET = set(ADJECTIVES)

# class-neutral manner tags for dialogue attribution
_TAG_ADVERBS = ["grimly", "uneasily", "briskly", "sombrely", "anxiously",
                "cheerfully", "wearily", "sharply", "softly", "stiffly",
                "drily", "gravely", "placidly", "crossly", "mildly",
                "absently", "curtly", "warmly", "coolly", "vaguely"]


def pick(rng: random.Random, weighted: list):
    items = [w for w, _ in weighted]
    weights = [x for _, x in weighted]
    return rng.choices(items, weights=weights, k=1)[0]


# serial characters that recur across one author's novels
AUTHOR_CASTS = {
    "Agatha Christie": [("Inspector", "Tarrant"), ("Captain", "Loxley"),
                        ("Miss", "Petherbridge")],
    "Dorothy L. Sayers": [("Lord", "Fenwick"), ("Sergeant", "Mabey")],
}


def _minor_slices() -> list[list[str]]:
    pool = list(MINOR_SURNAMES)
    random.Random(stable_seed(MASTER_SEED, "minors")).shuffle(pool)
    width = len(pool) // 8
    return [pool[i * width:(i + 1) * width] for i in range(8)]


@dataclass
class Cast:
    """Per-book proper-noun context."""

    people: list[str]       # short names, e.g. "Harding"
    titled: list[str]       # "Inspector Harding"
    house: str
    village: str
    detective: str
    minor: list = None      # incidental one-scene characters

    @classmethod
    def build(cls, rng: random.Random, size: int = 9,
              author: str | None = None) -> "Cast":
        recurring = AUTHOR_CASTS.get(author, [])
        surnames = [s for _, s in recurring]
        titled = [f"{t} {s}" for t, s in recurring]
        fresh = rng.sample([s for s in SURNAMES if s not in surnames],
                           size - len(surnames))
        given = rng.sample(MALE_NAMES + FEMALE_NAMES, len(fresh))
        for i, s in enumerate(fresh):
            title = rng.choice(TITLES)
            surnames.append(s)
            titled.append(f"{title} {s}" if title not in ("Sir", "Lady")
                          else f"{title} {given[i]}")
        return cls(people=surnames, titled=titled,
                   house=rng.choice(HOUSES), village=rng.choice(VILLAGES),
                   detective=titled[0], minor=[])


class SentenceFactory:
    """Renders one sentence at a time from a cast and a style profile."""

    def __init__(self, rng: random.Random, cast: Cast):
        self.rng = rng
        self.cast = cast
        self.dialogue_factor = 1.0

    PRONOUNS = ["he", "she", "the detective", "the inspector",
                "the young man", "the old lady", "her companion", "his guest"]

    def _person(self):
        r = self.rng
        if r.random() < 0.35:
            return r.choice(self.PRONOUNS)
        return r.choice(self.cast.titled if r.random() < 0.45 else self.cast.people)

    # slot suppliers; a rewrite factory overrides these to weave in the
    # source excerpt's key details
    MATERIALS = ["silver", "brass", "walnut", "mahogany", "leather", "ivory",
                 "lacquered", "ebony", "pewter", "tortoiseshell", "crystal",
                 "morocco", "japanned", "gilt", "enamelled", "oak"]

    def _decorate_object(self, obj: str) -> str:
        roll = self.rng.random()
        if roll < 0.18:
            return f"{self.rng.choice(self.MATERIALS)} {obj}"
        if roll < 0.30 and not obj.endswith("s"):
            return obj + "s"
        return obj

    def _object(self) -> str:
        return self._decorate_object(self.rng.choice(OBJECTS))

    def _room(self) -> str:
        return self.rng.choice(ROOMS)

    def _abstract(self) -> str:
        return self.rng.choice(ABSTRACT)

    def _profession(self) -> str:
        return self.rng.choice(PROFESSIONS)

    def _fill(self, template: str, style: StyleProfile) -> str:
        r = self.rng
        out = template
        mapping = {
            "{object}": self._object,
            "{room}": self._room,
            "{abstract}": self._abstract,
            "{profession}": self._profession,
        }
        for key, supplier in mapping.items():
            while key in out:
                out = out.replace(key, supplier(), 1)
        for short, long in CONTRACTIONS:
            token = "{" + short.replace("'", "") + "}"
            if token in out:
                keep = r.random() < style.contraction_keep
                out = out.replace(token, short if keep else long)
        return out

    def _clause(self, style: StyleProfile) -> str:
        r = self.rng
        c = self.cast
        person = self._person()
        other = self._person()
        kind = r.choices(
            ["action", "scene", "witness", "object_state", "weather",
             "inference", "journey", "longtail", "search", "negation"],
            weights=[22, 10, 10, 12, 6, 12, 7, 9, 12, 8], k=1)[0]
        if kind == "action":
            roll = r.random()
            if roll < 0.08:
                verb = pick(r, style.rare_actions)
            else:
                verb = r.choice(VERBS_PAST)
            return f"{person} {verb} the {self._object()} in the {self._room()}"
        if kind == "scene":
            return (f"the {self._room()} at {c.house} looked "
                    f"{r.choice(ADJECTIVES)} in the lamplight")
        if kind == "witness":
            if c.minor and r.random() < 0.55:
                witness = f"{r.choice(c.minor)} the {self._profession()}"
                return (f"{witness} had seen {other} near the "
                        f"{self._room()} {r.choice(TIME_PHRASES)}")
            return (f"the {self._profession()} had seen {other} near the "
                    f"{self._room()} {r.choice(TIME_PHRASES)}")
        if kind == "object_state":
            if r.random() < style.passive_rate * 2.5:
                return (f"the {self._object()} had been "
                        f"{r.choice(PASSIVE_PARTICIPLES)} {r.choice(TIME_PHRASES)}")
            return (f"a {r.choice(ADJECTIVES)} {self._object()} lay beside "
                    f"the {self._object()}")
        if kind == "weather":
            return r.choice(WEATHER)
        if kind == "inference":
            return (f"it seemed to {person} that the {self._abstract()} "
                    f"was no ordinary {self._abstract()}")
        if kind == "journey":
            return (f"{person} took the early train from {c.village} "
                    f"{r.choice(TIME_PHRASES)}")
        if kind == "longtail":
            return (f"a {r.choice(LONGTAIL)} stood near the "
                    f"{r.choice(LONGTAIL)} in the {self._room()}")
        if kind == "negation":
            form = r.randrange(3)
            if form == 0:
                return f"the {self._room()} had not been disturbed"
            if form == 1:
                return f"{person} did not answer at once"
            return f"there was not a trace of the {self._object()}"
        return (f"{person} searched the {self._room()} for the "
                f"missing {self._object()}")

    def _dialogue(self, style: StyleProfile) -> str:
        r = self.rng
        speaker = self._person()
        said = pick(r, style.said_verbs)
        if r.random() < style.indirect_speech_rate:
            core = self._fill(r.choice(UTTERANCE_CORES), style)
            return f"{speaker} {said} that {core}"
        if r.random() < style.question_rate * 3:
            core = self._fill(r.choice(QUESTION_CORES), style)
            return f'"{core[0].upper() + core[1:]}?" {said} {speaker}'
        core = self._fill(r.choice(UTTERANCE_CORES), style)
        mark = "!" if r.random() < style.exclaim_rate * 2 else ","
        return f'"{core[0].upper() + core[1:]}{mark}" {said} {speaker}'

    def sentence(self, style: StyleProfile) -> str:
        r = self.rng
        if r.random() < min(0.85, style.dialogue_rate * self.dialogue_factor):
            body = self._dialogue(style)
        else:
            body = self._clause(style)
            if r.random() < style.combine_rate:
                joiner = pick(r, style.combiners)
                second = self._clause(style)
                body = f"{body}{joiner} {second}"
            if r.random() < style.adverb_rate:
                adverb = pick(r, style.adverbs)
                words = body.split(" ")
                if adverb in _MANNER_ADVERBS:
                    pos = next((i for i, w in enumerate(words)
                                if w in _VERB_TOKENS), None)
                elif adverb in _LEADING_ADVERBS:
                    pos = 0
                else:
                    pos = next((i for i, w in enumerate(words)
                                if w in _ADJ_SET), None)
                if pos is not None:
                    words.insert(pos, adverb)
                    body = " ".join(words)
        opener = pick(r, style.openers)
        if opener:
            if body.startswith('"'):
                body = f"{opener}, {body}"
            else:
                first = body.split(" ", 1)[0].strip('",.;')
                head = body if first in _PROPER_TOKENS else body[0].lower() + body[1:]
                body = f"{opener} {head}"
        body = body[0].upper() + body[1:]
        if body.endswith(("?", "!", '"')):
            if not body.endswith(('."', '?"', '!"')):
                return body if body[-1] in "?!" else body + "."
            return body
        if r.random() < style.question_rate and not body.startswith('"'):
            return body + "?"
        if r.random() < style.exclaim_rate and not body.startswith('"'):
            return body + "!"
        return body + "."


# ---------------------------------------------------------------------------
# Book generation
# ---------------------------------------------------------------------------

ROMAN = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI",
         "XII", "XIII", "XIV", "XV", "XVI", "XVII", "XVIII", "XIX", "XX",
         "XXI", "XXII", "XXIII", "XXIV", "XXV", "XXVI", "XXVII", "XXVIII"]


SCENE_MODES = [(2.2, 30), (1.0, 45), (0.35, 25)]  # dialogue-density factor


def _scene_factor(rng: random.Random) -> float:
    return pick(rng, SCENE_MODES)


def _paragraph(factory: SentenceFactory, style: StyleProfile,
               rng: random.Random) -> list[str]:
    factory.dialogue_factor = _scene_factor(rng)
    return [factory.sentence(style) for _ in range(rng.randint(2, 6))]


def generate_book_sentences(rng: random.Random, style: StyleProfile,
                            cast: Cast, target_chunks: int,
                            target_words: int = 100) -> list[list[str]]:
    """Paragraphs of sentences, trimmed so chunking at target_words yields
    exactly target_chunks excerpts."""
    factory = SentenceFactory(rng, cast)
    paragraphs: list[list[str]] = []
    done = 0
    words = 0
    while done < target_chunks:
        para: list[str] = []
        for sentence in _paragraph(factory, style, rng):
            para.append(sentence)
            words += len(sentence.split())
            # a chunk can only complete on a full-stop sentence
            if sentence.endswith(".") and words >= target_words:
                done += 1
                words = 0
                if done >= target_chunks:
                    break
        paragraphs.append(para)
    return paragraphs


def decorate_gutenberg(book_id: str, title: str, author: str,
                       paragraphs: list[list[str]],
                       rng: random.Random) -> str:
    """Wrap paragraphs in headers, chapter headings, and page numbers."""
    lines: list[str] = [
        f"The Project Gutenberg eBook of {title}",
        "",
        "This ebook is for the use of anyone anywhere in the United States.",
        f"Title: {title}",
        f"Author: {author}",
        "",
        f"*** START OF THE PROJECT GUTENBERG EBOOK {title.upper()} ***",
        "",
    ]
    chapter = 0
    page = rng.randint(3, 9)
    until_chapter = 0
    for i, para in enumerate(paragraphs):
        if until_chapter == 0:
            lines += [f"CHAPTER {ROMAN[chapter % len(ROMAN)]}", ""]
            chapter += 1
            until_chapter = rng.randint(14, 24)
        until_chapter -= 1
        lines.append(" ".join(para))
        lines.append("")
        if rng.random() < 0.06:
            lines += [str(page), ""]
            page += rng.randint(1, 3)
    lines += ["THE END", "",
              f"*** END OF THE PROJECT GUTENBERG EBOOK {title.upper()} ***",
              "", "Produced by volunteers.", ""]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Rewrites and prompt-only stories
# ---------------------------------------------------------------------------

_PROPER = (set(SURNAMES) | set(MALE_NAMES) | set(FEMALE_NAMES)
           | set(MINOR_SURNAMES)
           | {s for cast in AUTHOR_CASTS.values() for _, s in cast})
_CONTENT = set(OBJECTS) | set(ABSTRACT) | set(ROOMS) | set(PROFESSIONS) | set(LONGTAIL)


def extract_details(text: str) -> tuple[list[str], list[str]]:
    """Key details of an excerpt: proper nouns and content nouns."""
    tokens = [t.strip('".,;:!?()') for t in text.split()]
    people = []
    for t in tokens:
        if t in _PROPER and t not in people:
            people.append(t)
    content = []
    lowered = text.lower()
    for word in sorted(_CONTENT):
        if word in lowered and word not in content:
            content.append(word)
    return people[:6], content[:8]


class RewriteFactory(SentenceFactory):
    """Sentence factory that weaves the source excerpt's key details back
    in by preferring them when a content slot is filled."""

    DETAIL_RATE = 0.45

    def __init__(self, rng: random.Random, cast: Cast, details: list[str]):
        super().__init__(rng, cast)
        self.details = list(details)
        self._cursor = 0

    def _detail(self) -> str | None:
        if self.details and self.rng.random() < self.DETAIL_RATE:
            self._cursor = (self._cursor + 1) % len(self.details)
            return self.details[self._cursor]
        return None

    def _object(self) -> str:
        detail = self._detail()
        if detail is not None:
            return self._decorate_object(detail)
        return super()._object()

    def _room(self) -> str:
        return self._detail() or super()._room()

    def _abstract(self) -> str:
        return self._detail() or super()._abstract()

    def _profession(self) -> str:
        return self._detail() or super()._profession()


def sample_rewrite_length(rng: random.Random, book_id: str | None = None) -> float:
    if rng.random() < REWRITE_OUTLIER_RATE:
        return (rng.uniform(280, 400) if rng.random() < 0.5
                else rng.uniform(790, 1080))
    mu = REWRITE_TARGETS.get(book_id, REWRITE_LEN_MEAN)
    return rng.gauss(mu, REWRITE_LEN_SD)


def _filtered_human_means(chunks_by_book: dict) -> dict[str, float]:
    """Exact simulation of each recipe dataset's human-side truncation and
    outlier filtering; shared books take the six-book dataset's value."""
    from ficdetect.corpus import (_filter_outliers, _truncate_at_nearest_stop,
                                  length_stats)

    dataset_books = {spec["name"]: spec["books"]
                     for spec in RECIPES["rewrite_sets"]}
    means: dict[str, float] = {}
    for name in ("AC3", "AC6", "DAC1", "DLS1"):
        books = dataset_books[name]
        human = [ex for b in books for ex in chunks_by_book[b]]
        rng = random.Random(derive_seed(MASTER_SEED, name))
        trunc = [_truncate_at_nearest_stop(ex, rng.uniform(450.0, 675.0))
                 for ex in human]
        mean = length_stats(_filter_outliers(trunc, 5)).mean_chars
        for b in books:
            means[b] = mean  # later datasets (AC6 covers AC3) win
    return means


def fit_rewrite_targets(chunks_by_book: dict) -> dict[str, float]:
    """Two-pass fit: render every rewrite at the human target, measure the
    filtered landing per book, correct the residual."""
    from ficdetect.corpus import _filter_outliers, length_stats

    global REWRITE_TARGETS
    human_means = _filtered_human_means(chunks_by_book)
    REWRITE_TARGETS = dict(human_means)
    for book_id, excerpts in chunks_by_book.items():
        rendered = [corpus.make_excerpt(
            f"{ex.excerpt_id}:cal",
            render_rewrite(ex, stable_seed(MASTER_SEED, "rw", ex.excerpt_id)),
            "ai", "prompt_only") for ex in excerpts]
        landed = length_stats(_filter_outliers(rendered, 5)).mean_chars
        REWRITE_TARGETS[book_id] = human_means[book_id] + (
            human_means[book_id] - landed)
    return REWRITE_TARGETS


def book_cast(book_id: str) -> Cast:
    """The deterministic cast of one fixture book."""
    idx = next(i for i, r in enumerate(BOOKS) if r[0] == book_id)
    rng = random.Random(stable_seed(MASTER_SEED, "cast", BOOKS[idx][0]))
    cast = Cast.build(rng, author=BOOKS[idx][2])
    cast.minor = _minor_slices()[idx]
    return cast


def render_rewrite(excerpt: Excerpt, seed: int,
                   ai_weight: float | None = None) -> str:
    """A style-shifted restatement of the excerpt's key details.

    The cast is rebuilt from the source book so houses, villages, and
    title usage match the human text; a few fresh names are mixed in,
    mirroring how rewrites tend to introduce new entities.
    """
    rng = random.Random(seed)
    people, content = extract_details(excerpt.text)
    source = book_cast(excerpt.excerpt_id.rsplit("-", 1)[0])
    titled_map = dict(zip(source.people, source.titled))
    book_titles = [t.rsplit(" ", 1)[0] for t in source.titled]
    names = [p for p in people if p in titled_map] or         rng.sample(source.people, 2)
    extra = [s for s in source.people if s not in names]
    if extra and rng.random() < 0.5:
        names = names + [rng.choice(extra)]
    titled = [titled_map.get(n, f"{rng.choice(book_titles)} {n}")
              for n in names]
    minors = [p for p in people if p in set(source.minor)]
    cast = Cast(people=[n for n in names if n not in minors] or names,
                titled=titled, house=source.house, village=source.village,
                detective=titled[0], minor=minors)
    factory = RewriteFactory(rng, cast, content)
    base_weight = AI_STYLE_WEIGHT if ai_weight is None else ai_weight
    weight = min(0.9, max(0.05, rng.gauss(base_weight, REWRITE_WEIGHT_JITTER)))
    book_id = excerpt.excerpt_id.rsplit("-", 1)[0]
    target = max(240.0, sample_rewrite_length(rng, book_id))
    parts: list[str] = []
    length = 0
    until_mode = 0
    while length < target:
        if until_mode == 0:
            factory.dialogue_factor = _scene_factor(rng)
            until_mode = rng.randint(2, 6)
        until_mode -= 1
        style = blend_profiles(rng, HUMAN_STYLE, AI_STYLE, weight)
        sentence = factory.sentence(style)
        parts.append(sentence)
        length += len(sentence) + 1
    # land as close to the target as the final sentence allows
    if len(parts) > 1:
        without = length - (len(parts[-1]) + 1)
        if abs(without - target) < abs(length - target):
            parts.pop()
    return " ".join(parts)


def render_story(seed: int, n_words: int = 500) -> str:
    """One prompt-only story: fully AI-styled, fresh cast."""
    rng = random.Random(seed)
    cast = Cast.build(rng, size=6)
    factory = SentenceFactory(rng, cast)
    parts: list[str] = []
    words = 0
    while words < n_words:
        factory.dialogue_factor = _scene_factor(rng)
        for sentence in [factory.sentence(AI_STYLE)
                         for _ in range(rng.randint(2, 5))]:
            parts.append(sentence)
            words += len(sentence.split())
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Corpus assembly
# ---------------------------------------------------------------------------

BOOKS = [
    # book_id, title, author, style family, target_chunks, role
    ("links", "The Murder on the Links", "Agatha Christie", "human", 475, "base"),
    ("poirot_investigates", "Poirot Investigates", "Agatha Christie", "human", 474, "base"),
    ("brown_suit", "The Man in the Brown Suit", "Agatha Christie", "human", 475, "base"),
    ("styles", "The Mysterious Affair at Styles", "Agatha Christie", "human", 430, "base"),
    ("big_four", "The Big Four", "Agatha Christie", "human", 430, "base"),
    ("secret_adversary", "The Secret Adversary", "Agatha Christie", "human", 429, "base"),
    ("chimneys", "The Secret of Chimneys", "Agatha Christie", "human", 440, "unseen"),
    ("whose_body", "Whose Body?", "Dorothy L. Sayers", "human2", 430, "unseen"),
]

# weight jitter applied per book, modelling drift between novels
BOOK_JITTER = 0.10

AC1_PROMPT = ("please write a story about a detective in the style of "
              "agatha christie")
GC1_PROMPT = ("please write a generic crime novel set in the 1920s, "
              "written in chapters, and keep writing until told to stop")

RECIPES = {
    "seed": MASTER_SEED,
    "rewrite_sets": [
        {"name": "AC3", "books": ["links", "poirot_investigates", "brown_suit"],
         "export_splits": True,
         "description": "three-book base: novel chunks vs their rewrites"},
        {"name": "AC6",
         "books": ["links", "poirot_investigates", "brown_suit", "styles",
                   "big_four", "secret_adversary"],
         "export_splits": True,
         "description": "six-book base: novel chunks vs their rewrites"},
        {"name": "DAC1", "books": ["chimneys"], "sample_per_class": 100,
         "description": "unseen novel, same author: 100 chunks vs 100 rewrites"},
        {"name": "DLS1", "books": ["whose_body"], "sample_per_class": 100,
         "description": "unseen novel, different author: 100 vs 100"},
    ],
    "prompt_only_sets": [
        {"name": "ChatGPTAC1", "prompt": AC1_PROMPT, "n": 10,
         "human_from": "AC3",
         "description": "10 prompt-only story excerpts vs 10 base chunks"},
        {"name": "ChatGPTGC1", "prompt": GC1_PROMPT, "n": 12,
         "human_from": "DLS1",
         "description": "12 prompt-only story excerpts vs 12 cross-author chunks"},
    ],
}

APP_CONFIG = {
    "paths": {
        "corpus_manifest": "corpus_manifest.json",
        "recipes": "dataset_recipes.json",
        "fixtures": "fixtures/responses.json",
        "datasets_dir": "datasets",
        "models_dir": "models",
        "results_dir": "results",
        "quizzes_dir": "quizzes",
    },
    "generation": {"model_id": "gpt-3.5-turbo-0125", "temperature": 0.7,
                   "requests_per_minute": 60, "max_retries": 3},
    "service": {"host": "127.0.0.1", "port": 8765, "cors_origin": "*",
                "model_path": "models/nb-ac6.model.json"},
    "default_seed": 7,
}


def stable_seed(*parts) -> int:
    digest = hashlib.sha256(":".join(str(p) for p in parts).encode()).hexdigest()
    return int(digest[:16], 16)


def write_books(out: Path) -> list[dict]:
    manifest = []
    for book_id, title, author, family, chunks, role in BOOKS:
        rng = random.Random(stable_seed(MASTER_SEED, "book", book_id))
        if family == "human2":
            style = sayers_profile(rng, BOOK_JITTER)
        else:
            style = human_profile(rng, BOOK_JITTER)
        cast = book_cast(book_id)
        paragraphs = generate_book_sentences(rng, style, cast, chunks)
        text = decorate_gutenberg(book_id, title, author, paragraphs, rng)
        path = out / "books" / f"{book_id}.txt"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        manifest.append({"book_id": book_id, "title": title, "author": author,
                         "path": f"books/{book_id}.txt", "role": role})
        print(f"  {book_id}: {chunks} chunks targeted, {len(text)} chars")
    (out / "corpus_manifest.json").write_text(
        json.dumps(manifest, indent=2), encoding="utf-8")
    return manifest


def write_fixtures(out: Path, manifest: list[dict]) -> None:
    cfg = GenConfig()
    fixtures: dict[str, object] = {}
    entries = [corpus.BookEntry(**row) for row in manifest]
    chunks = {}
    for entry in entries:
        raw = corpus.load_book(entry, out)
        body = corpus.strip_boilerplate(raw)
        chunks[entry.book_id] = corpus.chunk_text(entry.book_id, body)

    targets = fit_rewrite_targets(chunks)
    print("  rewrite length targets: " + ", ".join(
        f"{b}:{t:.0f}" for b, t in targets.items()))

    n_rewrites = 0
    for book_id, excerpts in chunks.items():
        for ex in excerpts:
            body = rewrite_request(cfg, ex.text)
            fixtures[request_fingerprint(body)] = render_rewrite(
                ex, stable_seed(MASTER_SEED, "rw", ex.excerpt_id))
            n_rewrites += 1

    for prompt, count, tag in ((AC1_PROMPT, 4, "ac1"), (GC1_PROMPT, 4, "gc1")):
        body = build_request(cfg, prompt)
        fixtures[request_fingerprint(body)] = [
            render_story(stable_seed(MASTER_SEED, "story", tag, i))
            for i in range(count)]

    path = out / "fixtures" / "responses.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(fixtures, ensure_ascii=False), encoding="utf-8")
    print(f"  {n_rewrites} rewrites + 2 story series -> {path}")


def build_datasets(out: Path) -> None:
    from ficdetect.pipeline import build_standard_datasets
    from ficdetect.textgen import ReplayTransport

    built = build_standard_datasets(
        out / "dataset_recipes.json", out / "corpus_manifest.json",
        GenConfig(), ReplayTransport(out / "fixtures" / "responses.json"),
        out_dir=out / "datasets", base_dir=out)
    for name, ds in built.items():
        print(f"  {name}: {len(ds)} excerpts")


def quick_check(out: Path) -> None:
    """Held-out sanity check of the separability calibration."""
    from ficdetect.evaluation import SplitSpec, compute_metrics, split_dataset
    from ficdetect.features import build_vocabulary, vectorize
    from ficdetect.models import nb_predict, nb_train

    ds = corpus.read_dataset("AC3", out / "datasets" / "AC3.jsonl")
    train, test, val = split_dataset(ds, SplitSpec(seed=1))
    vocab = build_vocabulary(e.text for e in train.excerpts)
    X = vectorize([e.text for e in train.excerpts], vocab)
    model = nb_train(X, [e.label for e in train.excerpts], alpha=0.7,
                     vocab=vocab)
    for part in (test, val):
        Xp = vectorize([e.text for e in part.excerpts], vocab)
        preds = nb_predict(model, Xp)
        summary, _ = compute_metrics([e.label for e in part.excerpts],
                                     [p.label for p in preds])
        print(f"  NB on {part.name}: acc {summary.accuracy:.3f} "
              f"f1 {summary.f1:.3f} (n={len(part.excerpts)})")

    report = corpus.balance_lengths(
        [e for e in ds.excerpts if e.label == "human"],
        [e for e in ds.excerpts if e.label == "ai"],
        rng_seed=0, length_range=(math.inf, math.inf))
    print(f"  post-balance means {report.after_human.mean_chars:.1f} / "
          f"{report.after_ai.mean_chars:.1f}, stds "
          f"{report.after_human.std_chars:.1f} / {report.after_ai.std_chars:.1f}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="data")
    parser.add_argument("--skip-datasets", action="store_true")
    parser.add_argument("--check", action="store_true",
                        help="print calibration statistics")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "dataset_recipes.json").write_text(
        json.dumps(RECIPES, indent=2), encoding="utf-8")
    (out / "appconfig.json").write_text(
        json.dumps(APP_CONFIG, indent=2), encoding="utf-8")

    print("books:")
    manifest = write_books(out)
    print("fixtures:")
    write_fixtures(out, manifest)
    if not args.skip_datasets:
        print("datasets:")
        build_datasets(out)
    if args.check:
        print("calibration:")
        quick_check(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
