#!/usr/bin/env python3
# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the review fixtures under data/fixtures.

desk/reviews.jsonl          two places, about 200 sentences of review prose
seven_places/<place>.jsonl  1000 reviews per place with fixed gender counts

Output is a pure function of SEED, so rerunning rewrites identical bytes.
"""

import json
import pathlib
import random

SEED = 20260419
ROOT = pathlib.Path(__file__).resolve().parents[2] / "data" / "fixtures"

# (place, female, male) for the dataset-statistics fixture.
GENDER_COUNTS = [
    ("colosseum", 492, 508),
    ("christ-the-redeemer", 445, 555),
    ("machu-picchu", 456, 544),
    ("petra", 439, 561),
    ("taj-mahal", 398, 602),
    ("chichen-itza", 482, 518),
    ("great-wall", 452, 548),
]

# Sentence templates grouped by what they talk about. {site} and {thing}
# are filled per place.
TEMPLATES = {
    "attractions": [
        "The architecture of the {site} is stunning and the ruins are amazing.",
        "We loved the view from the top, the scenery was breathtaking.",
        "The monument is a true wonder and the structure is beautiful.",
        "Old temple walls and the surroundings were lovely in the morning light.",
        "Honestly the ruins looked smaller than in the pictures.",
        "The {thing} is incredible up close.",
    ],
    "access": [
        "The bus from the city was slow and the queue at the entrance was long.",
        "Take the train early, the road gets busy after nine.",
        "Getting there by taxi was easy and the walk to the gate is short.",
        "Transport from the hotel took about an hour each way.",
        "The entrance was badly signposted and we lost time at the gate.",
    ],
    "activities": [
        "Photography is allowed everywhere so bring a good camera.",
        "We spent hours taking photos and exploring every corner.",
        "The hike up is hard but worth it for the pictures.",
        "Shopping for souvenirs near the exit was fun.",
        "Climb to the upper level if you can, it is fantastic.",
    ],
    "amenities": [
        "Our guide was friendly, helpful and full of stories.",
        "The toilets were dirty and there was no information desk.",
        "Food at the restaurant by the entrance was excellent.",
        "Guides at the gate offer services but agree on a price first.",
        "The hotel arranged a guide who was wonderful with kids.",
    ],
    "culture": [
        "The history of the {site} is fascinating and our guide explained it well.",
        "Local people were warm and the heritage is well preserved.",
        "The weather was hot so dress lightly and carry water.",
        "Ancient tradition is still alive in the villages nearby.",
        "Learning about the history made the visit special.",
    ],
    "cost": [
        "Tickets are expensive but the price includes a museum.",
        "The entrance fee is overpriced for foreign visitors.",
        "Good value for money if you book tickets online.",
        "The fare for the shuttle is cheap and worth it.",
        "We paid too much money for a short tour.",
    ],
    "negatives": [
        "The crowds were terrible and the touts were rude.",
        "Pushy vendors and scam offers spoiled the experience.",
        "Queues everywhere and dirty paths were disappointing.",
        "Too much hassle from touts at the gate.",
        "It was not bad but the crowds made it awful at noon.",
    ],
    "misc": [
        "One of the best places in the world to visit.",
        "Tourists from every country come here and it shows.",
        "A trip of a lifetime for our family.",
        "Visitors should plan a full day at this place.",
        "Amazing!",
    ],
}

SITES = {
    "colosseum": ("Colosseum", "arena floor"),
    "taj-mahal": ("Taj Mahal", "marble inlay"),
    "christ-the-redeemer": ("statue", "statue"),
    "machu-picchu": ("citadel", "terrace"),
    "petra": ("Treasury", "rock facade"),
    "chichen-itza": ("pyramid", "pyramid"),
    "great-wall": ("Great Wall", "watchtower"),
}

NAMES = ["alex", "sam", "kim", "lee", "jo", "robin", "pat", "ana", "luca",
         "mei", "omar", "sara", "ivan", "nora", "raj", "emma"]
COUNTRIES = ["Italy", "India", "Brazil", "Peru", "Jordan", "Mexico", "China",
             "USA", "UK", "Germany"]


def render(rng, place, k):
    site, thing = SITES[place]
    groups = rng.sample(sorted(TEMPLATES), k)
    return " ".join(rng.choice(TEMPLATES[g]).format(site=site, thing=thing)
                    for g in groups)


def record(rng, place, index, gender, sentences):
    rec = {
        "id": f"{place}-{index:04d}",
        "place": place,
        "text": render(rng, place, sentences),
        "rating": rng.randint(1, 5),
        "likes": rng.randint(0, 40),
        "username": f"{rng.choice(NAMES)}{rng.randint(1, 999)}",
        "gender": gender,
    }
    if rng.random() < 0.7:
        rec["country"] = rng.choice(COUNTRIES)
    return rec


def write_jsonl(path, records):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as out:
        for rec in records:
            out.write(json.dumps(rec, ensure_ascii=False) + "\n")


def main():
    rng = random.Random(SEED)

    desk = []
    for place in ("colosseum", "taj-mahal"):
        for i in range(28):
            gender = "F" if i % 2 == 0 else "M"
            if i == 27:
                gender = "U"
            desk.append(record(rng, place, i, gender, rng.randint(3, 4)))
    write_jsonl(ROOT / "desk" / "reviews.jsonl", desk)

    for place, female, male in GENDER_COUNTS:
        genders = ["F"] * female + ["M"] * male
        rng.shuffle(genders)
        write_jsonl(ROOT / "seven_places" / f"{place}.jsonl",
                    [record(rng, place, i, g, 1)
                     for i, g in enumerate(genders)])


if __name__ == "__main__":
    main()
