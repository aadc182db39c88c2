#!/usr/bin/env python3
"""Regenerate the fixture datasets under fixtures/.

Everything is synthetic and seeded, so reruns are byte-identical:

* snippet_pages.jsonl  - 539 web-style pages about five fictional academics
  (85, 90, 134, 189 and 41 pages each), with controlled co-mentions so the
  co-occurrence pipeline finds a known relation set.
* seeds_people.txt     - the five names.
* people_benchmark.json - hand-defined collaboration graph for the five
  (includes one relation the pages give no evidence for).
* biblio_benchmark.jsonl - a co-authorship record library over 67 fictional
  authors whose distinct co-author pairs form exactly 253 edges.
* seeds_benchmark.txt  - the 67 names.
* benchmark_graph.json - the rule-extracted graph over that library
  (67 nodes, 253 edges), used as the evaluation benchmark.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from socnetkit import network
from socnetkit.assocrules import BiblioRecord, extract_ars_network

SEED = 20260810

PEOPLE = [
    # (name, position, page count, home host, topic words)
    ("Anwar Siregar", "Dean", 85, "ftik.unihutan.example",
     ["information", "retrieval", "indexing", "query", "ranking"]),
    ("Salmah Idris", "Professor", 90, "ftik.unihutan.example",
     ["data", "mining", "clustering", "association", "rules"]),
    ("Nurul Azhar", "Professor", 134, "fsk.selatanu.example",
     ["semantic", "web", "ontology", "knowledge", "reasoning"]),
    ("Hafiz Rambe", "Professor", 189, "fsk.selatanu.example",
     ["image", "processing", "pattern", "recognition", "vision"]),
    ("Intan Safitri", "Assoc. Prof.", 41, "ftik.unihutan.example",
     ["software", "engineering", "testing", "requirements", "maintenance"]),
]

# Pairs that co-appear on committee/project pages; everything else in the
# page set mentions exactly one person.
CO_MENTION_PAIRS = [
    ("Anwar Siregar", "Salmah Idris", 6),
    ("Anwar Siregar", "Nurul Azhar", 4),
    ("Salmah Idris", "Nurul Azhar", 5),
    ("Nurul Azhar", "Hafiz Rambe", 7),
    ("Hafiz Rambe", "Intan Safitri", 3),
]

# The trusted collaboration graph for the five people: the co-mention
# pairs plus one tie the pages carry no evidence for.
PEOPLE_BENCHMARK_EDGES = [(a, b) for a, b, _ in CO_MENTION_PAIRS] + [
    ("Salmah Idris", "Hafiz Rambe")
]

SHARED_HOSTS = ["www.unihutan.example", "scholar.panindo.example"]

FILLER = (
    "the a of and for with on in at about presents research paper study group "
    "lecture seminar students faculty department results new method approach "
    "page team project report course notes workshop annual spring autumn "
    "publication list member session archive update profile contact overview"
).split()

FIRST_NAMES = [
    "Agus", "Budi", "Citra", "Dian", "Eko", "Farah", "Gita", "Hadi", "Ika",
    "Joko", "Kartika", "Lukman", "Maya", "Nanda", "Omar", "Putri", "Rian",
    "Sari", "Taufik", "Umar", "Vina", "Wahyu", "Yanti", "Zaki",
]
SURNAMES = [
    "Prasetyo", "Wirawan", "Hartono", "Maulida", "Santoso", "Rahayu",
    "Gunawan", "Lestari", "Hidayat", "Marpaung", "Simanjuntak", "Nababan",
    "Anggraini", "Syahputra", "Batubara", "Pohan", "Sagala", "Tarigan",
]

TITLE_ADJ = ["adaptive", "robust", "scalable", "hybrid", "efficient",
             "incremental", "distributed", "probabilistic"]
TITLE_NOUN = ["classification", "segmentation", "retrieval", "summarization",
              "indexing", "clustering", "recognition", "annotation",
              "integration", "visualization"]
TITLE_DOMAIN = ["text corpora", "web archives", "sensor streams",
                "medical images", "digital libraries", "student records",
                "remote sensing data", "legacy software"]
VENUES = ["Jurnal Informatika Nusantara", "Pacific Computing Letters",
          "Workshop on Applied Informatics", "Southeast Data Engineering Forum",
          "Annual Symposium on Intelligent Systems"]


def slugify(name: str) -> str:
    return name.lower().replace(".", "").replace(" ", "-")


def make_sentence(rng: random.Random, name: str, topics: list[str]) -> str:
    t1, t2 = rng.sample(topics, 2)
    fillers = rng.sample(FILLER, rng.randint(3, 6))
    patterns = [
        f"{name} presents {t1} {t2} {' '.join(fillers)}.",
        f"notes on {t1} and {t2} by {name} {' '.join(fillers)}.",
        f"{' '.join(fillers)} {name} discusses {t1} {t2}.",
        f"{name} and the {t1} group report {t2} {' '.join(fillers)}.",
    ]
    return rng.choice(patterns)


def make_person_page(rng, person, idx) -> dict:
    name, position, _, home_host, topics = person
    slug = slugify(name)
    kind = rng.choice(["profile", "pub", "course", "news", "talk"])
    if rng.random() < 0.72:
        host = home_host
        path = f"{kind}/{slug}/{idx:03d}"
    else:
        host = rng.choice(SHARED_HOSTS)
        path = f"people/{slug}/{kind}{idx:03d}"
    scheme = "http" if rng.random() < 0.8 else "https"
    decorations = ["", "", "", "?ref=home", "?a=1&b=2", "#section2", ":80"]
    extra = rng.choice(decorations)
    if extra == ":80" and scheme != "http":
        extra = ""
    url = f"{scheme}://{host}{':80' if extra == ':80' else ''}/{path}"
    if extra.startswith("?") or extra.startswith("#"):
        url += extra
    title = f"{name} {rng.choice(topics)} {kind}"
    sentences = [make_sentence(rng, name, topics) for _ in range(rng.randint(4, 8))]
    sentences.insert(0, f"{name} is {position} working on {rng.choice(topics)}.")
    return {
        "id": f"{slug}-{kind}-{idx:03d}",
        "url": url,
        "title": title,
        "body": " ".join(sentences),
        "source_tag": "fixture",
    }


def make_co_mention_page(rng, person_a, person_b, idx) -> dict:
    name_a, _, _, host_a, topics_a = person_a
    name_b, _, _, _, topics_b = person_b
    slug = f"{slugify(name_a.split()[0])}-{slugify(name_b.split()[0])}"
    host = rng.choice([host_a] + SHARED_HOSTS)
    url = f"http://{host}/committee/{slug}/{idx:02d}"
    shared_topic = rng.choice(topics_a + topics_b)
    title = f"joint {shared_topic} activity {name_a} {name_b}"
    body = " ".join(
        [
            f"{name_a} chairs the committee session with {name_b}.",
            make_sentence(rng, name_a, topics_a),
            make_sentence(rng, name_b, topics_b),
            f"both {name_a} and {name_b} supervise the {shared_topic} track.",
        ]
    )
    return {
        "id": f"joint-{slug}-{idx:02d}",
        "url": url,
        "title": title,
        "body": body,
        "source_tag": "fixture",
    }


def build_snippet_pages(rng: random.Random) -> list[dict]:
    by_name = {p[0]: p for p in PEOPLE}
    budget = {p[0]: p[2] for p in PEOPLE}
    pages = []
    # Co-mention pages count against the first person's page budget.
    for name_a, name_b, count in CO_MENTION_PAIRS:
        for i in range(count):
            pages.append(make_co_mention_page(rng, by_name[name_a], by_name[name_b], i))
            budget[name_a] -= 1
    for person in PEOPLE:
        for i in range(budget[person[0]]):
            pages.append(make_person_page(rng, person, i))
    pages.sort(key=lambda page: page["id"])
    assert len(pages) == sum(p[2] for p in PEOPLE)
    return pages


def build_author_names(rng: random.Random, count: int) -> list[str]:
    combos = [f"{fn} {sn}" for fn in FIRST_NAMES for sn in SURNAMES]
    rng.shuffle(combos)
    return combos[:count]


def build_target_graph(rng: random.Random, authors: list[str], edge_count: int):
    n = len(authors)
    order = list(range(n))
    rng.shuffle(order)
    edges = set()
    # Spanning tree first: everyone co-authors with someone.
    for pos in range(1, n):
        a = order[pos]
        b = order[rng.randrange(pos)]
        edges.add((min(a, b), max(a, b)))
    while len(edges) < edge_count:
        a, b = rng.sample(range(n), 2)
        edges.add((min(a, b), max(a, b)))
    return sorted(edges)


def find_triangles(edges: list[tuple[int, int]], limit: int):
    edge_set = set(edges)
    adjacency: dict[int, set[int]] = {}
    for a, b in edges:
        adjacency.setdefault(a, set()).add(b)
        adjacency.setdefault(b, set()).add(a)
    triangles = []
    for a, b in edges:
        for c in sorted(adjacency[a] & adjacency[b]):
            if c > b and (a, c) in edge_set and (b, c) in edge_set:
                triangles.append((a, b, c))
                if len(triangles) >= limit:
                    return triangles
    return triangles


def make_title(rng: random.Random) -> str:
    return (
        f"{rng.choice(TITLE_ADJ)} {rng.choice(TITLE_NOUN)} "
        f"for {rng.choice(TITLE_DOMAIN)}"
    )


def build_biblio_records(rng: random.Random, authors: list[str],
                         edges: list[tuple[int, int]]) -> list[dict]:
    records = []
    covered = set()

    triangles = find_triangles(edges, limit=10)
    for a, b, c in triangles:
        records.append((authors[a], authors[b], authors[c]))
        covered.update({(a, b), (a, c), (b, c)})

    for a, b in edges:
        if (a, b) not in covered:
            records.append((authors[a], authors[b]))
            covered.add((a, b))

    # Repeat publications for some pairs (no new co-author pairs).
    for a, b in rng.sample(edges, 40):
        records.append((authors[a], authors[b]))
    # Solo papers thicken each author's library presence.
    for idx in rng.sample(range(len(authors)), 25):
        records.append((authors[idx],))

    rng.shuffle(records)
    rows = []
    for i, author_tuple in enumerate(records, start=1):
        rows.append(
            {
                "record_id": f"rec-{i:04d}",
                "title": make_title(rng),
                "authors": list(author_tuple),
                "venue": rng.choice(VENUES),
                "year": rng.randint(1999, 2010),
            }
        )
    return rows


def build_people_benchmark(path: Path) -> None:
    net = network.SocialNetwork()
    for person in PEOPLE:
        net.add_actor(network.Actor(name=person[0]))
    for a, b in PEOPLE_BENCHMARK_EDGES:
        net.add_relation(a, b, weight=1.0, method="benchmark")
    net.attach_labels()
    network.save_network(net, path, "json")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rng = random.Random(SEED)
    pages = build_snippet_pages(rng)
    with open(out / "snippet_pages.jsonl", "w", encoding="utf-8") as fh:
        for page in pages:
            fh.write(json.dumps(page, sort_keys=True) + "\n")
    (out / "seeds_people.txt").write_text(
        "\n".join(p[0] for p in PEOPLE) + "\n", encoding="utf-8"
    )
    build_people_benchmark(out / "people_benchmark.json")
    print(f"snippet pages: {len(pages)}")

    rng = random.Random(SEED + 1)
    authors = build_author_names(rng, 67)
    edges = build_target_graph(rng, authors, 253)
    records_rows = build_biblio_records(rng, authors, edges)
    with open(out / "biblio_benchmark.jsonl", "w", encoding="utf-8") as fh:
        for row in records_rows:
            fh.write(json.dumps(row, sort_keys=True) + "\n")
    (out / "seeds_benchmark.txt").write_text("\n".join(authors) + "\n", encoding="utf-8")

    records = [
        BiblioRecord(
            record_id=r["record_id"],
            title=r["title"],
            authors=tuple(r["authors"]),
            venue=r["venue"],
            year=r["year"],
        )
        for r in records_rows
    ]
    net = extract_ars_network(records, authors, keyword="", alpha=0.0001)
    assert net.node_count == 67, net.node_count
    assert net.edge_count == 253, net.edge_count
    pair_names = {
        tuple(sorted((authors[a].casefold(), authors[b].casefold())))
        for a, b in edges
    }
    assert net.edge_name_pairs() == pair_names
    network.save_network(net, out / "benchmark_graph.json", "json")
    print(f"biblio records: {len(records_rows)}; benchmark graph: "
          f"{net.node_count} nodes, {net.edge_count} edges")
    return 0


if __name__ == "__main__":
    sys.exit(main())
