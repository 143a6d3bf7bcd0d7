#!/usr/bin/env python3
"""Regenerate the bundled sample export (431 synthetic journals).

The dataset is fully fictional but engineered so the numbers hang together
the way a real publisher package does, and so the walkthrough journals keep
their documented coordinates:

  * usage column == downloads + 10*citations + 100*authorships, every row
  * package total weighted usage == 400,000 exactly
  * "Science Advance": price 8,000 / usage 2,000 / OA 88% -> CPU rank 405
  * "Citing Practice": the usage and citation outlier (850 citations),
    price 19,950, instant-fill share 2.1 points of the package
  * 414 of 431 titles project <= 3 authorships; one outlier has 14
  * exactly 4 Mathematics titles: FALSE, FALSE, MAYBE, TRUE
  * cpu values distinct at 4 decimals; cpu_rank is the (cpu, title) sort

Deterministic for a fixed seed; writes src/unsubscope/data/sample_export.csv.
"""
from __future__ import annotations

import csv
import math
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path

SEED = 20250810
N_TOTAL = 431
TOTAL_USAGE_TARGET = 400_000
USAGE_CAP = 8_200  # keeps "Citing Practice" (10,000) the clear outlier
USAGE_FLOOR = 20
CITATION_CAP = 400
BELOW_CPU = 4.0  # Science Advance sits exactly here, rank 405 of 431

OUT_PATH = Path(__file__).resolve().parents[1] / "src" / "unsubscope" / "data" / "sample_export.csv"

HEADERS = [
    "issn_l", "title", "subject", "era_subjects", "publisher", "is_society_journal",
    "subscribed", "subscription_cost", "ill_cost", "cost_subscription_minus_ill",
    "ncppu", "cpu_rank", "usage", "downloads", "citations", "authorships",
    "free_instant_usage_percent", "backfile_percent", "instant_usage_percent",
    "usage_subscription", "usage_ill", "usage_backfile", "usage_oa",
    "usage_other_delayed", "perpetual_access_years", "baseline_access", "retained",
    "is_oa_journal", "fresh_oa_status", "num_papers", "green_oa_percent",
    "bronze_oa_percent", "hybrid_oa_percent", "downloads_growth_percent",
    "projected_downloads_year_5",
]

SUBJECTS = [
    "Physics & Astronomy", "Chemistry", "Chemical Engineering", "Engineering",
    "Materials Science", "Computer Science", "Medicine", "Nursing & Health Professions",
    "Immunology & Microbiology", "Neuroscience", "Psychology",
    "Biochemistry & Molecular Biology", "Agricultural & Biological Sciences",
    "Environmental Science", "Earth & Planetary Sciences", "Energy",
    "Economics & Finance", "Business & Management", "Social Sciences",
    "Arts & Humanities", "Decision Sciences", "Veterinary Science", "Dentistry",
    "Pharmacology & Toxicology",
]

PUBLISHERS = [
    "Meridian Scholarly", "Atlas Academic Press", "Borealis Publishing Group",
    "Quill & Quarto, Ltd.", "Pergola Press", "Halcyon Science",
    "Veritas Academic, Inc.", "Northgate Journals",
]

TITLE_PATTERNS = [
    "Journal of {}", "Annals of {}", "{} Review", "International Journal of {}",
    "{} Letters", "Quarterly Journal of {}", "Transactions on {}", "Archives of {}",
    "{} Bulletin", "Advances in {}", "Studies in {}", "{} Reports",
]

TITLE_ADJ = [
    "Applied", "Theoretical", "Computational", "Experimental", "Clinical", "Modern",
    "Comparative", "Structural", "Molecular", "Quantitative", "Global", "Coastal",
    "Polar", "Urban", "Rural", "Cognitive", "Synthetic", "Planetary", "Statistical",
    "Integrative", "Translational", "Industrial", "Spectral", "Thermal", "Dynamic",
]

TITLE_NOUN = [
    "Mechanics", "Botany", "Photonics", "Catalysis", "Hydrology", "Genomics",
    "Economics", "Linguistics", "Oncology", "Robotics", "Sedimentology", "Acoustics",
    "Toxicology", "Climatology", "Ethnography", "Biophysics", "Metallurgy",
    "Neurology", "Agronomy", "Optics", "Geochemistry", "Immunology", "Kinetics",
    "Rheology", "Seismology", "Virology", "Ecology", "Paleontology", "Psychometrics",
    "Crystallography", "Thermodynamics", "Microscopy", "Enzymology", "Hematology",
]


@dataclass
class Row:
    title: str
    downloads: int
    citations: int
    authorships: int
    price: int = 0
    cpu: float = 0.0
    rank: int = 0
    oa: float = 0.0
    bf: float = 0.0
    status: str = ""
    subjects: list[str] = field(default_factory=list)
    adjustable: bool = True

    @property
    def usage(self) -> int:
        return self.downloads + 10 * self.citations + 100 * self.authorships


def make_titles(rng: random.Random, count: int) -> list[str]:
    titles: list[str] = []
    seen = set()
    combos = [(p, a, n) for p in TITLE_PATTERNS for a in TITLE_ADJ for n in TITLE_NOUN]
    rng.shuffle(combos)
    for pattern, adj, noun in combos:
        title = pattern.format(f"{adj} {noun}")
        if title not in seen:
            seen.add(title)
            titles.append(title)
        if len(titles) == count:
            break
    return titles


def draw_fillers(rng: random.Random) -> list[Row]:
    titles = make_titles(rng, 427)
    rows: list[Row] = []

    # Authorship plan: 412 low (<=3), 14 mid (4..9), 1 high outlier (14).
    # "Science Advance" (8) and "Citing Practice" (10) complete the 17 > 3.
    plan = [0] * 412 + [rng.randint(4, 9) for _ in range(14)] + [14]
    for i in range(412):
        plan[i] = rng.choices([0, 1, 2, 3], weights=[55, 25, 13, 7])[0]
    rng.shuffle(plan)

    for title, a in zip(titles, plan):
        c = min(CITATION_CAP, int(rng.expovariate(1 / 24)) + (rng.randint(5, 40) if a > 3 else 0))
        d = int(rng.lognormvariate(math.log(320), 1.0))
        row = Row(title=title, downloads=d, citations=c, authorships=a)
        while row.usage > USAGE_CAP:
            row.downloads = max(0, row.downloads - (row.usage - USAGE_CAP))
            if row.usage > USAGE_CAP:  # still over on zero downloads
                row.citations = max(0, row.citations - 10)
        if row.usage < USAGE_FLOOR:
            row.downloads += USAGE_FLOOR - row.usage
        rows.append(row)
    return rows


def balance_total(rows: list[Row], delta: int, rng: random.Random) -> None:
    """Add/remove single downloads across adjustable rows until delta is 0."""
    pool = [r for r in rows if r.adjustable]
    step = 1 if delta > 0 else -1
    guard = 0
    while delta != 0:
        guard += 1
        if guard > 10_000_000:
            raise RuntimeError("could not balance usage total")
        r = pool[rng.randrange(len(pool))]
        if step > 0 and r.usage < USAGE_CAP:
            r.downloads += 1
            delta -= 1
        elif step < 0 and r.downloads > 0 and r.usage > USAGE_FLOOR:
            r.downloads -= 1
            delta += 1


def assign_prices(rows: list[Row], specials: dict[str, Row], rng: random.Random) -> None:
    """Exactly 404 titles below cpu 4.0, Science Advance at 4.0, 26 above."""
    sa = specials["Science Advance"]
    cp = specials["Citing Practice"]
    st = specials["Scholar Trends"]
    co = specials["Confer Opinion"]

    pool = [r for r in rows if r not in (sa, cp, st, co)]
    low_usage = [r for r in pool if r.usage <= 2000]
    above = set(id(r) for r in rng.sample(low_usage, 26))

    for r in pool:
        if id(r) in above:
            t = math.exp(rng.uniform(math.log(4.2), math.log(55.0)))
            r.price = min(28_000, max(round(t * r.usage), math.ceil(4.06 * r.usage)))
        else:
            t = math.exp(rng.uniform(math.log(0.3), math.log(3.9)))
            r.price = min(29_000, max(40, round(t * r.usage)))
            r.price = min(r.price, math.floor(3.95 * r.usage))

    sa.price, cp.price = 8_000, 19_950
    st.price = round(2.4 * st.usage)
    co.price = round(3.1 * co.usage)

    # cpu distinct at export precision; nudge prices on collision
    taken: set[float] = set()
    for r in sorted(rows, key=lambda r: r.title):
        r.cpu = round(r.price / r.usage, 4)
        bump = 0
        while r.cpu in taken or (r is not sa and r.cpu == BELOW_CPU):
            bump += 1
            r.price += bump if id(r) in above or r is sa else -bump
            r.cpu = round(r.price / r.usage, 4)
        taken.add(r.cpu)


def assign_statuses(rows: list[Row], specials: dict[str, Row], math_rows: list[Row], rng: random.Random) -> None:
    forced = {id(r) for r in specials.values()} | {id(r) for r in math_rows}
    for r in rows:
        if id(r) in forced:
            continue
        if r.rank <= 150:
            r.status = "" if r.rank % 9 == 0 else "TRUE"
        elif r.rank <= 300:
            if r.rank % 15 == 0:
                r.status = "MAYBE"
            else:
                r.status = rng.choices(["TRUE", "", "FALSE"], weights=[30, 45, 25])[0]
        else:
            r.status = "" if r.rank % 7 == 0 else "FALSE"

    specials["Science Advance"].status = ""
    specials["Citing Practice"].status = "TRUE"
    specials["Scholar Trends"].status = "TRUE"
    specials["Confer Opinion"].status = ""
    for row, status in zip(math_rows, ["FALSE", "FALSE", "MAYBE", "TRUE"]):
        row.status = status


def assign_subjects(rows: list[Row], specials: dict[str, Row], rng: random.Random) -> list[Row]:
    pool = [r for r in rows if r not in specials.values()]
    math_rows = rng.sample(pool, 4)
    math_rows[0].subjects = ["Mathematics"]
    math_rows[1].subjects = ["Mathematics"]
    math_rows[2].subjects = ["Mathematics", "Decision Sciences"]
    math_rows[3].subjects = ["Mathematics"]

    for r in rows:
        if r.subjects:
            continue
        k = rng.choices([1, 2, 3], weights=[85, 13, 2])[0]
        r.subjects = rng.sample(SUBJECTS, k)

    specials["Science Advance"].subjects = ["Medicine"]
    specials["Citing Practice"].subjects = ["Biochemistry & Molecular Biology"]
    specials["Scholar Trends"].subjects = ["Social Sciences"]
    specials["Confer Opinion"].subjects = ["Economics & Finance"]
    return math_rows


def assign_fulfillment(rows: list[Row], specials: dict[str, Row], rng: random.Random) -> None:
    for r in rows:
        r.oa = round(min(95.0, 100.0 * rng.betavariate(2.0, 3.2)), 1)
        r.bf = round(min(100.0 - r.oa, 100.0 * rng.betavariate(1.3, 7.0)), 1)
    sa = specials["Science Advance"]
    cp = specials["Citing Practice"]
    sa.oa, sa.bf = 88.0, 0.0
    cp.oa, cp.bf = 10.0, 6.0


def render_row(r: Row, rng: random.Random) -> list[str]:
    usage_oa = round(r.usage * r.oa / 100)
    usage_bf = round(r.usage * r.bf / 100)
    usage_sub = max(0, r.usage - usage_oa - usage_bf)
    usage_ill = round(usage_sub * rng.uniform(0.05, 0.25))
    ill_cost = usage_ill * 17
    growth = round(rng.uniform(-4.0, 12.0), 1)
    year_start = rng.randint(1995, 2012)
    return [
        "",  # issn_l stripped from the sample
        r.title,
        "; ".join(r.subjects),
        "; ".join(r.subjects),
        rng.choice(PUBLISHERS),
        rng.choice(["TRUE", "FALSE", "FALSE", "FALSE"]),
        r.status,
        str(r.price),
        str(ill_cost),
        str(r.price - ill_cost),
        f"{r.cpu:g}",
        str(r.rank),
        str(r.usage),
        str(r.downloads),
        str(r.citations),
        str(r.authorships),
        f"{r.oa:.1f}",
        f"{r.bf:.1f}",
        f"{min(100.0, r.oa + r.bf):.1f}",
        str(usage_sub),
        str(usage_ill),
        str(usage_bf),
        str(usage_oa),
        str(max(0, usage_sub - usage_ill)),
        f"{year_start}-2023",
        rng.choice(["ill", "none", "other"]),
        rng.choice(["TRUE", "FALSE"]),
        "FALSE",
        rng.choice(["", "green", "bronze", "hybrid"]),
        str(max(4, round(r.citations * rng.uniform(0.8, 3.0)) + 4)),
        f"{round(r.oa * 0.5, 1):.1f}",
        f"{round(r.oa * 0.3, 1):.1f}",
        f"{round(r.oa * 0.2, 1):.1f}",
        f"{growth:.1f}",
        str(max(0, round(r.downloads * (1 + growth / 100) ** 5))),
    ]


def build() -> list[Row]:
    rng = random.Random(SEED)

    specials = {
        "Science Advance": Row("Science Advance", 250, 95, 8, adjustable=False),
        "Citing Practice": Row("Citing Practice", 500, 850, 10, adjustable=False),
        "Scholar Trends": Row("Scholar Trends", 1800, 25, 2, adjustable=False),
        "Confer Opinion": Row("Confer Opinion", 820, 28, 1, adjustable=False),
    }
    assert specials["Science Advance"].usage == 2_000
    assert specials["Citing Practice"].usage == 10_000

    rows = draw_fillers(rng) + list(specials.values())
    assert len(rows) == N_TOTAL
    balance_total(rows, TOTAL_USAGE_TARGET - sum(r.usage for r in rows), rng)

    assign_fulfillment(rows, specials, rng)
    assign_prices(rows, specials, rng)

    ranked = sorted(rows, key=lambda r: (r.cpu, r.title))
    for i, r in enumerate(ranked):
        r.rank = i + 1
    assert specials["Science Advance"].rank == 405, specials["Science Advance"].rank

    math_rows = assign_subjects(rows, specials, rng)
    assign_statuses(rows, specials, math_rows, rng)

    rows.sort(key=lambda r: r.rank)  # export in rank order, like the upstream tool
    return rows


def check(rows: list[Row]) -> None:
    assert len(rows) == N_TOTAL
    assert sum(r.usage for r in rows) == TOTAL_USAGE_TARGET
    assert len({r.title for r in rows}) == N_TOTAL
    assert len({r.cpu for r in rows}) == N_TOTAL
    below = sum(1 for r in rows if r.cpu < BELOW_CPU)
    assert below == 404, below
    low_auth = sum(1 for r in rows if r.authorships <= 3)
    assert low_auth == 414, low_auth
    assert max(r.authorships for r in rows) == 14
    assert all(r.oa + r.bf <= 100.0 for r in rows)
    assert all(r.usage >= USAGE_FLOOR for r in rows)
    by_title = {r.title: r for r in rows}
    assert max(r.usage for r in rows) == by_title["Citing Practice"].usage == 10_000
    second = max(r.usage for r in rows if r.title != "Citing Practice")
    assert second <= USAGE_CAP
    assert max(r.citations for r in rows) == by_title["Citing Practice"].citations == 850
    second_c = max(r.citations for r in rows if r.title != "Citing Practice")
    assert second_c <= CITATION_CAP + 40
    math_titles = [r for r in rows if "Mathematics" in r.subjects]
    assert len(math_titles) == 4
    assert sorted(r.status for r in math_titles) == ["FALSE", "FALSE", "MAYBE", "TRUE"]


def main() -> int:
    rows = build()
    check(rows)
    render_rng = random.Random(SEED + 1)
    OUT_PATH.parent.mkdir(parents=True, exist_ok=True)
    with OUT_PATH.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(HEADERS)
        for r in rows:
            writer.writerow(render_row(r, render_rng))
    counts = {s: sum(1 for r in rows if r.status == s) for s in ["TRUE", "FALSE", "MAYBE", ""]}
    print(f"wrote {OUT_PATH} ({len(rows)} rows)")
    print("status counts:", counts)
    print("total price:", sum(r.price for r in rows))
    return 0


if __name__ == "__main__":
    sys.exit(main())
