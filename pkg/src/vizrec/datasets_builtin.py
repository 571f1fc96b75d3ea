"""Built-in benchmark datasets.

The movies and birdstrikes tables are synthetic stand-ins shaped like the
well-known vega-datasets files: same field count, field-type census, and row
count. Values are generated from a fixed seed, so every load is bit-stable.

Note: the movies file is commonly described as 15 attributes split
7 nominal / 1 temporal / 8 quantitative, which sums to 16; this table uses
7 / 1 / 7 so the field count stays 15.
"""

from __future__ import annotations

import csv
import io
import random
from functools import lru_cache

from .dataset import Dataset, load_table
from .errors import UnknownDataset

_GENRES = ["Drama", "Comedy", "Action", "Horror", "Documentary", "Musical",
           "Thriller", "Western", "Romance", "Adventure"]
_CREATIVE = ["Contemporary Fiction", "Historical Fiction", "Fantasy",
             "Science Fiction", "Kids Fiction", "Factual", "Dramatization"]
_RATINGS = ["G", "PG", "PG-13", "R", "NC-17", "Not Rated"]
_SOURCES = ["Original Screenplay", "Based on Book", "Based on Play",
            "Based on Comic", "Remake", "Based on Real Life Events"]
_DISTRIBUTORS = ["Warner Bros.", "Sony Pictures", "Paramount", "Universal",
                 "20th Century Fox", "MGM", "Lionsgate", "Miramax",
                 "New Line", "IFC Films", "Focus Features", "Dreamworks"]

_STATES = ["California", "Texas", "New York", "Florida", "Illinois", "Ohio",
           "Colorado", "Washington", "Georgia", "Arizona", "Oregon", "Utah"]
_SPECIES = ["Gulls", "Mourning dove", "Rock pigeon", "European starling",
            "Sparrows", "Canada goose", "Red-tailed hawk", "Barn swallow",
            "American kestrel", "Killdeer", "Unknown bird", "Bats"]
_AIRCRAFT = ["B-737-300", "A-320", "MD-80", "B-757-200", "CL-RJ100/200",
             "EMB-145", "B-767-300", "DC-9"]
_AIRLINES = ["Southwest Airlines", "American Airlines", "Delta Air Lines",
             "United Airlines", "US Airways", "Continental", "Business",
             "Alaska Airlines"]
_PHASES = ["Approach", "Landing Roll", "Take-off run", "Climb", "Descent", "Taxi"]
_SIZES = ["Small", "Medium", "Large"]
_DAMAGE = ["None", "Minor", "Substantial", "Medium"]
_TIMES = ["Day", "Night", "Dawn", "Dusk"]
_AIRPORTS = [f"{city} INTL" for city in
             ["DALLAS/FORT WORTH", "DENVER", "CHICAGO O'HARE", "MEMPHIS",
              "ORLANDO", "SEATTLE", "PORTLAND", "SACRAMENTO", "KANSAS CITY",
              "SALT LAKE CITY", "NASHVILLE", "BALTIMORE", "TULSA", "AUSTIN",
              "NEWARK", "CLEVELAND"]]


def _date(rng: random.Random, start_year: int, end_year: int) -> str:
    year = rng.randint(start_year, end_year)
    month = rng.randint(1, 12)
    day = rng.randint(1, 28)
    return f"{year:04d}-{month:02d}-{day:02d}"


def _maybe_missing(rng: random.Random, value, p: float = 0.02):
    return "" if rng.random() < p else value


def movies_csv() -> str:
    """3,201 rows x 15 fields (7 nominal, 1 temporal, 7 quantitative)."""
    rng = random.Random(20240311)
    header = ["Title", "US_Gross", "Worldwide_Gross", "US_DVD_Sales",
              "Production_Budget", "Release_Date", "MPAA_Rating",
              "Running_Time_min", "Distributor", "Source", "Major_Genre",
              "Creative_Type", "Director", "Rotten_Tomatoes_Rating",
              "IMDB_Rating"]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for i in range(3201):
        budget = rng.lognormvariate(17, 1.2)
        gross = budget * rng.lognormvariate(0, 0.9)
        writer.writerow([
            f"Movie {i:04d}",
            round(gross, 2),
            round(gross * rng.uniform(1.0, 3.5), 2),
            _maybe_missing(rng, round(gross * rng.uniform(0.05, 0.6), 2), 0.3),
            round(budget, 2),
            _date(rng, 1980, 2010),
            rng.choice(_RATINGS),
            _maybe_missing(rng, rng.randint(70, 210)),
            rng.choice(_DISTRIBUTORS),
            rng.choice(_SOURCES),
            _maybe_missing(rng, rng.choice(_GENRES)),
            rng.choice(_CREATIVE),
            f"Director {rng.randint(0, 550):03d}",
            _maybe_missing(rng, rng.randint(1, 100), 0.1),
            round(rng.uniform(1.0, 9.9), 1),
        ])
    return out.getvalue()


def birdstrikes_csv() -> str:
    """10,000 rows x 14 fields (9 nominal, 1 temporal, 4 quantitative)."""
    rng = random.Random(20240312)
    header = ["Airport_Name", "Aircraft_Make_Model", "Effect_Amount_of_damage",
              "Flight_Date", "Aircraft_Airline_Operator", "Origin_State",
              "When_Phase_of_flight", "Wildlife_Size", "Wildlife_Species",
              "When_Time_of_day", "Cost_Other", "Cost_Repair",
              "Cost_Total", "Speed_IAS_in_knots"]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for _ in range(10000):
        repair = 0.0 if rng.random() < 0.8 else rng.lognormvariate(9, 1.5)
        other = 0.0 if rng.random() < 0.7 else rng.lognormvariate(7, 1.2)
        writer.writerow([
            rng.choice(_AIRPORTS),
            rng.choice(_AIRCRAFT),
            rng.choice(_DAMAGE),
            _date(rng, 1990, 2002),
            rng.choice(_AIRLINES),
            rng.choice(_STATES),
            rng.choice(_PHASES),
            rng.choice(_SIZES),
            rng.choice(_SPECIES),
            rng.choice(_TIMES),
            round(other, 2),
            round(repair, 2),
            round(repair + other, 2),
            _maybe_missing(rng, rng.randint(0, 400), 0.05),
        ])
    return out.getvalue()


@lru_cache(maxsize=None)
def load_builtin(name: str) -> Dataset:
    if name == "movies":
        return load_table(movies_csv(), "csv", name="movies")
    if name == "birdstrikes":
        return load_table(birdstrikes_csv(), "csv", name="birdstrikes")
    raise UnknownDataset(name)


BUILTIN_NAMES = ("movies", "birdstrikes")


def registry() -> dict[str, Dataset]:
    return {name: load_builtin(name) for name in BUILTIN_NAMES}
