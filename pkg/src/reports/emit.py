import abc
import io
import json
from typing import Dict, List

import pandas as pd

from src.types import ScanRow

COLUMNS = ["curve", "c0", "c_inf", "disc_square", "tQ", "tK", "m", "chi", "lla", "ll"]


class Emitter(abc.ABC):
    """Writes scan rows under a header naming the character-modulus policy, and reads them back."""

    @abc.abstractmethod
    def dumps(self, rows: List[ScanRow], header: Dict[str, str]) -> str:
        raise NotImplementedError

    @abc.abstractmethod
    def loads(self, text: str) -> List[ScanRow]:
        raise NotImplementedError


class CsvEmitter(Emitter):
    """Bare table columns; the header goes into leading comment lines."""

    def dumps(self, rows: List[ScanRow], header: Dict[str, str]) -> str:
        lines = "".join(f"# {key}: {value}\n" for key, value in header.items())
        frame = pd.DataFrame([row.model_dump(include=set(COLUMNS)) for row in rows], columns=COLUMNS)
        return lines + frame.to_csv(index=False, lineterminator="\n")

    def loads(self, text: str) -> List[ScanRow]:
        frame = pd.read_csv(io.StringIO(text), comment="#", dtype=str, keep_default_na=False)
        return [ScanRow(**record) for record in frame.to_dict(orient="records")]


class JsonEmitter(Emitter):
    """Rows with their warnings; tK carries an exact or upper-bound qualifier."""

    def dumps(self, rows: List[ScanRow], header: Dict[str, str]) -> str:
        records = []
        for row in rows:
            record = row.model_dump(exclude={"tK_exact"})
            record["tK"] = {"value": row.tK, "qualifier": "exact" if row.tK_exact else "upper-bound"}
            records.append(record)
        return json.dumps({**header, "rows": records}, indent=2) + "\n"

    def loads(self, text: str) -> List[ScanRow]:
        rows = []
        for record in json.loads(text)["rows"]:
            record = dict(record)
            record["tK_exact"] = record["tK"]["qualifier"] == "exact"
            record["tK"] = record["tK"]["value"]
            rows.append(ScanRow(**record))
        return rows


def get_emitter(fmt: str) -> Emitter:
    if fmt == "csv":
        return CsvEmitter()
    elif fmt == "json":
        return JsonEmitter()
    else:
        raise ValueError(f"Unknown output format: {fmt}")
