import io
import json
import math
from typing import Any, TextIO

import numpy as np
import pandas as pd

from bmv_entanglement.types import InputException

FORMATS = ('csv', 'jsonl')


def _native(value: Any) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and math.isnan(value):
        # JSON has no NaN; missing values are null
        return None
    return value


def write_dataset(table: pd.DataFrame, stream: TextIO, fmt: str = 'csv') -> None:
    """
    Serialize a dataset deterministically.

    CSV floats use 17 significant digits; JSON-lines floats use Python's shortest
    round-trip representation. Both re-parse to the same values.
    """
    if fmt == 'csv':
        table.to_csv(stream, index=False, float_format='%.17g', lineterminator='\n')
    elif fmt == 'jsonl':
        for record in table.to_dict(orient='records'):
            stream.write(json.dumps({key: _native(value) for key, value in record.items()}))
            stream.write('\n')
    else:
        raise InputException(f'Unknown output format "{fmt}"; expected one of {list(FORMATS)}.')


def format_dataset(table: pd.DataFrame, fmt: str = 'csv') -> str:
    stream = io.StringIO()
    write_dataset(table, stream, fmt)
    return stream.getvalue()


def read_dataset(stream: TextIO, fmt: str = 'csv') -> pd.DataFrame:
    if fmt not in FORMATS:
        raise InputException(f'Unknown dataset format "{fmt}"; expected one of {list(FORMATS)}.')

    try:
        if fmt == 'csv':
            table = pd.read_csv(stream, header=0)
        else:
            table = pd.read_json(
                stream,
                orient='records',
                lines=True,
                dtype=False,
                precise_float=True,
                convert_dates=False,
                keep_default_dates=False,
            )
    except UnicodeDecodeError:
        raise InputException('Could not parse dataset: could not decode file as UTF-8.')
    except (pd.errors.ParserError, pd.errors.EmptyDataError, ValueError) as e:
        raise InputException(f'Could not parse dataset: "{str(e)}".')

    if table.empty:
        raise InputException('Dataset contains no rows.')

    return table
