""" Pandas-specific helper functions
"""
import pandas as pd
import numpy as np
from tqdm import tqdm


def dims_frame(columns, index_name="weight", columns_name="page"):
    """Build an integer table from a mapping ``{column: {row: value}}``.
    Missing cells are zero; rows and columns come out sorted.

    :param columns: nested mapping, outer keys become columns
    :param index_name: name given to the row index
    :param columns_name: name given to the column index
    """
    df = pd.DataFrame({c: pd.Series(v, dtype="int64") for c, v in columns.items()})
    df = df.fillna(0).astype("int64").sort_index()
    df = df.reindex(sorted(df.columns), axis=1)
    df.index.name = index_name
    df.columns.name = columns_name
    return df


def apply_chunkwise(items, func, items_per_chunk=25, verbose=False, **kwargs):
    """ Apply a function returning a DataFrame over chunks of a list and concatenate.
    :items: The list to chunk
    :func: Callable taking a list chunk (plus kwargs) and returning a DataFrame
    :items_per_chunk: Items per chunk
    :verbose: Show a progress bar over chunks
    :kwargs: Named arguments passed as such to the function func
    """
    items = list(items)
    if not items:
        return pd.DataFrame()
    chunk_ids = np.arange(len(items)) // items_per_chunk
    results = []
    for cid in tqdm(np.unique(chunk_ids), disable=not verbose):
        chunk = [item for item, c in zip(items, chunk_ids) if c == cid]
        results.append(func(chunk, **kwargs))
    return pd.concat(results, ignore_index=True)
