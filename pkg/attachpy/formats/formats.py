from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Tuple, Union

import numpy as np
import pandas as pd

from attachpy.config import NORMALIZATION_TOL
from attachpy.distributions.distributions import DegreeDistribution
from attachpy.distributions.empirical import RawHistogram
from attachpy.exceptions import EmptyInputError, InvalidParameterError, MissingRateError
from attachpy.inversion.inversion import AttachmentFunction, ModelRate
from attachpy.simulator.graph import GrowthGraph

PathLike = Union[str, Path]
FLOAT_FORMAT = "%.17g"
# keys of the distribution metadata that are not family parameters
RESERVED_KEYS = ["source", "d_max", "interpolated_degrees"]


def format_value(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (list, tuple, set, frozenset)):
        return ",".join(format_value(x) for x in sorted(value))
    return str(value)


def parse_value(text: str) -> Any:
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            pass
    return text


def format_report(report: Dict[str, Any]) -> str:
    """
    Render a mapping as `key=value` lines.
    """
    return "".join(f"{key}={format_value(value)}\n" for key, value in report.items())


def _read_metadata(path: PathLike) -> Dict[str, str]:
    metadata = {}
    try:
        with open(path, encoding="utf-8") as f:
            for line in f:
                if not line.startswith("#"):
                    continue
                key, sep, value = line[1:].strip().partition("=")
                if sep:
                    metadata[key.strip()] = value.strip()
    except UnicodeDecodeError:
        raise InvalidParameterError(f"{path} is not UTF-8 text")
    return metadata


def _read_table(path: PathLike, names: Iterable[str], sep: str = "\t") -> pd.DataFrame:
    try:
        df = pd.read_csv(
            path, sep=sep, comment="#", header=None, names=list(names), float_precision="round_trip"
        )
    except pd.errors.EmptyDataError:
        raise EmptyInputError(f"{path} contains no data")
    except (UnicodeDecodeError, pd.errors.ParserError) as e:
        raise InvalidParameterError(f"{path} is not a readable table: {e}")
    if df.empty:
        raise EmptyInputError(f"{path} contains no data")
    if df.isnull().values.any():
        raise InvalidParameterError(f"{path} has malformed lines")
    for name in df.columns:
        if pd.api.types.is_numeric_dtype(df[name]):
            continue
        numeric = pd.to_numeric(df[name], errors="coerce")
        bad = np.flatnonzero(numeric.isnull().to_numpy())
        if len(bad):
            # numbering skips `#` lines
            raise InvalidParameterError(
                f"{path}: data line {bad[0] + 1} has non-numeric {name} {df[name].iloc[bad[0]]!r}"
            )
        df[name] = numeric
    return df


def _metadata_number(path: PathLike, key: str, text: str, kind: type) -> Any:
    try:
        return kind(text)
    except ValueError:
        raise InvalidParameterError(f"{path}: metadata {key} has non-numeric value {text!r}")


def _integer_column(values: np.ndarray, path: PathLike, name: str = "degrees") -> np.ndarray:
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)) or (values != np.round(values)).any():
        raise InvalidParameterError(f"{path}: {name} must be integers")
    return values.astype(np.int64)


def _write_table(path: PathLike, metadata: Dict[str, Any], df: pd.DataFrame, sep: str = "\t") -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("".join(f"# {line}" for line in format_report(metadata).splitlines(keepends=True)))
        df.to_csv(f, sep=sep, header=False, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def _dense(degrees: np.ndarray, values: np.ndarray, path: PathLike) -> np.ndarray:
    degrees = _integer_column(degrees, path)
    if (degrees < 1).any():
        raise InvalidParameterError(f"{path}: degrees must be at least 1")
    if len(np.unique(degrees)) != len(degrees):
        raise InvalidParameterError(f"{path}: repeated degrees")
    dense = np.zeros(int(degrees.max()))
    dense[degrees - 1] = values
    return dense


def write_distribution(path: PathLike, dist: DegreeDistribution) -> None:
    metadata = {"source": dist.source, **dist.parameters}
    metadata["d_max"] = dist.d_max
    metadata["interpolated_degrees"] = dist.interpolated_degrees
    df = pd.DataFrame({"degree": dist.degrees, "probability": dist.pmf})
    _write_table(path, metadata, df)


def read_distribution(path: PathLike, tol: float = NORMALIZATION_TOL) -> DegreeDistribution:
    """
    Read a distribution file: `# key=value` metadata lines, then `degree<TAB>probability` lines. Degrees that are not
    listed get zero mass.

    Args:
        path: file to read
        tol: normalization tolerance

    Returns:
        degree distribution
    """
    metadata = _read_metadata(path)
    df = _read_table(path, ["degree", "probability"])
    pmf = _dense(df["degree"].to_numpy(), df["probability"].to_numpy(dtype=float), path)
    interpolated = metadata.get("interpolated_degrees", "")
    dist = DegreeDistribution(
        pmf,
        source=metadata.get("source", "unknown"),
        parameters={k: parse_value(v) for k, v in metadata.items() if k not in RESERVED_KEYS},
        interpolated_degrees=[
            _metadata_number(path, "interpolated_degrees", x, int) for x in interpolated.split(",") if x
        ],
    )
    dist.check_normalized(tol)
    return dist


def write_histogram(path: PathLike, hist: Union[RawHistogram, GrowthGraph]) -> None:
    if isinstance(hist, GrowthGraph):
        degrees = np.flatnonzero(hist.degree_counts)
        counts = hist.degree_counts[degrees]
        metadata = {"nodes": hist.node_count, "edges": hist.edge_count}
    else:
        degrees = np.array(sorted(hist.counts))
        counts = np.array([hist.counts[d] for d in degrees])
        metadata = {"nodes": hist.total}
    df = pd.DataFrame({"degree": degrees, "count": counts})
    _write_table(path, metadata, df)


def read_histogram(path: PathLike) -> RawHistogram:
    """
    Read `degree<TAB>count` lines; `#` lines are ignored.
    """
    df = _read_table(path, ["degree", "count"])
    degrees = _integer_column(df["degree"].to_numpy(), path)
    return RawHistogram(dict(zip(degrees.tolist(), df["count"].tolist())))


def write_attachment(path: PathLike, f: AttachmentFunction, rate: Optional[ModelRate] = None) -> None:
    metadata: Dict[str, Any] = {"provenance": f.provenance, "d_max": f.d_max}
    if rate is not None:
        metadata["p"] = rate.p
        metadata["mean_degree"] = rate.mean_degree
    df = pd.DataFrame({"degree": f.degrees, "f": f.values})
    _write_table(path, metadata, df)


def read_attachment(
    path: PathLike, require_rate: bool = True
) -> Tuple[AttachmentFunction, Optional[ModelRate]]:
    """
    Read an attachment file: `# key=value` metadata (provenance, p), then `degree<TAB>f` lines.

    Args:
        path: file to read
        require_rate: raise when the metadata has no `p`

    Returns:
        attachment function and the model rate stored with it
    """
    metadata = _read_metadata(path)
    df = _read_table(path, ["degree", "f"])
    values = _dense(df["degree"].to_numpy(), df["f"].to_numpy(dtype=float), path)
    f = AttachmentFunction(values, provenance=metadata.get("provenance", "unknown"))
    if "p" in metadata:
        rate = ModelRate.from_p(_metadata_number(path, "p", metadata["p"], float))
    elif require_rate:
        raise MissingRateError(f"{path} has no `p` metadata; write it with `attachpy invert`")
    else:
        rate = None
    return f, rate


def write_edge_list(path: PathLike, graph: GrowthGraph) -> None:
    df = pd.DataFrame(graph.edges, columns=["u", "v"])
    df.to_csv(path, sep=" ", header=False, index=False, lineterminator="\n", encoding="utf-8")


def read_edge_list(path: PathLike) -> GrowthGraph:
    df = _read_table(path, ["u", "v"], sep=" ")
    return GrowthGraph.from_edges(
        np.column_stack([_integer_column(df[name].to_numpy(), path, "node ids") for name in ["u", "v"]])
    )


def write_summary(path: PathLike, summary: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(format_report(summary))


def read_summary(path: PathLike) -> Dict[str, Any]:
    summary = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            key, sep, value = line.strip().partition("=")
            if sep:
                summary[key] = parse_value(value)
    return summary
