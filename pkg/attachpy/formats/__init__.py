from .formats import (
    format_report,
    read_attachment,
    read_distribution,
    read_edge_list,
    read_histogram,
    read_summary,
    write_attachment,
    write_distribution,
    write_edge_list,
    write_histogram,
    write_summary,
)

__all__ = [
    "format_report",
    "read_attachment",
    "read_distribution",
    "read_edge_list",
    "read_histogram",
    "read_summary",
    "write_attachment",
    "write_distribution",
    "write_edge_list",
    "write_histogram",
    "write_summary",
]
