"""A catalog-limited search for large packings.

Only the groups in the default builtin list and the bundled catalog are
examined, so the observed ratios are lower bounds for each type.
Run with ``python demos/04_search.py``.
"""

from __future__ import annotations

from autpack.search import (
    SearchSpec,
    bundled_catalog,
    default_catalog,
    ratio_table,
    ratio_table_text,
    records_text,
    report_header,
    run_search,
)

catalog = tuple(default_catalog() + bundled_catalog())
spec = SearchSpec(max_genus=4, catalog=catalog)
records = run_search(spec, jobs=2)
header = report_header(["bundled:small-groups.cat"], {"max_genus": 4})
print(records_text(records, header))
print(ratio_table_text(ratio_table(records), header))
