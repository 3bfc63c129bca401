//! Holds the `acceptance` test target. Nothing to export.
