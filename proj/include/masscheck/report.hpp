#pragma once

#include <string>
#include <utility>
#include <vector>

namespace masscheck {

enum class Verdict { Pass, Fail, HypothesisViolated, Inconclusive };

std::string to_string(Verdict v);

/// Deterministic shortest-round-trip formatting used for every number that
/// reaches a report, so identical inputs yield identical bytes.
std::string format_number(double x);

/// A rectangular table with named columns. Each column carries a provenance
/// tag naming the operation that produced its values, emitted as a separate
/// provenance table so every numeric cell is traceable.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::string> provenance;  // aligned with columns
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    std::string title;
    Verdict verdict = Verdict::Pass;
    /// Scalar findings in emission order (name, value, provenance).
    struct Item {
        std::string name;
        std::string value;
        std::string provenance;
    };
    std::vector<Item> summary;
    std::vector<Table> tables;
    /// Free-form notes (hypothesis flags, per-delta failures).
    std::vector<std::string> notes;
};

/// Writes one CSV per table (plus `summary.csv` and `provenance.csv`) into
/// `dir`, and a human-readable `summary.txt`. Fields are quoted RFC-style
/// when needed; output is byte-for-byte deterministic. Returns the list of
/// files written. I/O failures throw with the path in the message.
std::vector<std::string> emit_report(const Report& report,
                                     const std::string& dir);

/// CSV serialization of a single table (header row first).
std::string table_to_csv(const Table& t);

/// The text summary, also used for console output.
std::string report_to_text(const Report& report);

}  // namespace masscheck
