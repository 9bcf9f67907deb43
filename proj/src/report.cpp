#include "masscheck/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "masscheck/util.hpp"

namespace masscheck {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::HypothesisViolated: return "HYPOTHESIS-VIOLATED";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "UNKNOWN";
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += csv_field(cells[i]);
    }
    out += '\n';
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << content;
    if (!f) throw Error("write failed: " + path);
}

}  // namespace

std::string table_to_csv(const Table& t) {
    std::string out = csv_row(t.columns);
    for (const auto& row : t.rows) out += csv_row(row);
    return out;
}

std::string report_to_text(const Report& report) {
    std::string out;
    out += report.title + "\n";
    out += std::string(report.title.size(), '=') + "\n\n";
    out += "verdict: " + to_string(report.verdict) + "\n\n";
    for (const auto& item : report.summary)
        out += "  " + item.name + " = " + item.value + "    [" +
               item.provenance + "]\n";
    for (const auto& t : report.tables) {
        out += "\n" + t.name + ":\n";
        std::vector<std::size_t> width(t.columns.size());
        auto widen = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
                width[i] = std::max(width[i], row[i].size());
        };
        widen(t.columns);
        for (const auto& row : t.rows) widen(row);
        auto line = [&](const std::vector<std::string>& row) {
            std::string s = " ";
            for (std::size_t i = 0; i < width.size(); ++i) {
                std::string cell = i < row.size() ? row[i] : "";
                s += " " + cell + std::string(width[i] - cell.size(), ' ');
            }
            while (!s.empty() && s.back() == ' ') s.pop_back();
            out += s + "\n";
        };
        line(t.columns);
        for (const auto& row : t.rows) line(row);
    }
    if (!report.notes.empty()) {
        out += "\nnotes:\n";
        for (const auto& n : report.notes) out += "  - " + n + "\n";
    }
    return out;
}

std::vector<std::string> emit_report(const Report& report,
                                     const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory: " + dir);

    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        const std::string path = (fs::path(dir) / name).string();
        write_file(path, content);
        written.push_back(path);
    };

    Table summary{"summary", {"name", "value", "provenance"}, {}, {}};
    summary.rows.push_back({"verdict", to_string(report.verdict), "pipeline"});
    for (const auto& item : report.summary)
        summary.rows.push_back({item.name, item.value, item.provenance});
    emit("summary.csv", table_to_csv(summary));

    Table prov{"provenance", {"table", "column", "operation"}, {}, {}};
    for (const auto& t : report.tables)
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            prov.rows.push_back(
                {t.name, t.columns[i],
                 i < t.provenance.size() ? t.provenance[i] : ""});
    emit("provenance.csv", table_to_csv(prov));

    for (const auto& t : report.tables) emit(t.name + ".csv", table_to_csv(t));
    emit("summary.txt", report_to_text(report));
    return written;
}

}  // namespace masscheck
