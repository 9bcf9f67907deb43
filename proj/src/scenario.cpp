#include "masscheck/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace masscheck {

namespace {

struct Entry {
    std::string value;
    int line;
    bool used = false;
};

struct Section {
    int line;
    std::map<std::string, Entry> entries;
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw Error("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::map<std::string, Section> tokenize(const std::string& text) {
    std::map<std::string, Section> sections;
    Section* current = nullptr;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = trim(raw);
        if (s.empty() || s[0] == '#') continue;
        if (s.front() == '[') {
            if (s.back() != ']' || s.size() < 3)
                fail(line, "malformed section header '" + s + "'");
            const std::string name = trim(s.substr(1, s.size() - 2));
            if (sections.count(name))
                fail(line, "duplicate section '" + name + "'");
            current = &sections[name];
            current->line = line;
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            fail(line, "expected 'key = value', got '" + s + "'");
        if (!current) fail(line, "entry outside any [section]");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (value.empty()) fail(line, "empty value for key '" + key + "'");
        if (current->entries.count(key))
            fail(line, "duplicate key '" + key + "'");
        current->entries[key] = Entry{value, line};
    }
    return sections;
}

/// Typed accessors that mark entries as used so leftovers can be rejected.
class Reader {
public:
    Reader(std::map<std::string, Section>& sections, const std::string& name)
        : name_(name) {
        auto it = sections.find(name);
        section_ = it == sections.end() ? nullptr : &it->second;
    }

    bool present() const { return section_ != nullptr; }

    Entry* find(const std::string& key) const {
        if (!section_) return nullptr;
        auto it = section_->entries.find(key);
        if (it == section_->entries.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    std::string str(const std::string& key, const std::string& fallback) const {
        Entry* e = find(key);
        return e ? e->value : fallback;
    }

    double num(const std::string& key, double fallback) const {
        Entry* e = find(key);
        if (!e) return fallback;
        return parse_number(*e);
    }

    double require_num(const std::string& key) const {
        if (!section_)
            throw Error("missing [" + name_ + "] section");
        Entry* e = find(key);
        if (!e)
            throw Error("line " + std::to_string(section_->line) +
                        ": section [" + name_ + "] is missing key '" + key +
                        "'");
        return parse_number(*e);
    }

    std::size_t count(const std::string& key, std::size_t fallback) const {
        const double v = num(key, static_cast<double>(fallback));
        if (v < 1 || v != static_cast<double>(static_cast<std::size_t>(v)))
            fail(find(key)->line, "key '" + key +
                                      "' must be a positive integer");
        return static_cast<std::size_t>(v);
    }

    std::vector<double> num_list(const std::string& key,
                                 std::vector<double> fallback) const {
        Entry* e = find(key);
        if (!e) return fallback;
        std::vector<double> out;
        std::string item;
        std::istringstream in(e->value);
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (item.empty()) fail(e->line, "empty element in list '" + key + "'");
            out.push_back(parse_number_text(item, e->line));
        }
        if (out.empty()) fail(e->line, "empty list for key '" + key + "'");
        return out;
    }

private:
    static double parse_number_text(const std::string& text, int line) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &pos);
        } catch (const std::exception&) {
            fail(line, "not a number: '" + text + "'");
        }
        if (pos != text.size()) fail(line, "not a number: '" + text + "'");
        return v;
    }
    static double parse_number(const Entry& e) {
        return parse_number_text(e.value, e.line);
    }

    Section* section_;
    std::string name_;
};

void reject_leftovers(const std::map<std::string, Section>& sections,
                      const std::vector<std::string>& known) {
    for (const auto& [name, sec] : sections) {
        if (std::find(known.begin(), known.end(), name) == known.end())
            fail(sec.line, "unknown section '" + name + "'");
        for (const auto& [key, entry] : sec.entries)
            if (!entry.used)
                fail(entry.line, "unknown key '" + key + "' in section [" +
                                     name + "]");
    }
}

}  // namespace

Scenario parse_scenario(const std::string& text, const ToleranceProfile& base) {
    auto sections = tokenize(text);
    Scenario sc;
    sc.tolerances = base;

    Reader pipeline(sections, "pipeline");
    if (!pipeline.present()) throw Error("line 1: missing [pipeline] section");
    const std::string kind = pipeline.str("type", "");
    if (kind == "corner_positive_mass")
        sc.kind = PipelineKind::CornerPositiveMass;
    else if (kind == "shi_tam")
        sc.kind = PipelineKind::ShiTam;
    else
        throw Error(
            "line 1: [pipeline] type must be 'corner_positive_mass' or "
            "'shi_tam'");
    sc.name = pipeline.str("name", kind);

    Reader sweep(sections, "sweep");
    sc.deltas = sweep.num_list("deltas", sc.deltas);
    for (double d : sc.deltas)
        if (!(d > 0.0)) throw Error("sweep widths must be positive");
    std::sort(sc.deltas.rbegin(), sc.deltas.rend());

    std::vector<std::string> known = {"pipeline", "sweep", "tolerances"};

    if (sc.kind == PipelineKind::CornerPositiveMass) {
        Reader corner(sections, "corner");
        known.push_back("corner");
        CornerScenario& c = sc.corner;
        c.dimension = static_cast<int>(corner.num("dimension", 3));
        c.inner_radius = corner.num("inner_radius", c.inner_radius);
        c.interface_radius =
            corner.num("interface_radius", c.interface_radius);
        c.exterior = corner.str("exterior", c.exterior);
        if (c.exterior != "schwarzschild" && c.exterior != "flat")
            throw Error("corner exterior must be 'schwarzschild' or 'flat'");
        c.exterior_mass = corner.num("exterior_mass", c.exterior_mass);
        c.outer_radius = corner.num("outer_radius", c.outer_radius);
        c.interior_samples =
            corner.count("interior_samples", c.interior_samples);
        c.exterior_samples =
            corner.count("exterior_samples", c.exterior_samples);
    } else {
        Reader bartnik(sections, "bartnik");
        Reader fill(sections, "fill_in");
        Reader ext(sections, "extension");
        Reader shield(sections, "shield");
        known.insert(known.end(), {"bartnik", "fill_in", "extension",
                                   "shield"});
        ShiTamScenario& t = sc.shi_tam;
        t.dimension = static_cast<int>(bartnik.num("dimension", 3));
        t.radius = bartnik.require_num("radius");
        t.eta = bartnik.require_num("eta");
        const double lam =
            bartnik.num("lambda", std::numeric_limits<double>::quiet_NaN());
        if (!std::isnan(lam)) t.lambda = lam;
        t.fill_in = fill.str("type", t.fill_in);
        if (t.fill_in != "flat_ball" && t.fill_in != "half_cylinder" &&
            t.fill_in != "truncated_cylinder")
            throw Error(
                "fill_in type must be 'flat_ball', 'half_cylinder' or "
                "'truncated_cylinder'");
        t.fill_in_length = fill.num("length", t.fill_in_length);
        t.fill_in_samples = fill.count("samples", t.fill_in_samples);
        t.extension_radius = ext.num("outer_radius", t.extension_radius);
        t.extension_samples = ext.count("samples", t.extension_samples);
        if (shield.present()) {
            ShieldScenario s;
            s.u0_start = shield.require_num("u0_start");
            s.u1_start = shield.require_num("u1_start");
            s.u2_start = shield.require_num("u2_start");
            s.kappa = shield.require_num("kappa");
            s.eta = shield.require_num("eta");
            t.shield = s;
        }
    }

    Reader tol(sections, "tolerances");
    ToleranceProfile& p = sc.tolerances;
    p.scalar_floor = tol.num("scalar_floor", p.scalar_floor);
    p.mass_floor = tol.num("mass_floor", p.mass_floor);
    p.rigidity_tol = tol.num("rigidity_tol", p.rigidity_tol);
    p.match_tol = tol.num("match_tol", p.match_tol);

    reject_leftovers(sections, known);
    return sc;
}

Scenario load_scenario(const std::string& path, const ToleranceProfile& base) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open scenario file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    try {
        return parse_scenario(buf.str(), base);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

}  // namespace masscheck
